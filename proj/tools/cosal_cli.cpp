// cosal: command-line front end. Payload (JSON / CSV / TSV) goes to stdout,
// warnings and errors to stderr. Exit codes: 0 ok, 1 runtime error, 2 usage.

#include "cosal/cosal.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

namespace {

using nlohmann::json;

struct Globals {
  std::string vectors;
  std::string corpus_stats;
  std::string oov = "skip";
  bool no_normalize = false;
  std::optional<double> p;
  std::uint64_t seed = 1;
};

std::string env_or(const char* name, const std::string& fallback) {
  const char* v = std::getenv(name);
  return v != nullptr ? std::string(v) : fallback;
}

cosal::OovPolicy oov_policy(const Globals& g) { return {cosal::parse_oov_mode(g.oov)}; }

cosal::EmbeddingTable load_vectors(const Globals& g, const std::string& fallback = {}) {
  std::string path = g.vectors.empty() ? fallback : g.vectors;
  if (path.empty()) path = env_or("COSAL_VECTORS", "");
  if (path.empty()) throw cosal::Error("no vectors given (use --vectors or COSAL_VECTORS)");
  return cosal::load_table(path, !g.no_normalize);
}

cosal::MomentStats corpus_stats_for(const Globals& g, std::span<const cosal::Vector> context) {
  std::string path = g.corpus_stats.empty() ? env_or("COSAL_CORPUS_STATS", "") : g.corpus_stats;
  if (!path.empty()) return cosal::load_stats(path);
  cosal::warn("no corpus statistics given; blending the context with itself");
  return cosal::accumulate_stats(context);
}

std::vector<cosal::Vector> context_vectors(const cosal::EmbeddingTable& table,
                                           std::span<const cosal::Tokens> sentences,
                                           cosal::OovPolicy policy) {
  std::vector<cosal::Vector> out;
  for (const auto& s : sentences) {
    for (auto& v : cosal::lookup_all(table, s, policy)) out.push_back(std::move(v));
  }
  return out;
}

cosal::ContextModel train_on(const Globals& g, const cosal::EmbeddingTable& table,
                             std::span<const cosal::Tokens> sentences, const std::string& scheme) {
  cosal::TrainOptions options;
  options.scheme = cosal::parse_blend_scheme(scheme);
  options.p_override = g.p;
  options.oov = oov_policy(g);
  const auto vectors = context_vectors(table, sentences, options.oov);
  if (vectors.size() < 2) throw cosal::Error("context too small");
  return cosal::train_context(sentences, table, corpus_stats_for(g, vectors), options);
}

std::vector<cosal::Tokens> sentences_of_file(const std::string& path) {
  std::vector<cosal::Tokens> out;
  for (const auto& s : cosal::split_sentences(cosal::read_file(path))) {
    auto t = cosal::tokenize(s);
    if (!t.empty()) out.push_back(std::move(t));
  }
  return out;
}

std::ostream& open_output(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path);
  if (!file) throw cosal::Error("cannot write " + path);
  return file;
}

cosal::ContextModel load_model_with(const std::string& path, Globals& g) {
  cosal::ModelProvenance provenance;
  auto model = cosal::load_model(path, &provenance);
  if (g.vectors.empty()) {
    g.vectors = env_or("COSAL_VECTORS", provenance.vectors);
    g.no_normalize = g.no_normalize || !provenance.normalized;
  }
  return model;
}

json summary_json(const cosal::SummaryResult& r) {
  return json{{"tokens", r.tokens},       {"indices", r.indices},
              {"trace", r.trace},         {"final_distance", r.final_distance},
              {"best_length", r.best_length}, {"reached_goal", r.reached_goal},
              {"expansions", r.expansions}};
}

std::vector<std::size_t> parse_sizes(const std::string& list) {
  std::vector<std::size_t> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(static_cast<std::size_t>(std::stoul(item)));
  }
  return out;
}

void print_error(const std::string& kind, const std::string& message) {
  std::cerr << json{{"error", message}, {"kind", kind}}.dump() << std::endl;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cosal: contextual salience for word vectors"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--vectors", g.vectors, "Word vectors (text format); default $COSAL_VECTORS");
  app.add_option("--corpus-stats", g.corpus_stats, "Corpus moment file; default $COSAL_CORPUS_STATS");
  app.add_option("--oov", g.oov, "Out-of-vocabulary policy: skip, zero, lowercase-fallback");
  app.add_flag("--no-normalize", g.no_normalize, "Keep raw vector lengths");
  app.add_option("--p", g.p, "Override the confidence weight p")->check(CLI::Range(0.0, 1.0));
  app.add_option("--seed", g.seed, "Seed for randomized splits");

  // load
  auto* load = app.add_subcommand("load", "Validate a vector file");

  // corpus-stats
  auto* stats_cmd = app.add_subcommand("corpus-stats", "Compute corpus moments from text");
  std::string stats_text, stats_out;
  stats_cmd->add_option("--text", stats_text, "Corpus text")->required();
  stats_cmd->add_option("-o,--output", stats_out, "Output moments file")->required();

  // train
  auto* train = app.add_subcommand("train", "Train a context model");
  std::string train_context_path, train_out, train_scheme = "confidence";
  train->add_option("--context", train_context_path, "Context text")->required();
  train->add_option("--scheme", train_scheme, "natural, recommended, confidence or product");
  train->add_option("-o,--output", train_out, "Output model file")->required();

  // score
  auto* score = app.add_subcommand("score", "CoSal of words under a model");
  std::string score_model, score_word, score_text;
  score->add_option("--model", score_model)->required();
  auto* word_opt = score->add_option("--word", score_word);
  score->add_option("--text", score_text)->excludes(word_opt);

  // stopwords
  auto* stop = app.add_subcommand("stopwords", "Least salient fraction of a text's vocabulary");
  std::string stop_model, stop_text;
  double stop_fraction = 0.15;
  stop->add_option("--model", stop_model)->required();
  stop->add_option("--text", stop_text)->required();
  stop->add_option("--fraction", stop_fraction);

  // embed
  auto* embed = app.add_subcommand("embed", "Sentence embeddings");
  std::string embed_model, embed_mode = "gobow", embed_input, embed_out;
  double embed_c = 1.87;
  embed->add_option("--model", embed_model)->required();
  embed->add_option("--mode", embed_mode, "gobow or sbow");
  embed->add_option("--c", embed_c, "Linear slope for sbow");
  embed->add_option("--input", embed_input, "One sentence per line")->required();
  embed->add_option("-o,--output", embed_out);

  // adjcos
  auto* adjcos = app.add_subcommand("adjcos", "Context-adjusted cosine of two words");
  std::string adj_model, adj_w1, adj_w2;
  adjcos->add_option("--model", adj_model)->required();
  adjcos->add_option("--word1", adj_w1)->required();
  adjcos->add_option("--word2", adj_w2)->required();

  // summarize-sentence
  auto* sum_s = app.add_subcommand("summarize-sentence", "Recover words from a sentence vector");
  std::string ss_model, ss_text;
  cosal::SentenceSearchOptions ss_opts;
  sum_s->add_option("--model", ss_model)->required();
  sum_s->add_option("--text", ss_text)->required();
  sum_s->add_option("--radius", ss_opts.radius);
  sum_s->add_option("--step", ss_opts.step_fraction);
  sum_s->add_option("--beam", ss_opts.beam);
  sum_s->add_option("--budget", ss_opts.node_budget);

  // summarize-doc
  auto* sum_d = app.add_subcommand("summarize-doc", "Extract representative sentences");
  std::string sd_model, sd_input;
  std::size_t sd_depth = 3;
  sum_d->add_option("--model", sd_model)->required();
  sum_d->add_option("--input", sd_input)->required();
  sum_d->add_option("--depth", sd_depth);

  // analyze
  auto* analyze = app.add_subcommand("analyze", "Emit figure data as CSV");
  analyze->require_subcommand(1);
  auto* phrase = analyze->add_subcommand("phrase-curve", "Phrase mixing coefficient vs salience share");
  std::string pc_phrases, pc_model, pc_context, pc_out;
  double pc_window = 0.05;
  bool pc_fits = false;
  bool pc_normalize = false;
  phrase->add_option("--phrases", pc_phrases, "Unigram + bigram vectors")->required();
  auto* pc_model_opt = phrase->add_option("--model", pc_model);
  phrase->add_option("--context", pc_context, "Train a natural-scheme model on this text")
      ->excludes(pc_model_opt);
  phrase->add_option("--window", pc_window);
  phrase->add_flag("--normalize-phrases", pc_normalize, "Unit-normalize the phrase space (default: as stored)");
  phrase->add_flag("--fits", pc_fits, "Print curve fits as JSON instead of the CSV");
  phrase->add_option("-o,--output", pc_out);

  auto* scatter = analyze->add_subcommand("tfidf-scatter", "CoSal vs tf-idf per document term");
  std::string sc_corpus, sc_scheme = "confidence", sc_tf = "natural", sc_out;
  std::size_t sc_min = 5;
  scatter->add_option("--corpus", sc_corpus, "Documents separated by blank lines")->required();
  scatter->add_option("--scheme", sc_scheme);
  scatter->add_option("--tf", sc_tf, "natural or augmented");
  scatter->add_option("--min-count", sc_min);
  scatter->add_option("-o,--output", sc_out);

  // eval
  auto* eval = app.add_subcommand("eval", "Embed a labelled task and report held-out accuracy");
  std::string ev_task, ev_mode = "gobow", ev_curve, ev_scheme = "confidence";
  eval->add_option("--task", ev_task, "label<TAB>text[<TAB>text2] file")->required();
  eval->add_option("--mode", ev_mode, "gobow, sbow or tfidf");
  eval->add_option("--curve", ev_curve, "Comma-separated context sizes");
  eval->add_option("--scheme", ev_scheme);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << app.help() << '\n';
    print_error("usage", e.what());
    return 2;
  }

  try {
    std::cout << std::setprecision(10);
    if (*load) {
      const auto table = load_vectors(g);
      std::cout << json{{"vocab", table.size()}, {"dim", table.dim()}, {"normalized", table.normalized()}}.dump()
                << '\n';
    } else if (*stats_cmd) {
      const auto table = load_vectors(g);
      const auto sentences = sentences_of_file(stats_text);
      const auto vectors = context_vectors(table, sentences, oov_policy(g));
      const auto stats = cosal::accumulate_stats(vectors);
      cosal::save_stats(stats_out, stats);
      std::cout << json{{"count", stats.count}, {"dim", stats.dim()}, {"output", stats_out}}.dump() << '\n';
    } else if (*train) {
      const auto table = load_vectors(g);
      const auto sentences = sentences_of_file(train_context_path);
      const auto model = train_on(g, table, sentences, train_scheme);
      cosal::ModelProvenance provenance{g.vectors.empty() ? env_or("COSAL_VECTORS", "") : g.vectors,
                                        !g.no_normalize};
      cosal::save_model(train_out, model, provenance);
      std::cout << json{{"n", model.n},
                        {"p", model.p},
                        {"scheme", cosal::to_string(model.scheme)},
                        {"dim", model.dim()},
                        {"mean_salience", model.mean_salience},
                        {"repaired", model.metric.repaired()},
                        {"output", train_out}}
                       .dump()
                << '\n';
    } else if (*score) {
      const auto model = load_model_with(score_model, g);
      const auto table = load_vectors(g);
      std::vector<std::string> tokens;
      if (!score_word.empty()) {
        tokens.push_back(score_word);
      } else if (!score_text.empty()) {
        std::set<std::string> seen;
        for (auto& t : cosal::tokenize(cosal::read_file(score_text))) {
          if (seen.insert(t).second) tokens.push_back(t);
        }
      } else {
        throw cosal::Error("score needs --word or --text");
      }
      std::cout << "token,score\n";
      std::size_t missing = 0;
      for (const auto& t : tokens) {
        if (auto s = cosal::score_token(model, table, t, oov_policy(g))) {
          std::cout << t << ',' << *s << '\n';
        } else {
          ++missing;
        }
      }
      if (missing > 0) cosal::warn(std::to_string(missing) + " tokens have no vector");
    } else if (*stop) {
      const auto model = load_model_with(stop_model, g);
      const auto table = load_vectors(g);
      auto vocab = cosal::tokenize(cosal::read_file(stop_text));
      std::sort(vocab.begin(), vocab.end());
      vocab.erase(std::unique(vocab.begin(), vocab.end()), vocab.end());
      std::cout << json{{"stopwords", cosal::detect_stopwords(model, table, vocab, stop_fraction)}}.dump()
                << '\n';
    } else if (*embed) {
      const auto model = load_model_with(embed_model, g);
      const auto table = load_vectors(g);
      cosal::SigmoidParams params;
      params.slope_c = embed_c;
      const auto mode = cosal::parse_embed_mode(embed_mode);
      std::ifstream in(embed_input);
      if (!in) throw cosal::Error("cannot open " + embed_input);
      std::ofstream file;
      auto& out = open_output(embed_out, file);
      out << std::setprecision(8);
      std::string line;
      std::size_t index = 0;
      while (std::getline(in, line)) {
        const auto tokens = cosal::tokenize(line);
        if (!tokens.empty()) {
          try {
            const auto v = cosal::embed_sentence(model, table, tokens, mode, params, oov_policy(g));
            out << index;
            for (Eigen::Index k = 0; k < v.size(); ++k) out << '\t' << v(k);
            out << '\n';
          } catch (const cosal::Error& e) {
            cosal::warn("sentence " + std::to_string(index) + ": " + e.what());
          }
        }
        ++index;
      }
    } else if (*adjcos) {
      const auto model = load_model_with(adj_model, g);
      const auto table = load_vectors(g);
      const auto v1 = cosal::lookup(table, adj_w1, oov_policy(g));
      const auto v2 = cosal::lookup(table, adj_w2, oov_policy(g));
      if (!v1) throw cosal::Error("no vector for '" + adj_w1 + "'");
      if (!v2) throw cosal::Error("no vector for '" + adj_w2 + "'");
      const auto r = cosal::adjusted_cosine_detail(model, *v1, *v2);
      std::cout << json{{"cosine", r.cosine}, {"distance", r.distance}, {"a", r.a}, {"b", r.b}, {"c", r.c}}.dump()
                << '\n';
    } else if (*sum_s) {
      const auto model = load_model_with(ss_model, g);
      const auto table = load_vectors(g);
      const auto tokens = cosal::tokenize(ss_text);
      const auto target = cosal::embed_sentence(model, table, tokens, cosal::EmbedMode::gobow,
                                                ss_opts.params, oov_policy(g));
      auto j = summary_json(cosal::summarize_sentence(model, table, target, ss_opts));
      j["text"] = ss_text;
      std::cout << j.dump() << '\n';
    } else if (*sum_d) {
      const auto model = load_model_with(sd_model, g);
      const auto table = load_vectors(g);
      const auto raw = cosal::split_sentences(cosal::read_file(sd_input));
      std::vector<cosal::Tokens> sentences;
      for (const auto& s : raw) sentences.push_back(cosal::tokenize(s));
      cosal::DocumentSummaryOptions options;
      options.oov = oov_policy(g);
      const auto result = cosal::summarize_document(model, table, sentences, sd_depth, options);
      auto j = summary_json(result);
      std::vector<std::string> chosen;
      for (auto i : result.indices) chosen.push_back(raw[i]);
      j["sentences"] = chosen;
      std::cout << j.dump() << '\n';
    } else if (*analyze && *phrase) {
      const auto table = cosal::load_table(pc_phrases, pc_normalize);
      cosal::ContextModel model;
      if (!pc_model.empty()) {
        model = cosal::load_model(pc_model);
      } else if (!pc_context.empty()) {
        const auto sentences = sentences_of_file(pc_context);
        const auto vectors = context_vectors(table, sentences, oov_policy(g));
        cosal::TrainOptions options;
        options.scheme = cosal::BlendScheme::natural;
        model = cosal::train_context(vectors, cosal::accumulate_stats(vectors), options);
      } else {
        throw cosal::Error("phrase-curve needs --model or --context");
      }
      const auto curve = cosal::phrase_curve(table, model, pc_window);
      std::ofstream file;
      auto& out = open_output(pc_out, file);
      out << std::setprecision(10);
      if (pc_fits) {
        std::vector<double> xs, ys;
        for (const auto& r : curve.rows) {
          xs.push_back(r.x);
          ys.push_back(r.y);
        }
        json fits = json::array();
        for (const auto& fit : {cosal::fit_linear(xs, ys), cosal::fit_sigmoid(xs, ys, cosal::SigmoidFamily::logistic),
                                cosal::fit_sigmoid(xs, ys, cosal::SigmoidFamily::erf)}) {
          fits.push_back(json{{"family", fit.family}, {"params", fit.params}, {"rms", fit.rms}});
        }
        out << json{{"rows", curve.rows.size()}, {"bigrams", curve.bigrams}, {"skipped", curve.skipped},
                    {"fits", fits}}
                   .dump()
            << '\n';
      } else {
        out << "phrase,x,y,moving_average\n";
        for (const auto& r : curve.rows) out << r.phrase << ',' << r.x << ',' << r.y << ',' << r.moving_average << '\n';
      }
      cosal::warn("phrase-curve: " + std::to_string(curve.rows.size()) + " rows, " +
                  std::to_string(curve.skipped) + " skipped of " + std::to_string(curve.bigrams) + " bigrams");
    } else if (*analyze && *scatter) {
      const auto table = load_vectors(g);
      const auto docs = cosal::read_documents(sc_corpus);
      cosal::ScatterOptions options;
      options.train.scheme = cosal::parse_blend_scheme(sc_scheme);
      options.train.p_override = g.p;
      options.train.oov = oov_policy(g);
      options.tf = cosal::parse_tf_scheme(sc_tf);
      options.min_count = sc_min;
      const auto rows = cosal::cosal_vs_tfidf(docs, table, options);
      std::ofstream file;
      auto& out = open_output(sc_out, file);
      out << std::setprecision(10) << "doc,token,count,tfidf,cosal\n";
      std::vector<double> xs, ys;
      for (const auto& r : rows) {
        out << r.doc << ',' << r.token << ',' << r.count << ',' << r.tfidf << ',' << r.cosal << '\n';
        xs.push_back(r.tfidf);
        ys.push_back(r.cosal);
      }
      if (rows.size() >= 2) cosal::warn("spearman(tfidf, cosal) = " + std::to_string(cosal::spearman(xs, ys)));
    } else if (*eval) {
      const auto table = load_vectors(g);
      const auto dataset = cosal::load_dataset(ev_task);
      const auto mode = cosal::parse_eval_mode(ev_mode);
      std::vector<cosal::Tokens> stream;
      for (const auto& s : dataset.sentence_stream()) {
        auto t = cosal::tokenize(s);
        if (!t.empty()) stream.push_back(std::move(t));
      }
      json report{{"task", ev_task}, {"mode", cosal::to_string(mode)}};
      std::optional<cosal::ContextModel> model;
      if (mode != cosal::EvalMode::tfidf) model = train_on(g, table, stream, ev_scheme);
      report["accuracy"] = cosal::evaluate(model ? &*model : nullptr, table, dataset, mode, g.seed);
      if (!ev_curve.empty()) {
        const auto sizes = parse_sizes(ev_curve);
        const auto builder = [&](std::span<const cosal::Tokens> ctx) { return train_on(g, table, ctx, ev_scheme); };
        json curve = json::array();
        for (const auto& p : cosal::stability_curve(builder, table, dataset, sizes, mode, g.seed)) {
          curve.push_back(json{{"sentences", p.sentences}, {"accuracy", p.accuracy}, {"ratio", p.ratio}});
        }
        report["curve"] = curve;
      }
      std::cout << report.dump() << '\n';
    }
  } catch (const cosal::ParseError& e) {
    print_error("parse", e.what());
    return 1;
  } catch (const std::exception& e) {
    print_error("runtime", e.what());
    return 1;
  }
  return 0;
}
