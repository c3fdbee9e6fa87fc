#include "cosal/cosal.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <memory>

namespace py = pybind11;
using namespace pybind11::literals;

namespace {

cosal::TrainOptions train_options(const std::string& scheme, std::optional<double> p) {
  cosal::TrainOptions options;
  options.scheme = cosal::parse_blend_scheme(scheme);
  options.p_override = p;
  return options;
}

}  // namespace

PYBIND11_MODULE(_cosal, m) {
  m.doc() = "Contextual salience: context models, weighted sentence embeddings, summarization";

  static py::exception<cosal::Error> error(m, "CosalError", PyExc_RuntimeError);
  static py::exception<cosal::ParseError> parse_error(m, "ParseError", error.ptr());
  static py::exception<cosal::ConvergenceError> convergence_error(m, "ConvergenceError", error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const cosal::ParseError& e) {
      parse_error(e.what());
    } catch (const cosal::ConvergenceError& e) {
      convergence_error(e.what());
    } catch (const cosal::Error& e) {
      error(e.what());
    }
  });

  m.def("set_warning_handler", [](py::object handler) {
    if (handler.is_none()) {
      cosal::set_warning_sink(nullptr);
      return;
    }
    // Copies of the sink share one reference, so none of them touch the refcount.
    auto held = std::make_shared<py::object>(std::move(handler));
    cosal::set_warning_sink([held](std::string_view msg) {
      py::gil_scoped_acquire gil;
      (*held)(std::string(msg));
    });
  }, "handler"_a, "Route library warnings to a callable, or back to stderr with None.");
  // The sink may hold a Python callable; drop it before the interpreter goes away.
  py::module_::import("atexit").attr("register")(py::cpp_function([] { cosal::set_warning_sink(nullptr); }));

  m.def("tokenize", [](const std::string& text) { return cosal::tokenize(text); }, "text"_a);
  m.def("split_sentences", &cosal::split_sentences, "text"_a);

  py::class_<cosal::EmbeddingTable>(m, "EmbeddingTable")
      .def_property_readonly("dim", &cosal::EmbeddingTable::dim)
      .def_property_readonly("normalized", &cosal::EmbeddingTable::normalized)
      .def_property_readonly("tokens", &cosal::EmbeddingTable::tokens)
      .def("__len__", &cosal::EmbeddingTable::size)
      .def("__contains__", [](const cosal::EmbeddingTable& t, const std::string& w) { return t.find(w).has_value(); })
      .def("vector", [](const cosal::EmbeddingTable& t, const std::string& w, const std::string& oov) {
        return cosal::lookup(t, w, {cosal::parse_oov_mode(oov)});
      }, "token"_a, "oov"_a = "skip");
  m.def("load_table", &cosal::load_table, "path"_a, "normalize"_a = true);

  py::class_<cosal::MomentStats>(m, "MomentStats")
      .def_readonly("mean", &cosal::MomentStats::mean)
      .def_readonly("covariance", &cosal::MomentStats::covariance)
      .def_readonly("count", &cosal::MomentStats::count);
  m.def("accumulate_stats", [](const cosal::RowMatrix& rows) { return cosal::accumulate_stats(rows); }, "rows"_a);
  m.def("load_stats", &cosal::load_stats, "path"_a);
  m.def("save_stats", &cosal::save_stats, "path"_a, "stats"_a);

  py::class_<cosal::ContextModel>(m, "ContextModel")
      .def_readonly("mean", &cosal::ContextModel::mean)
      .def_readonly("p", &cosal::ContextModel::p)
      .def_readonly("n", &cosal::ContextModel::n)
      .def_readonly("mean_salience", &cosal::ContextModel::mean_salience)
      .def_property_readonly("scheme", [](const cosal::ContextModel& c) { return std::string(cosal::to_string(c.scheme)); })
      .def_property_readonly("repaired", [](const cosal::ContextModel& c) { return c.metric.repaired(); })
      .def_property_readonly("dim", &cosal::ContextModel::dim);

  m.def("train_context",
        [](const std::vector<cosal::Tokens>& sentences, const cosal::EmbeddingTable& table,
           const cosal::MomentStats& corpus, const std::string& scheme, std::optional<double> p) {
          return cosal::train_context(sentences, table, corpus, train_options(scheme, p));
        },
        "sentences"_a, "table"_a, "corpus"_a, "scheme"_a = "confidence", "p"_a = py::none(),
        "Train on tokenized sentences; each in-vocabulary occurrence counts once.");
  m.def("train_vectors",
        [](const cosal::RowMatrix& rows, const cosal::MomentStats& corpus, const std::string& scheme,
           std::optional<double> p) {
          std::vector<cosal::Vector> vectors;
          for (Eigen::Index i = 0; i < rows.rows(); ++i) vectors.emplace_back(rows.row(i).transpose());
          return cosal::train_context(vectors, corpus, train_options(scheme, p));
        },
        "rows"_a, "corpus"_a, "scheme"_a = "confidence", "p"_a = py::none());
  m.def("save_model", [](const std::filesystem::path& path, const cosal::ContextModel& model) {
    cosal::save_model(path, model);
  }, "path"_a, "model"_a);
  m.def("load_model", [](const std::filesystem::path& path) { return cosal::load_model(path); }, "path"_a);

  m.def("confidence", &cosal::confidence, "n"_a);
  m.def("cosal", &cosal::cosal, "model"_a, "vector"_a);
  m.def("score_token", [](const cosal::ContextModel& model, const cosal::EmbeddingTable& table,
                          const std::string& token) { return cosal::score_token(model, table, token); },
        "model"_a, "table"_a, "token"_a);
  m.def("detect_stopwords",
        [](const cosal::ContextModel& model, const cosal::EmbeddingTable& table,
           const std::vector<std::string>& vocab, double fraction) {
          return cosal::detect_stopwords(model, table, vocab, fraction);
        },
        "model"_a, "table"_a, "vocab"_a, "fraction"_a = 0.15);

  m.def("embed_sentence",
        [](const cosal::ContextModel& model, const cosal::EmbeddingTable& table,
           const std::vector<std::string>& tokens, const std::string& mode) {
          return cosal::embed_sentence(model, table, tokens, cosal::parse_embed_mode(mode));
        },
        "model"_a, "table"_a, "tokens"_a, "mode"_a = "gobow");
  m.def("sigmoid_weight", [](double x) { return cosal::sigmoid_weight(x); }, "x"_a);

  m.def("adjusted_cosine", &cosal::adjusted_cosine, "model"_a, "v1"_a, "v2"_a);
  m.def("adjusted_distance", &cosal::adjusted_distance, "model"_a, "v1"_a, "v2"_a);

  py::class_<cosal::RemovalResult>(m, "RemovalResult")
      .def_readonly("residual", &cosal::RemovalResult::residual)
      .def_readonly("residual_salience", &cosal::RemovalResult::residual_salience)
      .def_readonly("iterations", &cosal::RemovalResult::iterations);
  m.def("remove_component",
        [](const cosal::ContextModel& model, const cosal::Vector& target, const cosal::Vector& part) {
          return cosal::remove_component(model, target, part);
        },
        "model"_a, "target"_a, "part"_a);

  py::class_<cosal::SummaryResult>(m, "SummaryResult")
      .def_readonly("tokens", &cosal::SummaryResult::tokens)
      .def_readonly("indices", &cosal::SummaryResult::indices)
      .def_readonly("trace", &cosal::SummaryResult::trace)
      .def_readonly("final_distance", &cosal::SummaryResult::final_distance)
      .def_readonly("best_length", &cosal::SummaryResult::best_length)
      .def_readonly("reached_goal", &cosal::SummaryResult::reached_goal)
      .def_readonly("expansions", &cosal::SummaryResult::expansions);
  m.def("summarize_sentence",
        [](const cosal::ContextModel& model, const cosal::EmbeddingTable& table, const cosal::Vector& target,
           double radius, double step_fraction, std::size_t beam, std::size_t node_budget) {
          cosal::SentenceSearchOptions options;
          options.radius = radius;
          options.step_fraction = step_fraction;
          options.beam = beam;
          options.node_budget = node_budget;
          return cosal::summarize_sentence(model, table, target, options);
        },
        "model"_a, "table"_a, "target"_a, "radius"_a = 0.35, "step_fraction"_a = 0.05, "beam"_a = 5,
        "node_budget"_a = 10000);
  m.def("summarize_document",
        [](const cosal::ContextModel& model, const cosal::EmbeddingTable& table,
           const std::vector<cosal::Tokens>& sentences, std::size_t depth) {
          return cosal::summarize_document(model, table, sentences, depth);
        },
        "model"_a, "table"_a, "sentences"_a, "depth"_a);

  m.def("best_linear_combination", &cosal::best_linear_combination, "v1"_a, "v2"_a, "target"_a);
  m.def("spearman", [](const std::vector<double>& x, const std::vector<double>& y) { return cosal::spearman(x, y); },
        "x"_a, "y"_a);

  m.def("evaluate_task",
        [](const std::filesystem::path& path, const cosal::EmbeddingTable& table, const cosal::MomentStats& corpus,
           const std::string& mode, std::uint64_t seed) {
          const auto dataset = cosal::load_dataset(path);
          const auto eval_mode = cosal::parse_eval_mode(mode);
          if (eval_mode == cosal::EvalMode::tfidf) return cosal::evaluate(nullptr, table, dataset, eval_mode, seed);
          std::vector<cosal::Tokens> context;
          for (const auto& s : dataset.sentence_stream()) context.push_back(cosal::tokenize(s));
          const auto model = cosal::train_context(context, table, corpus);
          return cosal::evaluate(&model, table, dataset, eval_mode, seed);
        },
        "path"_a, "table"_a, "corpus"_a, "mode"_a = "gobow", "seed"_a = 1,
        "Held-out accuracy on a labelled TSV task, with the context trained on its own sentences.");
}
