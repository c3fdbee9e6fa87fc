#include "cosal/salience.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cosal {

double confidence(std::size_t n) {
  if (n == 0) throw Error("confidence needs a positive word count");
  return std::clamp(std::log(static_cast<double>(n)) / 10.0, 0.0, 1.0);
}

ContextModel train_context(std::span<const Vector> context_vectors, const MomentStats& corpus,
                           const TrainOptions& options) {
  if (context_vectors.size() < 2) throw Error("context too small");
  const MomentStats doc = accumulate_stats(context_vectors);
  if (doc.dim() != corpus.dim()) throw Error("corpus statistics dimension does not match table");

  ContextModel model;
  model.n = doc.count;
  model.scheme = options.scheme;
  model.p = options.p_override ? *options.p_override : confidence(model.n);
  if (!(model.p >= 0.0 && model.p <= 1.0)) throw Error("confidence p must lie in [0, 1]");
  if (options.scheme == BlendScheme::recommended) model.p = 0.5;

  model.mean = doc.mean;
  model.metric = build_metric(blend_covariances(doc, corpus, options.scheme, model.p),
                              options.ridge_scale);

  double total = 0.0;
  for (const auto& v : context_vectors) total += model.metric.distance(v, model.mean);
  model.mean_salience = total / static_cast<double>(context_vectors.size());
  return model;
}

ContextModel train_context(std::span<const Tokens> sentences, const EmbeddingTable& table,
                           const MomentStats& corpus, const TrainOptions& options) {
  std::vector<Vector> vectors;
  std::size_t skipped = 0;
  for (const auto& sentence : sentences) {
    std::size_t missing = 0;
    auto found = lookup_all(table, sentence, options.oov, &missing);
    skipped += missing;
    for (auto& v : found) vectors.push_back(std::move(v));
  }
  if (skipped > 0) warn("skipped " + std::to_string(skipped) + " out-of-vocabulary context words");
  if (vectors.size() < 2) throw Error("context too small");
  return train_context(vectors, corpus, options);
}

double cosal(const ContextModel& model, const Vector& v) {
  return m_distance(model.metric, v, model.mean);
}

std::optional<double> score_token(const ContextModel& model, const EmbeddingTable& table,
                                  std::string_view token, OovPolicy policy) {
  auto v = lookup(table, token, policy);
  if (!v) return std::nullopt;
  return cosal(model, *v);
}

std::vector<std::string> detect_stopwords(const ContextModel& model, const EmbeddingTable& table,
                                          std::span<const std::string> vocab, double fraction) {
  if (!(fraction > 0.0 && fraction < 1.0)) throw Error("stop-word fraction must lie in (0, 1)");
  std::vector<std::pair<double, std::string>> scored;
  for (const auto& token : vocab) {
    if (auto s = score_token(model, table, token)) scored.emplace_back(*s, token);
  }
  std::sort(scored.begin(), scored.end());
  scored.erase(std::unique(scored.begin(), scored.end()), scored.end());
  const auto keep = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(scored.size())));
  std::vector<std::string> out;
  out.reserve(keep);
  for (std::size_t i = 0; i < keep; ++i) out.push_back(scored[i].second);
  return out;
}

TfScheme parse_tf_scheme(std::string_view name) {
  if (name == "natural") return TfScheme::natural;
  if (name == "augmented") return TfScheme::augmented;
  throw Error("unknown tf scheme '" + std::string(name) + "'");
}

TfIdfModel::TfIdfModel(std::span<const Tokens> documents, TfScheme scheme) : scheme_(scheme) {
  counts_.reserve(documents.size());
  max_tf_.reserve(documents.size());
  for (const auto& doc : documents) {
    auto& counts = counts_.emplace_back();
    for (const auto& term : doc) ++counts[term];
    std::size_t max_tf = 0;
    for (const auto& [term, c] : counts) {
      ++df_[term];
      max_tf = std::max(max_tf, c);
    }
    max_tf_.push_back(max_tf);
  }
}

std::size_t TfIdfModel::term_count(std::size_t doc, std::string_view term) const {
  const auto& counts = counts_.at(doc);
  auto it = counts.find(std::string(term));
  return it == counts.end() ? 0 : it->second;
}

std::size_t TfIdfModel::document_frequency(std::string_view term) const {
  auto it = df_.find(std::string(term));
  return it == df_.end() ? 0 : it->second;
}

double tfidf_score(const TfIdfModel& model, std::string_view term, std::size_t doc) {
  if (doc >= model.documents()) throw std::out_of_range("unknown document id");
  const std::size_t tf = model.term_count(doc, term);
  if (tf == 0) return 0.0;
  const double idf = std::log(static_cast<double>(model.documents()) /
                              static_cast<double>(model.document_frequency(term)));
  if (model.scheme() == TfScheme::augmented) {
    return (0.5 + 0.5 * static_cast<double>(tf) / static_cast<double>(model.max_term_count(doc))) *
           idf;
  }
  return static_cast<double>(tf) * idf;
}

}  // namespace cosal
