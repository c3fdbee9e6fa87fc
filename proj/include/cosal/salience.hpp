#pragma once

#include "cosal/context_stats.hpp"
#include "cosal/embedding_store.hpp"
#include "cosal/tokenize.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace cosal {

/// Distribution of a context's word-vector cloud: its mean and blended metric.
struct ContextModel {
  Vector mean;
  BlendedMetric metric;
  double p = 0.0;
  std::size_t n = 0;
  BlendScheme scheme = BlendScheme::confidence;
  /// Average CoSal of the context's word occurrences, the starting point for
  /// component removal during summarization.
  double mean_salience = 0.0;

  std::size_t dim() const noexcept { return static_cast<std::size_t>(mean.size()); }
};

/// min(1, ln(n) / 10). Throws for n == 0.
double confidence(std::size_t n);

struct TrainOptions {
  BlendScheme scheme = BlendScheme::confidence;
  std::optional<double> p_override;
  OovPolicy oov;
  double ridge_scale = 1e-6;
};

/// Trains on raw vectors (one per word occurrence).
ContextModel train_context(std::span<const Vector> context_vectors, const MomentStats& corpus,
                           const TrainOptions& options = {});

/// Looks each token occurrence up in `table` and trains on the result.
/// Throws Error("context too small") with fewer than two in-vocab words.
ContextModel train_context(std::span<const Tokens> sentences, const EmbeddingTable& table,
                           const MomentStats& corpus, const TrainOptions& options = {});

/// Mahalanobis distance of `v` from the context mean under the blended metric.
double cosal(const ContextModel& model, const Vector& v);

/// Absent when the token has no vector under `policy`.
std::optional<double> score_token(const ContextModel& model, const EmbeddingTable& table,
                                  std::string_view token, OovPolicy policy = {});

/// The floor(fraction * |scored|) tokens with the smallest CoSal, ascending.
/// Tokens without a vector are ignored.
std::vector<std::string> detect_stopwords(const ContextModel& model, const EmbeddingTable& table,
                                          std::span<const std::string> vocab,
                                          double fraction = 0.15);

// ---------------------------------------------------------------------------
// tf-idf baseline

enum class TfScheme { natural, augmented };

TfScheme parse_tf_scheme(std::string_view name);

class TfIdfModel {
 public:
  explicit TfIdfModel(std::span<const Tokens> documents, TfScheme scheme = TfScheme::natural);

  std::size_t documents() const noexcept { return counts_.size(); }
  TfScheme scheme() const noexcept { return scheme_; }
  std::size_t term_count(std::size_t doc, std::string_view term) const;
  std::size_t document_frequency(std::string_view term) const;
  std::size_t max_term_count(std::size_t doc) const { return max_tf_.at(doc); }
  const std::unordered_map<std::string, std::size_t>& counts(std::size_t doc) const {
    return counts_.at(doc);
  }

 private:
  std::vector<std::unordered_map<std::string, std::size_t>> counts_;
  std::vector<std::size_t> max_tf_;
  std::unordered_map<std::string, std::size_t> df_;
  TfScheme scheme_;
};

/// natural: tf * ln(N / df); augmented: (0.5 + 0.5 tf / max_tf) * ln(N / df).
/// Terms absent from the document score 0. Throws std::out_of_range for an unknown doc.
double tfidf_score(const TfIdfModel& model, std::string_view term, std::size_t doc);

}  // namespace cosal
