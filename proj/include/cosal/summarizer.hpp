#pragma once

#include "cosal/sentence_embed.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace cosal {

struct RemovalOptions {
  double tolerance = 1e-4;  // relative change of the residual's CoSal
  int max_iterations = 50;
  SigmoidParams params;
};

struct RemovalResult {
  Vector residual;
  double residual_salience = 0.0;
  int iterations = 0;
};

/// Thrown when the residual's CoSal does not settle within the iteration cap.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& message, Vector last_iterate, std::vector<double> history);

  const Vector& last_iterate() const noexcept { return last_; }
  /// CoSal of the residual at every iteration, for spotting oscillation.
  const std::vector<double>& history() const noexcept { return history_; }

 private:
  Vector last_;
  std::vector<double> history_;
};

/// Inverts the two-part weighted sum: finds r with ||r|| = ||target|| and a
/// scale s such that s * target = w1 * part + w2 * r, where
/// w_i = sigmoid(d_i / (d_1 + d_2)), d_1 = cosal(part), d_2 = cosal(r).
/// The first iterate takes d_2 from the model's mean salience. If that is not
/// already a fixed point, candidates with the target's norm are scanned by
/// angle in the target/part plane. Of the exact inverses found, the one
/// nearest the plain rejection of the target from the part is refined and
/// checked for a relative change in d_2 below the tolerance.
/// Every CoSal evaluation of a candidate counts toward `max_iterations`.
/// A part parallel to the target leaves a zero residual.
RemovalResult remove_component(const ContextModel& model, const Vector& target, const Vector& part,
                               const RemovalOptions& options = {});

struct SummaryResult {
  std::vector<std::string> tokens;    // sentence search: chosen words, in order
  std::vector<std::size_t> indices;   // rows (sentences) or sentence indices (documents)
  std::vector<double> trace;          // distance after each selection
  double final_distance = 0.0;
  std::size_t best_length = 0;        // documents: prefix length achieving final_distance
  bool reached_goal = false;
  std::size_t expansions = 0;
};

struct SentenceSearchOptions {
  double radius = 0.35;
  double step_fraction = 0.05;  // 0 disables pruning
  std::size_t beam = 5;
  std::size_t node_budget = 10000;
  std::size_t max_words = 16;
  SigmoidParams params;
};

/// Best-first search over word lists whose embedding approaches `target`.
/// Candidates for extension are the `beam` vocabulary words nearest (by
/// adjusted distance) to the target with the current words removed.
SummaryResult summarize_sentence(const ContextModel& model, const EmbeddingTable& table,
                                 const Vector& target, const SentenceSearchOptions& options = {});

/// Global-context weighting over sentence vectors.
Vector embed_document(const ContextModel& model, std::span<const Vector> sentence_vectors,
                      const SigmoidParams& params = {});

struct DocumentSummaryOptions {
  SigmoidParams params;
  OovPolicy oov;
};

/// Greedy extraction: pick the sentence nearest the document residual,
/// remove it, repeat `depth` times. trace[k] is the adjusted distance between
/// the first k + 1 picks (composed as a document) and the full document.
SummaryResult summarize_document(const ContextModel& model, const EmbeddingTable& table,
                                 std::span<const Tokens> sentences, std::size_t depth,
                                 const DocumentSummaryOptions& options = {});

}  // namespace cosal
