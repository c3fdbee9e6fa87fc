#pragma once

#include "cosal/salience.hpp"

#include <span>
#include <string_view>
#include <vector>

namespace cosal {

enum class SigmoidFamily { logistic, erf };

/// Word-importance sigmoid through (midpoint, 0.5). The defaults are the
/// global-context fit; `slope_c` is the linear slope used for sentence-average weighting.
struct SigmoidParams {
  double midpoint = 0.5;
  double vertical = 0.78;
  double horizontal = 0.11;
  double slope_c = 1.87;
  SigmoidFamily family = SigmoidFamily::logistic;
};

/// logistic: 0.5 + vertical * (L((x - midpoint) / horizontal) - 0.5)
/// erf:      0.5 + vertical / 2 * erf((x - midpoint) / horizontal)
double sigmoid_weight(double x, const SigmoidParams& params = {});

/// gobow: distances to the context mean, sigmoid weights.
/// sbow:  distances to the normalized sentence average, linear weights c (x - 0.5) + 0.5.
enum class EmbedMode { gobow, sbow };

EmbedMode parse_embed_mode(std::string_view name);
std::string_view to_string(EmbedMode mode);

/// Per-word weights. Distances are divided by twice their mean, so the
/// weight inputs average 0.5; if every distance is zero they are all 0.5.
std::vector<double> embedding_weights(const ContextModel& model, std::span<const Vector> vectors,
                                      EmbedMode mode, const SigmoidParams& params = {});

/// Unit-norm weighted bag of the vectors. Throws for an empty span and for a
/// zero weighted sum ("degenerate sentence").
Vector embed_vectors(const ContextModel& model, std::span<const Vector> vectors, EmbedMode mode,
                     const SigmoidParams& params = {});

/// Throws when none of the tokens has a vector.
Vector embed_sentence(const ContextModel& model, const EmbeddingTable& table,
                      std::span<const std::string> tokens, EmbedMode mode,
                      const SigmoidParams& params = {}, OovPolicy policy = {});

}  // namespace cosal
