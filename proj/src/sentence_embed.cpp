#include "cosal/sentence_embed.hpp"

#include <cmath>

namespace cosal {

double sigmoid_weight(double x, const SigmoidParams& params) {
  const double z = (x - params.midpoint) / params.horizontal;
  if (params.family == SigmoidFamily::erf) return 0.5 + 0.5 * params.vertical * std::erf(z);
  return 0.5 + params.vertical * (1.0 / (1.0 + std::exp(-z)) - 0.5);
}

EmbedMode parse_embed_mode(std::string_view name) {
  if (name == "gobow") return EmbedMode::gobow;
  if (name == "sbow") return EmbedMode::sbow;
  throw Error("unknown embedding mode '" + std::string(name) + "'");
}

std::string_view to_string(EmbedMode mode) { return mode == EmbedMode::gobow ? "gobow" : "sbow"; }

std::vector<double> embedding_weights(const ContextModel& model, std::span<const Vector> vectors,
                                      EmbedMode mode, const SigmoidParams& params) {
  if (vectors.empty()) throw Error("sentence has no in-vocabulary words");
  if (!(params.vertical > 0.0 && params.horizontal > 0.0)) throw Error("sigmoid scales must be positive");

  Vector reference = model.mean;
  if (mode == EmbedMode::sbow) {
    Vector average = Vector::Zero(vectors.front().size());
    for (const auto& v : vectors) average += v;
    const double norm = average.norm();
    reference = norm > 0.0 ? Vector(average / norm) : average;
  }

  std::vector<double> ratios;
  ratios.reserve(vectors.size());
  double total = 0.0;
  for (const auto& v : vectors) {
    ratios.push_back(m_distance(model.metric, reference, v));
    total += ratios.back();
  }
  // Dividing by twice the mean keeps the sigmoid input centred on 0.5 for any sentence length.
  const double scale = 2.0 * total / static_cast<double>(vectors.size());
  for (double& r : ratios) {
    r = scale > 0.0 ? r / scale : 0.5;
    r = mode == EmbedMode::gobow ? sigmoid_weight(r, params) : params.slope_c * (r - 0.5) + 0.5;
  }
  return ratios;
}

Vector embed_vectors(const ContextModel& model, std::span<const Vector> vectors, EmbedMode mode,
                     const SigmoidParams& params) {
  const auto weights = embedding_weights(model, vectors, mode, params);
  Vector sum = Vector::Zero(vectors.front().size());
  for (std::size_t i = 0; i < vectors.size(); ++i) sum += weights[i] * vectors[i];
  const double norm = sum.norm();
  if (!(norm > 0.0)) throw Error("degenerate sentence");
  return sum / norm;
}

Vector embed_sentence(const ContextModel& model, const EmbeddingTable& table,
                      std::span<const std::string> tokens, EmbedMode mode,
                      const SigmoidParams& params, OovPolicy policy) {
  const auto vectors = lookup_all(table, tokens, policy);
  if (vectors.empty()) throw Error("sentence has no in-vocabulary words");
  return embed_vectors(model, vectors, mode, params);
}

}  // namespace cosal
