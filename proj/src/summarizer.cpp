#include "cosal/summarizer.hpp"

#include "cosal/adjusted_distance.hpp"

#include <boost/math/tools/toms748_solve.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <numbers>
#include <optional>
#include <queue>
#include <set>
#include <tuple>

namespace cosal {

ConvergenceError::ConvergenceError(const std::string& message, Vector last_iterate,
                                   std::vector<double> history)
    : Error(message), last_(std::move(last_iterate)), history_(std::move(history)) {}

RemovalResult remove_component(const ContextModel& model, const Vector& target, const Vector& part,
                               const RemovalOptions& options) {
  if (!target.allFinite() || !part.allFinite()) throw Error("non-finite vector in component removal");
  if (target.size() != part.size()) throw Error("vector dimensions differ");

  const double target_norm = target.norm();
  const double part_norm = part.norm();
  RemovalResult result;
  result.residual = Vector::Zero(target.size());
  if (target_norm == 0.0) return result;
  if (part_norm > 0.0 && target.dot(part) / (target_norm * part_norm) >= 1.0 - 1e-12) {
    // Nothing of the target is left once a parallel part is removed.
    return result;
  }

  const double part_salience = cosal(model, part);
  const double tt = target_norm * target_norm;
  const double tp = target.dot(part);
  const double pp = part_norm * part_norm;

  // Residuals implied by a guess d2 for their CoSal. The target is a
  // normalized sum, so its scale s solves ||s t - w1 p|| = w2 ||t||, a
  // quadratic with up to two roots. Empty when neither root is real.
  struct Branches {
    Vector plus, minus;
    bool real = false;
  };
  auto residuals_for = [&](double d2) {
    const double total = part_salience + d2;
    const double x = total > 0.0 ? part_salience / total : 0.5;
    const double w_part = sigmoid_weight(x, options.params);
    const double w_rest = sigmoid_weight(1.0 - x, options.params);
    const double half_b = w_part * tp;
    const double disc = half_b * half_b - tt * (w_part * w_part * pp - w_rest * w_rest * tt);
    Branches out;
    if (disc < 0.0) return out;
    out.real = true;
    out.plus = ((half_b + std::sqrt(disc)) / tt * target - w_part * part) / w_rest;
    out.minus = ((half_b - std::sqrt(disc)) / tt * target - w_part * part) / w_rest;
    return out;
  };
  auto relative_change = [](double from, double to) {
    return std::abs(to - from) / std::max(std::abs(from), std::numeric_limits<double>::min());
  };

  std::vector<double> history;
  int iteration = 0;
  Vector last = target;
  // Fixed-point check: d2 = cosal(r) must reproduce r through the weights.
  auto fixed_point = [&](const Vector& r) -> std::optional<RemovalResult> {
    ++iteration;
    const double d2 = cosal(model, r);
    const auto branches = residuals_for(d2);
    if (!branches.real) return std::nullopt;
    const Vector& next = (branches.plus - r).norm() <= (branches.minus - r).norm() ? branches.plus : branches.minus;
    const double updated = cosal(model, next);
    history.push_back(updated);
    last = next;
    if (!(relative_change(d2, updated) < options.tolerance)) return std::nullopt;
    RemovalResult out;
    out.residual = next;
    out.residual_salience = updated;
    out.iterations = iteration;
    return out;
  };

  // The first iterate from the context's average CoSal.
  const double start = model.mean_salience > 0.0 ? model.mean_salience : part_salience;
  if (const auto first = residuals_for(start); first.real) {
    ++iteration;
    const double updated = cosal(model, first.plus);
    history.push_back(updated);
    last = first.plus;
    if (relative_change(start, updated) < options.tolerance) {
      result.residual = first.plus;
      result.residual_salience = updated;
      result.iterations = iteration;
      return result;
    }
  }

  // Several residuals can reproduce the target exactly. Every candidate has
  // the target's norm and lies in the plane of target and part, on the far
  // side of the target from the part, so it is searched by angle there.
  const Vector u1 = target / target_norm;
  const Vector off = part - part.dot(u1) * u1;
  const double off_norm = off.norm();
  const double span = std::atan2(off_norm, part.dot(u1));  // angle between part and target
  const double reach = std::numbers::pi - span;
  const Vector u2 = off_norm > 0.0 ? Vector(-off / off_norm) : Vector::Zero(target.size());
  auto residual_at = [&](double theta) -> Vector {
    return target_norm * (std::cos(theta) * u1 + std::sin(theta) * u2);
  };
  // Sideways component of the forward combination; zero when it points along the target.
  auto sideways = [&](double theta) {
    ++iteration;
    const Vector r = residual_at(theta);
    const double salience = cosal(model, r);
    history.push_back(salience);
    last = r;
    const double total = part_salience + salience;
    const double x = total > 0.0 ? part_salience / total : 0.5;
    const Vector v = sigmoid_weight(x, options.params) * part + sigmoid_weight(1.0 - x, options.params) * r;
    return v.dot(u2) / v.norm();
  };

  // Bracket sign changes on an even grid and keep the one whose residual
  // is closest to the plain rejection of the target from the part.
  constexpr int kGrid = 36;
  const Vector rejection = target - (tp / pp) * part;
  struct Bracket {
    double lo, hi, f_lo, f_hi, alignment;
  };
  std::optional<Bracket> best;
  double prev_theta = 0.0, prev_f = -1.0;  // the target itself lies on the part's side
  bool prev_known = false;
  for (int i = 1; i <= kGrid && reach > 0.0 && iteration < options.max_iterations; ++i) {
    const double theta = reach * i / kGrid * (1.0 - 1e-9);
    const double f = sideways(theta);
    if ((f > 0.0) != (prev_f > 0.0)) {
      const Vector r = residual_at(0.5 * (prev_theta + theta));
      const double alignment = r.dot(rejection) / (r.norm() * rejection.norm());
      if (!best || alignment > best->alignment) best = Bracket{prev_theta, theta, prev_known ? prev_f : std::numeric_limits<double>::quiet_NaN(), f, alignment};
    }
    prev_theta = theta;
    prev_f = f;
    prev_known = true;
  }

  if (best && iteration + 1 < options.max_iterations) {
    if (std::isnan(best->f_lo)) {
      // The bracket starts at the target, where only the sign was assumed.
      best->f_lo = sideways(best->lo);
      if ((best->f_lo > 0.0) == (best->f_hi > 0.0)) best->lo = best->hi;
    }
    auto budget = static_cast<std::uintmax_t>(std::max(1, options.max_iterations - iteration - 1));
    double theta = 0.5 * (best->lo + best->hi);
    if (best->lo < best->hi) {
      try {
        const auto root = boost::math::tools::toms748_solve(sideways, best->lo, best->hi, best->f_lo, best->f_hi,
                                                            boost::math::tools::eps_tolerance<double>(40), budget);
        theta = 0.5 * (root.first + root.second);
      } catch (const boost::math::evaluation_error&) {
      }
    }
    if (const auto done = fixed_point(residual_at(theta))) return *done;
  }

  std::string diagnostic;
  if (history.size() >= 3) {
    const double last_step = history[history.size() - 1] - history[history.size() - 2];
    const double prev_step = history[history.size() - 2] - history[history.size() - 3];
    diagnostic = last_step * prev_step < 0.0 ? " (oscillating)" : " (drifting)";
  }
  throw ConvergenceError("component removal did not converge in " +
                             std::to_string(options.max_iterations) + " iterations" + diagnostic,
                         std::move(last), std::move(history));
}

namespace {

// Whitened, mean-centred vocabulary so each candidate scan is one pass over
// the table instead of a triangular solve per word.
struct WhitenedVocabulary {
  RowMatrix centred;   // rows: L^-1 (v - mean)
  Vector salience;     // row norms, i.e. cosal of each word

  WhitenedVocabulary(const ContextModel& model, const EmbeddingTable& table) {
    Matrix shifted = table.matrix().transpose();
    shifted.colwise() -= model.mean;
    model.metric.factor().triangularView<Eigen::Lower>().solveInPlace(shifted);
    centred = shifted.transpose();
    salience = centred.rowwise().norm();
  }
};

struct SearchNode {
  std::vector<std::size_t> rows;
  std::vector<double> trace;
  Vector parent_residual;
  double distance = std::numeric_limits<double>::infinity();
  std::string key;  // tokens of the multiset, sorted and joined
  std::size_t order = 0;
};

std::string multiset_key(const EmbeddingTable& table, std::vector<std::size_t> rows) {
  std::vector<std::string_view> tokens;
  tokens.reserve(rows.size());
  for (auto r : rows) tokens.push_back(table.token(r));
  std::sort(tokens.begin(), tokens.end());
  std::string key;
  for (auto t : tokens) {
    key.append(t);
    key.push_back('\x1f');
  }
  return key;
}

SummaryResult to_result(const EmbeddingTable& table, const SearchNode& node, bool goal,
                        std::size_t expansions) {
  SummaryResult out;
  out.indices = node.rows;
  for (auto r : node.rows) out.tokens.push_back(table.token(r));
  out.trace = node.trace;
  out.final_distance = node.distance;
  out.best_length = node.rows.size();
  out.reached_goal = goal;
  out.expansions = expansions;
  return out;
}

}  // namespace

SummaryResult summarize_sentence(const ContextModel& model, const EmbeddingTable& table,
                                 const Vector& target, const SentenceSearchOptions& options) {
  if (table.size() == 0) throw Error("empty embedding table");
  if (static_cast<std::size_t>(target.size()) != table.dim()) {
    throw Error("target dimension does not match table");
  }
  if (!(options.radius > 0.0)) throw Error("search radius must be positive");
  if (options.beam == 0) throw Error("beam must be positive");

  const WhitenedVocabulary vocab(model, table);
  RemovalOptions removal;
  removal.params = options.params;

  auto worse = [](const SearchNode* a, const SearchNode* b) {
    return std::tie(a->distance, a->key, a->order) > std::tie(b->distance, b->key, b->order);
  };
  std::vector<std::unique_ptr<SearchNode>> arena;
  std::priority_queue<SearchNode*, std::vector<SearchNode*>, decltype(worse)> open(worse);
  std::set<std::string> seen;

  auto& root = arena.emplace_back(std::make_unique<SearchNode>());
  root->parent_residual = target;
  open.push(root.get());
  const SearchNode* best = nullptr;

  std::size_t expansions = 0;
  while (!open.empty()) {
    SearchNode* node = open.top();
    open.pop();
    if (!node->rows.empty() && node->distance <= options.radius) {
      return to_result(table, *node, true, expansions);
    }
    if (expansions >= options.node_budget) break;
    if (node->rows.size() >= options.max_words) continue;
    ++expansions;

    Vector residual = node->parent_residual;
    if (!node->rows.empty()) {
      try {
        residual = remove_component(model, node->parent_residual,
                                    table.vector(node->rows.back()), removal)
                       .residual;
      } catch (const ConvergenceError& e) {
        residual = e.last_iterate();
      }
    }
    if (residual.norm() == 0.0) continue;

    const Vector z = model.metric.whiten(residual - model.mean);
    const double a = z.norm();
    if (!(a > 0.0)) continue;
    const Vector gaps = (vocab.centred.rowwise() - z.transpose()).rowwise().norm();
    const auto candidates = nearest_rows(table, options.beam, [&](std::size_t row) {
      const double b = vocab.salience(static_cast<Eigen::Index>(row));
      if (!(b > 0.0)) return std::numeric_limits<double>::infinity();
      return law_of_cosines(a, b, gaps(static_cast<Eigen::Index>(row))).distance;
    });

    for (const auto& candidate : candidates) {
      if (!std::isfinite(candidate.distance)) continue;
      auto rows = node->rows;
      rows.push_back(candidate.row);
      std::string key = multiset_key(table, rows);
      if (seen.count(key) != 0) continue;

      std::vector<Vector> vectors;
      vectors.reserve(rows.size());
      for (auto r : rows) vectors.push_back(table.vector(r));
      double distance = std::numeric_limits<double>::infinity();
      try {
        distance = adjusted_distance(model, embed_vectors(model, vectors, EmbedMode::gobow, options.params),
                                     target);
      } catch (const Error&) {
        continue;
      }
      if (options.step_fraction > 0.0 && std::isfinite(node->distance) &&
          distance > (1.0 - options.step_fraction) * node->distance) {
        continue;
      }
      seen.insert(key);
      auto& child = arena.emplace_back(std::make_unique<SearchNode>());
      child->rows = std::move(rows);
      child->trace = node->trace;
      child->trace.push_back(distance);
      child->distance = distance;
      child->key = std::move(key);
      child->order = arena.size();
      child->parent_residual = residual;
      if (best == nullptr || worse(best, child.get())) best = child.get();
      open.push(child.get());
    }
  }

  if (best == nullptr) return to_result(table, *root, false, expansions);
  return to_result(table, *best, best->distance <= options.radius, expansions);
}

Vector embed_document(const ContextModel& model, std::span<const Vector> sentence_vectors,
                      const SigmoidParams& params) {
  if (sentence_vectors.empty()) throw Error("document has no sentences");
  return embed_vectors(model, sentence_vectors, EmbedMode::gobow, params);
}

SummaryResult summarize_document(const ContextModel& model, const EmbeddingTable& table,
                                 std::span<const Tokens> sentences, std::size_t depth,
                                 const DocumentSummaryOptions& options) {
  if (sentences.empty()) throw Error("document has no sentences");
  if (depth == 0) throw Error("depth must be at least 1");

  std::vector<Vector> vectors;
  std::vector<std::size_t> source_index;
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    auto found = lookup_all(table, sentences[i], options.oov);
    if (found.empty()) continue;
    vectors.push_back(embed_vectors(model, found, EmbedMode::gobow, options.params));
    source_index.push_back(i);
  }
  if (vectors.empty()) throw Error("document has no in-vocabulary sentences");
  if (depth > vectors.size()) {
    warn("depth " + std::to_string(depth) + " exceeds the " + std::to_string(vectors.size()) +
         " usable sentences");
    depth = vectors.size();
  }

  const Vector document = embed_document(model, vectors, options.params);
  RemovalOptions removal;
  removal.params = options.params;

  SummaryResult out;
  std::vector<bool> used(vectors.size(), false);
  std::vector<Vector> picked;
  Vector residual = document;
  for (std::size_t step = 0; step < depth; ++step) {
    std::size_t choice = vectors.size();
    double choice_distance = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < vectors.size(); ++i) {
      if (used[i]) continue;
      double d = std::numeric_limits<double>::infinity();
      try {
        d = adjusted_distance(model, residual, vectors[i]);
      } catch (const Error&) {
      }
      if (choice == vectors.size() || d < choice_distance) {
        choice = i;
        choice_distance = d;
      }
    }
    used[choice] = true;
    picked.push_back(vectors[choice]);
    out.indices.push_back(source_index[choice]);
    out.trace.push_back(adjusted_distance(model, embed_document(model, picked, options.params), document));

    try {
      residual = remove_component(model, residual, vectors[choice], removal).residual;
    } catch (const ConvergenceError& e) {
      warn(e.what());
      residual = e.last_iterate();
    }
  }

  const auto best = std::min_element(out.trace.begin(), out.trace.end());
  out.final_distance = *best;
  out.best_length = static_cast<std::size_t>(best - out.trace.begin()) + 1;
  out.reached_goal = true;
  out.expansions = depth;
  return out;
}

}  // namespace cosal
