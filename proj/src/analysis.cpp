#include "cosal/analysis.hpp"

#include <unsupported/Eigen/LevenbergMarquardt>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <tuple>

namespace cosal {

double best_linear_combination(const Vector& v1, const Vector& v2, const Vector& target) {
  if (v1.size() != v2.size() || v1.size() != target.size()) throw Error("vector dimensions differ");
  const Vector direction = v1 - v2;
  const double denom = direction.squaredNorm();
  if (denom == 0.0) throw Error("degenerate pair");
  return (target - v2).dot(direction) / denom;
}

std::vector<double> moving_average(std::span<const double> ys, double window_fraction) {
  const std::size_t n = ys.size();
  std::vector<double> out(n, 0.0);
  if (n == 0) return out;
  const auto window = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::lround(window_fraction * static_cast<double>(n))));
  const std::size_t before = (window - 1) / 2;
  const std::size_t after = window - 1 - before;
  std::vector<double> prefix(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + ys[i];
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i >= before ? i - before : 0;
    const std::size_t hi = std::min(n, i + after + 1);
    out[i] = (prefix[hi] - prefix[lo]) / static_cast<double>(hi - lo);
  }
  return out;
}

PhraseCurve phrase_curve(const EmbeddingTable& phrases, const ContextModel& model,
                         double window_fraction) {
  PhraseCurve curve;
  for (std::size_t row = 0; row < phrases.size(); ++row) {
    const auto& token = phrases.token(row);
    const auto split = token.find('_');
    if (split == std::string::npos || split == 0 || split + 1 == token.size()) continue;
    ++curve.bigrams;
    const auto first = phrases.find(std::string_view(token).substr(0, split));
    const auto second = phrases.find(std::string_view(token).substr(split + 1));
    if (!first || !second) {
      ++curve.skipped;
      continue;
    }
    const Vector v1 = phrases.vector(*first);
    const Vector v2 = phrases.vector(*second);
    if ((v1 - v2).squaredNorm() == 0.0) {
      ++curve.skipped;
      continue;
    }
    const double d1 = cosal(model, v1);
    const double d2 = cosal(model, v2);
    PhraseRow r;
    r.phrase = token;
    r.x = d1 + d2 > 0.0 ? d1 / (d1 + d2) : 0.5;
    r.y = best_linear_combination(v1, v2, phrases.vector(row));
    curve.rows.push_back(std::move(r));
  }
  std::sort(curve.rows.begin(), curve.rows.end(), [](const PhraseRow& a, const PhraseRow& b) {
    return std::tie(a.x, a.phrase) < std::tie(b.x, b.phrase);
  });
  std::vector<double> ys;
  ys.reserve(curve.rows.size());
  for (const auto& r : curve.rows) ys.push_back(r.y);
  const auto smoothed = moving_average(ys, window_fraction);
  for (std::size_t i = 0; i < curve.rows.size(); ++i) curve.rows[i].moving_average = smoothed[i];
  return curve;
}

namespace {

double rms_of(const CurveFit& fit, std::span<const double> xs, std::span<const double> ys) {
  double sum = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = evaluate_fit(fit, xs[i]) - ys[i];
    sum += r * r;
  }
  return std::sqrt(sum / static_cast<double>(xs.size()));
}

double cdf(double z, bool logistic) {
  return logistic ? 1.0 / (1.0 + std::exp(-z)) : 0.5 * (1.0 + std::erf(z));
}

double cdf_slope(double z, bool logistic) {
  if (logistic) {
    const double s = 1.0 / (1.0 + std::exp(-z));
    return s * (1.0 - s);
  }
  return std::exp(-z * z) / std::sqrt(std::numbers::pi);
}

}  // namespace

double evaluate_fit(const CurveFit& fit, double x) {
  if (fit.family == "linear") return fit.params[0] * x + fit.params[1];
  const double z = (x - fit.params[0]) / fit.params[2];
  return fit.params[3] + fit.params[1] * (cdf(z, fit.family == "logistic") - 0.5);
}

CurveFit fit_linear(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2) throw Error("linear fit needs at least 2 points");
  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  const double slope = sxx > 0.0 ? sxy / sxx : 0.0;
  CurveFit fit{"linear", {slope, my - slope * mx}, 0.0};
  fit.rms = rms_of(fit, xs, ys);
  return fit;
}

namespace {

// Residuals of y = offset + vertical * (S((x - midpoint) / horizontal) - 0.5)
// over theta = (midpoint, vertical, horizontal, offset).
struct SigmoidResiduals : Eigen::DenseFunctor<double> {
  std::span<const double> xs;
  std::span<const double> ys;
  bool logistic;

  SigmoidResiduals(std::span<const double> x, std::span<const double> y, bool is_logistic)
      : Eigen::DenseFunctor<double>(4, static_cast<int>(x.size())), xs(x), ys(y), logistic(is_logistic) {}

  int operator()(const InputType& theta, ValueType& residuals) const {
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double z = (xs[i] - theta[0]) / theta[2];
      residuals(static_cast<Eigen::Index>(i)) = theta[3] + theta[1] * (cdf(z, logistic) - 0.5) - ys[i];
    }
    return 0;
  }

  int df(const InputType& theta, JacobianType& jac) const {
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const auto r = static_cast<Eigen::Index>(i);
      const double z = (xs[i] - theta[0]) / theta[2];
      const double ds = cdf_slope(z, logistic);
      jac(r, 0) = -theta[1] * ds / theta[2];
      jac(r, 1) = cdf(z, logistic) - 0.5;
      jac(r, 2) = -theta[1] * ds * z / theta[2];
      jac(r, 3) = 1.0;
    }
    return 0;
  }
};

}  // namespace

CurveFit fit_sigmoid(std::span<const double> xs, std::span<const double> ys, SigmoidFamily family) {
  if (xs.size() != ys.size() || xs.size() < 4) throw Error("sigmoid fit needs at least 4 points");
  const bool logistic = family == SigmoidFamily::logistic;
  const std::string name = logistic ? "logistic" : "erf";

  CurveFit best{name, {}, std::numeric_limits<double>::infinity()};
  // The problem is not convex; start from a few horizontal scales.
  for (double start_h : {0.05, 0.11, 0.3}) {
    SigmoidResiduals residuals(xs, ys, logistic);
    Eigen::LevenbergMarquardt<SigmoidResiduals> solver(residuals);
    Eigen::VectorXd theta(4);
    theta << 0.5, 0.78, start_h, 0.5;
    solver.minimize(theta);
    if (!theta.allFinite() || theta[2] == 0.0) continue;
    if (theta[2] < 0.0) {
      // S(-z) - 0.5 = -(S(z) - 0.5): the same curve with both signs flipped.
      theta[2] = -theta[2];
      theta[1] = -theta[1];
    }
    CurveFit current{name, {theta[0], theta[1], theta[2], theta[3]}, 0.0};
    current.rms = rms_of(current, xs, ys);
    if (current.rms < best.rms) best = std::move(current);
  }
  if (!std::isfinite(best.rms)) throw Error("sigmoid fit did not produce finite parameters");
  return best;
}

std::vector<ScatterRow> cosal_vs_tfidf(std::span<const std::vector<Tokens>> documents,
                                       const EmbeddingTable& table, const ScatterOptions& options) {
  if (documents.empty()) throw Error("corpus has no documents");
  std::vector<Tokens> flat;
  std::vector<Vector> corpus_vectors;
  flat.reserve(documents.size());
  for (const auto& doc : documents) {
    auto& words = flat.emplace_back();
    for (const auto& sentence : doc) {
      words.insert(words.end(), sentence.begin(), sentence.end());
      for (auto& v : lookup_all(table, sentence, options.train.oov)) corpus_vectors.push_back(std::move(v));
    }
  }
  const MomentStats corpus = accumulate_stats(corpus_vectors);
  const TfIdfModel tfidf(flat, options.tf);

  std::vector<ScatterRow> rows;
  for (std::size_t d = 0; d < documents.size(); ++d) {
    const ContextModel model = train_context(documents[d], table, corpus, options.train);
    std::vector<std::pair<std::string, std::size_t>> terms(tfidf.counts(d).begin(), tfidf.counts(d).end());
    std::sort(terms.begin(), terms.end());
    for (const auto& [term, count] : terms) {
      if (count < options.min_count) continue;
      auto score = score_token(model, table, term, options.train.oov);
      if (!score) continue;
      rows.push_back(ScatterRow{d, term, count, tfidf_score(tfidf, term, d), *score});
    }
  }
  return rows;
}

namespace {

std::vector<double> average_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

double spearman(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2) throw Error("spearman needs paired samples");
  const auto rx = average_ranks(xs);
  const auto ry = average_ranks(ys);
  const double n = static_cast<double>(rx.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace cosal
