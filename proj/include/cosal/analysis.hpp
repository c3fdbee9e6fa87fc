#pragma once

#include "cosal/salience.hpp"
#include "cosal/sentence_embed.hpp"

#include <span>
#include <string>
#include <vector>

namespace cosal {

/// Least-squares x minimizing || x v1 + (1 - x) v2 - target ||, unclamped.
double best_linear_combination(const Vector& v1, const Vector& v2, const Vector& target);

struct PhraseRow {
  std::string phrase;
  double x = 0.0;  // cosal(v1) / (cosal(v1) + cosal(v2))
  double y = 0.0;  // mixing coefficient of v1 in the phrase vector
  double moving_average = 0.0;
};

struct PhraseCurve {
  std::vector<PhraseRow> rows;  // sorted by x
  std::size_t bigrams = 0;
  std::size_t skipped = 0;
};

/// One row per "w1_w2" token whose unigrams are both present.
PhraseCurve phrase_curve(const EmbeddingTable& phrases, const ContextModel& model,
                         double window_fraction = 0.05);

/// Centered moving average over `ys`, window max(1, round(fraction * n)), truncated at the ends.
std::vector<double> moving_average(std::span<const double> ys, double window_fraction);

struct CurveFit {
  std::string family;          // "linear", "logistic" or "erf"
  std::vector<double> params;  // linear: slope, intercept; sigmoids: midpoint, vertical, horizontal, offset
  double rms = 0.0;
};

CurveFit fit_linear(std::span<const double> xs, std::span<const double> ys);
/// y = offset + vertical * (S((x - midpoint) / horizontal) - 0.5), S logistic or erf-based CDF,
/// fitted by Levenberg-Marquardt from the global-context defaults.
CurveFit fit_sigmoid(std::span<const double> xs, std::span<const double> ys, SigmoidFamily family);
double evaluate_fit(const CurveFit& fit, double x);

struct ScatterRow {
  std::size_t doc = 0;
  std::string token;
  std::size_t count = 0;
  double tfidf = 0.0;
  double cosal = 0.0;
};

struct ScatterOptions {
  TrainOptions train;
  TfScheme tf = TfScheme::natural;
  std::size_t min_count = 5;
};

/// Each document is its own context, blended with the covariance of the
/// whole corpus. Emits one row per (document, term) with count >= min_count.
std::vector<ScatterRow> cosal_vs_tfidf(std::span<const std::vector<Tokens>> documents,
                                       const EmbeddingTable& table,
                                       const ScatterOptions& options = {});

/// Spearman rank correlation with average ranks for ties.
double spearman(std::span<const double> xs, std::span<const double> ys);

}  // namespace cosal
