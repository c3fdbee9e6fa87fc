#pragma once

#include "cosal/core.hpp"

#include <span>
#include <string_view>

namespace cosal {

/// Sample mean and covariance (divisor count - 1) of a cloud of word vectors.
struct MomentStats {
  Vector mean;
  Matrix covariance;
  std::size_t count = 0;

  std::size_t dim() const noexcept { return static_cast<std::size_t>(mean.size()); }
};

/// Welford fold over the vectors. Needs at least two finite vectors of equal length.
MomentStats accumulate_stats(std::span<const Vector> vectors);
MomentStats accumulate_stats(const RowMatrix& rows);

/// How the document covariance is combined with the corpus (language) covariance.
///   natural      S_doc
///   recommended  sqrt((|S_doc| + |S_corp|) / 2) (.) signed_sqrt(S_corp)
///   confidence   sqrt(p |S_doc| + (1 - p) |S_corp|) (.) signed_sqrt(S_corp)
///   product      (p |S_doc| + (1 - p) |S_corp|) (.) S_corp, the variant without roots
/// |.| and the square roots are elementwise, (.) is the Hadamard product.
enum class BlendScheme { natural, recommended, confidence, product };

BlendScheme parse_blend_scheme(std::string_view name);
std::string_view to_string(BlendScheme scheme);

/// Elementwise sign(x) * sqrt(|x|).
Matrix signed_sqrt(const Matrix& m);

/// `p` is read only by the confidence and product schemes.
Matrix blend_covariances(const MomentStats& doc, const MomentStats& corpus, BlendScheme scheme,
                         double p = 0.5);

/// Mahalanobis metric held as the lower Cholesky factor L of A = blended + ridge * I,
/// so d(x, y) = || L^-1 (x - y) ||.
class BlendedMetric {
 public:
  BlendedMetric() = default;
  BlendedMetric(Matrix factor, double ridge, bool repaired);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(factor_.rows()); }
  const Matrix& factor() const noexcept { return factor_; }
  double ridge() const noexcept { return ridge_; }
  /// True when eigenvalue clipping was needed to reach a positive-definite matrix.
  bool repaired() const noexcept { return repaired_; }

  /// L^-1 v. Distances are Euclidean between whitened vectors.
  Vector whiten(const Vector& v) const;
  double distance(const Vector& a, const Vector& b) const;
  /// The factored matrix L L^T.
  Matrix reconstruct() const;

 private:
  Matrix factor_;
  double ridge_ = 0.0;
  bool repaired_ = false;
};

/// Symmetrizes, adds ridge = ridge_scale * trace / dim, and factors. When the
/// factorization fails the eigenvalues are clipped from below at the ridge.
/// Throws Error("degenerate context") for an all-zero matrix.
BlendedMetric build_metric(const Matrix& blended, double ridge_scale = 1e-6);

double m_distance(const BlendedMetric& metric, const Vector& p1, const Vector& p2);

}  // namespace cosal
