#include "cosal/context_stats.hpp"

#include <cmath>

namespace cosal {

MomentStats accumulate_stats(std::span<const Vector> vectors) {
  if (vectors.size() < 2) throw Error("need at least 2 vectors for covariance");
  const Eigen::Index dim = vectors.front().size();
  if (dim == 0) throw Error("zero-dimensional vectors");

  Vector mean = Vector::Zero(dim);
  Matrix m2 = Matrix::Zero(dim, dim);
  std::size_t count = 0;
  for (const auto& v : vectors) {
    if (v.size() != dim) throw Error("vectors differ in dimension");
    if (!v.allFinite()) throw Error("non-finite value in context vectors");
    ++count;
    const Vector before = v - mean;
    mean += before / static_cast<double>(count);
    const Vector after = v - mean;
    m2.noalias() += before * after.transpose();
  }
  MomentStats stats;
  stats.mean = std::move(mean);
  stats.covariance = m2 / static_cast<double>(count - 1);
  // The rank-one updates are only symmetric up to rounding.
  stats.covariance = (0.5 * (stats.covariance + stats.covariance.transpose())).eval();
  stats.count = count;
  return stats;
}

MomentStats accumulate_stats(const RowMatrix& rows) {
  std::vector<Vector> vectors;
  vectors.reserve(static_cast<std::size_t>(rows.rows()));
  for (Eigen::Index i = 0; i < rows.rows(); ++i) vectors.emplace_back(rows.row(i).transpose());
  return accumulate_stats(vectors);
}

BlendScheme parse_blend_scheme(std::string_view name) {
  if (name == "natural") return BlendScheme::natural;
  if (name == "recommended") return BlendScheme::recommended;
  if (name == "confidence") return BlendScheme::confidence;
  if (name == "product") return BlendScheme::product;
  throw Error("unknown blend scheme '" + std::string(name) + "'");
}

std::string_view to_string(BlendScheme scheme) {
  switch (scheme) {
    case BlendScheme::natural: return "natural";
    case BlendScheme::recommended: return "recommended";
    case BlendScheme::confidence: return "confidence";
    case BlendScheme::product: return "product";
  }
  return "confidence";
}

Matrix signed_sqrt(const Matrix& m) {
  return m.unaryExpr([](double x) { return std::copysign(std::sqrt(std::abs(x)), x); });
}

Matrix blend_covariances(const MomentStats& doc, const MomentStats& corpus, BlendScheme scheme,
                         double p) {
  if (doc.covariance.rows() != corpus.covariance.rows() ||
      doc.covariance.cols() != corpus.covariance.cols()) {
    throw Error("document and corpus covariance shapes differ");
  }
  if (scheme == BlendScheme::natural) return doc.covariance;
  if (scheme == BlendScheme::recommended) p = 0.5;
  if (!(p >= 0.0 && p <= 1.0)) throw Error("confidence p must lie in [0, 1]");

  const Matrix mixed = p * doc.covariance.cwiseAbs() + (1.0 - p) * corpus.covariance.cwiseAbs();
  if (scheme == BlendScheme::product) return mixed.cwiseProduct(corpus.covariance);
  return mixed.cwiseSqrt().cwiseProduct(signed_sqrt(corpus.covariance));
}

BlendedMetric::BlendedMetric(Matrix factor, double ridge, bool repaired)
    : factor_(std::move(factor)), ridge_(ridge), repaired_(repaired) {
  if (factor_.rows() != factor_.cols()) throw Error("metric factor must be square");
  for (Eigen::Index i = 0; i < factor_.rows(); ++i) {
    if (!(factor_(i, i) > 0.0)) throw Error("metric factor is not positive-definite");
  }
}

Vector BlendedMetric::whiten(const Vector& v) const {
  return factor_.triangularView<Eigen::Lower>().solve(v);
}

double BlendedMetric::distance(const Vector& a, const Vector& b) const {
  return whiten(a - b).norm();
}

Matrix BlendedMetric::reconstruct() const {
  const Matrix lower = factor_.triangularView<Eigen::Lower>();
  return lower * lower.transpose();
}

BlendedMetric build_metric(const Matrix& blended, double ridge_scale) {
  if (blended.rows() != blended.cols() || blended.rows() == 0) {
    throw Error("metric input must be a non-empty square matrix");
  }
  if (!blended.allFinite()) throw Error("metric input has non-finite entries");
  if (blended.cwiseAbs().maxCoeff() == 0.0) throw Error("degenerate context");

  const Matrix sym = 0.5 * (blended + blended.transpose());
  const auto dim = sym.rows();
  double ridge = ridge_scale * sym.trace() / static_cast<double>(dim);
  if (!(ridge > 0.0)) ridge = ridge_scale * sym.cwiseAbs().maxCoeff();

  const Matrix shifted = sym + ridge * Matrix::Identity(dim, dim);
  Eigen::LLT<Matrix> llt(shifted);
  if (llt.info() == Eigen::Success) {
    Matrix lower = llt.matrixL();
    if ((lower.diagonal().array() > 0.0).all()) return BlendedMetric(std::move(lower), ridge, false);
  }

  Eigen::SelfAdjointEigenSolver<Matrix> eig(sym);
  if (eig.info() != Eigen::Success) throw Error("eigen-decomposition of blended covariance failed");
  const Vector clipped = eig.eigenvalues().cwiseMax(ridge);
  Matrix repaired = eig.eigenvectors() * clipped.asDiagonal() * eig.eigenvectors().transpose();
  repaired = (0.5 * (repaired + repaired.transpose())).eval();
  Eigen::LLT<Matrix> second(repaired);
  if (second.info() != Eigen::Success) throw Error("degenerate context");
  warn("blended covariance was not positive-definite; clipped " +
       std::to_string((eig.eigenvalues().array() < ridge).count()) + " eigenvalues at " +
       std::to_string(ridge));
  return BlendedMetric(second.matrixL(), ridge, true);
}

double m_distance(const BlendedMetric& metric, const Vector& p1, const Vector& p2) {
  if (static_cast<std::size_t>(p1.size()) != metric.dim() ||
      static_cast<std::size_t>(p2.size()) != metric.dim()) {
    throw Error("vector dimension does not match metric");
  }
  return metric.distance(p1, p2);
}

}  // namespace cosal
