#pragma once

#include "cosal/cosal.hpp"

#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

namespace testing {

inline std::filesystem::path data_dir() { return COSAL_DATA_DIR; }

// Silences library warnings for the lifetime of the object and counts them.
struct QuietWarnings {
  std::vector<std::string> seen;
  QuietWarnings() {
    cosal::set_warning_sink([this](std::string_view m) { seen.emplace_back(m); });
  }
  ~QuietWarnings() { cosal::set_warning_sink(nullptr); }
};

inline std::filesystem::path write_temp(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("cosal_test_" + name);
  std::ofstream(path) << content;
  return path;
}

inline cosal::Vector random_vector(std::mt19937_64& rng, Eigen::Index dim, double scale = 1.0) {
  std::normal_distribution<double> normal(0.0, scale);
  cosal::Vector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v(i) = normal(rng);
  return v;
}

inline std::vector<cosal::Vector> random_cloud(std::mt19937_64& rng, std::size_t count, Eigen::Index dim) {
  std::vector<cosal::Vector> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_vector(rng, dim));
  return out;
}

// Random symmetric positive-definite matrix.
inline cosal::Matrix random_spd(std::mt19937_64& rng, Eigen::Index dim) {
  cosal::Matrix a(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c) a.col(c) = random_vector(rng, dim);
  return a * a.transpose() + 0.5 * cosal::Matrix::Identity(dim, dim);
}

// A context model with the given metric matrix (factored exactly) and mean.
inline cosal::ContextModel model_with(const cosal::Matrix& metric_matrix, const cosal::Vector& mean,
                                      double mean_salience = 1.0) {
  cosal::ContextModel m;
  m.mean = mean;
  const Eigen::LLT<cosal::Matrix> llt(metric_matrix);
  m.metric = cosal::BlendedMetric(llt.matrixL(), 0.0, false);
  m.mean_salience = mean_salience;
  m.n = 100;
  m.p = 0.5;
  return m;
}

inline cosal::ContextModel identity_model(Eigen::Index dim) {
  return model_with(cosal::Matrix::Identity(dim, dim), cosal::Vector::Zero(dim));
}

// Oracle: explicit inverse and the quadratic form.
inline double oracle_mahalanobis(const cosal::Matrix& a, const cosal::Vector& x, const cosal::Vector& y) {
  const cosal::Vector d = x - y;
  return std::sqrt(d.dot(a.inverse() * d));
}

// Shared fixture: the bundled vectors, corpus moments and a model for a context file.
struct Bundled {
  cosal::EmbeddingTable table;
  cosal::MomentStats corpus;

  Bundled()
      : table(cosal::load_table(data_dir() / "vectors.vec")),
        corpus(cosal::load_stats(data_dir() / "corpus_stats.json")) {}

  std::vector<cosal::Tokens> sentences(const std::filesystem::path& file) const {
    std::vector<cosal::Tokens> out;
    for (const auto& s : cosal::split_sentences(cosal::read_file(file))) {
      auto t = cosal::tokenize(s);
      if (!t.empty()) out.push_back(std::move(t));
    }
    return out;
  }

  cosal::ContextModel train(const std::filesystem::path& file, cosal::TrainOptions options = {}) const {
    return cosal::train_context(sentences(file), table, corpus, options);
  }
};

}  // namespace testing
