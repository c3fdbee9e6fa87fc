#pragma once

#include "cosal/core.hpp"

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace cosal {

enum class OovMode { skip, zero, lowercase_fallback };

struct OovPolicy {
  OovMode mode = OovMode::skip;
};

OovMode parse_oov_mode(std::string_view name);
std::string_view to_string(OovMode mode);

/// Token -> dense vector table. Immutable once built.
class EmbeddingTable {
 public:
  /// Rows of `vectors` pair with `tokens`. Duplicate tokens keep the first row.
  /// With `normalize`, rows are scaled to unit L2 norm and zero rows are dropped.
  EmbeddingTable(std::vector<std::string> tokens, RowMatrix vectors, bool normalize);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(vectors_.cols()); }
  std::size_t size() const noexcept { return tokens_.size(); }
  bool normalized() const noexcept { return normalized_; }

  std::optional<std::size_t> find(std::string_view token) const;
  const std::string& token(std::size_t row) const { return tokens_.at(row); }
  const std::vector<std::string>& tokens() const noexcept { return tokens_; }
  Vector vector(std::size_t row) const { return vectors_.row(static_cast<Eigen::Index>(row)).transpose(); }
  const RowMatrix& matrix() const noexcept { return vectors_; }

 private:
  std::vector<std::string> tokens_;
  RowMatrix vectors_;
  std::unordered_map<std::string, std::size_t> index_;
  bool normalized_;
};

/// Reads GloVe / fastText text vectors: optional "count dim" header, then
/// one token followed by dim floats per line.
EmbeddingTable load_table(const std::filesystem::path& path, bool normalize = true);

std::optional<Vector> lookup(const EmbeddingTable& table, std::string_view token,
                             OovPolicy policy = {});

/// Looks up every token, dropping absences. `skipped` receives the number dropped.
std::vector<Vector> lookup_all(const EmbeddingTable& table, std::span<const std::string> tokens,
                               OovPolicy policy = {}, std::size_t* skipped = nullptr);

struct Neighbor {
  std::string token;
  std::size_t row = 0;
  double distance = 0.0;
};

using DistanceFn = std::function<double(const Vector&, const Vector&)>;
using RowDistanceFn = std::function<double(std::size_t row)>;

/// Exact k smallest distances from `query` over the table, ascending, ties by token.
std::vector<Neighbor> nearest(const EmbeddingTable& table, const Vector& query, std::size_t k,
                              const DistanceFn& distance);

/// Same scan with a per-row scorer, for callers that cache per-row state.
std::vector<Neighbor> nearest_rows(const EmbeddingTable& table, std::size_t k,
                                   const RowDistanceFn& distance);

}  // namespace cosal
