#include "cosal/embedding_store.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <queue>
#include <tuple>

namespace cosal {

OovMode parse_oov_mode(std::string_view name) {
  if (name == "skip") return OovMode::skip;
  if (name == "zero") return OovMode::zero;
  if (name == "lowercase-fallback" || name == "lowercase") return OovMode::lowercase_fallback;
  throw Error("unknown OOV policy '" + std::string(name) + "'");
}

std::string_view to_string(OovMode mode) {
  switch (mode) {
    case OovMode::skip: return "skip";
    case OovMode::zero: return "zero";
    case OovMode::lowercase_fallback: return "lowercase-fallback";
  }
  return "skip";
}

EmbeddingTable::EmbeddingTable(std::vector<std::string> tokens, RowMatrix vectors, bool normalize)
    : normalized_(normalize) {
  if (static_cast<Eigen::Index>(tokens.size()) != vectors.rows()) {
    throw Error("token count does not match vector rows");
  }
  if (vectors.cols() == 0) throw Error("embedding dimension must be positive");
  if (!vectors.allFinite()) throw Error("embedding table contains non-finite values");

  std::vector<Eigen::Index> keep;
  keep.reserve(tokens.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (index_.count(tokens[i]) != 0) continue;
    const auto row = static_cast<Eigen::Index>(i);
    if (normalize && vectors.row(row).norm() == 0.0) {
      warn("dropping zero vector for '" + tokens[i] + "' (cannot normalize)");
      continue;
    }
    index_.emplace(tokens[i], keep.size());
    keep.push_back(row);
  }
  vectors_.resize(static_cast<Eigen::Index>(keep.size()), vectors.cols());
  tokens_.reserve(keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i) {
    vectors_.row(static_cast<Eigen::Index>(i)) = vectors.row(keep[i]);
    tokens_.push_back(std::move(tokens[static_cast<std::size_t>(keep[i])]));
  }
  if (normalize) vectors_.rowwise().normalize();
}

std::optional<std::size_t> EmbeddingTable::find(std::string_view token) const {
  auto it = index_.find(std::string(token));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) fields.push_back(line.substr(i, j - i));
    i = j;
  }
  return fields;
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end;
}

}  // namespace

EmbeddingTable load_table(const std::filesystem::path& path, bool normalize) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  const std::string source = path.string();

  std::vector<std::string> tokens;
  std::vector<double> values;
  std::size_t dim = 0;
  std::size_t line_no = 0;
  bool first = true;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    auto fields = split_fields(line);
    if (fields.empty()) continue;
    if (first) {
      first = false;
      std::size_t count = 0;
      std::size_t header_dim = 0;
      if (fields.size() == 2 && parse_number(fields[0], count) &&
          parse_number(fields[1], header_dim)) {
        if (header_dim == 0) throw ParseError(source, line_no, "header declares zero dimension");
        dim = header_dim;
        tokens.reserve(count);
        values.reserve(count * dim);
        continue;
      }
    }
    if (dim == 0) dim = fields.size() - 1;
    if (dim == 0) throw ParseError(source, line_no, "token without vector components");
    if (fields.size() != dim + 1) {
      throw ParseError(source, line_no,
                       "expected " + std::to_string(dim) + " components, found " +
                           std::to_string(fields.size() - 1));
    }
    tokens.emplace_back(fields[0]);
    for (std::size_t k = 1; k <= dim; ++k) {
      double v = 0.0;
      if (!parse_number(fields[k], v) || !std::isfinite(v)) {
        throw ParseError(source, line_no, "bad component '" + std::string(fields[k]) + "'");
      }
      values.push_back(v);
    }
  }
  if (tokens.empty()) throw ParseError(source, 0, "empty embedding file");

  RowMatrix matrix = Eigen::Map<RowMatrix>(values.data(), static_cast<Eigen::Index>(tokens.size()),
                                           static_cast<Eigen::Index>(dim));
  return EmbeddingTable(std::move(tokens), std::move(matrix), normalize);
}

std::optional<Vector> lookup(const EmbeddingTable& table, std::string_view token, OovPolicy policy) {
  if (auto row = table.find(token)) return table.vector(*row);
  switch (policy.mode) {
    case OovMode::skip:
      return std::nullopt;
    case OovMode::zero:
      return Vector::Zero(static_cast<Eigen::Index>(table.dim()));
    case OovMode::lowercase_fallback: {
      std::string lower(token);
      for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      if (auto row = table.find(lower)) return table.vector(*row);
      return std::nullopt;
    }
  }
  return std::nullopt;
}

std::vector<Vector> lookup_all(const EmbeddingTable& table, std::span<const std::string> tokens,
                               OovPolicy policy, std::size_t* skipped) {
  std::vector<Vector> out;
  out.reserve(tokens.size());
  std::size_t missing = 0;
  for (const auto& token : tokens) {
    if (auto v = lookup(table, token, policy)) {
      out.push_back(std::move(*v));
    } else {
      ++missing;
    }
  }
  if (skipped != nullptr) *skipped = missing;
  return out;
}

std::vector<Neighbor> nearest_rows(const EmbeddingTable& table, std::size_t k,
                                   const RowDistanceFn& distance) {
  if (k == 0) throw Error("k must be positive");
  k = std::min(k, table.size());
  // (distance, token) ordering; the heap top is the current worst kept entry.
  auto worse = [&](const std::pair<double, std::size_t>& a, const std::pair<double, std::size_t>& b) {
    return std::tie(a.first, table.token(a.second)) < std::tie(b.first, table.token(b.second));
  };
  std::priority_queue<std::pair<double, std::size_t>, std::vector<std::pair<double, std::size_t>>,
                      decltype(worse)>
      heap(worse);
  for (std::size_t row = 0; row < table.size(); ++row) {
    std::pair<double, std::size_t> entry{distance(row), row};
    if (heap.size() < k) {
      heap.push(entry);
    } else if (worse(entry, heap.top())) {
      heap.pop();
      heap.push(entry);
    }
  }
  std::vector<Neighbor> out(heap.size());
  for (std::size_t i = heap.size(); i-- > 0;) {
    const auto [d, row] = heap.top();
    heap.pop();
    out[i] = Neighbor{table.token(row), row, d};
  }
  return out;
}

std::vector<Neighbor> nearest(const EmbeddingTable& table, const Vector& query, std::size_t k,
                              const DistanceFn& distance) {
  if (static_cast<std::size_t>(query.size()) != table.dim()) {
    throw Error("query dimension does not match table");
  }
  return nearest_rows(table, k, [&](std::size_t row) { return distance(query, table.vector(row)); });
}

}  // namespace cosal
