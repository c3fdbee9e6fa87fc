#include "cosal/eval_harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <set>

namespace cosal {

bool LabeledDataset::is_pair_task() const {
  return !records.empty() && records.front().pair.has_value();
}

std::vector<std::string> LabeledDataset::sentence_stream() const {
  std::vector<std::string> out;
  out.reserve(records.size() * 2);
  for (const auto& r : records) {
    out.push_back(r.text);
    if (r.pair) out.push_back(*r.pair);
  }
  return out;
}

namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    out.push_back(line.substr(start, tab == std::string_view::npos ? std::string_view::npos : tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return out;
}

bool is_integer(std::string_view s) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

LabeledDataset load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  const std::string source = path.string();

  struct Raw {
    std::string label;
    std::string text;
    std::optional<std::string> pair;
  };
  std::vector<Raw> raw;
  std::string line;
  std::size_t line_no = 0;
  std::optional<bool> pairs;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const auto fields = split_tabs(line);
    if (fields.size() < 2) throw ParseError(source, line_no, "expected label<TAB>text");
    if (fields.size() > 3) throw ParseError(source, line_no, "too many fields");
    if (fields[0].empty()) throw ParseError(source, line_no, "empty label");
    for (std::size_t k = 1; k < fields.size(); ++k) {
      if (fields[k].find_first_not_of(' ') == std::string_view::npos) {
        throw ParseError(source, line_no, "empty text");
      }
    }
    const bool is_pair = fields.size() == 3;
    if (pairs && *pairs != is_pair) throw ParseError(source, line_no, "mixed single and pair records");
    pairs = is_pair;
    Raw r{std::string(fields[0]), std::string(fields[1]), std::nullopt};
    if (is_pair) r.pair = std::string(fields[2]);
    raw.push_back(std::move(r));
  }
  if (raw.empty()) throw ParseError(source, 0, "dataset is empty");

  std::vector<std::string> names;
  for (const auto& r : raw) names.push_back(r.label);
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  if (std::all_of(names.begin(), names.end(), [](const std::string& s) { return is_integer(s); })) {
    std::sort(names.begin(), names.end(),
              [](const std::string& a, const std::string& b) { return std::stoll(a) < std::stoll(b); });
  }
  if (names.size() < 2) warn(source + ": dataset has a single class");
  std::map<std::string, int> ids;
  for (std::size_t i = 0; i < names.size(); ++i) ids[names[i]] = static_cast<int>(i);

  LabeledDataset out;
  out.labels = names;
  out.records.reserve(raw.size());
  for (auto& r : raw) out.records.push_back(LabeledRecord{ids[r.label], std::move(r.text), std::move(r.pair)});
  return out;
}

double classify(const Matrix& features, std::span<const int> labels, std::size_t classes,
                std::uint64_t split_seed) {
  const auto n = static_cast<std::size_t>(features.rows());
  if (labels.size() != n) throw Error("feature and label counts differ");
  if (classes == 0) throw Error("no classes");

  std::vector<std::vector<std::size_t>> by_class(classes);
  for (std::size_t i = 0; i < n; ++i) {
    if (labels[i] < 0 || static_cast<std::size_t>(labels[i]) >= classes) throw Error("label out of range");
    by_class[static_cast<std::size_t>(labels[i])].push_back(i);
  }

  std::mt19937_64 rng(split_seed);
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
  for (auto& members : by_class) {
    // Fisher-Yates with our own index draws; std::shuffle is not portable across libraries.
    for (std::size_t i = members.size(); i > 1; --i) {
      std::swap(members[i - 1], members[rng() % i]);
    }
    const auto held = static_cast<std::size_t>(std::lround(kTestFraction * static_cast<double>(members.size())));
    if (!members.empty() && held >= members.size()) throw Error("degenerate split");
    test.insert(test.end(), members.begin(), members.begin() + static_cast<std::ptrdiff_t>(held));
    train.insert(train.end(), members.begin() + static_cast<std::ptrdiff_t>(held), members.end());
  }
  for (const auto& members : by_class) {
    if (members.empty()) throw Error("degenerate split");
  }
  std::sort(train.begin(), train.end());
  std::sort(test.begin(), test.end());
  if (test.empty()) throw Error("degenerate split");
  if (classes == 1) return 1.0;

  const auto dim = features.cols();
  const auto rows = static_cast<Eigen::Index>(train.size());
  Matrix x(rows, dim);
  Matrix y = Matrix::Zero(rows, static_cast<Eigen::Index>(classes));
  for (Eigen::Index i = 0; i < rows; ++i) {
    x.row(i) = features.row(static_cast<Eigen::Index>(train[static_cast<std::size_t>(i)]));
    y(i, labels[train[static_cast<std::size_t>(i)]]) = 1.0;
  }
  const Eigen::RowVectorXd mu = x.colwise().mean();
  Eigen::RowVectorXd sigma = ((x.rowwise() - mu).array().square().colwise().sum() / static_cast<double>(rows)).sqrt();
  sigma = sigma.unaryExpr([](double s) { return s > 1e-12 ? s : 1.0; });
  x = ((x.rowwise() - mu).array().rowwise() / sigma.array()).matrix();

  Matrix w = Matrix::Zero(dim, static_cast<Eigen::Index>(classes));
  Eigen::RowVectorXd b = Eigen::RowVectorXd::Zero(static_cast<Eigen::Index>(classes));
  for (int epoch = 0; epoch < kEpochs; ++epoch) {
    Matrix logits = (x * w).rowwise() + b;
    const Eigen::VectorXd peak = logits.rowwise().maxCoeff();
    logits = (logits.colwise() - peak).array().exp().matrix();
    const Eigen::VectorXd total = logits.rowwise().sum();
    logits = logits.array().colwise() / total.array();
    const Matrix error = (logits - y) / static_cast<double>(rows);
    w -= kStepSize * (x.transpose() * error + kL2Penalty * w);
    b -= kStepSize * error.colwise().sum();
  }

  std::size_t correct = 0;
  for (auto i : test) {
    const Eigen::RowVectorXd z =
        ((features.row(static_cast<Eigen::Index>(i)) - mu).array() / sigma.array()).matrix();
    const Eigen::RowVectorXd scores = z * w + b;
    Eigen::Index predicted = 0;
    scores.maxCoeff(&predicted);
    if (predicted == labels[i]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(test.size());
}

EvalMode parse_eval_mode(std::string_view name) {
  if (name == "gobow") return EvalMode::gobow;
  if (name == "sbow") return EvalMode::sbow;
  if (name == "tfidf") return EvalMode::tfidf;
  throw Error("unknown evaluation mode '" + std::string(name) + "'");
}

std::string_view to_string(EvalMode mode) {
  switch (mode) {
    case EvalMode::gobow: return "gobow";
    case EvalMode::sbow: return "sbow";
    case EvalMode::tfidf: return "tfidf";
  }
  return "gobow";
}

Matrix embed_dataset(const ContextModel* model, const EmbeddingTable& table,
                     const LabeledDataset& dataset, EvalMode mode, const SigmoidParams& params,
                     OovPolicy policy) {
  if (mode != EvalMode::tfidf && model == nullptr) throw Error("embedding mode needs a context model");
  const auto stream = dataset.sentence_stream();
  std::vector<Tokens> tokens;
  tokens.reserve(stream.size());
  for (const auto& s : stream) tokens.push_back(tokenize(s));

  const auto dim = static_cast<Eigen::Index>(table.dim());
  Matrix sentence_vectors = Matrix::Zero(static_cast<Eigen::Index>(tokens.size()), dim);
  std::size_t empty = 0;
  if (mode == EvalMode::tfidf) {
    const TfIdfModel tfidf(tokens, TfScheme::natural);
    for (std::size_t s = 0; s < tokens.size(); ++s) {
      Vector sum = Vector::Zero(dim);
      for (const auto& [term, count] : tfidf.counts(s)) {
        if (auto v = lookup(table, term, policy)) sum += tfidf_score(tfidf, term, s) * *v;
      }
      const double norm = sum.norm();
      if (norm > 0.0) {
        sentence_vectors.row(static_cast<Eigen::Index>(s)) = (sum / norm).transpose();
      } else {
        ++empty;
      }
    }
  } else {
    const EmbedMode embed_mode = mode == EvalMode::gobow ? EmbedMode::gobow : EmbedMode::sbow;
    for (std::size_t s = 0; s < tokens.size(); ++s) {
      const auto vectors = lookup_all(table, tokens[s], policy);
      if (vectors.empty()) {
        ++empty;
        continue;
      }
      try {
        sentence_vectors.row(static_cast<Eigen::Index>(s)) =
            embed_vectors(*model, vectors, embed_mode, params).transpose();
      } catch (const Error&) {
        ++empty;
      }
    }
  }
  if (empty > 0) warn(std::to_string(empty) + " sentences embedded as zero vectors");

  if (!dataset.is_pair_task()) return sentence_vectors;
  Matrix features(static_cast<Eigen::Index>(dataset.records.size()), 2 * dim);
  for (Eigen::Index r = 0; r < features.rows(); ++r) {
    const auto u = sentence_vectors.row(2 * r);
    const auto v = sentence_vectors.row(2 * r + 1);
    features.row(r).head(dim) = (u - v).cwiseAbs();
    features.row(r).tail(dim) = u.cwiseProduct(v);
  }
  return features;
}

double evaluate(const ContextModel* model, const EmbeddingTable& table,
                const LabeledDataset& dataset, EvalMode mode, std::uint64_t split_seed,
                const SigmoidParams& params) {
  if (dataset.records.size() < 20) throw Error("evaluation needs at least 20 records");
  const Matrix features = embed_dataset(model, table, dataset, mode, params);
  std::vector<int> labels;
  labels.reserve(dataset.records.size());
  for (const auto& r : dataset.records) labels.push_back(r.label);
  return classify(features, labels, dataset.classes(), split_seed);
}

std::vector<CurvePoint> stability_curve(const ModelBuilder& builder, const EmbeddingTable& table,
                                        const LabeledDataset& dataset,
                                        std::span<const std::size_t> sizes, EvalMode mode,
                                        std::uint64_t split_seed) {
  if (!std::is_sorted(sizes.begin(), sizes.end())) throw Error("context sizes must be ascending");
  std::vector<Tokens> stream;
  for (const auto& s : dataset.sentence_stream()) {
    auto t = tokenize(s);
    if (!t.empty()) stream.push_back(std::move(t));
  }

  std::vector<CurvePoint> points;
  for (auto n : sizes) {
    if (n < 2) {
      warn("skipping context size " + std::to_string(n) + " (needs at least 2 sentences)");
      continue;
    }
    const std::size_t used = std::min(n, stream.size());
    const ContextModel model = builder(std::span<const Tokens>(stream.data(), used));
    points.push_back(CurvePoint{n, evaluate(&model, table, dataset, mode, split_seed), 0.0});
  }
  if (points.empty()) return points;
  const double reference = points.back().accuracy;
  for (auto& p : points) p.ratio = reference > 0.0 ? p.accuracy / reference : 1.0;
  return points;
}

}  // namespace cosal
