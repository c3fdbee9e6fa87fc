#pragma once

#include "cosal/sentence_embed.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cosal {

struct LabeledRecord {
  int label = 0;
  std::string text;
  std::optional<std::string> pair;  // second sentence for pair tasks
};

struct LabeledDataset {
  std::vector<LabeledRecord> records;
  std::vector<std::string> labels;  // label id -> name

  bool is_pair_task() const;
  std::size_t classes() const noexcept { return labels.size(); }
  /// Sentences in file order; a pair record contributes both of its texts.
  std::vector<std::string> sentence_stream() const;
};

/// TSV: `label<TAB>text` or `label<TAB>text<TAB>text2`. Label names are
/// mapped to ids in sorted order.
LabeledDataset load_dataset(const std::filesystem::path& path);

// Classifier hyperparameters are fixed so that comparisons isolate the embedding.
inline constexpr double kL2Penalty = 1e-3;
inline constexpr int kEpochs = 200;
inline constexpr double kStepSize = 0.1;
inline constexpr double kTestFraction = 0.2;

/// Stratified split then full-batch softmax regression on z-scored features.
/// Returns held-out accuracy. Throws Error("degenerate split") when a class
/// has no training records.
double classify(const Matrix& features, std::span<const int> labels, std::size_t classes,
                std::uint64_t split_seed);

enum class EvalMode { gobow, sbow, tfidf };

EvalMode parse_eval_mode(std::string_view name);
std::string_view to_string(EvalMode mode);

/// One feature row per record: the sentence vector, or [|u - v|, u * v] for pairs.
/// `model` is unused for tfidf, which weights each word by its tf-idf over the dataset's sentences.
Matrix embed_dataset(const ContextModel* model, const EmbeddingTable& table,
                     const LabeledDataset& dataset, EvalMode mode,
                     const SigmoidParams& params = {}, OovPolicy policy = {});

double evaluate(const ContextModel* model, const EmbeddingTable& table,
                const LabeledDataset& dataset, EvalMode mode, std::uint64_t split_seed = 1,
                const SigmoidParams& params = {});

using ModelBuilder = std::function<ContextModel(std::span<const Tokens> context)>;

struct CurvePoint {
  std::size_t sentences = 0;
  double accuracy = 0.0;
  double ratio = 0.0;  // accuracy / accuracy at the largest size
};

/// Context models for increasing prefixes of the dataset's sentence stream.
/// Sizes below 2 are skipped with a warning.
std::vector<CurvePoint> stability_curve(const ModelBuilder& builder, const EmbeddingTable& table,
                                        const LabeledDataset& dataset,
                                        std::span<const std::size_t> sizes, EvalMode mode,
                                        std::uint64_t split_seed = 1);

}  // namespace cosal
