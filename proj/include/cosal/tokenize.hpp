#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace cosal {

using Tokens = std::vector<std::string>;

struct TokenizerOptions {
  /// Optional hook applied to every token after lowercasing. No lemmatizer ships.
  std::function<std::string(std::string_view)> lemmatizer;
};

/// Lowercase, split on whitespace, strip leading/trailing ASCII punctuation.
/// Tokens that are pure punctuation are dropped.
Tokens tokenize(std::string_view text, const TokenizerOptions& options = {});

/// Splits running text after '.', '!' or '?' followed by whitespace, and at blank lines.
std::vector<std::string> split_sentences(std::string_view text);

/// One sentence per non-empty line.
std::vector<Tokens> read_sentence_lines(const std::filesystem::path& path,
                                        const TokenizerOptions& options = {});

/// Documents separated by blank lines, one sentence per line inside a document.
std::vector<std::vector<Tokens>> read_documents(const std::filesystem::path& path,
                                                const TokenizerOptions& options = {});

std::string read_file(const std::filesystem::path& path);

}  // namespace cosal
