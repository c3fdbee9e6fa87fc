#include "cosal/tokenize.hpp"

#include "cosal/core.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace cosal {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
bool is_punct(char c) { return std::ispunct(static_cast<unsigned char>(c)) != 0; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

}  // namespace

Tokens tokenize(std::string_view text, const TokenizerOptions& options) {
  Tokens out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    std::size_t j = i;
    while (j < text.size() && !is_space(text[j])) ++j;
    std::string_view word = text.substr(i, j - i);
    i = j;
    while (!word.empty() && is_punct(word.front())) word.remove_prefix(1);
    while (!word.empty() && is_punct(word.back())) word.remove_suffix(1);
    if (word.empty()) continue;
    std::string token(word);
    for (char& c : token) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (options.lemmatizer) token = options.lemmatizer(token);
    if (!token.empty()) out.push_back(std::move(token));
  }
  return out;
}

std::vector<std::string> split_sentences(std::string_view text) {
  std::vector<std::string> out;
  std::string current;
  auto flush = [&] {
    auto t = trim(current);
    if (!t.empty()) out.emplace_back(t);
    current.clear();
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '\n' && i + 1 < text.size() && text[i + 1] == '\n') {
      flush();
      continue;
    }
    current.push_back(c == '\n' ? ' ' : c);
    if ((c == '.' || c == '!' || c == '?') && (i + 1 == text.size() || is_space(text[i + 1]))) {
      flush();
    }
  }
  flush();
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<Tokens> read_sentence_lines(const std::filesystem::path& path,
                                        const TokenizerOptions& options) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::vector<Tokens> out;
  std::string line;
  while (std::getline(in, line)) {
    auto tokens = tokenize(line, options);
    if (!tokens.empty()) out.push_back(std::move(tokens));
  }
  return out;
}

std::vector<std::vector<Tokens>> read_documents(const std::filesystem::path& path,
                                                const TokenizerOptions& options) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::vector<std::vector<Tokens>> docs(1);
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty()) {
      if (!docs.back().empty()) docs.emplace_back();
      continue;
    }
    auto tokens = tokenize(line, options);
    if (!tokens.empty()) docs.back().push_back(std::move(tokens));
  }
  if (docs.back().empty()) docs.pop_back();
  return docs;
}

}  // namespace cosal
