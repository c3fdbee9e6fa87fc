#include <doctest.h>

#include "support.hpp"

using cosal::Tokens;

TEST_CASE("tokenize lowercases and strips edge punctuation") {
  CHECK(cosal::tokenize("Light, cute and FORGETTABLE.") == Tokens{"light", "cute", "and", "forgettable"});
  CHECK(cosal::tokenize("  \"spiderman\"   rocks!  ") == Tokens{"spiderman", "rocks"});
}

TEST_CASE("pure punctuation tokens are dropped, inner punctuation kept") {
  CHECK(cosal::tokenize("well -- it's a semi-final , ok") == Tokens{"well", "it's", "a", "semi-final", "ok"});
  CHECK(cosal::tokenize("").empty());
  CHECK(cosal::tokenize(" ... !! ").empty());
}

TEST_CASE("lemmatizer hook runs after lowercasing") {
  cosal::TokenizerOptions options;
  options.lemmatizer = [](std::string_view t) {
    std::string s(t);
    if (s.size() > 3 && s.back() == 's') s.pop_back();
    return s;
  };
  CHECK(cosal::tokenize("Lasers DETECT objects", options) == Tokens{"laser", "detect", "object"});
}

TEST_CASE("split_sentences breaks on terminal punctuation and blank lines") {
  const auto s = cosal::split_sentences("One sentence. Another one! A third\nstill third\n\nNew paragraph");
  REQUIRE(s.size() == 4);
  CHECK(cosal::tokenize(s[0]) == Tokens{"one", "sentence"});
  CHECK(cosal::tokenize(s[2]) == Tokens{"a", "third", "still", "third"});
  CHECK(cosal::tokenize(s[3]) == Tokens{"new", "paragraph"});
}

TEST_CASE("split_sentences keeps decimals together") {
  const auto s = cosal::split_sentences("The value is 3.5 units. Done.");
  REQUIRE(s.size() == 2);
  CHECK(cosal::tokenize(s[0]).back() == "units");
}

TEST_CASE("read_documents splits on blank lines") {
  const auto path = testing::write_temp("docs.txt", "a b\nc d\n\n\ne f\n");
  const auto docs = cosal::read_documents(path);
  REQUIRE(docs.size() == 2);
  CHECK(docs[0].size() == 2);
  CHECK(docs[1][0] == Tokens{"e", "f"});
}

TEST_CASE("read_sentence_lines skips empty lines") {
  const auto path = testing::write_temp("lines.txt", "first line\n\n  \nsecond\n");
  const auto lines = cosal::read_sentence_lines(path);
  REQUIRE(lines.size() == 2);
  CHECK(lines[1] == Tokens{"second"});
}

TEST_CASE("read_file reports a missing file") {
  CHECK_THROWS_AS(cosal::read_file("/nonexistent/cosal/file.txt"), cosal::Error);
}
