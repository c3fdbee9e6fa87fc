#include <doctest.h>

#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

using cosal::EmbedMode;
using cosal::SigmoidParams;
using cosal::Vector;

TEST_CASE("sigmoid passes through (0.5, 0.5) and saturates at 0.5 +- 0.39") {
  CHECK(cosal::sigmoid_weight(0.5) == 0.5);
  CHECK(cosal::sigmoid_weight(50.0) == doctest::Approx(0.89));
  CHECK(cosal::sigmoid_weight(-50.0) == doctest::Approx(0.11));
  CHECK(cosal::sigmoid_weight(0.7) + cosal::sigmoid_weight(0.3) == doctest::Approx(1.0));
}

TEST_CASE("slope at the midpoint") {
  const double h = 1e-6;
  const double slope = (cosal::sigmoid_weight(0.5 + h) - cosal::sigmoid_weight(0.5 - h)) / (2 * h);
  CHECK(slope == doctest::Approx(0.78 / (4 * 0.11)).epsilon(1e-6));
  CHECK(slope == doctest::Approx(1.773).epsilon(1e-3));
  // 0.78 / 0.44 = 1.773, within 0.05 of 1.80.
  CHECK(std::abs(slope - 1.80) < 0.05);
}

TEST_CASE("erf family shares midpoint and saturation") {
  SigmoidParams p;
  p.family = cosal::SigmoidFamily::erf;
  CHECK(cosal::sigmoid_weight(0.5, p) == 0.5);
  CHECK(cosal::sigmoid_weight(10.0, p) == doctest::Approx(0.89));
  CHECK(cosal::sigmoid_weight(0.5 + 0.11, p) == doctest::Approx(0.5 + 0.39 * std::erf(1.0)));
}

TEST_CASE("single token embeds to its own direction") {
  const auto m = testing::identity_model(3);
  const std::vector<Vector> one{Vector(Vector::Unit(3, 1) * 4.0)};
  for (auto mode : {EmbedMode::gobow, EmbedMode::sbow}) {
    const auto w = cosal::embedding_weights(m, one, mode);
    CHECK(w[0] == 0.5);
    CHECK((cosal::embed_vectors(m, one, mode) - Vector::Unit(3, 1)).norm() < 1e-15);
  }
}

TEST_CASE("equal distances give equal weights") {
  const auto m = testing::identity_model(2);
  const std::vector<Vector> two{Vector::Unit(2, 0), Vector::Unit(2, 1)};
  const auto w = cosal::embedding_weights(m, two, EmbedMode::gobow);
  CHECK(w[0] == 0.5);
  CHECK(w[1] == 0.5);
  const Vector e = cosal::embed_vectors(m, two, EmbedMode::gobow);
  CHECK((e - Vector::Ones(2).normalized()).norm() < 1e-15);
}

TEST_CASE("weight inputs average 0.5 and GOBOW weights stay inside (0.11, 0.89)") {
  std::mt19937_64 rng(1);
  const auto m = testing::model_with(testing::random_spd(rng, 5), testing::random_vector(rng, 5));
  for (int trial = 0; trial < 50; ++trial) {
    const auto words = testing::random_cloud(rng, 2 + trial % 9, 5);
    const auto gobow = cosal::embedding_weights(m, words, EmbedMode::gobow);
    for (double w : gobow) {
      CHECK(w > 0.11);
      CHECK(w < 0.89);
    }
    // With slope 1 the SBOW map is the identity, exposing the normalized ratios.
    SigmoidParams unit;
    unit.slope_c = 1.0;
    const auto s = cosal::embedding_weights(m, words, EmbedMode::sbow, unit);
    const double mean = std::accumulate(s.begin(), s.end(), 0.0) / static_cast<double>(s.size());
    CHECK(mean == doctest::Approx(0.5).epsilon(1e-12));
  }
}

TEST_CASE("GOBOW weights are the sigmoid of d_i / (2 mean d)") {
  std::mt19937_64 rng(2);
  const cosal::Matrix a = testing::random_spd(rng, 4);
  const Vector mean = testing::random_vector(rng, 4);
  const auto m = testing::model_with(a, mean);
  const auto words = testing::random_cloud(rng, 6, 4);
  std::vector<double> d;
  for (const auto& w : words) d.push_back(testing::oracle_mahalanobis(a, w, mean));
  const double twice_mean = 2.0 * std::accumulate(d.begin(), d.end(), 0.0) / 6.0;
  const auto w = cosal::embedding_weights(m, words, EmbedMode::gobow);
  Vector sum = Vector::Zero(4);
  for (int i = 0; i < 6; ++i) {
    const double want = 0.5 + 0.78 * (1.0 / (1.0 + std::exp(-(d[i] / twice_mean - 0.5) / 0.11)) - 0.5);
    CHECK(w[i] == doctest::Approx(want).epsilon(1e-9));
    sum += want * words[i];
  }
  CHECK((cosal::embed_vectors(m, words, EmbedMode::gobow) - sum.normalized()).norm() < 1e-9);
}

TEST_CASE("SBOW measures against the normalized sentence average and is not clamped") {
  const auto m = testing::identity_model(2);
  const std::vector<Vector> words{Vector::Unit(2, 0), Vector::Unit(2, 0), Vector(Vector::Unit(2, 1) * 10.0)};
  const Vector ref = (words[0] + words[1] + words[2]).normalized();
  std::vector<double> d;
  for (const auto& w : words) d.push_back((w - ref).norm());
  const double twice_mean = 2.0 * (d[0] + d[1] + d[2]) / 3.0;
  SigmoidParams steep;
  steep.slope_c = 5.0;
  const auto w = cosal::embedding_weights(m, words, EmbedMode::sbow, steep);
  for (int i = 0; i < 3; ++i) CHECK(w[i] == doctest::Approx(5.0 * (d[i] / twice_mean - 0.5) + 0.5));
  CHECK(*std::min_element(w.begin(), w.end()) < 0.0);
}

TEST_CASE("outputs are unit length and order-invariant") {
  std::mt19937_64 rng(3);
  const auto m = testing::model_with(testing::random_spd(rng, 6), testing::random_vector(rng, 6));
  for (int trial = 0; trial < 30; ++trial) {
    auto words = testing::random_cloud(rng, 7, 6);
    for (auto mode : {EmbedMode::gobow, EmbedMode::sbow}) {
      const Vector a = cosal::embed_vectors(m, words, mode);
      CHECK(std::abs(a.norm() - 1.0) < 1e-12);
      auto shuffled = words;
      std::shuffle(shuffled.begin(), shuffled.end(), rng);
      CHECK((cosal::embed_vectors(m, shuffled, mode) - a).norm() < 1e-12);
    }
  }
}

TEST_CASE("degenerate inputs") {
  const auto m = testing::identity_model(2);
  CHECK_THROWS_AS(cosal::embed_vectors(m, std::vector<Vector>{}, EmbedMode::gobow), cosal::Error);
  const std::vector<Vector> opposite{Vector::Unit(2, 0), Vector(-Vector::Unit(2, 0))};
  CHECK_THROWS_WITH_AS(cosal::embed_vectors(m, opposite, EmbedMode::gobow), "degenerate sentence", cosal::Error);

  const auto table = cosal::load_table(testing::write_temp("emb.vec", "a 1 0\nb 0 1\n"), false);
  const std::vector<std::string> none{"zzz"};
  CHECK_THROWS_AS(cosal::embed_sentence(m, table, none, EmbedMode::gobow), cosal::Error);
  CHECK_THROWS_AS(cosal::parse_embed_mode("sif"), cosal::Error);
}

TEST_CASE("phrase fixture: the two-word mixing coefficient is the relative GOBOW weight") {
  testing::QuietWarnings quiet;
  const auto phrases = cosal::load_table(testing::data_dir() / "phrases.vec", false);
  std::vector<Vector> ctx;
  for (const auto& s : cosal::read_sentence_lines(testing::data_dir() / "phrase_context.txt")) {
    for (auto& v : cosal::lookup_all(phrases, s)) ctx.push_back(std::move(v));
  }
  cosal::TrainOptions options;
  options.scheme = cosal::BlendScheme::natural;
  const auto m = cosal::train_context(ctx, cosal::accumulate_stats(ctx), options);

  int checked = 0;
  for (std::size_t r = 0; r < phrases.size() && checked < 40; ++r) {
    const auto& token = phrases.token(r);
    const auto cut = token.find('_');
    if (cut == std::string::npos) continue;
    const auto v1 = cosal::lookup(phrases, token.substr(0, cut));
    const auto v2 = cosal::lookup(phrases, token.substr(cut + 1));
    if (!v1 || !v2) continue;
    const std::vector<Vector> pair{*v1, *v2};
    const auto w = cosal::embedding_weights(m, pair, EmbedMode::gobow);
    // Before the final normalization the weighted sum lies on the v1-v2 line.
    const Vector on_line = (w[0] * *v1 + w[1] * *v2) / (w[0] + w[1]);
    CHECK(cosal::best_linear_combination(*v1, *v2, on_line) == doctest::Approx(w[0] / (w[0] + w[1])).epsilon(1e-6));
    ++checked;
  }
  CHECK(checked == 40);
}
