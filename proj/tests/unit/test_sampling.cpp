#include <doctest.h>

#include <cmath>

#include "fatsurf/sampling.hpp"

using namespace fatsurf;

TEST_CASE("cyclically reduced sampler") {
  for (uint64_t s = 0; s < 20; ++s) {
    CyclicWord w = sample_cyclically_reduced(1, 2, {s, 0});
    CHECK(w.size() == 1);
  }
  CHECK(sample_cyclically_reduced(16, 2, {7, 3}) == sample_cyclically_reduced(16, 2, {7, 3}));
  Rng rng(11, 0);
  for (int t = 0; t < 200; ++t) CHECK(is_cyclically_reduced(sample_cyclically_reduced_word(rng, 7, 3)));
}

TEST_CASE("letter frequencies are uniform") {
  // chi-square against 1/(2k), 3 degrees of freedom
  const int n = 50, runs = 20000, k = 2;
  std::vector<double> cnt(4, 0);
  for (int t = 0; t < runs; ++t) {
    CyclicWord w = sample_cyclically_reduced(n, k, {21, uint64_t(t)});
    for (Letter x : w.letters()) cnt[letter_index(x, k)] += 1;
  }
  double e = double(n) * runs / 4, chi = 0;
  for (double c : cnt) chi += (c - e) * (c - e) / e;
  CHECK(chi < 16.3);  // p < 0.001
}

TEST_CASE("homologically trivial sampler") {
  CHECK_THROWS_AS(sample_homologically_trivial(5, 2, {1, 0}), Error);
  for (uint64_t s = 0; s < 30; ++s) {
    auto w = sample_homologically_trivial(12, 3, {s, 0});
    CHECK(w.size() == 12);
    for (auto x : homology_class(w.letters(), 3)) CHECK(x == 0);
  }
}

TEST_CASE("acceptance rate follows the n^{-k/2} law") {
  // fit c on n = 50 and check the other lengths land within a factor of two
  auto rate = [](int n) {
    Rng rng(5, uint64_t(n));
    int ok = 0, trials = 8000;
    for (int t = 0; t < trials; ++t) {
      auto h = homology_class(sample_cyclically_reduced_word(rng, n, 2), 2);
      ok += h[0] == 0 && h[1] == 0;
    }
    return double(ok) / trials;
  };
  double c = rate(50) * 50;
  for (int n : {100, 200}) {
    double r = rate(n) * n / c;
    CHECK(r > 0.5);
    CHECK(r < 2.0);
  }
}

TEST_CASE("pseudorandomness") {
  PseudorandomParams p;
  p.T = 1;
  p.epsilon = 0.01;
  CHECK(pseudorandomness_report(parse_word("abAB"), 2, p).pass);
  p.epsilon = 0.5;
  auto r = pseudorandomness_report(parse_word("aabb"), 2, p);
  CHECK_FALSE(r.pass);
  CHECK(r.witness.size() == 1);
  CHECK(r.witness_ratio == 0.0);
  p.T = 2;
  CHECK_FALSE(pseudorandomness_report(parse_word("abAB"), 2, p).pass);
}

TEST_CASE("markov chains") {
  auto u = MarkovSpec::uniform(2);
  u.validate();
  Word sigma = parse_word("abA");
  double exact = 1.0 / (4 * 3 * 3);
  CHECK(u.expected_frequency(sigma) == doctest::Approx(exact));
  const int len = 1000000;
  double est = estimate_E(u, sigma, len, {3, 0});
  double sd = std::sqrt(exact * (1 - exact) / len) * 3;  // overlapping windows inflate this mildly
  CHECK(std::abs(est - exact) < 3 * sd);
  auto bad = u;
  bad.transition[0 * 4 + 1] = 0;
  double sum = 0;
  for (int j = 0; j < 4; ++j) sum += bad.transition[j];
  for (int j = 0; j < 4; ++j) bad.transition[j] /= sum;
  CHECK_THROWS_AS(bad.validate(), Error);
}
