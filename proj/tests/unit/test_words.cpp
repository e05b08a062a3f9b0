#include <doctest.h>

#include "fatsurf/sampling.hpp"
#include "fatsurf/words.hpp"
#include "../oracles.hpp"

using namespace fatsurf;

static std::string s(const Word& w) { return to_string(w); }

TEST_CASE("reduce") {
  CHECK(s(reduce(parse_word("abBA"))) == "");
  CHECK(s(reduce(parse_word("abBc"))) == "ac");
  CHECK(s(reduce(parse_word("aA"))) == "");
  Rng rng(1, 2);
  for (int t = 0; t < 200; ++t) {
    Word w;
    for (int i = 0; i < 12; ++i) w.push_back(random_letter(rng, 3));
    Word r = reduce(w);
    CHECK(r.size() <= w.size());
    CHECK(reduce(r) == r);
    CHECK(is_reduced(r));
  }
}

TEST_CASE("cyclic canonical form") {
  CHECK(cyclic_canonical(parse_word("baB")).str() == "a");
  CHECK(cyclic_canonical(parse_word("ba")).str() == "ab");
  CHECK(cyclic_canonical(parse_word("abAB")).str() == "abAB");
  CHECK_THROWS_AS(CyclicWord(parse_word("aA")), Error);
  Rng rng(3, 0);
  for (int t = 0; t < 200; ++t) {
    Word w = sample_cyclically_reduced_word(rng, 9, 3);
    CyclicWord c = cyclic_canonical(w);
    CHECK(cyclic_canonical(rotate(w, rng.below(9))) == c);
    CHECK(c.str() == oracle::canon(w));
  }
}

TEST_CASE("inverse") {
  CHECK(s(inverse(parse_word("abAB"))) == "baBA");
  CHECK(inverse(Word{}).empty());
  CHECK(CyclicWord::parse("abAB").inverse() == cyclic_canonical(parse_word("baBA")));
}

TEST_CASE("iota") {
  TaggedLoop ab(parse_word("ab"));
  CHECK(s(iota(ab).word) == "BA");
  TaggedLoop t(parse_word("abab"), {0});
  TaggedLoop it = iota(t);
  CHECK(s(it.word) == "BABA");
  REQUIRE(it.tags.size() == 1);
  CHECK(it.tags[0] == 2);
  Rng rng(5, 0);
  for (int r = 0; r < 100; ++r) {
    Word w = sample_cyclically_reduced_word(rng, 10, 2);
    TaggedLoop l(w, {int(rng.below(10))});
    CHECK(iota(iota(l)) == l);
  }
}

TEST_CASE("homology") {
  auto h = [](std::vector<std::string> ws) {
    std::vector<CyclicWord> c;
    for (auto& w : ws) c.push_back(CyclicWord::parse(w));
    return homology_class(c, 2);
  };
  CHECK(h({"abAB"}) == HomologyVector{0, 0});
  CHECK(h({"aab"}) == HomologyVector{2, 1});
  CHECK(h({"ab", "AB"}) == HomologyVector{0, 0});
  Rng rng(8, 0);
  for (int t = 0; t < 100; ++t) {
    Word u = sample_reduced(rng, 7, 3), v = sample_reduced(rng, 5, 3);
    Word uv = u;
    uv.insert(uv.end(), v.begin(), v.end());
    auto a = homology_class(u, 3), b = homology_class(v, 3), c = homology_class(reduce(uv), 3);
    for (int i = 0; i < 3; ++i) CHECK(a[i] + b[i] == c[i]);
  }
}

TEST_CASE("runs") {
  auto r = runs(CyclicWord::parse("aaBBB"));
  REQUIRE(r.size() == 2);
  CHECK(r[0].letter == 1);
  CHECK(r[0].exponent() == 2);
  CHECK(r[1].exponent() == -3);
  CHECK(runs(CyclicWord::parse("abAB")).size() == 4);
  auto u = runs(CyclicWord::parse("aaaa"));
  REQUIRE(u.size() == 1);
  CHECK(u[0].exponent() == 4);
  Rng rng(4, 4);
  for (int t = 0; t < 100; ++t) {
    Word w = sample_cyclically_reduced_word(rng, 11, 2);
    Word back;
    for (auto& x : runs(w))
      for (int i = 0; i < x.length; ++i) back.push_back(x.letter);
    CHECK(oracle::canon(back) == oracle::canon(w));
  }
}

// Longest common subword of two cyclic words by comparing every pair of start points.
static int naive_lcs(const Word& u, const Word& v, bool inverses) {
  int best = 0;
  const size_t cap = std::min(u.size(), v.size());
  std::vector<Word> vs{v};
  if (inverses) vs.push_back(inverse(v));
  for (auto& x : vs)
    for (size_t i = 0; i < u.size(); ++i)
      for (size_t j = 0; j < x.size(); ++j) {
        size_t l = 0;
        while (l < cap && u[(i + l) % u.size()] == x[(j + l) % x.size()]) ++l;
        best = std::max(best, int(l));
      }
  return best;
}

TEST_CASE("longest common subword") {
  CHECK(longest_common_subword(parse_word("abab"), true, parse_word("bab"), false, false).length == 3);
  CHECK(longest_common_subword(parse_word("abAB"), true, parse_word("abAB"), true, true, true).length == 1);
  CHECK(longest_common_subword(parse_word("a"), true, parse_word("a"), true, false, true).length == 0);
  Rng rng(9, 1);
  for (int t = 0; t < 200; ++t) {
    Word u = sample_cyclically_reduced_word(rng, 40, 2), v = sample_cyclically_reduced_word(rng, 30, 2);
    CHECK(longest_common_length(u, v, true) == naive_lcs(u, v, true));
    CHECK(longest_common_length(u, v, false) == naive_lcs(u, v, false));
  }
}

TEST_CASE("text format round trip") {
  for (std::string w : {"abAB", "zZyx", "a", ""}) CHECK(to_string(parse_word(w)) == w);
  CHECK_THROWS_AS(parse_word("ab1"), Error);
}
