#include <doctest.h>

#include "fatsurf/pants.hpp"
#include "../oracles.hpp"

using namespace fatsurf;

static Word w(const char* s) { return parse_word(s); }

TEST_CASE("good pants") {
  GoodPants p{{w("ab"), w("ba"), w("AB")}};
  CHECK(p.valid());
  CHECK(p.L() == 4);
  auto b = p.boundary_words();
  CHECK(oracle::multiset({b[0], b[1], b[2]}) == oracle::multiset({w("abAB"), w("baba"), w("ABBA")}));
  auto missing = oracle::multiset(boundary_words(p.fatgraph(2)));
  CHECK(missing == oracle::multiset({b[0], b[1], b[2]}));
  auto i = p.iota();
  auto ib = i.boundary_words();
  CHECK(oracle::multiset({ib[0], ib[1], ib[2]}) ==
        oracle::multiset({inverse(b[0]), inverse(b[1]), inverse(b[2])}));
}

TEST_CASE("attach diameter on abAB") {
  auto m = attach_diameter(w("abAB"), 0, w("ba"));
  CHECK(oracle::conserves(m));
  REQUIRE(m.pieces.pants.size() == 1);
  auto b = m.pieces.pants[0].boundary_words();
  CHECK(oracle::multiset({b[0], b[1], b[2]}) == oracle::multiset({w("abAB"), w("baba"), w("ABBA")}));
}

TEST_CASE("matched run diameter needs runs") {
  CHECK_THROWS_WITH_AS(matched_run_diameter(w("aabbAABB")), doctest::Contains("NotEnoughRuns"), Error);
}

TEST_CASE("triangle move") {
  Word g = w("aabbaaab");
  auto t = triangle_move(g);
  CHECK(oracle::conserves(t.move));
  std::vector<Word> all = oracle::piece_boundaries(t.move.pieces);
  auto m = oracle::multiset(all);
  // the shifted successor comes out as A^4 B A B^2, the mirror image of A^4 B^2 A B
  CHECK(m.count(oracle::canon(w("AAAABABB"))));
  CHECK(m.count(oracle::canon(w("aabbAABB"))));
  for (auto& x : all) CHECK(x.size() == 8);
  CHECK_THROWS_WITH_AS(triangle_move(w("abbbbaab")), doctest::Contains("ConstraintViolated"), Error);
}

TEST_CASE("reduce loop") {
  auto m = reduce_loop(w("abAB"), 2);
  CHECK(oracle::conserves_after_gluing(m));
  for (auto& s : m.successors) CHECK(run_count(s) <= 2);
  auto u = reduce_loop(w("aaaa"), 2);
  CHECK(u.pieces.size() == 0);
  REQUIRE(u.successors.size() == 1);
  Rng rng(6, 0);
  for (int t = 0; t < 40; ++t) {
    Word g = sample_cyclically_reduced_word(rng, 12, 2);
    auto r = reduce_loop(g, 2);
    CHECK(oracle::conserves_after_gluing(r));
    for (auto& s : r.successors) CHECK(run_count(s) <= 2);
  }
}

TEST_CASE("trade and combine") {
  auto t = trade(w("aaaabbbb"), 1, 3, w("aaaaaabb"), 0, 2);
  CHECK(oracle::conserves(t));
  std::vector<int> bs;
  for (auto& s : t.successors) {
    CHECK(s.size() == 8);
    bs.push_back(int(std::count(s.begin(), s.end(), 2)));
  }
  // b^{t1+w2} and b^{w1+t2}: the b mass 4 + 2 is conserved
  std::sort(bs.begin(), bs.end());
  CHECK(bs == std::vector<int>{3, 3});
  CHECK_THROWS_WITH_AS(trade(w("aaaabbbb"), 1, 3, w("aaaaaabb"), 2, 0), doctest::Contains("PreconditionViolated"),
                       Error);

  auto c = combine(w("aaaaaabb"), w("aaaaaaab"));
  CHECK(oracle::conserves(c));
  // the combined loop plus uniform and even byproducts
  int combined = 0;
  for (auto& x : c.successors) {
    combined += oracle::canon(x) == oracle::canon(w("aaaaabbb"));
    CHECK((run_count(x) == 1 || oracle::canon(x) == oracle::canon(w("aaaaabbb")) || two_run_type(x) == std::nullopt));
  }
  CHECK(combined == 1);
  CHECK_THROWS_WITH_AS(combine(w("aaaaaabb"), w("aaaaabbb")), doctest::Contains("RunsTooLong"), Error);
}

TEST_CASE("normalize two runs") {
  auto m = normalize_two_runs({w("aaaaabbb"), w("aaaaaabb"), w("aaaaaaab")}, 8, 2);
  CHECK(oracle::conserves(m));
  int ab = 0;
  for (auto& s : m.successors) {
    auto t = two_run_type(s);
    if (t && t->first == TwoRunType{1, 2}) ++ab;
  }
  CHECK(ab <= 1);
  auto id = normalize_two_runs({w("aaaaabbb")}, 8, 2);
  CHECK(id.pieces.size() == 0);
}

TEST_CASE("finalize remainders") {
  auto m = finalize_remainders({w("aaaaaaaa"), w("AAAAAAAA")}, 8, 2);
  CHECK(m.pieces.annuli.size() == 1);
  CHECK(oracle::conserves(m));
  CHECK_THROWS_WITH_AS(finalize_remainders({w("aaaaaaaa")}, 8, 2), doctest::Contains("HomologyObstruction"), Error);
}

TEST_CASE("reduce to rank two") {
  auto m = reduce_to_rank2(w("aabbccdd"), 4);
  CHECK(oracle::conserves_after_gluing(m));
  for (auto& s : m.successors) CHECK(generator_support(s) <= 2);
  auto id = reduce_to_rank2(w("aabbAABB"), 4);
  CHECK(id.pieces.size() == 0);
}

TEST_CASE("bound with pants and annuli") {
  auto theta = LoopCollection::parse(2, {"abAB", "baba", "ABBA"});
  auto r = bound_with_pants_annuli(theta);
  CHECK(r.certificate.t.empty());
  CHECK(verify_pieces(theta, r.pieces, Strictness::Default, r.certificate.multiplier).pass);

  auto v = LoopCollection::parse(2, {"aabb", "BBAA"});
  auto s = bound_with_pants_annuli(v);
  CHECK(verify_pieces(v, s.pieces, Strictness::Default, s.certificate.multiplier).pass);
}

TEST_CASE("verify pieces") {
  PieceCollection theta;
  theta.L = 4;
  theta.pants.push_back(GoodPants{{w("ab"), w("ba"), w("AB")}});
  auto c = verify_pieces(LoopCollection::parse(2, {"abAB", "baba", "ABBA"}), theta);
  CHECK(c.pass);
  CHECK(c.m.empty());

  PieceCollection ann;
  ann.L = 4;
  ann.annuli.push_back(GoodAnnulus{w("abab")});
  auto d = verify_pieces(LoopCollection(2, {}), ann);
  CHECK(d.pass);
  CHECK(d.m.size() == 2);

  CHECK_THROWS_WITH_AS(verify_pieces(LoopCollection::parse(2, {"abab"}), PieceCollection{}),
                       doctest::Contains("BoundaryMismatch"), Error);
}

TEST_CASE("nonorientable pairing") {
  TaggedLoop a(w("abab"), {0}), b(w("abab"), {2});
  auto r = nonorientable_pairing({a, b});
  CHECK(r.annuli.size() == 1);
  CHECK(r.annuli[0].orientation_disagrees);
  auto odd = nonorientable_pairing({a, b, TaggedLoop(w("abab"), {1})});
  CHECK(odd.duplicated);
  CHECK(odd.annuli.size() == 3);
  TaggedLoop c(w("abab"), {0});
  CHECK_THROWS_WITH_AS(nonorientable_pairing({a, c}), doctest::Contains("TagsTooClose"), Error);
}

TEST_CASE("pieces serialization") {
  auto r = bound_with_pants_annuli(LoopCollection::parse(2, {"aabb", "BBAA"}));
  auto back = deserialize_pieces(serialize(r.pieces));
  CHECK(serialize(back) == serialize(r.pieces));
}

TEST_CASE("conservation on random moves") {
  for (std::string kind : {"attach_diameter", "triangle_move", "trade", "combine"}) {
    int bad = 0;
    int n = oracle::move_suite(kind, 100, 17, [&](const MoveResult& m) { bad += !oracle::conserves(m); });
    CHECK_MESSAGE(n == 100, kind);
    CHECK_MESSAGE(bad == 0, kind);
  }
}
