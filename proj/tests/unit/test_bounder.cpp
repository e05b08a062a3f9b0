#include <doctest.h>

#include "fatsurf/bounder.hpp"
#include "../oracles.hpp"

using namespace fatsurf;

TEST_CASE("spec collections") {
  CHECK(bounds(LoopCollection::parse(2, {"abAB"})).status == BoundStatus::No);
  CHECK(brute_force_oracle(LoopCollection::parse(2, {"abAB"})).status == BoundStatus::No);

  auto theta = LoopCollection::parse(2, {"abAB", "baba", "ABBA"});
  auto r = bounds(theta);
  REQUIRE(r.yes());
  auto v = validate(*r.witness);
  CHECK(v.trivalent);
  CHECK(v.folded);
  CHECK(genus(*r.witness)[0].boundaries == 3);
  CHECK(oracle::letter_euler(theta, r.pairing.partner) == -1);

  auto ann = LoopCollection::parse(2, {"ab", "BA"});
  CHECK(bounds(ann).status == BoundStatus::No);
  BoundOptions o;
  o.allow_annulus_components = true;
  CHECK(bounds(ann, o).yes());
}

TEST_CASE("witnesses are genuine") {
  // every YES carries a pairing whose quotient has the input as boundary and passes the predicate
  int yes = 0;
  for (int n = 6; n <= 10; n += 2)
    for (auto& w : enumerate_cyclic_words(n, 2, true)) {
      LoopCollection g(2, {TaggedLoop(w.letters())});
      auto r = bounds(g);
      if (!r.yes()) continue;
      ++yes;
      for (size_t i = 0; i < r.pairing.partner.size(); ++i) {
        CHECK(r.pairing.partner[r.pairing.partner[i]] == int(i));
        CHECK(g.letter(i) == inv(g.letter(r.pairing.partner[i])));
      }
      CHECK(oracle::multiset(boundary_words(*r.witness)) == oracle::multiset({w.letters()}));
      CHECK(acceptable(*r.witness, {}));
    }
  CHECK(yes > 0);
}

TEST_CASE("agrees with the oracle on short words") {
  for (int n = 2; n <= 8; n += 2)
    for (auto& w : enumerate_cyclic_words(n, 2, true)) {
      LoopCollection g(2, {TaggedLoop(w.letters())});
      CHECK_MESSAGE(bounds(g).status == brute_force_oracle(g).status, w.str());
    }
}

TEST_CASE("minimum edge length") {
  auto theta = LoopCollection::parse(2, {"abAB", "baba", "ABBA"});
  BoundOptions o;
  o.min_edge_length = 2;
  CHECK(bounds(theta, o).yes());
  o.min_edge_length = 3;
  CHECK(bounds(theta, o).status == BoundStatus::No);
  CHECK(brute_force_oracle(theta, o).status == BoundStatus::No);
}

TEST_CASE("budget exhaustion reports unknown") {
  auto w = enumerate_cyclic_words(16, 2, true);
  BoundOptions o;
  o.node_budget = 1;
  LoopCollection g(2, {TaggedLoop(w[w.size() / 2].letters())});
  auto r = bounds(g, o);
  CHECK(r.status != BoundStatus::Yes);
}

TEST_CASE("experiment harness") {
  CHECK(trivalent_experiment(3, {10, 12}, 0, 1).size() == 0);
  auto a = trivalent_experiment(2, {6, 8}, 20, 7, {}, 1);
  auto b = trivalent_experiment(2, {6, 8}, 20, 7, {}, 3);
  CHECK(experiment_csv(a) == experiment_csv(b));
  CHECK(experiment_csv(a).rfind("length,samples,bounds,unknown,fraction\n", 0) == 0);
}

TEST_CASE("cyclic word enumeration") {
  // 2k-1 choices after the first letter minus the wrap-around; counted as necklaces
  CHECK(enumerate_cyclic_words(1, 2).size() == 4);
  CHECK(enumerate_cyclic_words(2, 2).size() == 8);  // four powers and four two-letter classes
}
