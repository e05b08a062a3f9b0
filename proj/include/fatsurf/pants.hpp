#pragma once
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "fatsurf/fatgraph.hpp"

namespace fatsurf {

// Theta graph with vertices u, v; each edge word is read from u to v and has length L/2.
// Boundary loop i is edges[i] * inverse(edges[i+1]).
struct GoodPants {
  std::array<Word, 3> edges;
  bool tagged = false;

  int L() const { return int(2 * edges[0].size()); }
  std::array<Word, 3> boundary_words() const;
  // Tagged mode puts the tag of loop i in the middle of edges[i] (gap L/4).
  std::vector<TaggedLoop> boundary() const;
  bool folded() const;
  bool valid() const;
  GoodPants iota() const;
  // Ribbon graph, subdivided at the tag points in tagged mode.
  Fatgraph fatgraph(int rank) const;
};

// Boundary is (core, tag_core) and (inverse(core), tag_inverse); with orientation_disagrees
// the second boundary reads core again (the nonorientable pairing of two copies).
struct GoodAnnulus {
  Word core;
  bool tagged = false;
  int tag_core = 0;
  int tag_inverse = 0;
  bool orientation_disagrees = false;

  int L() const { return int(core.size()); }
  std::vector<TaggedLoop> boundary() const;
  // Distance between the two tags measured along the core.
  int tag_separation() const;
  bool is_iota_annulus() const;
  bool valid() const;
  GoodAnnulus iota() const;
  Fatgraph fatgraph(int rank) const;
};

struct PieceCollection {
  int rank = 2;
  int L = 0;
  std::vector<GoodPants> pants;
  std::vector<GoodAnnulus> annuli;

  std::vector<TaggedLoop> boundary() const;
  void absorb(const PieceCollection& o);
  size_t size() const { return pants.size() + annuli.size(); }
  bool all_valid() const;
};

// Conservation contract of every move:
//   boundary(pieces) = consumed + iota(successors) + pairs + iota(pairs)
// where pairs are inverse-pair byproducts (they end up in the t of t + iota(t)).
struct MoveResult {
  PieceCollection pieces;
  std::vector<Word> consumed;
  std::vector<Word> successors;
  std::vector<Word> pairs;
};

int run_count(const Word& w);
int generator_support(const Word& w);
Word power(Letter x, int n);
// x^p y^q as a linear word
Word two_run(Letter x, int p, Letter y, int q);

// --- primitive moves ----------------------------------------------------------------

// Diameter from the end of the right half R (letters [i, i+L/2)) back to its start,
// running alongside the left half.  Successors are R*d and inverse(d)*left.
MoveResult attach_diameter(const Word& gamma, int offset, const Word& d, int rank = 2);

struct DiameterScan {
  std::vector<int> x;  // runs meeting the right half [i, i+L/2)
  std::vector<int> y;  // runs meeting the left half
};
DiameterScan diameter_scan(const Word& gamma);
int matched_run_diameter(const Word& gamma);

// Input x^{e1} y^{x} x^{e2} y^{x'} (linear, starting at the first x-run).
struct TriangleResult {
  MoveResult move;
  Word balanced;   // x^{h-x} y^{x} X^{h-x} Y^{x} up to rotation
  Word successor;  // the shifted 4-run loop
  int shift = 0;   // h - x
};
TriangleResult triangle_move(const Word& gamma, int rank = 2);

// Searches for a good pants with exactly these three boundary loops (any order).
std::optional<GoodPants> pants_from_boundary(const Word& a, const Word& b, const Word& c);

// --- reduction ------------------------------------------------------------------------

// Pieces and successors with every successor having at most two runs.
MoveResult reduce_loop(const Word& gamma, int rank);
// Successors each supported on at most two generators.
MoveResult reduce_to_rank2(const Word& gamma, int rank);

// --- two-run calculus -----------------------------------------------------------------

struct TwoRunType {
  Letter lng = 1, shrt = 2;  // long letter, short letter
  bool operator<(const TwoRunType& o) const { return std::pair(lng, shrt) < std::pair(o.lng, o.shrt); }
  bool operator==(const TwoRunType& o) const { return lng == o.lng && shrt == o.shrt; }
};
// Type and short mass of a two-run loop with runs of unequal length; nullopt otherwise.
std::optional<std::pair<TwoRunType, int>> two_run_type(const Word& w);

MoveResult trade(const Word& g1, int t1, int t2, const Word& g2, int w1, int w2, int rank = 2);
MoveResult combine(const Word& g1, const Word& g2, int rank = 2);
MoveResult normalize_two_runs(const std::vector<Word>& loops, int L, int rank);

struct RemainderProfile {
  // leftover short mass over L per type
  std::map<TwoRunType, double> fraction;
  long k1 = 0, k2 = 0;
};
RemainderProfile remainder_profile(const std::vector<Word>& loops);
MoveResult finalize_remainders(const std::vector<Word>& loops, int L, int rank);

// Solves consumed == successors in the good-pants lattice, emitting pieces and pair byproducts.
MoveResult solve_relation(const std::vector<Word>& consumed, const std::vector<Word>& successors, int L, int rank);

// --- drivers --------------------------------------------------------------------------

struct BoundCertificate {
  int multiplier = 1;
  std::vector<TaggedLoop> t;  // boundary(pieces) = multiplier*v + t + iota(t)
  int twisting_annuli = 0;
};
struct PantsBound {
  PieceCollection pieces;
  BoundCertificate certificate;
};
PantsBound bound_with_pants_annuli(const LoopCollection& v, bool tagged = false);

enum class Strictness { Default, Strict };
struct VerifyCertificate {
  bool pass = false;
  std::vector<TaggedLoop> m;  // boundary(pieces) - multiplier*v
  long n = 0;                 // strict mode: copies of 1'
  long implicit_annuli = 0;   // strict mode: iota-annuli counted, not materialized
  int multiplier = 1;
  std::string message;
};
VerifyCertificate verify_pieces(const LoopCollection& v, const PieceCollection& pieces,
                                Strictness s = Strictness::Default, int multiplier = 1);

// Number of cyclically reduced cyclic words of length n over rank k.
uint64_t count_cyclic_words(int n, int k);

struct NonorientableResult {
  std::vector<GoodAnnulus> annuli;
  bool duplicated = false;
};
NonorientableResult nonorientable_pairing(const std::vector<TaggedLoop>& s);

std::string serialize(const PieceCollection& p);
PieceCollection deserialize_pieces(const std::string& text);

}  // namespace fatsurf
