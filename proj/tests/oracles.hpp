#pragma once
// Independent reference computations used to cross-check the library.
#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "fatsurf/fatgraph.hpp"
#include "fatsurf/pants.hpp"

namespace oracle {

using namespace fatsurf;

inline std::vector<int> next_positions(const LoopCollection& g) {
  std::vector<int> nxt;
  int base = 0;
  for (auto& l : g.loops) {
    int n = int(l.size());
    for (int i = 0; i < n; ++i) nxt.push_back(base + (i + 1) % n);
    base += n;
  }
  return nxt;
}

// Vertices of the quotient (valence 2 included) are cycles of i -> next(partner(i)).
inline int letter_vertices(const LoopCollection& g, const std::vector<int>& partner) {
  auto nxt = next_positions(g);
  std::vector<char> seen(partner.size(), 0);
  int v = 0;
  for (size_t i = 0; i < partner.size(); ++i) {
    if (seen[i]) continue;
    ++v;
    for (size_t j = i; !seen[j]; j = nxt[partner[j]]) seen[j] = 1;
  }
  return v;
}

inline int letter_euler(const LoopCollection& g, const std::vector<int>& partner) {
  return letter_vertices(g, partner) - int(partner.size()) / 2;
}

// Connected components of loops joined by the pairing.
inline int components(const LoopCollection& g, const std::vector<int>& partner) {
  std::vector<int> owner;
  for (size_t l = 0; l < g.loops.size(); ++l)
    for (size_t i = 0; i < g.loops[l].size(); ++i) owner.push_back(int(l));
  std::vector<int> dsu(g.loops.size());
  std::iota(dsu.begin(), dsu.end(), 0);
  std::function<int(int)> f = [&](int x) { return dsu[x] == x ? x : dsu[x] = f(dsu[x]); };
  for (size_t i = 0; i < partner.size(); ++i) dsu[f(owner[i])] = f(owner[partner[i]]);
  int c = 0;
  for (size_t l = 0; l < dsu.size(); ++l) c += f(int(l)) == int(l);
  return c;
}

// Canonical cyclic form by trying every rotation, ordered a < b < ... < A < B < ...
inline std::string canon(const Word& w) {
  auto key = [](Letter x) { return x > 0 ? x : 1000 - x; };
  size_t best = 0;
  for (size_t r = 1; r < w.size(); ++r) {
    for (size_t i = 0; i < w.size(); ++i) {
      int a = key(w[(r + i) % w.size()]), b = key(w[(best + i) % w.size()]);
      if (a != b) {
        if (a < b) best = r;
        break;
      }
    }
  }
  return to_string(rotate(w, best));
}

inline std::map<std::string, int> multiset(const std::vector<Word>& ws) {
  std::map<std::string, int> m;
  for (auto& w : ws) ++m[canon(w)];
  return m;
}

// Piece boundaries recomputed by traversing each piece's ribbon graph.
inline std::vector<Word> piece_boundaries(const PieceCollection& p) {
  std::vector<Word> out;
  for (auto& x : p.pants)
    for (auto& w : boundary_words(x.fatgraph(p.rank))) out.push_back(w);
  for (auto& a : p.annuli)
    for (auto& w : boundary_words(a.fatgraph(p.rank))) out.push_back(w);
  return out;
}

// boundary(pieces) == consumed + iota(successors) + pairs + iota(pairs), untagged.
inline bool conserves(const MoveResult& m) {
  std::vector<Word> rhs = m.consumed;
  for (auto& s : m.successors) rhs.push_back(inverse(s));
  for (auto& p : m.pairs) {
    rhs.push_back(p);
    rhs.push_back(inverse(p));
  }
  return multiset(piece_boundaries(m.pieces)) == multiset(rhs);
}

// For composite moves: intermediate loops appear in the pieces as x and iota(x), glued to each other.
inline bool conserves_after_gluing(const MoveResult& m) {
  std::vector<Word> rhs = m.consumed;
  for (auto& s : m.successors) rhs.push_back(inverse(s));
  for (auto& p : m.pairs) {
    rhs.push_back(p);
    rhs.push_back(inverse(p));
  }
  auto lhs = multiset(piece_boundaries(m.pieces));
  for (auto& [w, c] : multiset(rhs)) {
    if (lhs[w] < c) return false;
    lhs[w] -= c;
  }
  for (auto& [w, c] : lhs) {
    if (c == 0) continue;
    Word x = parse_word(w);
    if (lhs[canon(inverse(x))] != c) return false;
  }
  return true;
}

// boundary(pieces) == multiplier * v + t + iota(t) for some t, with boundaries found by traversal.
inline bool covers(const PieceCollection& pieces, const LoopCollection& v, int multiplier) {
  auto lhs = multiset(piece_boundaries(pieces));
  for (auto& l : v.loops) {
    auto& c = lhs[canon(l.word)];
    c -= multiplier;
    if (c < 0) return false;
  }
  for (auto& [w, c] : lhs)
    if (c != 0 && lhs[canon(inverse(parse_word(w)))] != c) return false;
  return true;
}

}  // namespace oracle

#include "fatsurf/sampling.hpp"

namespace oracle {

// Random inputs for the primitive moves; nullopt-free: callers skip inputs the move rejects as invalid.
inline Letter random_pair(Rng& rng, int k, Letter* y) {
  int gx = 1 + int(rng.below(k)), gy;
  do gy = 1 + int(rng.below(k));
  while (gy == gx);
  *y = rng.below(2) ? gy : -gy;
  return rng.below(2) ? gx : -gx;
}

inline bool precondition(const Error& e) {
  for (auto c : {"FoldsAtEndpoint", "ConstraintViolated", "PreconditionViolated", "RunsTooLong", "NotReduced"})
    if (e.code == c) return true;
  return false;
}

// Runs `body` on up to `want` valid random inputs of move `kind`; returns the count of conserving results.
template <class F>
int move_suite(const std::string& kind, int want, uint64_t seed, F&& on_result, int* attempted = nullptr) {
  Rng rng(seed, std::hash<std::string>{}(kind));
  int valid = 0, tries = 0;
  while (valid < want && tries < 200 * want) {
    ++tries;
    int L = rng.below(2) ? 8 : 12, h = L / 2;
    int k = 2 + int(rng.below(2));
    MoveResult m;
    try {
      if (kind == "attach_diameter") {
        Word g = sample_cyclically_reduced_word(rng, L, k);
        Word d = sample_reduced(rng, h, k);
        m = attach_diameter(g, int(rng.below(L)), d, k);
      } else if (kind == "triangle_move") {
        Letter y, x = random_pair(rng, k, &y);
        int xr = 1 + int(rng.below(h - 1));            // x < h
        int e2 = h - xr + 1 + int(rng.below(L / 2));    // x + e2 > h
        int rest = L - xr - e2;
        if (rest < 2) continue;
        int e1 = 1 + int(rng.below(rest - 1));
        Word g = power(x, e1);
        for (Letter c : power(y, xr)) g.push_back(c);
        for (Letter c : power(x, e2)) g.push_back(c);
        for (Letter c : power(y, rest - e1)) g.push_back(c);
        m = triangle_move(g, k).move;
      } else if (kind == "trade") {
        Letter y, x = random_pair(rng, k, &y);
        int s1 = 2 + int(rng.below(h - 1)), s2 = 1 + int(rng.below(h));
        int t1 = 1 + int(rng.below(s1 - 1)), w1 = int(rng.below(s2));
        m = trade(two_run(x, L - s1, y, s1), t1, s1 - t1, two_run(x, L - s2, y, s2), w1, s2 - w1, k);
      } else if (kind == "combine") {
        Letter y, x = random_pair(rng, k, &y);
        int r1 = 1 + int(rng.below(h - 2)), r2 = 1 + int(rng.below(h - 1 - r1));
        m = combine(two_run(x, L - r1, y, r1), two_run(x, L - r2, y, r2), k);
      }
    } catch (const Error& e) {
      if (precondition(e)) continue;
      throw;
    }
    ++valid;
    on_result(m);
  }
  if (attempted) *attempted = tries;
  return valid;
}

}  // namespace oracle
