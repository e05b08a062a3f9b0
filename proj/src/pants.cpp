#include "fatsurf/pants.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <mutex>
#include <numeric>
#include <set>
#include <tuple>
#include <unordered_map>

#include <json.hpp>

namespace fatsurf {

namespace {

struct WordHash {
  size_t operator()(const Word& w) const {
    uint64_t h = 1469598103934665603ull;
    for (Letter x : w) h = (h ^ uint64_t(int64_t(x))) * 1099511628211ull;
    return size_t(h);
  }
};

Word canon(const Word& w) { return rotate(w, least_rotation(w)); }
Word cat(const Word& a, const Word& b) {
  Word r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}
Word sub(const Word& w, size_t from, size_t len) { return Word(w.begin() + from, w.begin() + from + len); }

bool distinct3(Letter a, Letter b, Letter c) { return a != b && b != c && a != c; }

void require_length(const Word& w, int L, const char* what) {
  if (int(w.size()) != L) throw Error("BadLength", std::string(what) + " must have length " + std::to_string(L));
}

std::vector<Letter> all_letters(int k) {
  std::vector<Letter> r;
  for (int g = 1; g <= k; ++g) {
    r.push_back(g);
    r.push_back(-g);
  }
  return r;
}

// Diameter labels with at most two runs: x^h and x^p y^{h-p}.
std::vector<Word> diameter_family(int h, int k) {
  std::vector<Word> out;
  auto ls = all_letters(k);
  std::sort(ls.begin(), ls.end(), [](Letter a, Letter b) { return letter_key(a) < letter_key(b); });
  for (Letter x : ls) {
    out.push_back(power(x, h));
    for (Letter y : ls) {
      if (gen(y) == gen(x)) continue;
      for (int p = 1; p < h; ++p) out.push_back(two_run(x, p, y, h - p));
    }
  }
  std::sort(out.begin(), out.end(), [](const Word& a, const Word& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                        [](Letter x, Letter y) { return letter_key(x) < letter_key(y); });
  });
  return out;
}

bool folds_ok(const Word& R, const Word& Lh, const Word& d) {
  const size_t h = R.size();
  if (!distinct3(Lh[0], d[0], inv(R[h - 1]))) return false;
  if (!distinct3(R[0], inv(Lh[h - 1]), inv(d[h - 1]))) return false;
  return true;
}

}  // namespace

// ---------------------------------------------------------------------------------------
// basic helpers

Word power(Letter x, int n) { return Word(size_t(std::max(n, 0)), x); }
Word two_run(Letter x, int p, Letter y, int q) { return cat(power(x, p), power(y, q)); }

int run_count(const Word& w) { return int(runs(w).size()); }

int generator_support(const Word& w) {
  std::set<int> g;
  for (Letter x : w) g.insert(gen(x));
  return int(g.size());
}

// ---------------------------------------------------------------------------------------
// pieces

std::array<Word, 3> GoodPants::boundary_words() const {
  std::array<Word, 3> r;
  for (int i = 0; i < 3; ++i) r[i] = cat(edges[i], inverse(edges[(i + 1) % 3]));
  return r;
}

std::vector<TaggedLoop> GoodPants::boundary() const {
  std::vector<TaggedLoop> out;
  const int q = int(edges[0].size()) / 2;
  for (auto& w : boundary_words()) out.push_back(tagged ? TaggedLoop(w, {q}) : TaggedLoop(w));
  return out;
}

bool GoodPants::folded() const {
  const size_t h = edges[0].size();
  return distinct3(edges[0][0], edges[1][0], edges[2][0]) &&
         distinct3(edges[0][h - 1], edges[1][h - 1], edges[2][h - 1]);
}

bool GoodPants::valid() const {
  const size_t h = edges[0].size();
  if (h == 0) return false;
  for (auto& e : edges)
    if (e.size() != h || !is_reduced(e)) return false;
  if (tagged && h % 2 != 0) return false;
  return folded();
}

GoodPants GoodPants::iota() const {
  GoodPants p = *this;
  for (auto& e : p.edges) e = inverse(e);
  return p;
}

Fatgraph GoodPants::fatgraph(int rank) const {
  // u = 0, v = 1; rotation at u lists e0, e2, e1 so that loop i is e_i e_{i+1}^-1
  if (!tagged) {
    std::vector<Edge> es;
    for (auto& e : edges) es.push_back({0, 1, e});
    std::vector<std::vector<HalfEdge>> rot(2);
    rot[0] = {{0, true}, {2, true}, {1, true}};
    rot[1] = {{0, false}, {1, false}, {2, false}};
    return make_ribbon(rank, es, rot);
  }
  const size_t h = edges[0].size(), q = h / 2;
  std::vector<Edge> es;
  std::vector<std::vector<HalfEdge>> rot(5);
  for (int i = 0; i < 3; ++i) {
    es.push_back({0, 2 + i, sub(edges[i], 0, q)});
    es.push_back({2 + i, 1, sub(edges[i], q, h - q)});
    rot[2 + i] = {{2 * i, false}, {2 * i + 1, true}};
  }
  rot[0] = {{0, true}, {4, true}, {2, true}};
  rot[1] = {{1, false}, {3, false}, {5, false}};
  return make_ribbon(rank, es, rot, {0, 0, 1, 1, 1});
}

std::vector<TaggedLoop> GoodAnnulus::boundary() const {
  Word other = orientation_disagrees ? core : inverse(core);
  if (!tagged) return {TaggedLoop(core), TaggedLoop(other)};
  return {TaggedLoop(core, {tag_core}), TaggedLoop(other, {tag_inverse})};
}

int GoodAnnulus::tag_separation() const {
  TaggedLoop c(core);
  const int n = L();
  int p = orientation_disagrees ? tag_inverse : (n - tag_inverse) % n;
  return c.gap_distance(tag_core, p);
}

bool GoodAnnulus::is_iota_annulus() const {
  if (orientation_disagrees) return false;
  if (!tagged) return true;
  const int n = L();
  return tag_inverse == ((n - tag_core + n / 2) % n + n) % n;
}

bool GoodAnnulus::valid() const {
  if (core.empty() || !is_cyclically_reduced(core)) return false;
  if (tagged) {
    const int n = L();
    if (tag_core < 0 || tag_core >= n || tag_inverse < 0 || tag_inverse >= n) return false;
    if (4 * tag_separation() < n) return false;
  }
  return true;
}

GoodAnnulus GoodAnnulus::iota() const {
  GoodAnnulus a = *this;
  if (!tagged) {
    if (orientation_disagrees) a.core = inverse(core);
    return a;
  }
  auto bd = boundary();
  TaggedLoop i0 = fatsurf::iota(bd[0]), i1 = fatsurf::iota(bd[1]);
  if (orientation_disagrees) {
    a.core = i0.word;
    a.tag_core = i0.tags[0];
    a.tag_inverse = i1.tags[0];
  } else {
    // iota swaps which boundary reads the core
    a.tag_core = i1.tags[0];
    a.tag_inverse = i0.tags[0];
  }
  return a;
}

Fatgraph GoodAnnulus::fatgraph(int rank) const {
  const int n = L();
  if (!tagged) {
    std::vector<Edge> es{{0, 0, core}};
    std::vector<std::vector<HalfEdge>> rot{{{0, true}, {0, false}}};
    return make_ribbon(rank, es, rot);
  }
  int a = tag_core, p = orientation_disagrees ? tag_inverse : (n - tag_inverse) % n;
  Word w = rotate(core, size_t(a));
  if (a == p) {
    std::vector<Edge> es{{0, 0, w}};
    std::vector<std::vector<HalfEdge>> rot{{{0, true}, {0, false}}};
    return make_ribbon(rank, es, rot, {2});
  }
  int len = ((p - a) % n + n) % n;
  std::vector<Edge> es{{0, 1, sub(w, 0, size_t(len))}, {1, 0, sub(w, size_t(len), size_t(n - len))}};
  std::vector<std::vector<HalfEdge>> rot{{{0, true}, {1, false}}, {{1, true}, {0, false}}};
  return make_ribbon(rank, es, rot, {1, 1});
}

std::vector<TaggedLoop> PieceCollection::boundary() const {
  std::vector<TaggedLoop> out;
  for (auto& p : pants)
    for (auto& b : p.boundary()) out.push_back(b);
  for (auto& a : annuli)
    for (auto& b : a.boundary()) out.push_back(b);
  return out;
}

void PieceCollection::absorb(const PieceCollection& o) {
  pants.insert(pants.end(), o.pants.begin(), o.pants.end());
  annuli.insert(annuli.end(), o.annuli.begin(), o.annuli.end());
}

bool PieceCollection::all_valid() const {
  for (auto& p : pants)
    if (!p.valid() || (L && p.L() != L)) return false;
  for (auto& a : annuli)
    if (!a.valid() || (L && a.L() != L)) return false;
  return true;
}

namespace {
PieceCollection iota_pieces(const PieceCollection& p) {
  PieceCollection r;
  r.rank = p.rank;
  r.L = p.L;
  for (auto& x : p.pants) r.pants.push_back(x.iota());
  for (auto& x : p.annuli) r.annuli.push_back(x.iota());
  return r;
}
}  // namespace

// ---------------------------------------------------------------------------------------
// primitive moves

MoveResult attach_diameter(const Word& gamma, int offset, const Word& d, int rank) {
  const int L = int(gamma.size());
  if (L < 2 || L % 2) throw Error("BadLength", "loop length must be even");
  const int h = L / 2;
  require_length(d, h, "diameter");
  if (!is_cyclically_reduced(gamma)) throw Error("NotReduced", "loop is not cyclically reduced");
  if (!is_reduced(d)) throw Error("NotReduced", "diameter label is not reduced");
  Word w = rotate(gamma, size_t(((offset % L) + L) % L));
  Word R = sub(w, 0, h), Lh = sub(w, h, h);
  if (!folds_ok(R, Lh, d)) throw Error("FoldsAtEndpoint", "diameter germ collides with the loop at an endpoint");
  MoveResult m;
  m.pieces.rank = rank;
  m.pieces.L = L;
  m.pieces.pants.push_back(GoodPants{{R, inverse(Lh), inverse(d)}});
  m.consumed = {gamma};
  m.successors = {cat(R, d), cat(inverse(d), Lh)};
  return m;
}

DiameterScan diameter_scan(const Word& gamma) {
  const int L = int(gamma.size()), h = L / 2;
  DiameterScan s;
  std::vector<int> id(L, 0);
  if (L == 0) return s;
  {
    size_t st = run_start(gamma);
    int cur = 0;
    for (int t = 0; t < L; ++t) {
      int p = int((st + t) % L);
      if (t > 0 && gamma[p] != gamma[(p + L - 1) % L]) ++cur;
      id[p] = cur;
    }
  }
  auto count = [&](int from, int len) {
    int c = 1;
    for (int t = 1; t < len; ++t)
      if (id[(from + t) % L] != id[(from + t - 1) % L]) ++c;
    return c;
  };
  for (int i = 0; i < L; ++i) {
    s.x.push_back(count(i, h));
    s.y.push_back(count((i + h) % L, L - h));
  }
  return s;
}

int matched_run_diameter(const Word& gamma) {
  const int r = run_count(gamma);
  if (r <= 4) throw Error("NotEnoughRuns", "matched-run diameters need more than four runs");
  const int L = int(gamma.size()), h = L / 2;
  auto s = diameter_scan(gamma);
  auto boundary_at = [&](int g) { return gamma[(g + L - 1) % L] != gamma[g % L]; };
  int fallback = -1;
  for (int i = 0; i < L; ++i) {
    if (std::abs(s.x[i] - s.y[i]) > 1) continue;
    if (fallback < 0) fallback = i;
    if (boundary_at(i) || boundary_at((i + h) % L)) return i;
  }
  if (fallback < 0) throw Error("InternalProgressFailure", "no crossing diameter");
  return fallback;
}

std::optional<GoodPants> pants_from_boundary(const Word& a, const Word& b, const Word& c) {
  const size_t L = a.size();
  if (L % 2 || b.size() != L || c.size() != L) return std::nullopt;
  const size_t h = L / 2;
  for (int order = 0; order < 2; ++order) {
    const Word& y = order ? c : b;
    const Word& z = order ? b : c;
    Word cz = canon(z);
    for (size_t i = 0; i < L; ++i) {
      Word w = rotate(a, i);
      Word e0 = sub(w, 0, h), e1 = inverse(sub(w, h, h));
      for (size_t j = 0; j < L; ++j) {
        Word u = rotate(y, j);
        if (!std::equal(e1.begin(), e1.end(), u.begin())) continue;
        Word e2 = inverse(sub(u, h, h));
        GoodPants p{{e0, e1, e2}};
        if (!p.valid()) continue;
        if (canon(cat(e2, inverse(e0))) == cz) return p;
      }
    }
  }
  return std::nullopt;
}

TriangleResult triangle_move(const Word& gamma, int rank) {
  const int L = int(gamma.size());
  if (L % 4) throw Error("OddL", "L must be divisible by 4");
  const int h = L / 2;
  // linear runs starting at position 0
  std::vector<Run> rs;
  for (Letter x : gamma) {
    if (!rs.empty() && rs.back().letter == x)
      ++rs.back().length;
    else
      rs.push_back({x, 1});
  }
  if (rs.size() != 4 || rs[0].letter != rs[2].letter || rs[1].letter != rs[3].letter || gamma.front() == gamma.back())
    throw Error("ConstraintViolated", "expected x^e1 y^x x^e2 y^x' starting at a run");
  const Letter a = rs[0].letter, b = rs[1].letter;
  const int e1 = rs[0].length, x = rs[1].length, e2 = rs[2].length, xp = rs[3].length;
  if (!(x < h) || !(x + e2 > h)) throw Error("ConstraintViolated", "need x < L/2 and x + e2 > L/2");
  const int s = h - x;
  Word balanced_bd = cat(two_run(a, s, b, x), two_run(inv(a), s, inv(b), x));
  Word third = cat(two_run(inv(a), e1 + s, inv(b), xp), two_run(inv(a), e2 - s, inv(b), x));
  auto p = pants_from_boundary(gamma, balanced_bd, third);
  if (!p) throw Error("InternalProgressFailure", "triangle pants not realizable");
  TriangleResult t;
  t.move.pieces.rank = rank;
  t.move.pieces.L = L;
  t.move.pieces.pants.push_back(*p);
  t.move.consumed = {gamma};
  t.balanced = inverse(balanced_bd);
  t.successor = cat(two_run(a, e1 + s, b, x), two_run(a, e2 - s, b, xp));
  t.move.successors = {t.balanced, t.successor};
  t.shift = s;
  return t;
}

// ---------------------------------------------------------------------------------------
// reduction search

namespace {

enum class Goal { TwoRuns, TwoGenerators };

bool goal_met(const Word& w, Goal g) {
  return g == Goal::TwoRuns ? run_count(w) <= 2 : generator_support(w) <= 2;
}

struct Strategy {
  bool solved = false;
  int fail_depth = -1;
  int offset = 0;
  Word d;
};

class Reducer {
 public:
  Reducer(int L, int k, Goal g) : L_(L), k_(k), goal_(g), F_(diameter_family(L / 2, k)) {}

  // Pieces for w (canonical not required); successors all satisfy the goal.
  void expand(const Word& w, MoveResult& out) {
    std::vector<Word> stack{w};
    while (!stack.empty()) {
      Word cur = stack.back();
      stack.pop_back();
      if (goal_met(cur, goal_)) {
        out.successors.push_back(cur);
        continue;
      }
      auto [off, d] = choose(cur);
      MoveResult m = attach_diameter(cur, off, d, k_);
      out.pieces.absorb(m.pieces);
      for (auto& s : m.successors) stack.push_back(s);
    }
  }

 private:
  int L_, k_;
  Goal goal_;
  std::vector<Word> F_;
  std::unordered_map<Word, Strategy, WordHash> memo_;

  std::pair<int, Word> choose(const Word& cur) {
    const int r = run_count(cur);
    if (goal_ == Goal::TwoRuns && r > 4) {
      // matched-run cut: both successors lose runs
      int off = matched_run_diameter(cur);
      Word w = rotate(cur, size_t(off));
      Word R = sub(w, 0, L_ / 2), Lh = sub(w, L_ / 2, L_ / 2);
      int best = 1 << 30;
      Word bd;
      for (auto& d : F_) {
        if (!folds_ok(R, Lh, d)) continue;
        int m = std::max(run_count(cat(R, d)), run_count(cat(inverse(d), Lh)));
        if (m < best) best = m, bd = d;
      }
      if (best < r) return {off, bd};
    }
    Word c = canon(cur);
    size_t rot = least_rotation(cur);
    for (int depth = 1; depth <= 8; ++depth)
      if (solve(c, depth)) {
        auto& s = memo_[c];
        return {int((s.offset + rot) % cur.size()), s.d};
      }
    throw Error("InternalProgressFailure", "no reducing diameter sequence for " + to_string(cur));
  }

  struct Move {
    int offset;
    const Word* d;
    Word s1, s2;
    int score;
  };

  std::vector<Move> moves(const Word& w) {
    std::vector<Move> out;
    const int h = L_ / 2;
    for (int i = 0; i < L_; ++i) {
      Word r = rotate(w, size_t(i));
      Word R = sub(r, 0, h), Lh = sub(r, h, h);
      for (auto& d : F_) {
        if (!folds_ok(R, Lh, d)) continue;
        Word s1 = canon(cat(R, d)), s2 = canon(cat(inverse(d), Lh));
        int sc = (goal_met(s1, goal_) ? 0 : 100 + run_count(s1) + generator_support(s1)) +
                 (goal_met(s2, goal_) ? 0 : 100 + run_count(s2) + generator_support(s2));
        out.push_back({i, &d, std::move(s1), std::move(s2), sc});
      }
    }
    std::stable_sort(out.begin(), out.end(), [](const Move& a, const Move& b) { return a.score < b.score; });
    return out;
  }

  bool solve(const Word& w, int depth) {
    if (goal_met(w, goal_)) return true;
    {
      auto it = memo_.find(w);
      if (it != memo_.end()) {
        if (it->second.solved) return true;
        if (it->second.fail_depth >= depth) return false;
      }
    }
    if (depth <= 0) return false;
    auto ms = moves(w);
    for (auto& m : ms) {
      if (m.score >= 200 && depth < 2) break;
      if (solve(m.s1, depth - 1) && solve(m.s2, depth - 1)) {
        auto& s = memo_[w];
        s.solved = true;
        s.offset = m.offset;
        s.d = *m.d;
        return true;
      }
    }
    auto& s = memo_[w];
    s.fail_depth = std::max(s.fail_depth, depth);
    return false;
  }
};

std::mutex g_reducer_mu;
std::map<std::tuple<int, int, int>, std::unique_ptr<Reducer>> g_reducers;

MoveResult run_reducer(const Word& gamma, int rank, Goal goal) {
  const int L = int(gamma.size());
  if (L < 4 || L % 2) throw Error("BadLength", "loop length must be even and at least 4");
  if (!is_cyclically_reduced(gamma)) throw Error("NotReduced", "loop is not cyclically reduced");
  if (max_generator(gamma) > rank) throw Error("BadRank", "letter outside the rank");
  std::lock_guard<std::mutex> lk(g_reducer_mu);
  auto& r = g_reducers[{L, rank, int(goal)}];
  if (!r) r = std::make_unique<Reducer>(L, rank, goal);
  MoveResult out;
  out.pieces.rank = rank;
  out.pieces.L = L;
  out.consumed = {gamma};
  r->expand(gamma, out);
  return out;
}

}  // namespace

MoveResult reduce_loop(const Word& gamma, int rank) { return run_reducer(gamma, rank, Goal::TwoRuns); }

MoveResult reduce_to_rank2(const Word& gamma, int rank) { return run_reducer(gamma, rank, Goal::TwoGenerators); }

// ---------------------------------------------------------------------------------------
// the two-run lattice

namespace {

using Vec = std::vector<long long>;
using Combo = std::map<int, long long>;

long long checked_mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error("Overflow", "lattice coefficient overflow");
  return r;
}
long long checked_add(long long a, long long b) {
  long long r;
  if (__builtin_add_overflow(a, b, &r)) throw Error("Overflow", "lattice coefficient overflow");
  return r;
}

struct Row {
  Vec v;
  Combo c;
};

void axpy(Row& dst, long long f, const Row& src) {  // dst += f * src
  if (f == 0) return;
  for (size_t i = 0; i < dst.v.size(); ++i) dst.v[i] = checked_add(dst.v[i], checked_mul(f, src.v[i]));
  for (auto& [j, x] : src.c) {
    long long& y = dst.c[j];
    y = checked_add(y, checked_mul(f, x));
    if (y == 0) dst.c.erase(j);
  }
}

Row lincomb(long long a, const Row& r, long long b, const Row& s) {
  Row o;
  o.v.assign(r.v.size(), 0);
  axpy(o, a, r);
  axpy(o, b, s);
  return o;
}

long long egcd(long long a, long long b, long long& x, long long& y) {
  if (b == 0) {
    x = a >= 0 ? 1 : -1;
    y = 0;
    return std::llabs(a);
  }
  long long x1, y1;
  long long g = egcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

class TwoRunLattice {
 public:
  TwoRunLattice(int L, int k) : L_(L), k_(k) {
    index_orbits();
    build();
  }

  int dim() const { return int(rep_.size()); }

  // (orbit, sign) of a loop with at most two runs
  std::pair<int, int> locate(const Word& w) const {
    auto it = orbit_.find(canon(w));
    if (it == orbit_.end()) throw Error("NotTwoRun", "loop is outside the two-run lattice: " + to_string(w));
    return it->second;
  }

  bool has(const Word& w) const { return orbit_.count(canon(w)) > 0; }

  // Coefficients over relations, or nullopt when target is outside the span.
  std::optional<Combo> solve(Vec t) const {
    Combo out;
    for (auto& [col, row] : basis_) {
      if (t[col] == 0) continue;
      if (t[col] % row.v[col] != 0) return std::nullopt;
      long long f = t[col] / row.v[col];
      for (size_t i = 0; i < t.size(); ++i) t[i] = checked_add(t[i], -checked_mul(f, row.v[i]));
      for (auto& [j, x] : row.c) {
        long long& y = out[j];
        y = checked_add(y, checked_mul(f, x));
        if (y == 0) out.erase(j);
      }
    }
    for (long long x : t)
      if (x) return std::nullopt;
    return out;
  }

  // Pieces of relation j: the pants plus reductions of its multi-run boundary loops.
  PieceCollection macro(int j) const {
    PieceCollection pc;
    pc.rank = k_;
    pc.L = L_;
    pc.pants.push_back(rel_[j]);
    for (auto& b : rel_[j].boundary_words())
      if (!has(b)) pc.absorb(reduce_loop(inverse(b), k_).pieces);
    return pc;
  }

  int rank() const { return int(basis_.size()); }

 private:
  int L_, k_;
  std::unordered_map<Word, std::pair<int, int>, WordHash> orbit_;
  std::vector<Word> rep_;
  std::vector<GoodPants> rel_;
  std::map<int, Row> basis_;

  void add_loop(const Word& w) {
    Word c = canon(w), ci = canon(inverse(w));
    if (orbit_.count(c)) return;
    int id = int(rep_.size());
    Word r = std::min(c, ci);
    rep_.push_back(r);
    orbit_[r] = {id, 1};
    orbit_[r == c ? ci : c] = {id, -1};
  }

  void index_orbits() {
    const int h = L_ / 2;
    auto ls = all_letters(k_);
    for (Letter x : ls) add_loop(power(x, L_));
    for (Letter x : ls)
      for (Letter y : ls) {
        if (gen(x) == gen(y)) continue;
        for (int q = 1; q <= h; ++q) add_loop(two_run(x, L_ - q, y, q));
      }
  }

  void vec_add(Vec& v, const Word& w, int sign) const {
    auto [id, s] = locate(w);
    v[id] += sign * s;
  }

  void insert(Row r) {
    while (true) {
      int col = -1;
      for (size_t i = 0; i < r.v.size(); ++i)
        if (r.v[i]) {
          col = int(i);
          break;
        }
      if (col < 0) return;
      auto it = basis_.find(col);
      if (it == basis_.end()) {
        if (r.v[col] < 0) {
          Row n = lincomb(-1, r, 0, r);
          r = std::move(n);
        }
        basis_[col] = std::move(r);
        return;
      }
      Row& b = it->second;
      if (r.v[col] % b.v[col] == 0) {
        axpy(r, -(r.v[col] / b.v[col]), b);
        continue;
      }
      long long x, y;
      long long g = egcd(b.v[col], r.v[col], x, y);
      Row nb = lincomb(x, b, y, r);
      if (nb.v[col] < 0) nb = lincomb(-1, nb, 0, nb);
      Row ob = lincomb(1, b, -(b.v[col] / g) * (nb.v[col] / g), nb);  // b - (b_c/g) nb
      Row nr = lincomb(1, r, -(r.v[col] / g) * (nb.v[col] / g), nb);
      b = std::move(nb);
      insert(std::move(ob));
      r = std::move(nr);
    }
  }

  void build() {
    const int h = L_ / 2;
    auto F = diameter_family(h, k_);
    const size_t n = F.size();
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        for (size_t l = 0; l < n; ++l) {
          if (i > j || i > l) continue;  // cyclic rotations give the same pants
          GoodPants p{{F[i], F[j], F[l]}};
          if (!p.folded()) continue;
          Row r;
          r.v.assign(rep_.size(), 0);
          for (auto& b : p.boundary_words()) {
            if (has(b)) {
              vec_add(r.v, b, 1);
            } else {
              MoveResult m = reduce_loop(inverse(b), k_);
              for (auto& s : m.successors) vec_add(r.v, s, -1);
            }
          }
          if (std::all_of(r.v.begin(), r.v.end(), [](long long x) { return x == 0; })) continue;
          // only keep relations that change the span
          Vec probe = r.v;
          if (solve(probe)) continue;
          r.c[int(rel_.size())] = 1;
          rel_.push_back(p);
          insert(std::move(r));
        }
  }
};

std::mutex g_lattice_mu;
std::map<std::pair<int, int>, std::unique_ptr<TwoRunLattice>> g_lattices;

const TwoRunLattice& lattice(int L, int k) {
  std::lock_guard<std::mutex> lk(g_lattice_mu);
  auto& p = g_lattices[{L, k}];
  if (!p) p = std::make_unique<TwoRunLattice>(L, k);
  return *p;
}

HomologyVector hom_of(const std::vector<Word>& ws, int k) {
  HomologyVector h(size_t(k), 0);
  for (auto& w : ws) {
    auto x = homology_class(w, k);
    for (int i = 0; i < k; ++i) h[i] += x[i];
  }
  return h;
}

}  // namespace

MoveResult solve_relation(const std::vector<Word>& consumed, const std::vector<Word>& successors, int L, int rank) {
  if (L % 4) throw Error("OddL", "L must be divisible by 4");
  for (auto* ws : {&consumed, &successors})
    for (auto& w : *ws) require_length(w, L, "loop");
  if (hom_of(consumed, rank) != hom_of(successors, rank))
    throw Error("HomologyObstruction", "consumed and successor loops differ in homology");
  const TwoRunLattice& lat = lattice(L, rank);
  MoveResult out;
  out.pieces.rank = rank;
  out.pieces.L = L;
  out.consumed = consumed;
  out.successors = successors;
  Vec t(size_t(lat.dim()), 0);
  auto add = [&](const Word& w, int sign) {
    auto [id, s] = lat.locate(w);
    t[id] += sign * s;
  };
  for (auto& c : consumed) {
    if (lat.has(c)) {
      add(c, 1);
      continue;
    }
    MoveResult m = reduce_loop(c, rank);
    out.pieces.absorb(m.pieces);
    for (auto& s : m.successors) add(s, 1);
  }
  for (auto& s : successors) {
    if (lat.has(s)) {
      add(s, -1);
      continue;
    }
    MoveResult m = reduce_loop(inverse(s), rank);
    out.pieces.absorb(m.pieces);
    for (auto& x : m.successors) add(x, 1);
  }
  auto combo = lat.solve(t);
  if (!combo) throw Error("InternalProgressFailure", "relation outside the good-pants lattice");
  for (auto& [j, c] : *combo) {
    PieceCollection m = lat.macro(j);
    if (c < 0) m = iota_pieces(m);
    for (long long i = 0; i < std::llabs(c); ++i) out.pieces.absorb(m);
  }
  // exact bookkeeping: leftover differences come in inverse pairs
  std::map<Word, long long> diff;
  for (auto& p : out.pieces.pants)
    for (auto& b : p.boundary_words()) ++diff[canon(b)];
  for (auto& a : out.pieces.annuli) {
    ++diff[canon(a.core)];
    ++diff[canon(inverse(a.core))];
  }
  for (auto& c : consumed) --diff[canon(c)];
  for (auto& s : successors) --diff[canon(inverse(s))];
  std::set<Word> done;
  for (auto& [w, d] : diff) {
    if (d == 0 || done.count(w)) continue;
    Word wi = canon(inverse(w));
    if (diff[wi] != d) throw Error("InternalProgressFailure", "unpaired boundary difference");
    done.insert(w);
    done.insert(wi);
    Word r = std::min(w, wi);
    for (long long i = 0; i < std::llabs(d); ++i) {
      if (d > 0)
        out.pairs.push_back(r);
      else
        out.pieces.annuli.push_back(GoodAnnulus{r});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------------------
// two-run operations

std::optional<std::pair<TwoRunType, int>> two_run_type(const Word& w) {
  auto rs = runs(w);
  if (rs.size() != 2 || rs[0].length == rs[1].length) return std::nullopt;
  if (rs[0].length < rs[1].length) std::swap(rs[0], rs[1]);
  return std::pair{TwoRunType{rs[0].letter, rs[1].letter}, rs[1].length};
}

namespace {
// Exponent of letter y in a loop made of x and y only, or -1.
int mass_of(const Word& w, Letter x, Letter y) {
  int m = 0;
  for (Letter z : w) {
    if (z == y)
      ++m;
    else if (z != x)
      return -1;
  }
  return run_count(w) <= 2 ? m : -1;
}
}  // namespace

MoveResult trade(const Word& g1, int t1, int t2, const Word& g2, int w1, int w2, int rank) {
  const int L = int(g1.size());
  require_length(g2, L, "trade input");
  if (t1 <= 0 || t2 <= 0 || w2 <= 0 || w1 < 0) throw Error("PreconditionViolated", "need t1, t2, w2 > 0 and w1 >= 0");
  std::set<Letter> ls(g1.begin(), g1.end());
  if (ls.size() != 2) throw Error("PreconditionViolated", "trade inputs must be two-run loops");
  for (Letter x : ls)
    for (Letter y : ls) {
      if (x == y) continue;
      if (mass_of(g1, x, y) != t1 + t2 || mass_of(g2, x, y) != w1 + w2) continue;
      int m1 = t1 + w2, m2 = w1 + t2;
      if (m1 > L || m2 > L) throw Error("PreconditionViolated", "traded mass exceeds the loop length");
      std::vector<Word> succ{two_run(x, L - m1, y, m1), two_run(x, L - m2, y, m2)};
      return solve_relation({g1, g2}, succ, L, rank);
    }
  throw Error("PreconditionViolated", "inputs are not of one type with the given masses");
}

MoveResult combine(const Word& g1, const Word& g2, int rank) {
  const int L = int(g1.size()), h = L / 2;
  require_length(g2, L, "combine input");
  auto a = two_run_type(g1), b = two_run_type(g2);
  if (!a || !b || !(a->first == b->first)) throw Error("PreconditionViolated", "combine needs two loops of one type");
  const int r = a->second + b->second;
  if (r >= h) throw Error("RunsTooLong", "r1 + r2 must be below L/2");
  Letter x = a->first.lng, y = a->first.shrt;
  Word even = two_run(x, h, y, h);
  std::vector<Word> succ{two_run(x, L - r, y, r), power(x, L), even, inverse(even)};
  return solve_relation({g1, g2}, succ, L, rank);
}

MoveResult normalize_two_runs(const std::vector<Word>& loops, int L, int rank) {
  const int h = L / 2;
  std::map<TwoRunType, std::vector<Word>> by_type;
  MoveResult out;
  out.pieces.rank = rank;
  out.pieces.L = L;
  out.consumed = loops;
  for (auto& w : loops) {
    require_length(w, L, "loop");
    if (run_count(w) > 2) throw Error("PreconditionViolated", "normalize_two_runs takes loops with at most two runs");
    auto t = two_run_type(w);
    if (t)
      by_type[t->first].push_back(w);
    else
      out.successors.push_back(w);
  }
  for (auto& [ty, ws] : by_type) {
    if (ws.size() == 1) {
      out.successors.push_back(ws[0]);
      continue;
    }
    long Q = 0;
    for (auto& w : ws) Q += two_run_type(w)->second;
    const long n = long(ws.size());
    const long q = Q % h, e = Q / h;
    const long u = q ? n - 1 - e : n - e;
    std::vector<Word> succ;
    if (q) succ.push_back(two_run(ty.lng, L - int(q), ty.shrt, int(q)));
    for (long i = 0; i < e; ++i) succ.push_back(two_run(ty.lng, h, ty.shrt, h));
    for (long i = 0; i < std::labs(u); ++i) succ.push_back(power(u > 0 ? ty.lng : inv(ty.lng), L));
    MoveResult m = solve_relation(ws, succ, L, rank);
    out.pieces.absorb(m.pieces);
    out.pairs.insert(out.pairs.end(), m.pairs.begin(), m.pairs.end());
    out.successors.insert(out.successors.end(), succ.begin(), succ.end());
  }
  return out;
}

RemainderProfile remainder_profile(const std::vector<Word>& loops) {
  RemainderProfile p;
  long m[2][2][2] = {};  // [long sign][short sign][pair slot]
  for (auto& w : loops) {
    auto t = two_run_type(w);
    if (!t) continue;
    p.fraction[t->first] += double(t->second) / double(w.size());
    if (gen(t->first.lng) == 1 && gen(t->first.shrt) == 2)
      m[t->first.lng < 0][t->first.shrt < 0][0] += t->second;
  }
  p.k1 = m[0][0][0] - m[1][1][0];  // x_{a,b} - x_{A,B}
  p.k2 = m[0][1][0] - m[1][0][0];  // x_{a,B} - x_{A,b}
  return p;
}

MoveResult finalize_remainders(const std::vector<Word>& loops, int L, int rank) {
  HomologyVector zero(size_t(rank), 0);
  if (hom_of(loops, rank) != zero) throw Error("HomologyObstruction", "leftover loops are not null-homologous");
  std::map<TwoRunType, int> seen;
  for (auto& w : loops) {
    require_length(w, L, "loop");
    if (run_count(w) > 2) throw Error("PreconditionViolated", "leftovers must have at most two runs");
    auto t = two_run_type(w);
    if (t && ++seen[t->first] > 1) throw Error("PreconditionViolated", "more than one leftover loop of a type");
  }
  MoveResult out;
  out.pieces.rank = rank;
  out.pieces.L = L;
  out.consumed = loops;
  // inverse pairs close up as annuli directly
  std::multiset<Word> pool;
  for (auto& w : loops) pool.insert(canon(w));
  std::vector<Word> rest;
  while (!pool.empty()) {
    Word w = *pool.begin();
    pool.erase(pool.begin());
    auto it = pool.find(canon(inverse(w)));
    if (it != pool.end()) {
      pool.erase(it);
      out.pieces.annuli.push_back(GoodAnnulus{w});
    } else {
      rest.push_back(w);
    }
  }
  if (!rest.empty()) {
    MoveResult m = solve_relation(rest, {}, L, rank);
    out.pieces.absorb(m.pieces);
    out.pairs = m.pairs;
  }
  return out;
}

// ---------------------------------------------------------------------------------------
// drivers

namespace {

void append(std::vector<Word>& a, const std::vector<Word>& b) { a.insert(a.end(), b.begin(), b.end()); }

struct TagResolver {
  int L;
  PieceCollection* pieces;
  int added = 0;

  static TaggedLoop align(const TaggedLoop& y, const Word& target) {
    for (size_t k = 0; k < target.size(); ++k)
      if (rotate(y.word, k) == target) {
        const int n = int(target.size());
        return TaggedLoop(target, {((y.tags[0] - int(k)) % n + n) % n});
      }
    throw Error("InternalProgressFailure", "bridge words do not match");
  }

  // Annulus with boundaries x and y, where y reads the inverse of x.
  void bridge(const TaggedLoop& x, const TaggedLoop& y0) {
    TaggedLoop y = align(y0, inverse(x.word));
    GoodAnnulus a{y.word, true, y.tags[0], x.tags[0]};
    if (a.valid()) {
      pieces->annuli.push_back(a);
      ++added;
      return;
    }
    // intermediate delta_1 on the word of y, maximizing the smaller separation
    int best = -1, gbest = 0;
    for (int g = 0; g < L; ++g) {
      GoodAnnulus a1{y.word, true, g, x.tags[0]};
      TaggedLoop z(y.word, {g});
      TaggedLoop zi = iota(z);
      GoodAnnulus a2{y.word, true, y.tags[0], zi.tags[0]};
      int m = std::min(a1.tag_separation(), a2.tag_separation());
      if (m > best) best = m, gbest = g;
    }
    TaggedLoop z(y.word, {gbest});
    TaggedLoop zi = iota(z);
    pieces->annuli.push_back(GoodAnnulus{y.word, true, gbest, x.tags[0]});
    pieces->annuli.push_back(GoodAnnulus{y.word, true, y.tags[0], zi.tags[0]});
    added += 2;
  }
};

}  // namespace

PantsBound bound_with_pants_annuli(const LoopCollection& v, bool tagged) {
  if (v.loops.empty()) return {};
  const int L = int(v.loops[0].size());
  const int rank = v.rank;
  if (L % 4) throw Error("OddL", "L must be divisible by 4");
  for (auto& l : v.loops) {
    require_length(l.word, L, "loop");
    if (!is_cyclically_reduced(l.word)) throw Error("NotReduced", "loop is not cyclically reduced");
    if (tagged && l.tags.size() != 1) throw Error("BadTag", "tagged mode needs one tag per loop");
  }
  HomologyVector zero(size_t(rank), 0);
  if (v.homology() != zero) throw Error("HomologyObstruction", "input collection is not null-homologous");
  const int mult = rank >= 3 ? L / 2 : 1;
  PantsBound res;
  res.pieces.rank = rank;
  res.pieces.L = L;
  res.certificate.multiplier = mult;
  LoopCollection input = v;
  if (!tagged)
    for (auto& l : input.loops) l.tags.clear();

  // small collections that already split into pants and inverse pairs need no reduction
  if (!tagged && v.loops.size() <= 12) {
    const int n = int(v.loops.size());
    std::vector<char> used(n, 0);
    PieceCollection direct;
    std::function<bool()> split = [&]() -> bool {
      int i = 0;
      while (i < n && used[i]) ++i;
      if (i == n) return true;
      used[i] = 1;
      const Word& a = v.loops[i].word;
      for (int j = i + 1; j < n; ++j) {
        if (used[j]) continue;
        used[j] = 1;
        if (cyclic_canonical(v.loops[j].word) == cyclic_canonical(inverse(a))) {
          direct.annuli.push_back(GoodAnnulus{a});
          if (split()) return true;
          direct.annuli.pop_back();
        }
        for (int k = j + 1; k < n; ++k) {
          if (used[k]) continue;
          auto p = pants_from_boundary(a, v.loops[j].word, v.loops[k].word);
          if (!p) continue;
          used[k] = 1;
          direct.pants.push_back(*p);
          if (split()) return true;
          direct.pants.pop_back();
          used[k] = 0;
        }
        used[j] = 0;
      }
      used[i] = 0;
      return false;
    };
    if (split()) {
      for (int c = 0; c < mult; ++c) {
        res.pieces.pants.insert(res.pieces.pants.end(), direct.pants.begin(), direct.pants.end());
        res.pieces.annuli.insert(res.pieces.annuli.end(), direct.annuli.begin(), direct.annuli.end());
      }
      return res;
    }
  }

  std::vector<Word> level;
  for (auto& l : v.loops)
    for (int i = 0; i < mult; ++i) {
      Word w = l.word;
      std::vector<Word> parts{w};
      if (rank >= 3 && generator_support(w) > 2) {
        MoveResult m = reduce_to_rank2(w, rank);
        res.pieces.absorb(m.pieces);
        parts = m.successors;
      }
      for (auto& p : parts) {
        MoveResult m = reduce_loop(p, rank);
        res.pieces.absorb(m.pieces);
        append(level, m.successors);
      }
    }
  MoveResult norm = normalize_two_runs(level, L, rank);
  res.pieces.absorb(norm.pieces);
  MoveResult fin = finalize_remainders(norm.successors, L, rank);
  res.pieces.absorb(fin.pieces);

  if (tagged) {
    for (auto& p : res.pieces.pants) p.tagged = true;
    for (auto& a : res.pieces.annuli) {
      a.tagged = true;
      a.tag_core = 0;
      a.tag_inverse = iota(TaggedLoop(a.core, {0})).tags[0];
    }
    // pair each boundary occurrence with a v loop or with an occurrence of its inverse word
    std::map<Word, std::vector<TaggedLoop>> occ;
    for (auto& b : res.pieces.boundary()) {
      TaggedLoop c = b.canonical();
      occ[c.word].push_back(c);
    }
    TagResolver tr{L, &res.pieces};
    for (auto& l : v.loops)
      for (int i = 0; i < mult; ++i) {
        TaggedLoop c = l.canonical();
        auto& list = occ[c.word];
        if (list.empty()) throw Error("InternalProgressFailure", "boundary lacks an input loop");
        auto it = std::find(list.begin(), list.end(), c);
        if (it == list.end()) it = list.begin();
        TaggedLoop got = *it;
        list.erase(it);
        if (got == c) continue;
        tr.bridge(iota(got), c);
      }
    for (auto& [w, list] : occ) {
      Word wi = canon(inverse(w));
      if (!(w < wi)) continue;
      auto& other = occ[wi];
      if (list.size() != other.size()) throw Error("InternalProgressFailure", "unbalanced inverse occurrences");
      for (size_t i = 0; i < list.size(); ++i) {
        TaggedLoop want = iota(list[i]).canonical();
        if (want == other[i]) continue;
        // annulus boundaries: iota(list[i]) and iota(other[i])
        tr.bridge(iota(list[i]), iota(other[i]));
      }
      other.clear();
    }
    res.certificate.twisting_annuli = tr.added;
  }
  auto cert = verify_pieces(input, res.pieces, Strictness::Default, mult);
  for (auto& x : cert.m) {
    TaggedLoop y = iota(x).canonical();
    if (std::pair(x.word, x.tags) < std::pair(y.word, y.tags)) res.certificate.t.push_back(x);
  }
  return res;
}

uint64_t count_cyclic_words(int n, int k) {
  if (n <= 0) return 0;
  auto c = [&](int d) {
    uint64_t p = 1;
    for (int i = 0; i < d; ++i) p *= uint64_t(2 * k - 1);
    return p + 1 + uint64_t(k - 1) * (d % 2 == 0 ? 2 : 0);
  };
  auto phi = [](int m) {
    int r = m;
    for (int p = 2; p * p <= m; ++p)
      if (m % p == 0) {
        while (m % p == 0) m /= p;
        r -= r / p;
      }
    if (m > 1) r -= r / m;
    return r;
  };
  uint64_t s = 0;
  for (int d = 1; d <= n; ++d)
    if (n % d == 0) s += uint64_t(phi(n / d)) * c(d);
  return s / uint64_t(n);
}

VerifyCertificate verify_pieces(const LoopCollection& v, const PieceCollection& pieces, Strictness strict,
                                int multiplier) {
  VerifyCertificate cert;
  cert.multiplier = multiplier;
  for (auto& p : pieces.pants)
    if (!p.valid()) throw Error("InvalidPiece", "pants with edges " + to_string(p.edges[0]) + "," + to_string(p.edges[1]) + "," + to_string(p.edges[2]));
  for (auto& a : pieces.annuli)
    if (!a.valid()) throw Error("InvalidPiece", "annulus on " + to_string(a.core));
  auto key = [](const TaggedLoop& l) {
    TaggedLoop c = l.canonical();
    return std::pair(c.word, c.tags);
  };
  std::map<std::pair<Word, std::vector<int>>, long> m;
  for (auto& b : pieces.boundary()) ++m[key(b)];
  for (auto& l : v.loops) m[key(l)] -= multiplier;
  for (auto& [k, c] : m)
    if (c < 0)
      throw Error("BoundaryMismatch", "loop " + to_string(k.first) + " missing with multiplicity " + std::to_string(-c));
  for (auto& [k, c] : m) {
    if (c == 0) continue;
    TaggedLoop i = iota(TaggedLoop(k.first, k.second));
    auto it = m.find(key(i));
    long ci = it == m.end() ? 0 : it->second;
    if (ci != c)
      throw Error("BoundaryMismatch", "surplus loop " + to_string(k.first) + " with multiplicity " + std::to_string(c) +
                                          " lacks its iota partner");
    for (long j = 0; j < c; ++j) cert.m.push_back(TaggedLoop(k.first, k.second));
  }
  cert.pass = true;
  if (strict == Strictness::Strict) {
    long n = 0;
    for (auto& [k, c] : m) n = std::max(n, c);
    cert.n = n;
    const bool tg = !cert.m.empty() ? !cert.m[0].tags.empty() : false;
    const int L = pieces.L ? pieces.L : (v.loops.empty() ? 0 : int(v.loops[0].size()));
    // tagged loops up to rotation correspond to linear cyclically reduced words
    uint64_t total = 0;
    if (L > 0) {
      if (tg) {
        uint64_t p = 1;
        for (int i = 0; i < L; ++i) p *= uint64_t(2 * pieces.rank - 1);
        total = p + 1 + uint64_t(pieces.rank - 1) * (L % 2 == 0 ? 2 : 0);
      } else {
        total = count_cyclic_words(L, pieces.rank);
      }
    }
    // each added iota-annulus covers two loops of 1'
    long covered = long(cert.m.size());
    cert.implicit_annuli = long((uint64_t(n) * total - uint64_t(covered)) / 2);
  }
  return cert;
}

NonorientableResult nonorientable_pairing(const std::vector<TaggedLoop>& s) {
  NonorientableResult res;
  std::map<Word, std::vector<int>> groups;
  for (auto& l : s) {
    if (l.tags.size() != 1) throw Error("BadTag", "each loop needs exactly one tag");
    // plain rotation to the least word: tags of periodic words are not folded by the period
    const int L = int(l.size());
    const int r = int(least_rotation(l.word));
    groups[rotate(l.word, r)].push_back(((l.tags[0] - r) % L + L) % L);
  }
  for (auto& [w, g] : groups)
    if (g.size() % 2) res.duplicated = true;
  if (res.duplicated)
    for (auto& [w, g] : groups) {
      auto copy = g;
      g.insert(g.end(), copy.begin(), copy.end());
    }
  for (auto& [w, g] : groups) {
    const int L = int(w.size());
    TaggedLoop probe(w);
    std::sort(g.begin(), g.end());
    const int n = int(g.size());
    std::vector<int> mate(n, -1);
    std::function<bool()> rec = [&]() -> bool {
      int i = 0;
      while (i < n && mate[i] >= 0) ++i;
      if (i == n) return true;
      for (int j = i + 1; j < n; ++j) {
        if (mate[j] >= 0 || 4 * probe.gap_distance(g[i], g[j]) < L) continue;
        mate[i] = j, mate[j] = i;
        if (rec()) return true;
        mate[i] = mate[j] = -1;
      }
      return false;
    };
    if (!rec()) throw Error("TagsTooClose", "no pairing of copies of " + to_string(w) + " with tags L/4 apart");
    for (int i = 0; i < n; ++i)
      if (mate[i] > i) res.annuli.push_back(GoodAnnulus{w, true, g[i], g[mate[i]], true});
  }
  return res;
}

std::string serialize(const PieceCollection& p) {
  nlohmann::ordered_json j;
  j["schema"] = "fatsurf.pieces/1";
  j["rank"] = p.rank;
  j["L"] = p.L;
  j["pants"] = nlohmann::ordered_json::array();
  for (auto& x : p.pants)
    j["pants"].push_back({{"edges", {to_string(x.edges[0]), to_string(x.edges[1]), to_string(x.edges[2])}},
                          {"tagged", x.tagged}});
  j["annuli"] = nlohmann::ordered_json::array();
  for (auto& a : p.annuli)
    j["annuli"].push_back({{"core", to_string(a.core)},
                           {"tagged", a.tagged},
                           {"tags", {a.tag_core, a.tag_inverse}},
                           {"orientation_disagrees", a.orientation_disagrees}});
  return j.dump(2);
}

PieceCollection deserialize_pieces(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error("ParseError", e.what());
  }
  if (j.value("schema", "") != "fatsurf.pieces/1") throw Error("ParseError", "unknown schema");
  PieceCollection p;
  p.rank = j.at("rank").get<int>();
  p.L = j.at("L").get<int>();
  for (auto& x : j.at("pants")) {
    GoodPants g;
    for (int i = 0; i < 3; ++i) g.edges[i] = parse_word(x.at("edges").at(i).get<std::string>());
    g.tagged = x.value("tagged", false);
    p.pants.push_back(g);
  }
  for (auto& x : j.at("annuli")) {
    GoodAnnulus a;
    a.core = parse_word(x.at("core").get<std::string>());
    a.tagged = x.value("tagged", false);
    a.tag_core = x.at("tags").at(0).get<int>();
    a.tag_inverse = x.at("tags").at(1).get<int>();
    a.orientation_disagrees = x.value("orientation_disagrees", false);
    p.annuli.push_back(a);
  }
  return p;
}

}  // namespace fatsurf
