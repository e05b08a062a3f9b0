#include "fatsurf/beads.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <nlohmann/json.hpp>

#include "fatsurf/thinpipe.hpp"

namespace fatsurf {

namespace {

int mod(int a, int n) { return ((a % n) + n) % n; }

bool in_band(double len, double target, double band) { return std::abs(len - target) <= band * target + 1e-9; }

// lipA = lip i, lipB = lip i+1 (either may be absent for the end beads)
std::vector<int> positions_between(int n, int l, const Lip* a, const Lip* b) {
  std::vector<int> pos;
  if (!a) {  // B_0
    for (int x = b->top + l; x < n; ++x) pos.push_back(x);
    for (int x = 0; x < b->bottom; ++x) pos.push_back(x);
  } else if (!b) {  // B_M
    for (int x = a->bottom + l; x < a->top; ++x) pos.push_back(x);
  } else {
    for (int x = a->bottom + l; x < b->bottom; ++x) pos.push_back(x);
    for (int x = b->top + l; x < a->top; ++x) pos.push_back(x);
  }
  return pos;
}

Word read(const Word& r, const std::vector<int>& pos) {
  Word w;
  w.reserve(pos.size());
  for (int x : pos) w.push_back(r[x]);
  return w;
}

Word slice(const Word& r, int a, int b) { return Word(r.begin() + a, r.begin() + b); }

}  // namespace

Word BeadDecomposition::reassembled() const {
  Word w = r0;
  for (auto& s : plus) w.insert(w.end(), s.begin(), s.end());
  w.insert(w.end(), rM.begin(), rM.end());
  for (auto it = minus.rbegin(); it != minus.rend(); ++it) w.insert(w.end(), it->begin(), it->end());
  return w;
}

int BeadDecomposition::origin() const { return lips.empty() ? 0 : mod(lips[0].top + lip_length, n()); }

std::vector<int> BeadDecomposition::bead_positions(int i) const {
  const Lip* a = i == 0 ? nullptr : &lips[i - 1];
  const Lip* b = i == M ? nullptr : &lips[i];
  return positions_between(n(), lip_length, a, b);
}

BeadDecomposition find_bead_decomposition(const Word& r, int k, const BeadParams& p, const LipChooser& choose) {
  const int n = int(r.size());
  if (n == 0 || !is_cyclically_reduced(r)) throw Error("NotReduced", "relator must be cyclically reduced");
  BeadDecomposition d;
  d.rank = k;
  d.r = r;
  d.delta = p.delta;
  d.band = p.band;
  const double lg = std::log(double(2 * k - 1));
  d.C = p.C < 0 ? 0.8 * (1 - 2 * p.delta) / lg : p.C;
  if (p.lip == 0 && !(d.C < (1 - 2 * p.delta) / lg))
    throw Error("ParamViolation", "C must be below (1-2 delta)/log(2k-1)");
  d.target = p.target ? p.target : int(std::lround(std::pow(double(n), 1 - p.delta)));
  d.chunk = p.chunk ? p.chunk : int(std::floor(std::pow(double(n), 1 - 2 * p.delta)));
  d.lip_length = p.lip ? p.lip : int(std::ceil(d.C * std::log(double(n))));
  const int l = d.lip_length;
  if (l < 1) throw Error("ParamViolation", "lip length below 1");
  if (d.chunk < l) throw Error("ParamViolation", "chunk shorter than the lip");
  if (d.target < 2 * l + 2) throw Error("ParamViolation", "bead target too short for its lips");
  d.M = std::max(1, int(std::lround(double(n) / d.target)) - 1);
  const double expected_M = double(n) / d.target;
  if (!in_band(d.M, expected_M, d.band)) throw Error("NoDecomposition", "bead count out of band");

  auto matches = [&](int P, int Q) {
    for (int j = 0; j < l; ++j)
      if (r[mod(P + j, n)] != -r[mod(Q + l - 1 - j, n)]) return false;
    if (!p.maximal_lips) return true;
    return r[mod(P - 1, n)] != -r[mod(Q + l, n)] && r[mod(P + l, n)] != -r[mod(Q - 1, n)];
  };

  for (int i = 1; i <= d.M; ++i) {
    double Pt, Et;
    if (i == 1) {
      Pt = d.target / 2.0;
      Et = n - d.target / 2.0;
    } else {
      const Lip& q = d.lips.back();
      double R = q.top + l - q.bottom;
      double seg = (R - d.target) / (2.0 * (d.M - i + 1));
      Pt = q.bottom + seg;
      Et = q.top + l - seg;
    }
    const int lo = int(std::lround(Pt - d.chunk / 2.0));
    const int hi = int(std::lround(Et + d.chunk / 2.0));
    struct Cand {
      int u, v;
      Lip lip;
    };
    std::vector<Cand> cands;
    for (int u = 0; u + l <= d.chunk; ++u)
      for (int v = 0; v + l <= d.chunk; ++v) {
        int P = lo + u, E = hi - v, Q = E - l;
        if (P < 0 || E > n || P + l > Q) continue;
        if (i > 1) {
          const Lip& q = d.lips.back();
          if (P < q.bottom + l + 1 || E > q.top - 1) continue;
          if (!in_band(P - q.bottom, d.target / 2.0, d.band)) continue;
          if (!in_band(q.top + l - E, d.target / 2.0, d.band)) continue;
        } else if (!in_band(n - E + P, d.target, d.band)) {
          continue;
        }
        if (i == d.M && (!in_band(E - P, d.target, d.band) || E - P < 2 * l + 1)) continue;
        if (!matches(P, Q)) continue;
        cands.push_back({u, v, Lip{P, Q, slice(r, P, P + l)}});
      }
    // both scans read outward from the target points, so the pair found first sits nearest to them
    const int c0 = (d.chunk - l) / 2;
    auto key = [c0](const Cand& a) {
      int du = std::abs(a.u - c0), dv = std::abs(a.v - c0);
      return std::tuple(std::max(du, dv), du, dv, a.u, a.v);
    };
    std::stable_sort(cands.begin(), cands.end(), [&](const Cand& a, const Cand& b) { return key(a) < key(b); });
    if (cands.empty()) throw Error("NoDecomposition", "scan window " + std::to_string(i) + " has no inverse pair");
    bool taken = false;
    int tried = 0;
    for (auto& c : cands) {
      if (choose && tried >= p.candidate_cap) break;
      ++tried;
      if (!choose || choose(d, i, c.lip)) {
        d.lips.push_back(c.lip);
        taken = true;
        break;
      }
    }
    if (!taken) throw Error("CandidatesRejected", std::to_string(i));
    // lip uniqueness within the scan windows
    const Lip& got = d.lips.back();
    for (int x = lo; x + l <= lo + d.chunk; ++x) {
      if (x == got.bottom || x < 0 || x + l > n) continue;
      if (slice(r, x, x + l) == got.word)
        d.warnings.push_back("lip " + std::to_string(i) + " repeats at " + std::to_string(x));
    }
  }

  const auto& L1 = d.lips.front();
  d.r0 = slice(r, L1.top + l, n);
  d.r0.insert(d.r0.end(), r.begin(), r.begin() + L1.bottom);
  for (int i = 1; i < d.M; ++i) {
    d.plus.push_back(slice(r, d.lips[i - 1].bottom, d.lips[i].bottom));
    d.minus.push_back(slice(r, d.lips[i].top + l, d.lips[i - 1].top + l));
  }
  d.rM = slice(r, d.lips.back().bottom, d.lips.back().top + l);
  return d;
}

DecompositionCheck check_decomposition(const BeadDecomposition& d) {
  DecompositionCheck c;
  const int l = d.lip_length;
  c.reassembly = d.reassembled() == rotate(d.r, size_t(d.origin()));
  c.lips_inverse = int(d.lips.size()) == d.M;
  // prefix of r_i^+ inverse to the suffix of r_i^-, and likewise for r_M
  for (int i = 1; i < d.M && c.lips_inverse; ++i) {
    const Word& a = d.plus[i - 1];
    const Word& b = d.minus[i - 1];
    if (int(a.size()) < l || int(b.size()) < l) {
      c.lips_inverse = false;
      break;
    }
    c.lips_inverse = Word(a.begin(), a.begin() + l) == inverse(Word(b.end() - l, b.end())) &&
                     Word(a.begin(), a.begin() + l) == d.lips[i - 1].word;
  }
  if (c.lips_inverse)
    c.lips_inverse = int(d.rM.size()) >= 2 * l &&
                     Word(d.rM.begin(), d.rM.begin() + l) == inverse(Word(d.rM.end() - l, d.rM.end()));
  c.bands = in_band(double(d.r0.size()), d.target, d.band) && in_band(double(d.rM.size()), d.target, d.band) &&
            in_band(d.M, double(d.n()) / d.target, d.band);
  for (auto& s : d.plus) c.bands = c.bands && in_band(double(s.size()), d.target / 2.0, d.band);
  for (auto& s : d.minus) c.bands = c.bands && in_band(double(s.size()), d.target / 2.0, d.band);
  if (!c.reassembly) c.message += "reassembly differs; ";
  if (!c.lips_inverse) c.message += "lip pair not inverse; ";
  if (!c.bands) c.message += "segment out of band; ";
  return c;
}

std::vector<TaggedLoop> beads(const BeadDecomposition& d) {
  std::vector<TaggedLoop> out;
  const int l = d.lip_length;
  for (int i = 0; i <= d.M; ++i) {
    Word w = read(d.r, d.bead_positions(i));
    std::vector<int> tags = {0};
    if (i > 0 && i < d.M) tags.push_back(d.lips[i].bottom - d.lips[i - 1].bottom - l);
    out.emplace_back(std::move(w), std::move(tags));
  }
  return out;
}

TrivialBeadsResult find_homologically_trivial_beads(const Word& r, int k, const BeadParams& p) {
  TrivialBeadsResult res;
  auto trivial = [&](const std::vector<int>& pos) {
    for (long h : homology_class(read(r, pos), k))
      if (h != 0) return false;
    return true;
  };
  LipChooser ch = [&](const BeadDecomposition& d, int i, const Lip& c) {
    ++res.candidates_tried;
    const int n = d.n(), l = d.lip_length;
    const Lip* prev = i == 1 ? nullptr : &d.lips.back();
    if (!trivial(positions_between(n, l, prev, &c))) return false;
    if (i == d.M && !trivial(positions_between(n, l, &c, nullptr))) return false;
    return true;
  };
  try {
    res.decomposition = find_bead_decomposition(r, k, p, ch);
  } catch (const Error& e) {
    if (e.code != "CandidatesRejected" && e.code != "NoDecomposition") throw;
  }
  return res;
}

const char* to_string(BeadBackend b) {
  switch (b) {
    case BeadBackend::Exact: return "exact";
    case BeadBackend::Thin: return "thin";
    case BeadBackend::Annulus: return "annulus";
  }
  return "?";
}

namespace {

struct BeadBound {
  Pairing pairing;  // on N copies of B followed by N copies of inverse(B)
  BeadReport report;
};

std::optional<BeadBound> bound_bead(const Word& b, int k, const SurfaceParams& p) {
  const int m = int(b.size());
  const int N = p.N;
  LoopCollection c;
  c.rank = k;
  for (int a = 0; a < N; ++a) c.loops.emplace_back(b);
  for (int a = 0; a < N; ++a) c.loops.emplace_back(inverse(b));
  BeadBound out;
  out.report.length = m;
  if (p.backend == BeadBackend::Annulus) {
    out.pairing.partner.assign(2 * N * m, -1);
    for (int a = 0; a < N; ++a)
      for (int j = 0; j < m; ++j) {
        int x = a * m + j, y = (N + a) * m + (m - 1 - j);
        out.pairing.partner[x] = y;
        out.pairing.partner[y] = x;
      }
    out.report.status = "annulus";
    return out;
  }
  if (p.backend == BeadBackend::Exact && m <= p.exact_max_length) {
    BoundOptions o;
    o.min_edge_length = p.L;
    o.node_budget = p.node_budget;
    BoundResult r = bounds(c, o);
    out.report.nodes = r.nodes;
    if (!r.yes()) return std::nullopt;
    out.pairing = r.pairing;
    out.report.genus = r.witness->genus()[0].genus;
    out.report.status = "yes";
    return out;
  }
  ThinParams tp;
  tp.L = std::max(1, p.L);
  try {
    ThinResult t = run_thin_pipeline(c, tp);
    out.pairing = t.fatgraph.pairing;
    out.report.genus = t.fatgraph.genus()[0].genus;
    out.report.status = "yes";
    return out;
  } catch (const Error&) {
    return std::nullopt;
  }
}

}  // namespace

BeadedSurface build_beaded_surface(const Word& r, int k, const SurfaceParams& p) {
  if (p.N < 1) throw Error("BadParams", "N must be positive");
  const int n = int(r.size());
  BeadedSurface s;
  s.N = p.N;
  std::map<int, std::pair<BeadBound, std::vector<int>>> accepted;
  long tried = 0;
  int failing = 0;
  LipChooser ch = [&](const BeadDecomposition& d, int i, const Lip& c) {
    ++tried;
    const int l = d.lip_length;
    const Lip* prev = i == 1 ? nullptr : &d.lips.back();
    std::vector<std::pair<int, std::vector<int>>> todo = {{i - 1, positions_between(n, l, prev, &c)}};
    if (i == d.M) todo.push_back({i, positions_between(n, l, &c, nullptr)});
    std::vector<std::pair<int, std::pair<BeadBound, std::vector<int>>>> got;
    for (auto& [idx, pos] : todo) {
      auto b = bound_bead(read(r, pos), k, p);
      if (!b) {
        failing = idx;
        return false;
      }
      got.push_back({idx, {std::move(*b), pos}});
    }
    for (auto& g : got) accepted[g.first] = std::move(g.second);
    return true;
  };
  try {
    s.decomposition = find_bead_decomposition(r, k, p.beads, ch);
  } catch (const Error& e) {
    if (e.code == "CandidatesRejected")
      throw Error("BeadBoundFailure", "bead " + std::to_string(failing) + " admits no trivalent bounding within budget");
    throw;
  }
  s.candidates_tried = tried;
  const auto& d = s.decomposition;
  const int N = p.N, l = d.lip_length;

  LoopCollection g;
  g.rank = k;
  for (int a = 0; a < N; ++a) g.loops.emplace_back(r);
  for (int a = 0; a < N; ++a) g.loops.emplace_back(inverse(r));
  Pairing P;
  P.partner.assign(2 * N * n, -1);
  auto link = [&](int x, int y) {
    P.partner[x] = y;
    P.partner[y] = x;
  };
  auto rpos = [&](int a, int x) { return a * n + x; };
  auto Rpos = [&](int a, int x) { return (N + a) * n + (n - 1 - x); };  // letter of r^{-1} over r[x]
  for (int a = 0; a < N; ++a)
    for (auto& lip : d.lips)
      for (int j = 0; j < l; ++j) {
        link(rpos(a, lip.bottom + j), rpos(a, lip.top + l - 1 - j));
        link(Rpos(a, lip.bottom + j), Rpos(a, lip.top + l - 1 - j));
      }
  for (int i = 0; i <= d.M; ++i) {
    auto& [bb, pos] = accepted.at(i);
    const int m = int(pos.size());
    auto global = [&](int x) {
      int copy = x / m, j = x % m;
      if (copy < N) return rpos(copy, pos[j]);
      return Rpos(copy - N, pos[m - 1 - j]);
    };
    for (int x = 0; x < 2 * N * m; ++x) P.partner[global(x)] = global(bb.pairing.partner[x]);
    s.bead_reports.push_back(bb.report);
  }
  s.spine = quotient(g, P);
  for (int a = 0; a < 2 * N; ++a) s.disks.push_back(a);
  const int chi = s.spine.euler_characteristic() + 2 * N;
  s.genus = (2 - chi) / 2;
  s.warnings = d.warnings;
  return s;
}

SurfaceAudit audit_surface(const BeadedSurface& s) {
  SurfaceAudit a;
  const auto& d = s.decomposition;
  const int N = s.N, n = d.n(), l = d.lip_length;
  std::vector<Word> expect;
  for (int i = 0; i < N; ++i) expect.push_back(d.r);
  for (int i = 0; i < N; ++i) expect.push_back(inverse(d.r));
  a.boundary_exact = boundary_multiset(s.spine) == sorted_cyclic(expect);
  a.folded = validate(s.spine).folded;
  a.lips_twice = true;
  const auto& P = s.spine.pairing;
  for (int c = 0; c < 2 * N && a.lips_twice; ++c)
    for (auto& lip : d.lips) {
      // on copies of r^{-1} the lip sits at mirrored positions
      for (int j = 0; j < l; ++j) {
        int x, y;
        if (c < N) {
          x = c * n + lip.bottom + j;
          y = c * n + lip.top + l - 1 - j;
        } else {
          x = c * n + (n - 1 - (lip.bottom + j));
          y = c * n + (n - 1 - (lip.top + l - 1 - j));
        }
        if (P.partner[x] != y) a.lips_twice = false;
        // interior of the lip is a single edge
        if (j > 0 && s.spine.class_size[s.spine.gap_class[x]] != 2) a.lips_twice = false;
      }
    }
  return a;
}

std::string serialize(const BeadedSurface& s) {
  auto j = nlohmann::ordered_json::parse(serialize(s.spine));
  j["disks"] = nlohmann::ordered_json::array();
  for (int x : s.disks) j["disks"].push_back({{"loop", x}});
  j["N"] = s.N;
  j["genus"] = s.genus;
  j["beads"] = s.decomposition.M + 1;
  j["lip_length"] = s.decomposition.lip_length;
  return j.dump() + "\n";
}

// --- folded lifts ----------------------------------------------------------------------

namespace {

struct LetterGraph {
  const Fatgraph* y = nullptr;
  Fatgraph own;
  int rank = 2, classes = 0;
  std::vector<int> nxt, loop_of, partner;
  std::vector<Letter> let;
  std::vector<std::vector<int>> out;  // class x letter index -> position, or -1

  int to_class(int g) const { return y->gap_class[nxt[g]]; }
};

void build_letter_graph(const Fatgraph& in, LetterGraph& G) {
  if (in.has_source) {
    G.y = &in;
  } else {
    auto [c, p] = letter_level(in);
    G.own = quotient(c, p);
    G.y = &G.own;
  }
  const Fatgraph& y = *G.y;
  G.rank = y.rank;
  const auto& src = y.source;
  const int tot = int(src.total_length());
  G.nxt.resize(tot);
  G.loop_of.resize(tot);
  G.let.resize(tot);
  auto off = src.offsets();
  for (size_t l = 0; l < src.loops.size(); ++l) {
    int m = int(src.loops[l].size());
    for (int i = 0; i < m; ++i) {
      G.nxt[off[l] + i] = int(off[l]) + (i + 1) % m;
      G.loop_of[off[l] + i] = int(l);
      G.let[off[l] + i] = src.loops[l].word[i];
    }
  }
  G.partner = y.pairing.partner;
  G.classes = int(y.class_size.size());
  G.out.assign(G.classes, std::vector<int>(2 * G.rank, -1));
  for (int g = 0; g < tot; ++g) {
    int& slot = G.out[y.gap_class[g]][letter_index(G.let[g], G.rank)];
    if (slot != -1) throw Error("NotFolded", "two edges leave a vertex with the same letter");
    slot = g;
  }
}

}  // namespace

std::vector<CommonPath> scan_common_paths(const Fatgraph& y, const Word& w, int m) {
  LetterGraph G;
  build_letter_graph(y, G);
  std::vector<CommonPath> res;
  const int n = int(w.size());
  for (Letter x : w)
    if (gen(x) > G.rank) throw Error("BadWord", "letter outside the rank");
  for (int i = 0; i < n; ++i) {
    const int a = letter_index(w[i], G.rank);
    for (int c = 0; c < G.classes; ++c) {
      if (G.out[c][a] < 0) continue;
      if (i > 0 && G.out[c][letter_index(-w[i - 1], G.rank)] >= 0) continue;  // extends backwards
      int cur = c, len = 0, prev = -1;
      // a disk boundary may carry the path in either direction
      bool fwd = true, rev = true;
      int first = -1;
      while (i + len < n) {
        int g = G.out[cur][letter_index(w[i + len], G.rank)];
        if (g < 0) break;
        if (first < 0) first = g;
        if (prev >= 0) {
          fwd = fwd && G.nxt[prev] == g;
          rev = rev && G.nxt[G.partner[g]] == G.partner[prev];
        }
        prev = g;
        cur = G.to_class(g);
        ++len;
      }
      if (len >= m)
        res.push_back({c, i, len, fwd || rev, fwd ? G.loop_of[first] : rev ? G.loop_of[G.partner[prev]] : -1});
    }
  }
  return res;
}

std::vector<CommonPath> brute_force_common_paths(const Fatgraph& y, const Word& w, int m, int max_len) {
  LetterGraph G;
  build_letter_graph(y, G);
  const int n = int(w.size());
  std::vector<CommonPath> res;
  // every edge path from every point, kept while its label occurs in w
  std::vector<int> path;
  std::function<void(int, int)> dfs = [&](int cur, int start) {
    const int len = int(path.size());
    if (len >= m) {
      for (int i = 0; i + len <= n; ++i) {
        bool ok = true;
        for (int t = 0; t < len && ok; ++t) ok = G.let[path[t]] == w[i + t];
        if (!ok) continue;
        // maximal on both sides among all paths
        bool right = i + len < n && G.out[cur][letter_index(w[i + len], G.rank)] >= 0;
        bool left = i > 0 && G.out[start][letter_index(-w[i - 1], G.rank)] >= 0;
        if (right || left) continue;
        bool fwd = true, rev = true;
        for (int t = 1; t < len; ++t) {
          fwd = fwd && G.nxt[path[t - 1]] == path[t];
          rev = rev && G.nxt[G.partner[path[t]]] == G.partner[path[t - 1]];
        }
        int loop = fwd ? G.loop_of[path[0]] : rev ? G.loop_of[G.partner[path[len - 1]]] : -1;
        res.push_back({start, i, len, fwd || rev, loop});
      }
    }
    if (len == max_len) return;
    for (int a = 0; a < 2 * G.rank; ++a) {
      int g = G.out[cur][a];
      if (g < 0) continue;
      bool occurs = false;
      for (int i = 0; i + len < n && !occurs; ++i) {
        bool ok = w[i + len] == G.let[g];
        for (int t = 0; t < len && ok; ++t) ok = G.let[path[t]] == w[i + t];
        occurs = ok;
      }
      if (!occurs) continue;
      path.push_back(g);
      dfs(G.to_class(g), start);
      path.pop_back();
    }
  };
  for (int c = 0; c < G.classes; ++c) dfs(c, c);
  std::sort(res.begin(), res.end(), [](const CommonPath& a, const CommonPath& b) {
    return std::pair(a.start_index, a.start_point) < std::pair(b.start_index, b.start_point);
  });
  return res;
}

ConvexityReport alpha_convexity_check(const Fatgraph& spine, const Presentation& P, double alpha) {
  if (!(alpha > 0 && alpha <= 1)) throw Error("BadParams", "alpha must lie in (0, 1]");
  ConvexityReport rep;
  rep.alpha = alpha;
  for (size_t ri = 0; ri < P.relators.size(); ++ri) {
    const Word& base = P.relators[ri].letters();
    const int len = int(base.size());
    const int m = int(std::ceil(alpha * len - 1e-9));
    for (int inv_side = 0; inv_side < 2; ++inv_side) {
      Word w = inv_side ? inverse(base) : base;
      // cyclic subwords of length <= |r| become linear subwords
      Word ww = w;
      ww.insert(ww.end(), w.begin(), w.end() - 1);
      for (auto& c : scan_common_paths(spine, ww, m)) {
        ++rep.paths_checked;
        rep.longest = std::max(rep.longest, c.length);
        if (!c.in_disk_boundary && rep.pass) {
          rep.pass = false;
          rep.relator = int(ri);
          rep.inverse = inv_side == 1;
          rep.witness = c;
        }
      }
    }
  }
  return rep;
}

// --- presentations ---------------------------------------------------------------------

Presentation sample_presentation(int k, int n, const PresentationModel& m, uint64_t seed) {
  Presentation P;
  P.rank = k;
  P.length = n;
  P.seed = seed;
  long count = m.count;
  if (m.density_model) {
    P.model = "density";
    P.density = m.D;
    double raw = std::pow(double(2 * k - 1), m.D * n);
    if (raw > double(m.cap))
      throw Error("CapExceeded", "density model asks for " + std::to_string(raw) + " relators");
    count = std::lround(raw);
    if (m.D >= 0.5)
      P.warnings.push_back("supercritical density: random groups are trivial or Z/2 above 1/2");
  } else if (count > m.cap) {
    throw Error("CapExceeded", "few-relators model asks for " + std::to_string(count) + " relators");
  }
  P.count = count;
  for (long i = 0; i < count; ++i) P.relators.push_back(sample_cyclically_reduced(n, k, {seed, uint64_t(i)}));
  return P;
}

CPrimeReport cprime_report(const Presentation& P, double lambda) {
  CPrimeReport rep;
  rep.lambda = lambda;
  const size_t q = P.relators.size();
  std::vector<int> worst(q, 0);
  size_t total = 0;
  for (size_t i = 0; i < q; ++i) {
    total += P.relators[i].size();
    const Word& u = P.relators[i].letters();
    int self = longest_common_subword(u, true, u, true, true, true).length;
    worst[i] = std::max(worst[i], self);
    for (size_t j = i + 1; j < q; ++j) {
      int c = longest_common_subword(u, true, P.relators[j].letters(), true, true).length;
      worst[i] = std::max(worst[i], c);
      worst[j] = std::max(worst[j], c);
    }
  }
  rep.pass = true;
  for (size_t i = 0; i < q; ++i) {
    rep.max_piece = std::max(rep.max_piece, worst[i]);
    double ratio = double(worst[i]) / double(P.relators[i].size());
    rep.ratios.push_back(ratio);
    if (!(ratio < lambda)) rep.pass = false;
  }
  if (total > 0) rep.anchor = 2 * std::log(double(total)) / std::log(double(2 * P.rank - 1));
  return rep;
}

}  // namespace fatsurf
