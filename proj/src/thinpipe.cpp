#include "fatsurf/thinpipe.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "fatsurf/bounder.hpp"
#include "fatsurf/sampling.hpp"

namespace fatsurf {

ThinParams ThinParams::paper(int L) {
  ThinParams p;
  p.L = L;
  p.stem = 10 * L;
  p.flower = 40 * L;
  p.margin = 5 * L;
  p.Tprime = 1010 * L;
  p.T = p.Tprime + 1500 * L;
  p.paper_constants = true;
  return p;
}

ThinParams ThinParams::desk(int L, int unit) {
  ThinParams p;
  p.L = L;
  p.stem = unit;
  p.flower = 4 * unit;
  p.margin = std::max(1, unit / 2);
  p.Tprime = 101 * unit;
  p.T = p.Tprime + 150 * unit;
  return p;
}

void ThinParams::finalize() {
  if (stem < 1 || flower < 1 || margin < 1 || L < 1) throw Error("BadParams", "scale constants must be positive");
  if (Tprime == 0) Tprime = 101 * stem;
  if (T == 0) T = Tprime + 150 * stem;
  if (Tprime % stem != 0 || (Tprime / stem) % 2 == 0) throw Error("BadParams", "T' must be an odd multiple of the stem");
  if (T <= Tprime) throw Error("BadParams", "T must exceed T'");
  if (tag_density < 0) tag_density = epsilon / 10;
}

Segmentation segment(const TaggedLoop& g, int T) {
  if (T <= 0) throw Error("BadParams", "block length must be positive");
  Segmentation s;
  const int n = int(g.size());
  const int N = n / T;
  for (int i = 0; i < N; ++i) {
    Block b{i * T, T, false};
    for (int t : g.tags)
      if (t > b.start && t < b.start + T) b.tagged = true;
    s.blocks.push_back(b);
  }
  s.leftover_start = N * T;
  s.leftover_length = n - N * T;
  return s;
}

PoppyResult fold_tall_poppies(const Word& v, const ThinParams& p, Letter before, Letter after,
                              const std::vector<int>& tags) {
  PoppyResult r;
  const int n = int(v.size()), s = p.stem, f = p.flower, span = 2 * s + f;
  auto near_tag = [&](int a) {
    for (int t : tags)
      if (t >= a - s && t <= a + span + s) return true;
    return false;
  };
  int cursor = 0;
  bool first = true;
  int a = 0;
  while (a + span <= n) {
    bool ok = !near_tag(a);
    for (int j = 0; j < s && ok; ++j) ok = v[a + s + f + j] == -v[a + s - 1 - j];
    if (ok) {
      Letter prev = a > cursor ? v[a - 1] : r.residual.empty() ? before : r.residual.back();
      Letter next = a + span < n ? v[a + span] : after;
      // maximal at both ends so that the residual and the flower stay reduced
      ok = !(prev != 0 && next != 0 && prev == -next) && v[a + s] != -v[a + s + f - 1];
    }
    if (ok) {
      // residual letters skipped over since the cursor
      for (int i = cursor; i < a; ++i) {
        r.residual.push_back(v[i]);
        r.residual_index.push_back(i);
      }
      r.poppies.push_back({a});
      r.flowers.emplace_back(Word(v.begin() + a + s, v.begin() + a + s + f), std::vector<int>{0});
      r.residual_tags.push_back(int(r.residual.size()));
      cursor = a + span;
      first = false;
      a = cursor + 2 * s;  // the next poppy sits a positive even number of units further on
      continue;
    }
    a += 2 * s;
  }
  (void)first;
  for (int i = cursor; i < n; ++i) {
    r.residual.push_back(v[i]);
    r.residual_index.push_back(i);
  }
  return r;
}

RandomCancellation random_cancellation(const std::vector<Residual>& v, const ThinParams& p) {
  RandomCancellation rc;
  const int m = p.margin;
  std::map<Word, std::vector<int>> by_core;
  long total = 0;
  for (size_t i = 0; i < v.size(); ++i) {
    total += long(v[i].word.size());
    if (v[i].tagged || int(v[i].word.size()) < 2 * m + 1) continue;
    by_core[Word(v[i].word.begin() + m, v[i].word.end() - m)].push_back(int(i));
  }
  std::vector<char> used(v.size(), 0);
  Rng rng(p.seed, 0x7a11);
  std::vector<int> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end());
  for (size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
  for (int i : order) {
    if (used[i] || v[i].tagged || int(v[i].word.size()) < 2 * m + 1) continue;
    const Word& wi = v[i].word;
    Word core(wi.begin() + m, wi.end() - m);
    auto it = by_core.find(inverse(core));
    if (it == by_core.end()) continue;
    std::vector<int> ok;
    for (int j : it->second) {
      if (j == i || used[j]) continue;
      const Word& wj = v[j].word;
      // l_i r_j and l_j r_i must be reduced
      if (wi[m - 1] == -wj[wj.size() - m] || wj[m - 1] == -wi[wi.size() - m]) continue;
      ok.push_back(j);
    }
    if (ok.empty()) continue;
    int j = ok[rng.below(ok.size())];
    used[i] = used[j] = 1;
    rc.pairs.push_back({std::min(i, j), std::max(i, j)});
  }
  std::sort(rc.pairs.begin(), rc.pairs.end());
  long left = 0;
  for (size_t i = 0; i < v.size(); ++i)
    if (!used[i]) {
      rc.unpaired.push_back(int(i));
      left += long(v[i].word.size());
    }
  rc.remainder_fraction = total ? double(left) / double(total) : 0.0;
  return rc;
}

std::map<std::string, int> Reservoir::census() const {
  std::map<std::string, int> c;
  for (auto& f : flowers) {
    TaggedLoop k = f.canonical();
    std::string key = to_string(k.word);
    for (int t : k.tags) key += "/" + std::to_string(t);
    ++c[key];
  }
  return c;
}

namespace {

HomologyVector hom(const Word& w, int k) { return homology_class(w, k); }

HomologyVector add(HomologyVector a, const HomologyVector& b) {
  for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

std::string kind_of(const HomologyVector& h) {
  std::string s = "homology(";
  for (size_t i = 0; i < h.size(); ++i) s += (i ? "," : "") + std::to_string(h[i]);
  return s + ")";
}

}  // namespace

ReservoirCancellation cancel_with_reservoir(const std::vector<TaggedLoop>& nus, const Reservoir& r,
                                            const ThinParams& p, int rank) {
  ReservoirCancellation out;
  const int F = int(r.flowers.size());
  std::vector<char> free(F, 1);
  std::vector<HomologyVector> fh(F);
  for (int i = 0; i < F; ++i) fh[i] = hom(r.flowers[i].word, rank);
  // odd loops go in pairs
  std::vector<std::vector<int>> jobs;
  std::vector<int> odd;
  long mass = 0;
  for (size_t i = 0; i < nus.size(); ++i) {
    mass += long(nus[i].size());
    if (nus[i].size() % 2)
      odd.push_back(int(i));
    else
      jobs.push_back({int(i)});
  }
  if (odd.size() % 2) throw Error("ParityObstruction", "odd number of odd remainder loops");
  for (size_t i = 0; i < odd.size(); i += 2) jobs.push_back({odd[i], odd[i + 1]});
  std::sort(jobs.begin(), jobs.end(), [&](const std::vector<int>& a, const std::vector<int>& b) {
    size_t la = 0, lb = 0;
    for (int x : a) la += nus[x].size();
    for (int x : b) lb += nus[x].size();
    return std::pair(la, a) < std::pair(lb, b);
  });
  Rng rng(p.seed, 0xce5e);
  BoundOptions opts;
  opts.min_edge_length = p.L;
  opts.node_budget = p.node_budget;
  for (auto& job : jobs) {
    HomologyVector need(size_t(rank), 0);
    int len = 0;
    for (int x : job) {
      need = add(need, hom(nus[x].word, rank));
      len += int(nus[x].size());
    }
    for (auto& h : need) h = -h;
    // candidate flower sets whose homology cancels the job, smallest first
    std::vector<std::vector<int>> cands;
    bool zero = std::all_of(need.begin(), need.end(), [](long h) { return h == 0; });
    if (zero) cands.push_back({});
    std::vector<int> pool;
    for (int i = 0; i < F; ++i)
      if (free[i]) pool.push_back(i);
    for (size_t i = pool.size(); i > 1; --i) std::swap(pool[i - 1], pool[rng.below(i)]);
    const int maxf = std::min(p.max_flowers_per_cancel, (p.cancel_cap - len) / std::max(1, p.flower));
    std::map<HomologyVector, std::vector<int>> by_h;
    for (int i : pool) by_h[fh[i]].push_back(i);
    if (maxf >= 1 && by_h.count(need))
      for (int i : by_h[need]) cands.push_back({i});
    if (maxf >= 2)
      for (int i : pool) {
        HomologyVector rest = need;
        for (size_t t = 0; t < rest.size(); ++t) rest[t] -= fh[i][t];
        auto it = by_h.find(rest);
        if (it == by_h.end()) continue;
        for (int j : it->second)
          if (j > i) cands.push_back({i, j});
        if (int(cands.size()) > 4 * p.cancel_attempts) break;
      }
    if (maxf >= 3 && int(cands.size()) < p.cancel_attempts)
      for (size_t a = 0; a < pool.size() && int(cands.size()) < 4 * p.cancel_attempts; ++a)
        for (size_t b = a + 1; b < pool.size() && int(cands.size()) < 4 * p.cancel_attempts; ++b) {
          HomologyVector rest = need;
          for (size_t t = 0; t < rest.size(); ++t) rest[t] -= fh[pool[a]][t] + fh[pool[b]][t];
          auto it = by_h.find(rest);
          if (it == by_h.end()) continue;
          for (int c : it->second)
            if (c != pool[a] && c != pool[b]) cands.push_back({pool[a], pool[b], c});
        }
    if (cands.empty()) throw Error("ReservoirExhausted", "no flowers of " + kind_of(need) + " left");
    bool done = false;
    for (int t = 0; t < int(cands.size()) && t < p.cancel_attempts && !done; ++t) {
      LoopCollection c;
      c.rank = rank;
      for (int x : job) c.loops.push_back(nus[x]);
      for (int f : cands[t]) c.loops.push_back(r.flowers[f]);
      BoundResult b = bounds(c, opts);
      if (!b.yes()) continue;
      CancelGroup g{job, cands[t], b.pairing};
      for (int f : cands[t]) free[f] = 0;
      out.flowers_used += int(cands[t].size());
      out.groups.push_back(std::move(g));
      done = true;
    }
    if (!done) throw Error("ReservoirExhausted", "no trivalent cancellation with flowers of " + kind_of(need));
  }
  for (int i = 0; i < F; ++i)
    if (free[i]) out.unused.push_back(i);
  out.consumption = mass ? double(out.flowers_used) * p.flower / double(mass) : 0.0;
  return out;
}

namespace {

struct Loop {
  std::vector<int> pos;  // global positions in reading order
  std::vector<int> tags;
  TaggedLoop tagged(const std::vector<Letter>& let) const {
    Word w;
    for (int x : pos) w.push_back(let[x]);
    return TaggedLoop(w, tags);
  }
};

// Loops read by the unpaired letters once the paired strips are collapsed.
std::vector<Loop> remaining_loops(const std::vector<int>& partner, const std::vector<int>& nxt,
                                  const std::vector<int>& tags_at) {
  const int n = int(partner.size());
  std::vector<char> seen(n, 0);
  std::vector<Loop> out;
  for (int s = 0; s < n; ++s) {
    if (partner[s] != -1 || seen[s]) continue;
    Loop l;
    int g = s;
    // tags on the gap before s, including any reached by collapsing strips backwards, are
    // collected when the walk returns to s
    do {
      seen[g] = 1;
      l.pos.push_back(g);
      int h = nxt[g];
      int tagcount = tags_at[h];
      bool jumped = false;
      while (partner[h] != -1) {
        h = nxt[partner[h]];
        tagcount += tags_at[h];
        jumped = true;
      }
      int gap = h == s ? 0 : int(l.pos.size());
      for (int t = 0; t < tagcount + (jumped ? 1 : 0); ++t) l.tags.push_back(gap);
      g = h;
    } while (g != s);
    std::sort(l.tags.begin(), l.tags.end());
    out.push_back(std::move(l));
  }
  return out;
}

Word canon(const Word& w) { return rotate(w, least_rotation(w)); }

}  // namespace

ThinResult run_thin_pipeline(const LoopCollection& gamma, const ThinParams& params, ThinReport* report) {
  ThinParams p = params;
  ThinReport local;
  ThinReport& rep = report ? *report : local;
  rep = ThinReport{};
  auto fail = [&](const std::string& stage, const std::string& why) -> StageFailure {
    rep.failed_stage = stage;
    return StageFailure(stage, why);
  };
  try {
    p.finalize();
  } catch (const Error& e) {
    throw fail("hypotheses", e.what());
  }
  const int k = gamma.rank;
  const int G = int(gamma.total_length());
  if (G == 0) throw fail("hypotheses", "empty input");
  for (auto& l : gamma.loops)
    if (!is_cyclically_reduced(l.word)) throw fail("hypotheses", "input loop not cyclically reduced");
  for (long h : gamma.homology())
    if (h != 0) throw fail("hypotheses", "input is not homologically trivial");

  // --- hypotheses (warnings only)
  long ntags = 0;
  for (auto& l : gamma.loops) {
    ntags += long(l.tags.size());
    if (l.tags.size() > 1 && l.min_tag_separation() < 4 * p.L)
      rep.warnings.push_back("tags closer than 4L");
  }
  if (double(ntags) / G > p.tag_density) rep.warnings.push_back("tag density above threshold");
  {
    std::vector<Word> blocks;
    for (auto& l : gamma.loops)
      for (int s = 0; s + p.T <= int(l.size()); s += p.T) blocks.emplace_back(l.word.begin() + s, l.word.begin() + s + p.T);
    if (p.T <= 12) {
      auto pr = collection_pseudorandomness(blocks, k, p.T, p.epsilon);
      if (!pr.pass) rep.warnings.push_back("blocks are not (T, epsilon)-pseudorandom");
    } else {
      rep.warnings.push_back("pseudorandomness not checked: T too large to enumerate");
    }
  }

  std::vector<int> nxt(G), loop_of(G), tags_at(G, 0);
  std::vector<Letter> let(G);
  auto off = gamma.offsets();
  for (size_t l = 0; l < gamma.loops.size(); ++l) {
    int m = int(gamma.loops[l].size());
    for (int i = 0; i < m; ++i) {
      nxt[off[l] + i] = int(off[l]) + (i + 1) % m;
      loop_of[off[l] + i] = int(l);
      let[off[l] + i] = gamma.loops[l].word[i];
    }
    for (int t : gamma.loops[l].tags) ++tags_at[off[l] + t % m];
  }
  std::vector<int> partner(G, -1);
  auto link = [&](int a, int b) {
    partner[a] = b;
    partner[b] = a;
  };

  // --- segmentation and tall poppies
  std::vector<Residual> residuals;
  std::vector<std::vector<int>> residual_pos;
  std::vector<int> flower_first;
  for (size_t l = 0; l < gamma.loops.size(); ++l) {
    const auto& loop = gamma.loops[l];
    const int m = int(loop.size());
    Segmentation seg = segment(loop, p.T);
    for (auto& b : seg.blocks) {
      ++rep.blocks;
      if (b.tagged) {
        ++rep.tagged_blocks;
        continue;
      }
      Word v(loop.word.begin() + b.start, loop.word.begin() + b.start + p.Tprime);
      std::vector<int> rel;
      for (int t : loop.tags)
        for (int shift : {-m, 0, m}) rel.push_back(t + shift - b.start);
      Letter before = loop.word[(b.start + m - 1) % m];
      Letter after = loop.word[(b.start + p.Tprime) % m];
      PoppyResult pr = fold_tall_poppies(v, p, before, after, rel);
      const int base = int(off[l]) + b.start;
      for (auto& pp : pr.poppies) {
        for (int j = 0; j < p.stem; ++j) link(base + pp.x + j, base + pp.x + 2 * p.stem + p.flower - 1 - j);
        flower_first.push_back(base + pp.x + p.stem);
      }
      rep.poppies += int(pr.poppies.size());
      Residual r{pr.residual, false};
      std::vector<int> pos;
      for (int i : pr.residual_index) pos.push_back(base + i);
      residuals.push_back(std::move(r));
      residual_pos.push_back(std::move(pos));
    }
  }
  rep.flowers = int(flower_first.size());

  // --- random cancellation
  RandomCancellation rc = random_cancellation(residuals, p);
  for (auto [i, j] : rc.pairs) {
    const auto& a = residual_pos[i];
    const auto& b = residual_pos[j];
    const int m = p.margin, len = int(a.size()) - 2 * m;
    for (int t = 0; t < len; ++t) link(a[m + t], b[b.size() - m - 1 - t]);
  }
  rep.paired_blocks = 2 * int(rc.pairs.size());
  rep.remainder_fraction = rc.remainder_fraction;

  // --- remainder loops and the reservoir
  std::vector<char> is_flower_start(G, 0);
  for (int x : flower_first) is_flower_start[x] = 1;
  std::vector<Loop> loops = remaining_loops(partner, nxt, tags_at);
  std::vector<Loop> nus, flowers;
  for (auto& l : loops) {
    bool fl = false;
    for (int x : l.pos) fl = fl || is_flower_start[x];
    if (fl && int(l.pos.size()) == p.flower)
      flowers.push_back(l);
    else
      nus.push_back(l);
  }
  int mind = 1 << 30;
  for (auto& l : loops) {
    TaggedLoop t = l.tagged(let);
    if (t.tags.size() > 1) mind = std::min(mind, t.min_tag_separation());
  }
  rep.min_tag_distance_after_pairing = mind == (1 << 30) ? -1 : mind;
  rep.remainder_loops = int(nus.size());
  for (auto& l : nus) rep.remainder_mass += int(l.pos.size());
  Reservoir res;
  for (auto& f : flowers) res.flowers.push_back(f.tagged(let));
  {
    auto c = res.census();
    rep.reservoir_kinds = int(c.size());
    rep.reservoir_min = c.empty() ? 0 : 1 << 30;
    for (auto& [kk, v] : c) {
      rep.reservoir_min = std::min(rep.reservoir_min, v);
      rep.reservoir_max = std::max(rep.reservoir_max, v);
    }
  }

  // --- cancelling the remainder from the reservoir
  std::vector<TaggedLoop> nu_loops;
  for (auto& l : nus) nu_loops.push_back(l.tagged(let));
  ReservoirCancellation canc;
  try {
    canc = cancel_with_reservoir(nu_loops, res, p, k);
  } catch (const Error& e) {
    throw fail("reservoir", e.what());
  }
  for (auto& g : canc.groups) {
    std::vector<int> local;
    for (int x : g.nus) local.insert(local.end(), nus[x].pos.begin(), nus[x].pos.end());
    for (int f : g.flowers) local.insert(local.end(), flowers[f].pos.begin(), flowers[f].pos.end());
    for (size_t t = 0; t < local.size(); ++t) partner[local[t]] = local[g.pairing.partner[t]];
  }
  rep.flowers_consumed = canc.flowers_used;
  rep.consumption = canc.consumption;

  // --- gluing up the reservoir: good pants, or the exact search when the pants leave a surplus
  LoopCollection rest;
  rest.rank = k;
  std::vector<const Loop*> rest_loops;
  for (int f : canc.unused) {
    rest.loops.push_back(res.flowers[f]);
    rest_loops.push_back(&flowers[f]);
  }
  LoopCollection big;
  big.rank = k;
  Pairing P;
  auto copies = [&](int N) {
    big.loops.clear();
    for (int c = 0; c < N; ++c)
      for (auto& l : gamma.loops) big.loops.push_back(l);
    P.partner.assign(size_t(N) * G, -1);
    for (int c = 0; c < N; ++c)
      for (int x = 0; x < G; ++x)
        if (partner[x] >= 0) P.partner[c * G + x] = c * G + partner[x];
  };
  int N = 1;
  bool glued = rest.loops.empty();
  if (glued) copies(1);
  if (!glued && !p.exact_finish) {
    try {
      PantsBound pb = bound_with_pants_annuli(rest, true);
      N = pb.certificate.multiplier;
      rep.pants = int(pb.pieces.pants.size());
      rep.annuli = int(pb.pieces.annuli.size());
      rep.surplus_loops = int(pb.certificate.t.size());
      copies(N);
    // Piece boundary letters.  Flower copies are glued along them; leftover t / iota(t) loops are
      // glued to each other.  Each gluing is rotated so that no two trivalent points meet.
      struct BLoop {
        int off;
        Word word;
        std::vector<int> tri;  // gaps at vertices of valence >= 3
        bool used = false;
      };
      std::vector<BLoop> bl;
      std::vector<int> pi;  // pairing inside the pieces
      auto add_piece = [&](const Fatgraph& fg) {
        auto [c, pr] = letter_level(fg);
        const int base = int(pi.size()), n = int(pr.partner.size());
        auto offs = c.offsets();
        std::vector<int> nx(n), dsu(n), sz(n, 0);
        for (size_t i = 0; i < c.loops.size(); ++i)
          for (size_t j = 0; j < c.loops[i].size(); ++j) nx[offs[i] + j] = int(offs[i] + (j + 1) % c.loops[i].size());
        std::iota(dsu.begin(), dsu.end(), 0);
        auto find = [&](int x) {
          while (dsu[x] != x) x = dsu[x] = dsu[dsu[x]];
          return x;
        };
        for (int i = 0; i < n; ++i) dsu[find(nx[i])] = find(pr.partner[i]);
        for (int i = 0; i < n; ++i) ++sz[find(i)];
        for (size_t i = 0; i < c.loops.size(); ++i) {
          BLoop b{base + int(offs[i]), c.loops[i].word, {}};
          for (size_t j = 0; j < c.loops[i].size(); ++j)
            if (sz[find(int(offs[i] + j))] >= 3) b.tri.push_back(int(j));
          bl.push_back(std::move(b));
        }
        for (int q : pr.partner) pi.push_back(base + q);
      };
      for (auto& pp : pb.pieces.pants) add_piece(pp.fatgraph(k));
      for (auto& a : pb.pieces.annuli) add_piece(a.fatgraph(k));
      const int B = int(pi.size());
      std::vector<int> to_global(B, -1), glue(B, -1), from_global(size_t(N) * G, -1);
      std::map<Word, std::vector<int>> by_word;
      for (size_t i = 0; i < bl.size(); ++i) by_word[canon(bl[i].word)].push_back(int(i));
      // first unused loop reading w (cyclically) that `fits`
      auto take = [&](const Word& w, const std::function<bool(int)>& fits) -> int {
        auto it = by_word.find(canon(w));
        if (it == by_word.end()) return -1;
        for (int i : it->second)
          if (!bl[i].used && fits(i)) {
            bl[i].used = true;
            return i;
          }
        return -1;
      };
      // best rotation s of the second loop: three or more trivalent points never coincide and the
      // smallest spacing is as large as possible; g1/g2 map gaps to glued-circle coordinates
      auto best = [&](int m, const std::vector<int>& rots, const std::vector<int>& a,
                      const std::function<int(int, int)>& g2, const std::vector<int>& b) {
        int pick = -1, score = -1;
        for (int s : rots) {
          std::vector<int> pts = a;
          bool clash = false;
          for (int h : b) {
            int t = g2(h, s);
            clash = clash || std::find(a.begin(), a.end(), t) != a.end();
            pts.push_back(t);
          }
          if (clash) continue;
          std::sort(pts.begin(), pts.end());
          int gapmin = m;
          for (size_t i = 0; i + 1 < pts.size(); ++i) gapmin = std::min(gapmin, pts[i + 1] - pts[i]);
          if (pts.size() > 1) gapmin = std::min(gapmin, pts.front() + m - pts.back());
          if (gapmin > score) score = gapmin, pick = s;
        }
        return std::pair(pick, score);
      };
      auto rotations = [](const Word& target, const Word& w) {
        std::vector<int> out;
        const int m = int(w.size());
        for (int s = 0; s < m; ++s) {
          bool ok = true;
          for (int j = 0; j < m && ok; ++j) ok = w[(s + j) % m] == target[j];
          if (ok) out.push_back(s);
        }
        return out;
      };
      for (int c = 0; c < N; ++c)
        for (size_t f = 0; f < rest.loops.size(); ++f) {
          const TaggedLoop& fl = rest.loops[f];
          const int m = int(fl.size());
          // flower gap j meets piece gap (s + j) mod m; coordinates follow the flower
          auto fit = [&](int i) {
            return best(m, rotations(fl.word, bl[i].word), fl.tags,
                        [m](int h, int s) { return ((h - s) % m + m) % m; }, bl[i].tri);
          };
          if (!by_word.count(canon(fl.word))) throw fail("pants", "piece boundary lacks a flower");
          int i = take(fl.word, [&](int i) { return fit(i).second >= p.L; });
          if (i < 0) throw fail("assembly", "no trivalent gluing of a flower");
          auto [s, score] = fit(i);
          for (int j = 0; j < m; ++j) {
            int b = bl[i].off + (s + j) % m, g = c * G + rest_loops[f]->pos[j];
            to_global[b] = g;
            from_global[g] = b;
          }
        }
      // leftover loops of word w against those of w^-1: a bipartite matching on compatible rotations
      auto fit = [&](int i, int j) {
        const int m = int(bl[i].word.size());
        // circle letter t is letter m-1-t of the first loop and (s + t) mod m of the second
        std::vector<int> a;
        for (int g : bl[i].tri) a.push_back((m - g) % m);
        return best(m, rotations(inverse(bl[i].word), bl[j].word), a,
                    [m](int h, int s) { return ((h - s) % m + m) % m; }, bl[j].tri);
      };
      for (auto& [w, all] : by_word) {
        Word wi = canon(inverse(w));
        if (!(w < wi)) continue;
        std::vector<int> left, right;
        for (int i : all)
          if (!bl[i].used) left.push_back(i);
        for (int j : by_word[wi])
          if (!bl[j].used) right.push_back(j);
        if (left.size() != right.size()) throw fail("pants", "leftover boundary without its iota partner");
        const int n = int(left.size());
        std::vector<std::vector<std::pair<int, int>>> adj(n);  // (right index, rotation)
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b) {
            auto [s, score] = fit(left[a], right[b]);
            if (s >= 0 && score >= p.L) adj[a].push_back({b, s});
          }
        std::vector<int> match_r(n, -1), rot_r(n, -1);
        std::vector<char> seen;
        std::function<bool(int)> augment = [&](int a) {
          for (auto [b, s] : adj[a]) {
            if (seen[b]) continue;
            seen[b] = 1;
            if (match_r[b] < 0 || augment(match_r[b])) {
              match_r[b] = a;
              rot_r[b] = s;
              return true;
            }
          }
          return false;
        };
        int matched = 0;
        for (int a = 0; a < n; ++a) {
          seen.assign(n, 0);
          matched += augment(a);
        }
        if (matched < n) throw fail("assembly", "no trivalent gluing of leftover boundaries");
        for (int b = 0; b < n; ++b) {
          int i = left[match_r[b]], j = right[b], s = rot_r[b];
          const int m = int(bl[i].word.size());
          bl[i].used = bl[j].used = true;
          for (int t = 0; t < m; ++t) {
            int x = bl[i].off + (m - 1 - t), y = bl[j].off + (s + t) % m;
            glue[x] = y;
            glue[y] = x;
          }
        }
      }
      for (int g = 0; g < N * G; ++g) {
        if (from_global[g] < 0) continue;
        int b = pi[from_global[g]];
        int steps = 0;
        while (to_global[b] < 0) {
          if (glue[b] < 0 || ++steps > B) throw fail("assembly", "strip through the pieces does not return");
          b = pi[glue[b]];
        }
        P.partner[g] = to_global[b];
      }
      glued = true;
      rep.finish = "pants";
    } catch (const Error& e) {
      rep.failed_stage.clear();
      rep.pants_fallback = e.what();
    }
  }
  if (!glued) {
    // exact search: each remaining flower cancels against a few others of opposite homology
    N = 1;
    std::vector<char> left(rest.loops.size(), 1);
    for (size_t f = 0; f < rest.loops.size(); ++f) {
      if (!left[f]) continue;
      left[f] = 0;
      Reservoir pool;
      std::vector<int> idx;
      for (size_t g = 0; g < rest.loops.size(); ++g)
        if (left[g]) {
          pool.flowers.push_back(rest.loops[g]);
          idx.push_back(int(g));
        }
      ReservoirCancellation rc2;
      try {
        rc2 = cancel_with_reservoir({rest.loops[f]}, pool, p, k);
      } catch (const Error& e) {
        throw fail("pants", std::string("exact finish: ") + e.what());
      }
      auto& grp = rc2.groups.at(0);
      std::vector<int> local(rest_loops[f]->pos);
      for (int g : grp.flowers) {
        left[idx[g]] = 0;
        local.insert(local.end(), rest_loops[idx[g]]->pos.begin(), rest_loops[idx[g]]->pos.end());
      }
      for (size_t t = 0; t < local.size(); ++t) partner[local[t]] = local[grp.pairing.partner[t]];
    }
    copies(1);
    rep.finish = "exact";
  }
  rep.N = N;

  if (!P.complete()) throw fail("assembly", "letters left unpaired");
  ThinResult out;
  out.N = N;
  try {
    out.fatgraph = quotient(big, P);
  } catch (const Error& e) {
    throw fail("assembly", e.what());
  }
  ValidationReport v = validate(out.fatgraph, p.L);
  if (!v.trivalent) throw fail("assembly", "output is not trivalent");
  if (v.min_edge_length < p.L) throw fail("assembly", "edge shorter than L");
  std::vector<Word> expect;
  for (auto& l : big.loops) expect.push_back(l.word);
  if (boundary_multiset(out.fatgraph) != sorted_cyclic(expect)) throw fail("assembly", "boundary differs from N copies");
  out.report = rep;
  return out;
}

LoopCollection synthetic_thin_input(int k, int loops, const ThinParams& params, uint64_t seed,
                                    bool matched) {
  ThinParams p = params;
  p.finalize();
  const int s = p.stem, f = p.flower, span = 2 * s + f, m = p.margin, tail = p.T - p.Tprime;
  if (matched && 2 * (2 * m + tail) != f) throw Error("BadParams", "matched remainders need T - T' = flower/2 - 2 margin");
  Rng rng(seed, 0x5e7);
  LoopCollection out;
  out.rank = k;
  auto rand_word = [&](int n) { return sample_reduced(rng, n, k); };
  // a residual u with poppies planted at legal offsets
  auto plant = [&](const Word& u, const std::vector<Word>& ys) {
    Word v;
    int cursor = 0;
    std::vector<int> sites;
    int q = 0;
    for (size_t t = 0; t < ys.size(); ++t) {
      int room = int(u.size()) - q;
      int steps = room / (2 * s);
      int jump = steps > 0 ? 2 * s * int(rng.below(uint64_t(std::min(steps, 3)))) : 0;
      if (t > 0 && jump == 0) jump = 2 * s;
      q += jump;
      if (q > int(u.size())) return Word{};
      sites.push_back(q);
    }
    for (size_t t = 0; t < ys.size(); ++t) {
      v.insert(v.end(), u.begin() + cursor, u.begin() + sites[t]);
      Word x = rand_word(s);
      v.insert(v.end(), x.begin(), x.end());
      v.insert(v.end(), ys[t].begin(), ys[t].end());
      Word X = inverse(x);
      v.insert(v.end(), X.begin(), X.end());
      cursor = sites[t];
    }
    v.insert(v.end(), u.begin() + cursor, u.end());
    return v;
  };
  auto check = [&](const Word& v, const Word& t, const Word& u, size_t npop) {
    Word loop = v;
    loop.insert(loop.end(), t.begin(), t.end());
    if (!is_cyclically_reduced(loop) || !is_reduced(loop)) return false;
    PoppyResult pr = fold_tall_poppies(v, p, t.empty() ? v.back() : t.back(), t.empty() ? v.front() : t.front());
    return pr.residual == u && pr.poppies.size() == npop;
  };
  Word spare;
  for (int made = 0; made + 2 <= loops;) {
    const int max_pop = std::min(2, (p.Tprime - 2 * m - 1) / span);
    if (matched && max_pop < 1) throw Error("BadParams", "T' too short for a poppy");
    int npop = matched ? 1 + int(rng.below(uint64_t(max_pop))) : int(rng.below(uint64_t(max_pop + 1)));
    int R = p.Tprime - npop * span;
    for (int attempt = 0; attempt < 1000; ++attempt) {
      Word rho = rand_word(R - 2 * m);
      Word l = rand_word(m), r = rand_word(m), t = rand_word(tail);
      std::vector<Word> ys, ys2;
      for (int i = 0; i < npop; ++i) {
        Word y = rand_word(f);
        while (!is_cyclically_reduced(y)) y = rand_word(f);
        ys.push_back(y);
        // a nonzero rotation keeps the two junctions apart when these flowers cancel
        if (!matched || i > 0) ys2.push_back(rotate(inverse(y), 1 + rng.below(f - 1)));
      }
      Word extra;
      if (matched) {
        // the twin still needs as many poppies: this flower is inverse to one in the next twin pair,
        // or homologically trivial for the last pair
        const bool last = made + 4 > loops;
        if (!spare.empty()) {
          extra = spare;
        } else {
          extra = rand_word(f);
          for (int a = 0; a < 100000; ++a) {
            auto h = homology_class(extra, k);
            bool zero = std::all_of(h.begin(), h.end(), [](long x) { return x == 0; });
            if (is_cyclically_reduced(extra) && (zero || !last)) break;
            extra = rand_word(f);
          }
        }
        ys2.push_back(extra);
      }
      // the twin carries the inverse letters of l r t in a shuffled order
      Word outer = l;
      outer.insert(outer.end(), r.begin(), r.end());
      outer.insert(outer.end(), t.begin(), t.end());
      Word inv_letters = inverse(outer);
      for (size_t i = inv_letters.size(); i > 1; --i) std::swap(inv_letters[i - 1], inv_letters[rng.below(i)]);
      Word l2(inv_letters.begin(), inv_letters.begin() + m), r2(inv_letters.begin() + m, inv_letters.begin() + 2 * m),
          t2(inv_letters.begin() + 2 * m, inv_letters.end());
      if (matched) {
        // remainder l r2 t2 l2 r t reads a rotation of the first flower's inverse; the rotation keeps
        // the flower's junction off the remainder's seams
        std::vector<int> seams = {0, m, 2 * m + tail, 3 * m + tail};
        int c = 0;
        do c = int(rng.below(f));
        while (std::find(seams.begin(), seams.end(), (f - c) % f) != seams.end());
        Word z = rotate(inverse(ys[0]), c);
        auto cut = [&](int a, int len) { return Word(z.begin() + a, z.begin() + a + len); };
        l = cut(0, m);
        r2 = cut(m, m);
        t2 = cut(2 * m, tail);
        l2 = cut(2 * m + tail, m);
        r = cut(3 * m + tail, m);
        t = cut(4 * m + tail, tail);
      }
      Word u = l, u2 = l2;
      u.insert(u.end(), rho.begin(), rho.end());
      u.insert(u.end(), r.begin(), r.end());
      Word rinv = inverse(rho);
      u2.insert(u2.end(), rinv.begin(), rinv.end());
      u2.insert(u2.end(), r2.begin(), r2.end());
      if (!is_reduced(u) || !is_reduced(u2)) continue;
      if (l.back() == -r2.front() || l2.back() == -r.front()) continue;
      Word v = plant(u, ys), v2 = plant(u2, ys2);
      if (v.empty() || v2.empty() || int(v.size()) != p.Tprime || int(v2.size()) != p.Tprime) continue;
      if (!check(v, t, u, ys.size()) || !check(v2, t2, u2, ys2.size())) continue;
      Word a = v, b = v2;
      a.insert(a.end(), t.begin(), t.end());
      b.insert(b.end(), t2.begin(), t2.end());
      out.loops.emplace_back(a);
      out.loops.emplace_back(b);
      made += 2;
      if (matched) {
        auto h = homology_class(extra, k);
        bool zero = std::all_of(h.begin(), h.end(), [](long x) { return x == 0; });
        spare = !spare.empty() || zero ? Word{} : rotate(inverse(extra), 1 + rng.below(f - 1));
      }
      break;
    }
  }
  return out;
}

}  // namespace fatsurf
