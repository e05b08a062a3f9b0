#include "fatsurf/bounder.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <cstdlib>
#include <set>
#include <sstream>
#include <thread>

namespace fatsurf {

const char* to_string(BoundStatus s) {
  switch (s) {
    case BoundStatus::Yes: return "yes";
    case BoundStatus::No: return "no";
    default: return "unknown";
  }
}

bool acceptable(const Fatgraph& y, const BoundOptions& opts) {
  if (y.nonorientable()) return false;
  for (int v = 0; v < y.num_vertices(); ++v) {
    int val = y.valence(v);
    bool annulus_vertex = val == 2 && y.rotation[v].size() == 2 && y.rotation[v][0].edge == y.rotation[v][1].edge;
    if (annulus_vertex) {
      if (!opts.allow_annulus_components) return false;
      continue;
    }
    if (opts.require_trivalent && val != 3) return false;
  }
  if (opts.min_edge_length > 0)
    for (auto& e : y.edges)
      if (int(e.label.size()) < opts.min_edge_length) return false;
  return true;
}

namespace {

bool homologically_trivial(const LoopCollection& g) {
  for (long v : g.homology())
    if (v != 0) return false;
  return true;
}

struct Search {
  const BoundOptions& opts;
  int n = 0;
  std::vector<Letter> let;
  std::vector<int> nxt, prv, w0, partner;
  // path fragments of the vertex permutation; endpoint data only
  std::vector<int> other, fw;
  std::vector<std::pair<int*, int>> trail;
  uint64_t nodes = 0;
  bool budget_hit = false;
  const LoopCollection& gamma;
  std::optional<Fatgraph> found;
  int maxw;

  Search(const LoopCollection& g, const BoundOptions& o) : opts(o), gamma(g) {
    n = int(g.total_length());
    let.resize(n);
    nxt.resize(n);
    prv.resize(n);
    w0.assign(n, 1);
    auto off = g.offsets();
    for (size_t l = 0; l < g.loops.size(); ++l) {
      int m = int(g.loops[l].size());
      for (int i = 0; i < m; ++i) {
        int p = int(off[l]) + i;
        let[p] = g.loops[l].word[i];
        nxt[p] = int(off[l]) + (i + 1) % m;
        prv[p] = int(off[l]) + (i + m - 1) % m;
      }
      for (int t : g.loops[l].tags) ++w0[int(off[l]) + t];
    }
    partner.assign(n, -1);
    other.resize(n);
    for (int i = 0; i < n; ++i) other[i] = i;
    fw = w0;
    maxw = opts.require_trivalent ? 3 : (1 << 29);
  }

  void set(int& ref, int v) {
    trail.push_back({&ref, ref});
    ref = v;
  }
  void undo(size_t mark) {
    while (trail.size() > mark) {
      *trail.back().first = trail.back().second;
      trail.pop_back();
    }
  }
  bool closed_ok(int w) const { return opts.require_trivalent ? (w == 2 || w == 3) : w >= 2; }

  // sigma(t) := h, where t is a path tail and h a path head
  bool link(int t, int h) {
    int h1 = other[t];
    if (h1 == h) return closed_ok(fw[t]);
    int w = fw[t] + fw[h];
    if (w > maxw) return false;
    int t2 = other[h];
    set(other[h1], t2);
    set(other[t2], h1);
    set(fw[h1], w);
    set(fw[t2], w);
    return true;
  }
  bool link_feasible(int t, int h) const {
    if (other[t] == h) return closed_ok(fw[t]);
    return fw[t] + fw[h] <= maxw;
  }
  bool match(int i, int j) {
    set(partner[i], j);
    set(partner[j], i);
    return link(i, nxt[j]) && link(j, nxt[i]);
  }
  // tail of an open fragment: unmatched position; its head is other[t]
  bool leaf() {
    Pairing p;
    p.partner = partner;
    Fatgraph y = quotient(gamma, p);
    if (!acceptable(y, opts)) return false;
    found = std::move(y);
    return true;
  }
  bool dfs() {
    if (++nodes > opts.node_budget) {
      budget_hit = true;
      return false;
    }
    // forced closures and the most constrained open fragment
    int best = -1, bestc = 1 << 30, first = -1;
    for (int t = 0; t < n; ++t) {
      if (partner[t] != -1) continue;
      if (first < 0) first = t;
      if (!opts.require_trivalent) break;
      int w = fw[t];
      if (w == 3) {
        int j = prv[other[t]];
        if (partner[j] != -1 || let[j] != -let[t] || j == t) return false;
        size_t mark = trail.size();
        bool ok = match(t, j) && dfs();
        undo(mark);
        return ok;
      }
      if (w == 2) {
        int c = 0;
        for (int j = 0; j < n && c < bestc; ++j)
          if (partner[j] == -1 && j != t && let[j] == -let[t] && link_feasible(t, nxt[j])) ++c;
        if (c == 0) return false;
        if (c < bestc) {
          bestc = c;
          best = t;
        }
      }
    }
    if (first < 0) return leaf();
    int t = best >= 0 ? best : first;
    for (int j = 0; j < n; ++j) {
      if (partner[j] != -1 || j == t || let[j] != -let[t]) continue;
      if (!link_feasible(t, nxt[j])) continue;
      size_t mark = trail.size();
      if (match(t, j) && dfs()) return true;
      undo(mark);
      if (budget_hit) return false;
    }
    return false;
  }
};

}  // namespace

BoundResult bounds(const LoopCollection& gamma, const BoundOptions& opts) {
  BoundResult r;
  if (!homologically_trivial(gamma) || gamma.total_length() == 0) {
    r.status = BoundStatus::No;
    return r;
  }
  for (auto& l : gamma.loops)
    if (!is_cyclically_reduced(l.word)) throw Error("NotReduced", "loops must be cyclically reduced");
  Search s(gamma, opts);
  bool ok = s.dfs();
  r.nodes = s.nodes;
  if (ok) {
    r.status = BoundStatus::Yes;
    r.witness = std::move(s.found);
    r.pairing = r.witness->pairing;
  } else {
    r.status = s.budget_hit ? BoundStatus::Unknown : BoundStatus::No;
  }
  return r;
}

BoundResult brute_force_oracle(const LoopCollection& gamma, const BoundOptions& opts) {
  const int n = int(gamma.total_length());
  if (n > 16) throw Error("TooLarge", "oracle is capped at total length 16");
  BoundResult r;
  std::vector<Letter> let(n);
  for (int i = 0; i < n; ++i) let[i] = gamma.letter(i);
  std::vector<int> partner(n, -1);
  bool done = false;
  std::function<void()> rec = [&]() {
    if (done) return;
    int t = -1;
    for (int i = 0; i < n; ++i)
      if (partner[i] == -1) {
        t = i;
        break;
      }
    if (t < 0) {
      ++r.nodes;
      Pairing p;
      p.partner = partner;
      Fatgraph y = quotient(gamma, p);
      if (acceptable(y, opts)) {
        done = true;
        r.pairing = p;
        r.witness = std::move(y);
      }
      return;
    }
    for (int j = t + 1; j < n && !done; ++j) {
      if (partner[j] != -1 || let[j] != -let[t]) continue;
      partner[t] = j;
      partner[j] = t;
      rec();
      partner[t] = partner[j] = -1;
    }
  };
  rec();
  r.status = done ? BoundStatus::Yes : BoundStatus::No;
  return r;
}

int default_workers() {
  if (const char* e = std::getenv("FATSURF_WORKERS")) {
    int v = std::atoi(e);
    if (v > 0) return v;
  }
  unsigned h = std::thread::hardware_concurrency();
  return h == 0 ? 1 : int(h);
}

std::vector<ExperimentRow> trivalent_experiment(int k, const std::vector<int>& lengths, int samples, uint64_t seed,
                                                const BoundOptions& opts, int workers) {
  std::vector<ExperimentRow> rows;
  if (samples <= 0) return rows;
  if (workers <= 0) workers = default_workers();
  for (int len : lengths) {
    if (len % 2 != 0) throw Error("OddLength", "experiment lengths must be even");
    std::vector<BoundStatus> st(samples);
    std::atomic<int> next{0};
    auto work = [&]() {
      for (int i = next++; i < samples; i = next++) {
        Rng rng(seed, uint64_t(len) * 1000003ull + uint64_t(i));
        Word w = sample_homologically_trivial_word(rng, len, k);
        st[i] = bounds(LoopCollection::from_words(k, {w}), opts).status;
      }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < workers; ++t) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
    ExperimentRow row;
    row.length = len;
    row.samples = samples;
    for (auto s : st) {
      row.bounds += s == BoundStatus::Yes;
      row.unknown += s == BoundStatus::Unknown;
    }
    rows.push_back(row);
  }
  return rows;
}

std::string experiment_csv(const std::vector<ExperimentRow>& rows) {
  std::ostringstream o;
  o << "length,samples,bounds,unknown,fraction\n";
  char buf[64];
  for (auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.6f", r.fraction());
    o << r.length << ',' << r.samples << ',' << r.bounds << ',' << r.unknown << ',' << buf << '\n';
  }
  return o.str();
}

std::vector<CyclicWord> enumerate_cyclic_words(int n, int k, bool trivial_only) {
  std::set<CyclicWord> out;
  Word w(n);
  std::function<void(int)> rec = [&](int i) {
    if (i == n) {
      if (n > 1 && w[n - 1] == -w[0]) return;
      if (trivial_only) {
        auto h = homology_class(w, k);
        for (long v : h)
          if (v) return;
      }
      out.insert(CyclicWord(w));
      return;
    }
    for (int a = 0; a < 2 * k; ++a) {
      Letter x = index_letter(a, k);
      if (i > 0 && x == -w[i - 1]) continue;
      w[i] = x;
      rec(i + 1);
    }
  };
  if (n > 0) rec(0);
  return {out.begin(), out.end()};
}

}  // namespace fatsurf
