#include "fatsurf/fatgraph.hpp"

#include <algorithm>
#include <json.hpp>
#include <map>
#include <numeric>
#include <sstream>

namespace fatsurf {

namespace {

struct DSU {
  std::vector<int> p;
  explicit DSU(size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a > b) std::swap(a, b);
    p[b] = a;
    return true;
  }
};

}  // namespace

LoopCollection LoopCollection::from_words(int k, const std::vector<Word>& ws) {
  LoopCollection c;
  c.rank = k;
  for (auto& w : ws) c.loops.emplace_back(w);
  return c;
}

LoopCollection LoopCollection::parse(int k, const std::vector<std::string>& ws) {
  std::vector<Word> v;
  for (auto& s : ws) v.push_back(parse_word(s));
  return from_words(k, v);
}

size_t LoopCollection::total_length() const {
  size_t n = 0;
  for (auto& l : loops) n += l.size();
  return n;
}

std::vector<size_t> LoopCollection::offsets() const {
  std::vector<size_t> o;
  size_t n = 0;
  for (auto& l : loops) {
    o.push_back(n);
    n += l.size();
  }
  return o;
}

HomologyVector LoopCollection::homology() const {
  HomologyVector h(rank, 0);
  for (auto& l : loops) {
    auto t = homology_class(l.word, rank);
    for (int i = 0; i < rank; ++i) h[i] += t[i];
  }
  return h;
}

std::pair<int, int> LoopCollection::locate(size_t g) const {
  for (size_t i = 0; i < loops.size(); ++i) {
    if (g < loops[i].size()) return {int(i), int(g)};
    g -= loops[i].size();
  }
  throw Error("OutOfRange", "position outside collection");
}

Letter LoopCollection::letter(size_t g) const {
  auto [l, i] = locate(g);
  return loops[l].word[i];
}

std::vector<CyclicWord> LoopCollection::cyclic_words() const {
  std::vector<CyclicWord> out;
  for (auto& l : loops) out.emplace_back(l.word);
  return out;
}

bool Pairing::nonorientable() const {
  return std::any_of(twisted.begin(), twisted.end(), [](char c) { return c != 0; });
}

bool Pairing::complete() const {
  for (size_t i = 0; i < partner.size(); ++i) {
    int j = partner[i];
    if (j < 0 || j >= int(partner.size()) || j == int(i) || partner[j] != int(i)) return false;
  }
  return true;
}

Letter Fatgraph::outgoing_letter(const HalfEdge& h) const {
  const Word& w = edges[h.edge].label;
  return h.forward ? w.front() : -w.back();
}

int Fatgraph::other_end(const HalfEdge& h) const { return h.forward ? edges[h.edge].head : edges[h.edge].tail; }
int Fatgraph::start_vertex(const HalfEdge& h) const { return h.forward ? edges[h.edge].tail : edges[h.edge].head; }

Word Fatgraph::half_edge_word(const HalfEdge& h) const {
  return h.forward ? edges[h.edge].label : inverse(edges[h.edge].label);
}

Fatgraph make_ribbon(int rank, std::vector<Edge> edges, std::vector<std::vector<HalfEdge>> rotation,
                     std::vector<int> vertex_tags) {
  Fatgraph y;
  y.rank = rank;
  y.edges = std::move(edges);
  y.rotation = std::move(rotation);
  y.vertex_tags = vertex_tags.empty() ? std::vector<int>(y.rotation.size(), 0) : std::move(vertex_tags);
  std::vector<int> seen(2 * y.edges.size(), 0);
  for (size_t v = 0; v < y.rotation.size(); ++v)
    for (auto& h : y.rotation[v]) {
      if (h.edge < 0 || h.edge >= int(y.edges.size())) throw Error("BadRibbon", "edge index out of range");
      if (y.start_vertex(h) != int(v)) throw Error("BadRibbon", "half-edge listed at the wrong vertex");
      if (seen[2 * h.edge + h.forward]++) throw Error("BadRibbon", "half-edge listed twice");
      if (y.edges[h.edge].label.empty()) throw Error("BadRibbon", "empty edge label");
    }
  for (int s : seen)
    if (s != 1) throw Error("BadRibbon", "half-edge missing from rotations");
  return y;
}

Fatgraph quotient(const LoopCollection& gamma, const Pairing& P) {
  const size_t n = gamma.total_length();
  if (P.partner.size() != n || !P.complete()) throw Error("BadPairing", "pairing is not a fixed-point-free involution");
  const bool tw = P.nonorientable();
  std::vector<int> nxt(n), loop_of(n);
  {
    auto off = gamma.offsets();
    for (size_t l = 0; l < gamma.loops.size(); ++l) {
      size_t m = gamma.loops[l].size();
      for (size_t i = 0; i < m; ++i) {
        nxt[off[l] + i] = int(off[l] + (i + 1) % m);
        loop_of[off[l] + i] = int(l);
      }
    }
  }
  std::vector<Letter> let(n);
  for (size_t i = 0; i < n; ++i) let[i] = gamma.letter(i);
  for (size_t i = 0; i < n; ++i) {
    int j = P.partner[i];
    bool t = tw && P.twisted[i];
    if (tw && P.twisted[j] != P.twisted[i]) throw Error("BadPairing", "twist flag not symmetric");
    if (!t && let[j] != -let[i]) throw Error("NotInverse", "paired letters are not inverse");
    if (t && let[j] != let[i]) throw Error("NotInverse", "twisted pair letters differ");
  }
  DSU gaps(n), comps(n);
  for (size_t i = 0; i < n; ++i) {
    int j = P.partner[i];
    if (tw && P.twisted[i]) {
      gaps.unite(int(i), j);
      gaps.unite(nxt[i], nxt[j]);
    } else {
      gaps.unite(nxt[i], j);
    }
    comps.unite(int(i), nxt[i]);
    comps.unite(int(i), j);
  }
  Fatgraph y;
  y.rank = gamma.rank;
  y.has_source = true;
  y.source = gamma;
  y.pairing = P;
  std::map<int, int> cls_id;
  y.gap_class.assign(n, -1);
  for (size_t i = 0; i < n; ++i) {
    int r = gaps.find(int(i));
    auto it = cls_id.find(r);
    if (it == cls_id.end()) it = cls_id.emplace(r, int(cls_id.size())).first;
    y.gap_class[i] = it->second;
  }
  const int C = int(cls_id.size());
  y.class_size.assign(C, 0);
  y.class_tags.assign(C, 0);
  for (size_t i = 0; i < n; ++i) ++y.class_size[y.gap_class[i]];
  {
    auto off = gamma.offsets();
    for (size_t l = 0; l < gamma.loops.size(); ++l)
      for (int t : gamma.loops[l].tags) ++y.class_tags[y.gap_class[off[l] + t]];
  }
  // keep every class whose valence (tags included) is not 2; one class per all-2 component
  std::vector<char> keep(C, 0);
  for (int c = 0; c < C; ++c) keep[c] = (y.class_size[c] + y.class_tags[c]) != 2;
  {
    std::map<int, int> comp_has;
    for (size_t i = 0; i < n; ++i) {
      int r = comps.find(int(i));
      if (!comp_has.count(r)) comp_has[r] = 0;
      if (keep[y.gap_class[i]]) comp_has[r] = 1;
    }
    for (size_t i = 0; i < n; ++i) {
      int r = comps.find(int(i));
      if (!comp_has[r]) {
        keep[y.gap_class[i]] = 1;
        comp_has[r] = 1;
      }
    }
  }
  y.class_vertex.assign(C, -1);
  int V = 0;
  for (int c = 0; c < C; ++c)
    if (keep[c]) y.class_vertex[c] = V++;
  y.rotation.assign(V, {});
  y.vertex_tags.assign(V, 0);
  for (int c = 0; c < C; ++c)
    if (keep[c]) y.vertex_tags[y.class_vertex[c]] = y.class_tags[c];

  // the fattened surface for twisted pairings has no global rotation system; stop at the letter level
  if (tw) return y;

  auto kept = [&](int p) { return keep[y.gap_class[p]] != 0; };
  std::vector<int> seg_edge(n, -1);
  std::vector<char> seg_fwd(n, 0);
  for (size_t p = 0; p < n; ++p) {
    if (!kept(int(p)) || seg_edge[p] != -1) continue;
    Edge e;
    int q = int(p), last = int(p);
    do {
      e.label.push_back(let[q]);
      last = q;
      q = nxt[q];
    } while (!kept(q));
    e.tail = y.class_vertex[y.gap_class[p]];
    e.head = y.class_vertex[y.gap_class[q]];
    int id = int(y.edges.size());
    y.edges.push_back(std::move(e));
    seg_edge[p] = id;
    seg_fwd[p] = 1;
    int s2 = P.partner[last];
    seg_edge[s2] = id;
    seg_fwd[s2] = 0;
  }
  std::vector<char> done(n, 0);
  for (size_t p = 0; p < n; ++p) {
    if (!kept(int(p)) || done[p]) continue;
    int v = y.class_vertex[y.gap_class[p]];
    int q = int(p);
    do {
      done[q] = 1;
      y.rotation[v].push_back({seg_edge[q], seg_fwd[q] != 0});
      q = nxt[P.partner[q]];
    } while (q != int(p));
  }
  return y;
}

std::vector<Word> boundary_words(const Fatgraph& y) {
  std::vector<std::pair<int, int>> where(2 * y.edges.size(), {-1, -1});
  for (size_t v = 0; v < y.rotation.size(); ++v)
    for (size_t i = 0; i < y.rotation[v].size(); ++i) {
      auto& h = y.rotation[v][i];
      where[2 * h.edge + h.forward] = {int(v), int(i)};
    }
  std::vector<char> used(2 * y.edges.size(), 0);
  std::vector<Word> out;
  for (size_t v = 0; v < y.rotation.size(); ++v)
    for (auto& h0 : y.rotation[v]) {
      if (used[2 * h0.edge + h0.forward]) continue;
      Word w;
      HalfEdge h = h0;
      while (!used[2 * h.edge + h.forward]) {
        used[2 * h.edge + h.forward] = 1;
        Word part = y.half_edge_word(h);
        w.insert(w.end(), part.begin(), part.end());
        HalfEdge arrive{h.edge, !h.forward};
        auto [u, idx] = where[2 * arrive.edge + arrive.forward];
        h = y.rotation[u][(idx + 1) % y.rotation[u].size()];
      }
      out.push_back(std::move(w));
    }
  return out;
}

LoopCollection boundary(const Fatgraph& y) { return LoopCollection::from_words(y.rank, boundary_words(y)); }

std::vector<CyclicWord> sorted_cyclic(const std::vector<Word>& ws) {
  std::vector<CyclicWord> out;
  for (auto& w : ws) out.emplace_back(w);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<CyclicWord> boundary_multiset(const Fatgraph& y) { return sorted_cyclic(boundary_words(y)); }

std::vector<ComponentGenus> genus(const Fatgraph& y) {
  std::vector<ComponentGenus> res;
  if (y.nonorientable()) {
    // letter-level accounting with a two-colouring test for orientability
    const auto& g = y.source;
    const size_t n = g.total_length();
    auto off = g.offsets();
    std::vector<int> loop_of(n);
    for (size_t l = 0; l < g.loops.size(); ++l)
      for (size_t i = 0; i < g.loops[l].size(); ++i) loop_of[off[l] + i] = int(l);
    const int nl = int(g.loops.size());
    std::vector<std::vector<std::pair<int, int>>> adj(nl);
    for (size_t i = 0; i < n; ++i) {
      int j = y.pairing.partner[i];
      adj[loop_of[i]].push_back({loop_of[j], y.pairing.twisted[i] ? -1 : 1});
    }
    std::vector<int> color(nl, 0), comp(nl, -1);
    std::vector<char> bad;
    int nc = 0;
    for (int s = 0; s < nl; ++s) {
      if (comp[s] != -1) continue;
      bad.push_back(0);
      std::vector<int> st = {s};
      comp[s] = nc;
      color[s] = 1;
      while (!st.empty()) {
        int a = st.back();
        st.pop_back();
        for (auto [b, sg] : adj[a]) {
          if (comp[b] == -1) {
            comp[b] = nc;
            color[b] = color[a] * sg;
            st.push_back(b);
          } else if (color[b] != color[a] * sg) {
            bad[nc] = 1;
          }
        }
      }
      ++nc;
    }
    res.assign(nc, {});
    for (int l = 0; l < nl; ++l) ++res[comp[l]].boundaries;
    for (size_t i = 0; i < n; ++i) {
      if (int(i) < y.pairing.partner[i]) ++res[comp[loop_of[i]]].edges;
    }
    std::vector<int> class_comp(y.class_size.size(), -1);
    for (size_t i = 0; i < n; ++i) class_comp[y.gap_class[i]] = comp[loop_of[i]];
    for (int c : class_comp) ++res[c].vertices;
    for (int c = 0; c < nc; ++c) {
      auto& r = res[c];
      r.euler = r.vertices - r.edges;
      r.orientable = !bad[c];
      if (r.orientable)
        r.genus = (2 - r.euler - r.boundaries) / 2;
      else
        r.demigenus = 2 - r.euler - r.boundaries;
    }
    return res;
  }
  const int V = y.num_vertices();
  DSU d(V);
  for (auto& e : y.edges) d.unite(e.tail, e.head);
  std::map<int, int> id;
  for (int v = 0; v < V; ++v)
    if (!id.count(d.find(v))) id.emplace(d.find(v), int(id.size()));
  res.assign(id.size(), {});
  for (int v = 0; v < V; ++v) ++res[id[d.find(v)]].vertices;
  for (auto& e : y.edges) ++res[id[d.find(e.tail)]].edges;
  // count boundary cycles per component
  std::vector<std::pair<int, int>> where(2 * y.edges.size());
  for (int v = 0; v < V; ++v)
    for (size_t i = 0; i < y.rotation[v].size(); ++i) where[2 * y.rotation[v][i].edge + y.rotation[v][i].forward] = {v, int(i)};
  std::vector<char> used(2 * y.edges.size(), 0);
  for (int v = 0; v < V; ++v)
    for (auto& h0 : y.rotation[v]) {
      if (used[2 * h0.edge + h0.forward]) continue;
      ++res[id[d.find(v)]].boundaries;
      HalfEdge h = h0;
      while (!used[2 * h.edge + h.forward]) {
        used[2 * h.edge + h.forward] = 1;
        auto [u, idx] = where[2 * h.edge + !h.forward];
        h = y.rotation[u][(idx + 1) % y.rotation[u].size()];
      }
    }
  for (auto& r : res) {
    r.euler = r.vertices - r.edges;
    r.genus = (2 - r.euler - r.boundaries) / 2;
  }
  return res;
}

std::vector<ComponentGenus> Fatgraph::genus() const { return fatsurf::genus(*this); }

ValidationReport validate(const Fatgraph& y, int L) {
  ValidationReport r;
  r.folded = true;
  r.trivalent = y.num_vertices() > 0;
  for (int v = 0; v < y.num_vertices(); ++v) {
    std::vector<Letter> out;
    for (auto& h : y.rotation[v]) out.push_back(y.outgoing_letter(h));
    std::sort(out.begin(), out.end());
    if (std::adjacent_find(out.begin(), out.end()) != out.end()) r.folded = false;
    if (y.valence(v) != 3) r.trivalent = false;
    if (y.valence(v) == 2 && y.rotation[v].size() == 2 && y.vertex_tags[v] == 0) r.has_annulus_component = true;
  }
  if (y.nonorientable()) {
    r.folded = false;
    r.trivalent = false;
  }
  r.min_edge_length = y.edges.empty() ? 0 : int(y.edges[0].label.size());
  int special = 1 << 30;
  std::vector<int> near(y.num_vertices(), 1 << 30);
  for (auto& e : y.edges) {
    int len = int(e.label.size());
    r.min_edge_length = std::min(r.min_edge_length, len);
    if (e.tail != e.head) {
      special = std::min(special, len);
      near[e.tail] = std::min(near[e.tail], len);
      near[e.head] = std::min(near[e.head], len);
    }
  }
  r.min_special_distance = special == (1 << 30) ? r.min_edge_length : special;
  for (int v = 0; v < y.num_vertices(); ++v)
    for (int t = 0; t < (y.vertex_tags.empty() ? 0 : y.vertex_tags[v]); ++t)
      r.tag_separations.push_back(y.vertex_tags[v] > 1 ? 0 : near[v]);
  r.thin = r.trivalent && 4 * r.min_special_distance >= L;
  return r;
}

std::pair<LoopCollection, Pairing> letter_level(const Fatgraph& y) {
  if (y.has_source) return {y.source, y.pairing};
  std::vector<std::pair<int, int>> where(2 * y.edges.size());
  for (int v = 0; v < y.num_vertices(); ++v)
    for (size_t i = 0; i < y.rotation[v].size(); ++i) where[2 * y.rotation[v][i].edge + y.rotation[v][i].forward] = {v, int(i)};
  std::vector<char> used(2 * y.edges.size(), 0), vtag(y.num_vertices(), 0);
  LoopCollection c;
  c.rank = y.rank;
  std::vector<std::vector<int>> pos_of(2 * y.edges.size());
  int gpos = 0;
  for (int v = 0; v < y.num_vertices(); ++v)
    for (auto& h0 : y.rotation[v]) {
      if (used[2 * h0.edge + h0.forward]) continue;
      TaggedLoop loop;
      HalfEdge h = h0;
      while (!used[2 * h.edge + h.forward]) {
        used[2 * h.edge + h.forward] = 1;
        int sv = y.start_vertex(h);
        if (!y.vertex_tags.empty() && y.vertex_tags[sv] > vtag[sv]) {
          loop.tags.push_back(int(loop.word.size()));
          ++vtag[sv];
        }
        Word part = y.half_edge_word(h);
        for (Letter x : part) {
          pos_of[2 * h.edge + h.forward].push_back(gpos++);
          loop.word.push_back(x);
        }
        auto [u, idx] = where[2 * h.edge + !h.forward];
        h = y.rotation[u][(idx + 1) % y.rotation[u].size()];
      }
      std::sort(loop.tags.begin(), loop.tags.end());
      c.loops.push_back(std::move(loop));
    }
  Pairing p;
  p.partner.assign(gpos, -1);
  for (size_t e = 0; e < y.edges.size(); ++e) {
    auto& f = pos_of[2 * e + 1];
    auto& b = pos_of[2 * e];
    const size_t m = f.size();
    for (size_t i = 0; i < m; ++i) {
      p.partner[f[i]] = b[m - 1 - i];
      p.partner[b[m - 1 - i]] = f[i];
    }
  }
  return {c, p};
}

std::string serialize(const Fatgraph& y) {
  auto [c, p] = letter_level(y);
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["rank"] = c.rank;
  j["loops"] = nlohmann::ordered_json::array();
  for (auto& l : c.loops) {
    nlohmann::ordered_json o;
    o["word"] = to_string(l.word);
    o["tags"] = l.tags;
    j["loops"].push_back(o);
  }
  j["pairs"] = nlohmann::ordered_json::array();
  for (size_t i = 0; i < p.partner.size(); ++i)
    if (int(i) < p.partner[i]) {
      nlohmann::ordered_json pr = {int(i), p.partner[i]};
      if (p.nonorientable() && p.twisted[i]) pr.push_back("twisted");
      j["pairs"].push_back(pr);
    }
  return j.dump() + "\n";
}

namespace {
[[noreturn]] void parse_fail(const std::string& text, size_t byte, const std::string& what) {
  size_t line = 1, col = 1;
  for (size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  throw Error("ParseError", "line " + std::to_string(line) + " column " + std::to_string(col) + ": " + what);
}
}  // namespace

Fatgraph deserialize(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    parse_fail(text, e.byte == 0 ? 0 : e.byte - 1, e.what());
  }
  try {
    LoopCollection c;
    c.rank = j.at("rank").get<int>();
    for (auto& l : j.at("loops")) {
      TaggedLoop t(parse_word(l.at("word").get<std::string>()), l.value("tags", std::vector<int>{}));
      c.loops.push_back(std::move(t));
    }
    Pairing p;
    p.partner.assign(c.total_length(), -1);
    std::vector<char> tw(c.total_length(), 0);
    bool any_tw = false;
    for (auto& pr : j.at("pairs")) {
      int a = pr.at(0).get<int>(), b = pr.at(1).get<int>();
      if (a < 0 || b < 0 || a >= int(p.partner.size()) || b >= int(p.partner.size()))
        throw Error("ParseError", "pair index out of range");
      p.partner[a] = b;
      p.partner[b] = a;
      if (pr.size() > 2) tw[a] = tw[b] = 1, any_tw = true;
    }
    if (any_tw) p.twisted = tw;
    return quotient(c, p);
  } catch (const nlohmann::json::exception& e) {
    throw Error("ParseError", std::string("line 1 column 1: ") + e.what());
  }
}

std::string validation_csv_header() {
  return "name,folded,trivalent,thin,min_edge_length,min_special_distance,annulus_component";
}

std::string validation_csv_row(const std::string& name, const ValidationReport& r) {
  std::ostringstream o;
  o << name << ',' << r.folded << ',' << r.trivalent << ',' << r.thin << ',' << r.min_edge_length << ','
    << r.min_special_distance << ',' << r.has_annulus_component;
  return o.str();
}

}  // namespace fatsurf
