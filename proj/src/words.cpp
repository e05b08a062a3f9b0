#include "fatsurf/words.hpp"

#include <algorithm>
#include <array>
#include <tuple>

namespace fatsurf {

Word parse_word(const std::string& s) {
  Word w;
  w.reserve(s.size());
  for (char c : s) {
    if (c >= 'a' && c <= 'z')
      w.push_back(c - 'a' + 1);
    else if (c >= 'A' && c <= 'Z')
      w.push_back(-(c - 'A' + 1));
    else if (c == ' ' || c == '\t' || c == '\r' || c == '\n')
      continue;
    else
      throw Error("ParseError", std::string("bad letter '") + c + "'");
  }
  return w;
}

std::string to_string(const Word& w) {
  std::string s;
  s.reserve(w.size());
  for (Letter x : w) {
    if (gen(x) > 26) throw Error("AlphabetTooLarge", "generator index above 26");
    s.push_back(x > 0 ? char('a' + x - 1) : char('A' - x - 1));
  }
  return s;
}

Word reduce(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (Letter x : w) {
    if (!out.empty() && out.back() == -x)
      out.pop_back();
    else
      out.push_back(x);
  }
  return out;
}

bool is_reduced(const Word& w) {
  for (size_t i = 1; i < w.size(); ++i)
    if (w[i] == -w[i - 1]) return false;
  return true;
}

bool is_cyclically_reduced(const Word& w) {
  if (!is_reduced(w)) return false;
  return w.size() < 2 || w.front() != -w.back();
}

Word inverse(const Word& w) {
  Word r(w.rbegin(), w.rend());
  for (auto& x : r) x = -x;
  return r;
}

Word cyclic_reduce(const Word& w) {
  Word r = reduce(w);
  size_t i = 0, j = r.size();
  while (j - i >= 2 && r[i] == -r[j - 1]) {
    ++i;
    --j;
  }
  return Word(r.begin() + i, r.begin() + j);
}

size_t least_rotation(const Word& w) {
  // two-pointer minimal rotation
  const size_t n = w.size();
  if (n < 2) return 0;
  size_t i = 0, j = 1, k = 0;
  while (i < n && j < n && k < n) {
    int a = letter_key(w[(i + k) % n]), b = letter_key(w[(j + k) % n]);
    if (a == b) {
      ++k;
      continue;
    }
    if (a > b)
      i += k + 1;
    else
      j += k + 1;
    if (i == j) ++j;
    k = 0;
  }
  return std::min(i, j);
}

Word rotate(const Word& w, size_t k) {
  if (w.empty()) return w;
  k %= w.size();
  Word r(w.begin() + k, w.end());
  r.insert(r.end(), w.begin(), w.begin() + k);
  return r;
}

CyclicWord::CyclicWord(const Word& w) {
  Word r = cyclic_reduce(w);
  if (r.empty()) throw Error("EmptyAfterReduction", "word is trivial in the free group");
  w_ = rotate(r, least_rotation(r));
}

bool CyclicWord::operator<(const CyclicWord& o) const {
  if (w_.size() != o.w_.size()) return w_.size() < o.w_.size();
  for (size_t i = 0; i < w_.size(); ++i)
    if (w_[i] != o.w_[i]) return letter_key(w_[i]) < letter_key(o.w_[i]);
  return false;
}

size_t CyclicWordHash::operator()(const CyclicWord& c) const {
  size_t h = 1469598103934665603ull;
  for (Letter x : c.letters()) h = (h ^ size_t(x + 64)) * 1099511628211ull;
  return h;
}

CyclicWord cyclic_canonical(const Word& w) { return CyclicWord(w); }

TaggedLoop::TaggedLoop(Word w, std::vector<int> t) : word(std::move(w)), tags(std::move(t)) {
  std::sort(tags.begin(), tags.end());
}

int TaggedLoop::gap_distance(int g1, int g2) const {
  int n = int(word.size());
  int d = ((g1 - g2) % n + n) % n;
  return std::min(d, n - d);
}

int TaggedLoop::min_tag_separation() const {
  int best = int(word.size());
  for (size_t i = 0; i < tags.size(); ++i)
    for (size_t j = i + 1; j < tags.size(); ++j) best = std::min(best, gap_distance(tags[i], tags[j]));
  return best;
}

TaggedLoop TaggedLoop::canonical() const {
  const size_t k0 = least_rotation(word);
  const int n = int(word.size());
  // periodic words have several minimal rotations; take the least tag list among them
  size_t period = word.size();
  for (size_t p = 1; p < word.size(); ++p)
    if (word.size() % p == 0 && rotate(word, p) == word) {
      period = p;
      break;
    }
  TaggedLoop best;
  bool have = false;
  for (size_t k = k0 % std::max<size_t>(period, 1); k < word.size() || (!have && word.empty()); k += period) {
    TaggedLoop r;
    r.word = rotate(word, k);
    std::vector<std::pair<int, std::string>> tp;
    for (size_t i = 0; i < tags.size(); ++i)
      tp.push_back({((tags[i] - int(k)) % n + n) % n, i < payload.size() ? payload[i] : std::string()});
    std::sort(tp.begin(), tp.end());
    for (auto& [g, q] : tp) {
      r.tags.push_back(g);
      if (!payload.empty()) r.payload.push_back(q);
    }
    if (!have || std::pair(r.tags, r.payload) < std::pair(best.tags, best.payload)) best = std::move(r);
    have = true;
    if (word.empty()) break;
  }
  return best;
}

TaggedLoop iota(const TaggedLoop& loop) {
  const int n = int(loop.word.size());
  if (!loop.tags.empty() && n % 2 != 0) throw Error("OddLengthTagged", "iota needs even length with tags");
  TaggedLoop r;
  r.word = inverse(loop.word);
  // gap before letter i of w becomes gap before letter n-i of w^-1, then moves by n/2
  std::vector<std::pair<int, std::string>> tp;
  for (size_t i = 0; i < loop.tags.size(); ++i)
    tp.push_back({((n - loop.tags[i] + n / 2) % n + n) % n, i < loop.payload.size() ? loop.payload[i] : ""});
  std::sort(tp.begin(), tp.end());
  for (auto& [g, p] : tp) {
    r.tags.push_back(g);
    if (!loop.payload.empty()) r.payload.push_back(p);
  }
  return r;
}

CyclicWord iota(const CyclicWord& c) { return c.inverse(); }

int max_generator(const Word& w) {
  int k = 0;
  for (Letter x : w) k = std::max(k, gen(x));
  return k;
}

HomologyVector homology_class(const Word& w, int k) {
  HomologyVector h(k, 0);
  for (Letter x : w) {
    if (gen(x) > k) throw Error("RankTooSmall", "letter outside rank");
    h[gen(x) - 1] += x > 0 ? 1 : -1;
  }
  return h;
}

HomologyVector homology_class(const std::vector<CyclicWord>& loops, int k) {
  HomologyVector h(k, 0);
  for (auto& c : loops) {
    auto t = homology_class(c.letters(), k);
    for (int i = 0; i < k; ++i) h[i] += t[i];
  }
  return h;
}

size_t run_start(const Word& w) {
  const size_t n = w.size();
  for (size_t i = 0; i < n; ++i)
    if (gen(w[(i + n - 1) % n]) != gen(w[i])) return i;
  return 0;
}

std::vector<Run> runs(const Word& w) {
  std::vector<Run> out;
  const size_t n = w.size();
  if (n == 0) return out;
  size_t s = run_start(w);
  for (size_t t = 0; t < n; ++t) {
    Letter x = w[(s + t) % n];
    if (!out.empty() && out.back().letter == x)
      ++out.back().length;
    else
      out.push_back({x, 1});
  }
  return out;
}

namespace {

// Suffix automaton over a small integer alphabet.
struct SAM {
  int A;
  std::vector<int> next, link, len, firstpos;
  int last = 0;
  explicit SAM(int alpha, size_t cap) : A(alpha) {
    next.reserve(2 * cap * A + A);
    new_state(0, -1, -1);
  }
  int new_state(int l, int lk, int fp) {
    next.insert(next.end(), A, -1);
    link.push_back(lk);
    len.push_back(l);
    firstpos.push_back(fp);
    return int(len.size()) - 1;
  }
  void extend(int c, int pos) {
    int cur = new_state(len[last] + 1, 0, pos);
    int p = last;
    while (p != -1 && next[p * A + c] == -1) {
      next[p * A + c] = cur;
      p = link[p];
    }
    if (p != -1) {
      int q = next[p * A + c];
      if (len[p] + 1 == len[q]) {
        link[cur] = q;
      } else {
        int cl = new_state(len[p] + 1, link[q], firstpos[q]);
        std::copy(next.begin() + q * A, next.begin() + q * A + A, next.begin() + cl * A);
        while (p != -1 && next[p * A + c] == q) {
          next[p * A + c] = cl;
          p = link[p];
        }
        link[q] = cl;
        link[cur] = cl;
      }
    }
    last = cur;
  }
};

int code(Letter x, int k) { return x > 0 ? x - 1 : k - x - 1; }

Word unroll(const Word& w, bool cyclic) {
  if (!cyclic || w.empty()) return w;
  Word r = w;
  r.insert(r.end(), w.begin(), w.end() - 1);
  return r;
}

}  // namespace

CommonSubword longest_common_subword(const Word& u, bool u_cyclic, const Word& v, bool v_cyclic,
                                     bool allow_inverses, bool same_word) {
  CommonSubword res;
  if (u.empty() || v.empty()) return res;
  int cap = int(std::min(u.size(), v.size()));
  if (same_word) {
    // repeated subword of one word at two distinct occurrences; occurrences in the inverse always count
    const int n = int(u.size());
    for (int d = 1; d < n; ++d) {
      if (!u_cyclic) {
        int cur = 0;
        for (int i = 0; i + d < n; ++i) {
          cur = (u[i] == u[i + d]) ? cur + 1 : 0;
          if (cur > res.length) {
            res.length = cur;
            res.occurrences.clear();
          }
          if (cur == res.length && cur > 0) res.occurrences.emplace_back(i - cur + 1, i + d - cur + 1, false);
        }
        continue;
      }
      int cur = 0, best = 0;
      bool all = true;
      for (int i = 0; i < n; ++i)
        if (u[i] != u[(i + d) % n]) all = false;
      if (all) {
        best = n;
        if (best > res.length) {
          res.length = best;
          res.occurrences.clear();
        }
        res.occurrences.emplace_back(0, d, false);
        continue;
      }
      for (int i = 0; i < 2 * n; ++i) {
        cur = (u[i % n] == u[(i + d) % n]) ? cur + 1 : 0;
        cur = std::min(cur, n - 1);
        if (cur > res.length) {
          res.length = cur;
          res.occurrences.clear();
        }
        if (cur == res.length && cur > 0 && i >= n - 1 && i < 2 * n - 1)
          res.occurrences.emplace_back(((i - cur + 1) % n + n) % n, ((i - cur + 1 + d) % n + n) % n, false);
      }
    }
    if (allow_inverses) {
      auto r2 = longest_common_subword(u, u_cyclic, inverse(u), u_cyclic, false, false);
      if (r2.length > res.length) {
        res.length = r2.length;
        res.occurrences.clear();
      }
      if (r2.length == res.length)
        for (auto& [a, b, f] : r2.occurrences) res.occurrences.emplace_back(a, b, true);
    }
    std::sort(res.occurrences.begin(), res.occurrences.end());
    res.occurrences.erase(std::unique(res.occurrences.begin(), res.occurrences.end()), res.occurrences.end());
    return res;
  }
  int k = std::max(max_generator(u), max_generator(v));
  Word tu = unroll(u, u_cyclic);
  std::vector<std::pair<Word, bool>> texts = {{unroll(v, v_cyclic), false}};
  if (allow_inverses) texts.push_back({unroll(inverse(v), v_cyclic), true});
  const int vn = int(v.size());
  for (auto& [tv, inverted] : texts) {
    SAM sam(2 * k, tv.size());
    for (size_t i = 0; i < tv.size(); ++i) sam.extend(code(tv[i], k), int(i));
    int st = 0, l = 0;
    for (int i = 0; i < int(tu.size()); ++i) {
      int c = code(tu[i], k);
      while (st != 0 && sam.next[st * sam.A + c] == -1) {
        st = sam.link[st];
        l = sam.len[st];
      }
      if (sam.next[st * sam.A + c] != -1) {
        st = sam.next[st * sam.A + c];
        ++l;
      }
      int m = std::min(l, cap);
      if (m == 0) continue;
      if (m > res.length) {
        res.length = m;
        res.occurrences.clear();
      }
      if (m == res.length) {
        int upos = i - m + 1;
        int vend = sam.firstpos[st];
        int vpos = vend - m + 1;
        if (u_cyclic) upos %= int(u.size());
        if (v_cyclic) vpos = ((vpos % vn) + vn) % vn;
        res.occurrences.emplace_back(upos, vpos, inverted);
      }
    }
  }
  std::sort(res.occurrences.begin(), res.occurrences.end());
  res.occurrences.erase(std::unique(res.occurrences.begin(), res.occurrences.end()), res.occurrences.end());
  return res;
}

int longest_common_length(const Word& u, const Word& v, bool allow_inverses) {
  return longest_common_subword(u, true, v, true, allow_inverses).length;
}

}  // namespace fatsurf
