#include "fatsurf/sampling.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <unordered_map>

namespace fatsurf {

uint64_t splitmix64(uint64_t& x) {
  uint64_t z = (x += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

Rng::Rng(SamplerSeed s) {
  uint64_t x = s.seed ^ (s.stream * 0xd1b54a32d192ed03ull);
  std::seed_seq seq{uint32_t(splitmix64(x)), uint32_t(splitmix64(x)), uint32_t(splitmix64(x)),
                    uint32_t(splitmix64(x))};
  eng_.seed(seq);
}

uint64_t Rng::below(uint64_t n) {
  // rejection to remove modulo bias
  const uint64_t lim = UINT64_MAX - UINT64_MAX % n;
  uint64_t r;
  do r = eng_();
  while (r >= lim);
  return r % n;
}

int letter_index(Letter x, int k) { return x > 0 ? x - 1 : k - x - 1; }
Letter index_letter(int i, int k) { return i < k ? i + 1 : -(i - k + 1); }

Letter random_letter(Rng& rng, int k) { return index_letter(int(rng.below(2 * k)), k); }

Letter random_next_letter(Rng& rng, int k, Letter prev) {
  int i = int(rng.below(2 * k - 1));
  Letter x = index_letter(i, k);
  // skip inv(prev) by mapping it onto the one letter left out of the draw
  if (x == -prev) x = index_letter(2 * k - 1, k);
  return x;
}

Word sample_reduced(Rng& rng, int n, int k) {
  Word w;
  w.reserve(n);
  for (int i = 0; i < n; ++i) w.push_back(i == 0 ? random_letter(rng, k) : random_next_letter(rng, k, w.back()));
  return w;
}

Word sample_cyclically_reduced_word(Rng& rng, int n, int k) {
  if (n < 1 || k < 1) throw Error("BadArgument", "need n >= 1 and k >= 1");
  for (;;) {
    Word w = sample_reduced(rng, n, k);
    if (n == 1 || w.front() != -w.back()) return w;
  }
}

CyclicWord sample_cyclically_reduced(int n, int k, SamplerSeed seed) {
  Rng rng(seed);
  return CyclicWord(sample_cyclically_reduced_word(rng, n, k));
}

Word sample_homologically_trivial_word(Rng& rng, int n, int k, uint64_t cap, uint64_t* used) {
  if (n % 2 != 0 || n < 4) throw Error("InfeasibleLength", "homologically trivial words need even n >= 4");
  std::vector<int> h(k);
  for (uint64_t a = 1; a <= cap; ++a) {
    Word w = sample_cyclically_reduced_word(rng, n, k);
    std::fill(h.begin(), h.end(), 0);
    for (Letter x : w) h[gen(x) - 1] += x > 0 ? 1 : -1;
    bool ok = true;
    for (int v : h) ok = ok && v == 0;
    if (ok) {
      if (used) *used = a;
      return w;
    }
  }
  throw Error("AttemptCapExceeded", "no homologically trivial sample within cap");
}

CyclicWord sample_homologically_trivial(int n, int k, SamplerSeed seed, uint64_t cap, uint64_t* used) {
  Rng rng(seed);
  return CyclicWord(sample_homologically_trivial_word(rng, n, k, cap, used));
}

namespace {

double reduced_count(int k, int T) { return 2.0 * k * std::pow(2.0 * k - 1, T - 1); }

// Walks every reduced word of length T.  The witness is the worst out-of-band ratio,
// an absent word winning ties against an over-represented one.
void check_counts(const std::map<Word, int>& counts, int N, int k, int T, double eps, PseudorandomReport& rep,
                  int offset) {
  const double total = reduced_count(k, T);
  // enumerate all reduced words of length T in lexicographic index order
  Word s(T);
  std::function<bool(int)> rec = [&](int pos) -> bool {
    if (pos == T) {
      auto it = counts.find(s);
      int c = it == counts.end() ? 0 : it->second;
      double ratio = N == 0 ? 0.0 : double(c) / N * total;
      double dev = std::fabs(ratio - 1.0);
      const double prev = rep.pass ? -1.0 : std::fabs(rep.witness_ratio - 1.0);
      if (dev > eps && (dev > prev + 1e-12 || (std::fabs(dev - prev) <= 1e-12 && ratio < rep.witness_ratio))) {
        rep.pass = false;
        rep.witness = s;
        rep.witness_offset = offset;
        rep.witness_ratio = ratio;
      }
      if (dev > rep.worst_deviation) rep.worst_deviation = dev;
      return false;
    }
    for (int i = 0; i < 2 * k; ++i) {
      Letter x = index_letter(i, k);
      if (pos > 0 && x == -s[pos - 1]) continue;
      s[pos] = x;
      if (rec(pos + 1)) return true;
    }
    return false;
  };
  rec(0);
}

}  // namespace

PseudorandomReport pseudorandomness_report(const Word& gamma, int k, const PseudorandomParams& p) {
  const int n = int(gamma.size());
  if (n < p.T) throw Error("TooShort", "|Gamma| < T");
  if (reduced_count(k, p.T) > double(p.enumeration_cap)) throw Error("BlockTooLarge", "block census above cap");
  PseudorandomReport rep;
  const int N = n / p.T;
  rep.blocks = N;
  for (int o = 0; o < p.T && rep.pass; ++o) {
    std::map<Word, int> counts;
    for (int b = 0; b < N; ++b) {
      Word blk(p.T);
      for (int i = 0; i < p.T; ++i) blk[i] = gamma[(o + b * p.T + i) % n];
      ++counts[blk];
    }
    check_counts(counts, N, k, p.T, p.epsilon, rep, o);
  }
  return rep;
}

PseudorandomReport collection_pseudorandomness(const std::vector<Word>& blocks, int k, int T, double eps) {
  PseudorandomReport rep;
  std::map<Word, int> counts;
  for (auto& b : blocks) {
    if (int(b.size()) != T) throw Error("BadArgument", "block of wrong length");
    ++counts[b];
  }
  rep.blocks = int(blocks.size());
  check_counts(counts, int(blocks.size()), k, T, eps, rep, 0);
  return rep;
}

MarkovSpec MarkovSpec::uniform(int k) {
  MarkovSpec s;
  s.k = k;
  const int A = 2 * k;
  s.initial.assign(A, 1.0 / A);
  s.transition.assign(A * A, 0.0);
  for (int i = 0; i < A; ++i)
    for (int j = 0; j < A; ++j)
      if (index_letter(j, k) != -index_letter(i, k)) s.transition[i * A + j] = 1.0 / (A - 1);
  return s;
}

void MarkovSpec::validate() const {
  const int A = 2 * k;
  if (int(initial.size()) != A || int(transition.size()) != A * A) throw Error("BadSpec", "wrong sizes");
  for (int i = 0; i < A; ++i) {
    if (!(initial[i] > 0)) throw Error("NotFullSupport", "initial weight zero");
    double row = 0;
    for (int j = 0; j < A; ++j) {
      double t = transition[i * A + j];
      bool cancel = index_letter(j, k) == -index_letter(i, k);
      if (cancel && t != 0) throw Error("BadSpec", "inverse step has positive weight");
      if (!cancel && !(t > 0)) throw Error("NotFullSupport", "zero transition between non-cancelling letters");
      row += t;
    }
    if (std::fabs(row - 1.0) > 1e-9) throw Error("BadSpec", "row not normalized");
  }
}

std::vector<double> MarkovSpec::stationary() const {
  const int A = 2 * k;
  std::vector<double> pi(A, 1.0 / A), nx(A);
  for (int it = 0; it < 10000; ++it) {
    std::fill(nx.begin(), nx.end(), 0.0);
    for (int i = 0; i < A; ++i)
      for (int j = 0; j < A; ++j) nx[j] += pi[i] * transition[i * A + j];
    double d = 0;
    for (int i = 0; i < A; ++i) d += std::fabs(nx[i] - pi[i]);
    pi = nx;
    if (d < 1e-15) break;
  }
  return pi;
}

double MarkovSpec::expected_frequency(const Word& sigma) const {
  if (sigma.empty()) return 1.0;
  const int A = 2 * k;
  auto pi = stationary();
  double p = pi[letter_index(sigma[0], k)];
  for (size_t i = 1; i < sigma.size(); ++i)
    p *= transition[letter_index(sigma[i - 1], k) * A + letter_index(sigma[i], k)];
  return p;
}

Word markov_sample(const MarkovSpec& spec, int n, SamplerSeed seed) {
  spec.validate();
  Rng rng(seed);
  const int A = 2 * spec.k;
  auto draw = [&](const double* w) {
    double u = rng.uniform01(), acc = 0;
    for (int i = 0; i < A; ++i) {
      acc += w[i];
      if (u < acc) return i;
    }
    for (int i = A - 1; i >= 0; --i)
      if (w[i] > 0) return i;
    return 0;
  };
  auto pi = spec.stationary();
  Word w;
  w.reserve(n);
  int cur = -1;
  for (int i = 0; i < n; ++i) {
    cur = (i == 0) ? draw(pi.data()) : draw(&spec.transition[cur * A]);
    w.push_back(index_letter(cur, spec.k));
  }
  return w;
}

double estimate_E(const MarkovSpec& spec, const Word& sigma, int len, SamplerSeed seed) {
  Word w = markov_sample(spec, len, seed);
  const int m = int(sigma.size());
  if (m == 0 || len < m) return 0.0;
  long c = 0;
  for (int i = 0; i + m <= len; ++i) {
    bool ok = true;
    for (int j = 0; j < m && ok; ++j) ok = w[i + j] == sigma[j];
    c += ok;
  }
  return double(c) / double(len - m + 1);
}

}  // namespace fatsurf
