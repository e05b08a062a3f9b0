#pragma once
#include <cstdint>
#include <optional>
#include <random>

#include "fatsurf/words.hpp"

namespace fatsurf {

struct SamplerSeed {
  uint64_t seed = 0;
  uint64_t stream = 0;
};

uint64_t splitmix64(uint64_t& x);

// Portable RNG: mt19937_64 seeded from (seed, stream) through splitmix64, with
// our own bounded draws so outputs do not depend on the standard library.
class Rng {
 public:
  explicit Rng(SamplerSeed s);
  Rng(uint64_t seed, uint64_t stream) : Rng(SamplerSeed{seed, stream}) {}
  uint64_t next() { return eng_(); }
  // uniform in [0, n)
  uint64_t below(uint64_t n);
  double uniform01() { return double(eng_() >> 11) * (1.0 / 9007199254740992.0); }
  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

// Letter drawn uniformly among the 2k letters.
Letter random_letter(Rng& rng, int k);
// Uniform among letters not equal to inv(prev).
Letter random_next_letter(Rng& rng, int k, Letter prev);

Word sample_reduced(Rng& rng, int n, int k);
// Linear representative uniform over cyclically reduced words of length n, as canonical rotation.
CyclicWord sample_cyclically_reduced(int n, int k, SamplerSeed seed);
Word sample_cyclically_reduced_word(Rng& rng, int n, int k);
CyclicWord sample_homologically_trivial(int n, int k, SamplerSeed seed, uint64_t attempt_cap = 10000000,
                                        uint64_t* attempts_used = nullptr);
Word sample_homologically_trivial_word(Rng& rng, int n, int k, uint64_t attempt_cap = 10000000,
                                       uint64_t* attempts_used = nullptr);

struct PseudorandomParams {
  int T = 1;
  double epsilon = 0.1;
  uint64_t enumeration_cap = 1u << 20;
};

struct PseudorandomReport {
  bool pass = true;
  double worst_deviation = 0;  // max |ratio - 1|
  Word witness;                // offending block word when failing
  int witness_offset = -1;
  double witness_ratio = 0;
  int blocks = 0;
};

PseudorandomReport pseudorandomness_report(const Word& gamma, int k, const PseudorandomParams& p);
// Same check for a collection of words of length T.
PseudorandomReport collection_pseudorandomness(const std::vector<Word>& blocks, int k, int T, double epsilon);

// First / order-1 Markov chain over the 2k letters with inverse steps forbidden.
struct MarkovSpec {
  int k = 2;
  std::vector<double> initial;     // size 2k
  std::vector<double> transition;  // 2k x 2k row-major; entry (x, inv x) must be 0
  static MarkovSpec uniform(int k);
  void validate() const;  // throws NotFullSupport / BadSpec
  std::vector<double> stationary() const;
  double expected_frequency(const Word& sigma) const;  // E(sigma) under stationarity
};

int letter_index(Letter x, int k);
Letter index_letter(int i, int k);

Word markov_sample(const MarkovSpec& spec, int n, SamplerSeed seed);
double estimate_E(const MarkovSpec& spec, const Word& sigma, int sample_length, SamplerSeed seed);

}  // namespace fatsurf
