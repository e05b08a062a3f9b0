#pragma once
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fatsurf/fatgraph.hpp"
#include "fatsurf/pants.hpp"

namespace fatsurf {

struct ThinParams {
  int L = 1;  // minimum edge length of the output
  int stem = 2, flower = 8, margin = 1;
  int T = 0, Tprime = 0;  // 0: derived from the stem unit
  double epsilon = 0.1;
  double tag_density = -1;  // warning threshold; negative means epsilon / 10
  bool paper_constants = false;
  uint64_t seed = 0;
  // reservoir cancellation search
  uint64_t node_budget = 20000;
  int cancel_cap = 40;
  int cancel_attempts = 96;
  int max_flowers_per_cancel = 3;
  // skip the good-pants attempt and finish the reservoir with the exact search
  bool exact_finish = false;

  // stem 10L, flower 40L, margin 5L, T' = 1010L, T - T' = 1500L
  static ThinParams paper(int L);
  // every paper ratio kept with the 10L unit shrunk to `unit` letters
  static ThinParams desk(int L, int unit);
  // fills T and T', then checks the invariants (BadParams)
  void finalize();
};

struct StageFailure : Error {
  std::string stage, diagnosis;
  StageFailure(std::string s, const std::string& d)
      : Error("StageFailure", s + ": " + d), stage(std::move(s)), diagnosis(d) {}
};

struct Block {
  int start = 0, length = 0;
  bool tagged = false;
};
struct Segmentation {
  std::vector<Block> blocks;
  int leftover_start = 0, leftover_length = 0;
};
Segmentation segment(const TaggedLoop& g, int T);

struct Poppy {
  int x = 0;  // offset of the stem x in v; the flower follows, then X
};
struct PoppyResult {
  std::vector<Poppy> poppies;
  std::vector<TaggedLoop> flowers;  // tag at the stem junction
  Word residual;
  std::vector<int> residual_index;  // offset in v of each residual letter
  std::vector<int> residual_tags;   // seams left by excision
};
// before/after are the letters adjacent to v in the ambient loop (0 if none); tags are gaps of v.
PoppyResult fold_tall_poppies(const Word& v, const ThinParams& p, Letter before = 0, Letter after = 0,
                              const std::vector<int>& tags = {});

struct Residual {
  Word word;
  bool tagged = false;
};
struct RandomCancellation {
  std::vector<std::pair<int, int>> pairs;  // v_i'' paired with v_j''
  std::vector<int> unpaired;
  double remainder_fraction = 0;  // unpaired residual mass over total residual mass
};
RandomCancellation random_cancellation(const std::vector<Residual>& v, const ThinParams& p);

struct Reservoir {
  std::vector<TaggedLoop> flowers;
  std::map<std::string, int> census() const;  // kind (canonical tagged word) -> count
};
struct CancelGroup {
  std::vector<int> nus, flowers;  // indices into the inputs
  Pairing pairing;                // on the nus followed by the flowers, in that order
};
struct ReservoirCancellation {
  std::vector<CancelGroup> groups;
  std::vector<int> unused;  // flower indices left in the reservoir
  int flowers_used = 0;
  double consumption = 0;  // flowers used * flower length / total |nu|
};
// Throws ReservoirExhausted naming the flower kind that was missing.
ReservoirCancellation cancel_with_reservoir(const std::vector<TaggedLoop>& nus, const Reservoir& r,
                                            const ThinParams& p, int rank);

struct ThinReport {
  std::vector<std::string> warnings;
  int blocks = 0, tagged_blocks = 0, poppies = 0, flowers = 0;
  int paired_blocks = 0;
  double remainder_fraction = 0;
  int remainder_loops = 0, remainder_mass = 0;
  int reservoir_kinds = 0, reservoir_min = 0, reservoir_max = 0;
  int flowers_consumed = 0;
  double consumption = 0;
  int pants = 0, annuli = 0;
  int surplus_loops = 0;       // t in boundary = N v + t + iota(t)
  std::string finish;          // "pants" or "exact"
  std::string pants_fallback;  // why the pants gluing was abandoned
  int N = 1;
  int min_tag_distance_after_pairing = -1;
  std::string failed_stage;
};

struct ThinResult {
  int N = 1;
  Fatgraph fatgraph;  // boundary is N copies of the input
  ThinReport report;
};

// Throws StageFailure{stage, diagnosis}; `report` (if given) is filled up to the failing stage.
ThinResult run_thin_pipeline(const LoopCollection& gamma, const ThinParams& params, ThinReport* report = nullptr);

// Loops built from inverse-paired residual cores with tall poppies planted at legal sites.
// With matched_remainders each twin pair's margins and tails spell the inverse of one of its
// flowers, so the remainder loop can cancel against the reservoir; this needs T - T' = flower/2 - 2 margin.
LoopCollection synthetic_thin_input(int k, int loops, const ThinParams& p, uint64_t seed,
                                    bool matched_remainders = false);

}  // namespace fatsurf
