#pragma once
#include <cstdint>
#include <optional>
#include <vector>

#include "fatsurf/fatgraph.hpp"
#include "fatsurf/sampling.hpp"

namespace fatsurf {

struct BoundOptions {
  bool require_trivalent = true;
  bool allow_annulus_components = false;
  int min_edge_length = 0;  // 0: no constraint
  uint64_t node_budget = 200000000;
};

enum class BoundStatus { Yes, No, Unknown };
const char* to_string(BoundStatus s);

struct BoundResult {
  BoundStatus status = BoundStatus::No;
  Pairing pairing;
  std::optional<Fatgraph> witness;
  uint64_t nodes = 0;
  bool yes() const { return status == BoundStatus::Yes; }
};

// Acceptance predicate shared by the search and the oracle.
bool acceptable(const Fatgraph& y, const BoundOptions& opts);

BoundResult bounds(const LoopCollection& gamma, const BoundOptions& opts = {});
// Exhaustive enumeration of every inverse-letter involution; total length <= 16.
BoundResult brute_force_oracle(const LoopCollection& gamma, const BoundOptions& opts = {});

struct ExperimentRow {
  int length = 0;
  int samples = 0;
  int bounds = 0;
  int unknown = 0;
  double fraction() const { return samples == 0 ? 0.0 : double(bounds) / samples; }
};

std::vector<ExperimentRow> trivalent_experiment(int k, const std::vector<int>& lengths, int samples, uint64_t seed,
                                                const BoundOptions& opts = {}, int workers = 0);
std::string experiment_csv(const std::vector<ExperimentRow>& rows);

// All cyclically reduced cyclic words (canonical representatives) of length n over rank k.
std::vector<CyclicWord> enumerate_cyclic_words(int n, int k, bool homologically_trivial_only = false);

int default_workers();

}  // namespace fatsurf
