#pragma once
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fatsurf/bounder.hpp"
#include "fatsurf/fatgraph.hpp"
#include "fatsurf/sampling.hpp"

namespace fatsurf {

struct Presentation {
  int rank = 2;
  std::vector<CyclicWord> relators;
  std::string model = "few";  // "few" or "density"
  long count = 1;             // l for the few-relators model
  double density = 0;
  int length = 0;
  uint64_t seed = 0;
  std::vector<std::string> warnings;
};

struct BeadParams {
  double delta = 0.25;
  double C = -1;      // negative: 0.8 * (1 - 2 delta) / log(2k - 1)
  double band = 0.3;  // relative tolerance on segment lengths and M
  // desk overrides; 0 derives the value from delta and C
  int target = 0;  // bead length n^{1-delta}
  int chunk = 0;   // scan window n^{1-2 delta}
  int lip = 0;     // ceil(C ln n)
  bool maximal_lips = true;
  // candidate lips tried per step by choosers that can reject
  int candidate_cap = 64;
};

struct Lip {
  int bottom = 0;  // p_i = r[bottom, bottom + len)
  int top = 0;     // s_i = r[top, top + len), inverse to p_i
  Word word;
};

struct BeadDecomposition {
  int rank = 2;
  Word r;
  double delta = 0, C = 0, band = 0.3;
  int target = 0, chunk = 0, lip_length = 0, M = 0;
  std::vector<Lip> lips;  // lips[i-1] is lip i
  Word r0, rM;
  std::vector<Word> plus, minus;  // plus[i-1] = r_i^+, minus[i-1] = r_i^-
  std::vector<std::string> warnings;

  int n() const { return int(r.size()); }
  // r_0 r_1^+ ... r_{M-1}^+ r_M r_{M-1}^- ... r_1^-
  Word reassembled() const;
  // rotation of r the reassembly starts at
  int origin() const;
  // positions of r read by bead i, in bead order
  std::vector<int> bead_positions(int i) const;
};

struct DecompositionCheck {
  bool reassembly = false;
  bool lips_inverse = false;
  bool bands = false;
  bool ok() const { return reassembly && lips_inverse && bands; }
  std::string message;
};

// Called for each candidate lip i (1-based) in scan order; returning false moves to the next candidate.
using LipChooser = std::function<bool(const BeadDecomposition& partial, int i, const Lip& candidate)>;

BeadDecomposition find_bead_decomposition(const Word& r, int k, const BeadParams& p = {},
                                          const LipChooser& choose = {});
DecompositionCheck check_decomposition(const BeadDecomposition& d);
std::vector<TaggedLoop> beads(const BeadDecomposition& d);

// Retries lip choices until every bead is itself homologically trivial.
struct TrivialBeadsResult {
  std::optional<BeadDecomposition> decomposition;
  long candidates_tried = 0;
};
TrivialBeadsResult find_homologically_trivial_beads(const Word& r, int k, const BeadParams& p = {});

enum class BeadBackend { Exact, Thin, Annulus };
const char* to_string(BeadBackend b);

struct SurfaceParams {
  BeadParams beads;
  int N = 1;
  int L = 0;  // minimum edge length inside each Y_i; 0 means none
  BeadBackend backend = BeadBackend::Exact;
  uint64_t node_budget = 200000;
  int exact_max_length = 60;
};

struct BeadReport {
  int length = 0;
  std::string status;  // yes, annulus
  uint64_t nodes = 0;
  int genus = 0;
};

struct BeadedSurface {
  BeadDecomposition decomposition;
  int N = 1;
  Fatgraph spine;
  // one entry per disk: index of the spine boundary loop it caps
  std::vector<int> disks;
  std::vector<BeadReport> bead_reports;
  int genus = 0;
  long candidates_tried = 0;
  std::vector<std::string> warnings;
};

struct SurfaceAudit {
  bool boundary_exact = false;
  bool folded = false;
  bool lips_twice = false;
  bool ok() const { return boundary_exact && folded && lips_twice; }
};

// Throws BeadBoundFailure when some bead cannot be bounded within the candidate cap.
BeadedSurface build_beaded_surface(const Word& r, int k, const SurfaceParams& p = {});
SurfaceAudit audit_surface(const BeadedSurface& s);
std::string serialize(const BeadedSurface& s);

// --- folded lifts ----------------------------------------------------------------------

struct CommonPath {
  int start_point = 0;  // gap class of the spine
  int start_index = 0;  // index into w
  int length = 0;
  bool in_disk_boundary = false;
  int boundary_loop = -1;
};

// w is read linearly; a reported path cannot be extended backwards.
std::vector<CommonPath> scan_common_paths(const Fatgraph& y, const Word& w, int m);
// The spine paths of length <= max_len reading subwords of w, found by plain enumeration.
std::vector<CommonPath> brute_force_common_paths(const Fatgraph& y, const Word& w, int m, int max_len);

struct ConvexityReport {
  bool pass = true;
  double alpha = 0.5;
  int relator = -1;  // violating relator, with the path below
  bool inverse = false;
  CommonPath witness;
  long paths_checked = 0;
  int longest = 0;
};
// Spine disks are taken as the loops of y's letter-level source.
ConvexityReport alpha_convexity_check(const Fatgraph& spine, const Presentation& P, double alpha);
inline ConvexityReport alpha_convexity_check(const BeadedSurface& s, const Presentation& P, double alpha) {
  return alpha_convexity_check(s.spine, P, alpha);
}

// --- presentations ---------------------------------------------------------------------

struct PresentationModel {
  bool density_model = false;
  long count = 1;
  double D = 0;
  long cap = 100000;
};
Presentation sample_presentation(int k, int n, const PresentationModel& m, uint64_t seed);

struct CPrimeReport {
  int max_piece = 0;
  std::vector<double> ratios;  // per relator
  double lambda = 1.0 / 6;
  bool pass = false;
  double anchor = 0;  // 2 log_{2k-1}(total length)
};
CPrimeReport cprime_report(const Presentation& P, double lambda);

}  // namespace fatsurf
