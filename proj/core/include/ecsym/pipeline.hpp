#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ecsym/records.hpp"
#include "ecsym/sieve.hpp"
#include "ecsym/twist_congruence.hpp"

namespace ecsym {

// Isogeny classes certified mutually p-congruent up to semisimplification.
struct CongruenceSet {
  u64 p = 0;
  std::vector<std::string> classes;  // class keys, sorted
  bool certified = false;
  bool reducible = false;
};

struct PairDecision {
  std::string a, b;
  SymplecticType type;
};

// One or two blocks: same block symplectic, cross block antisymplectic.
// Curves whose type relative to the first block could not be decided by
// any installed criterion land in undecided, never in a guessed block.
struct SymplecticPartition {
  CongruenceSet set;
  std::vector<std::vector<std::string>> blocks;
  std::vector<std::string> undecided;
  std::vector<PairDecision> decisions;
  Int sturm_bound;  // largest bound used when certifying the set
  std::vector<std::string> notes;
};

// Answers for pairs outside the internal criteria, loaded from a data
// pack of precomputed results keyed by minimal-model invariants.
class ExternalOracle {
 public:
  ExternalOracle() = default;
  explicit ExternalOracle(const std::string& pack_path);
  bool installed() const { return installed_; }
  SymplecticType query(const RationalEC& E, const RationalEC& Ep, u64 p) const;

 private:
  std::map<std::string, SymType> answers_;
  bool installed_ = false;
};

// Oracle answer cross-checked against the internal decision: when both
// decide they must agree, anything else is an upstream bug.
SymplecticType external_oracle_hook(const ExternalOracle& oracle, const RationalEC& E,
                                    const RationalEC& Ep, u64 p,
                                    SymplecticType internal = SymplecticType{});

struct PipelineConfig {
  u64 p = 7;
  u64 window_bound = 500000;  // window starts above max(bound, conductors)
  std::size_t B = 50;
  int jobs = 1;
  bool audit = false;
  ExternalOracle oracle;
  IsogenyMatrix isogeny;  // authoritative class connectivity when present
};

struct PipelineResult {
  u64 p = 0;
  std::vector<SymplecticPartition> partitions;
  std::size_t classes_scanned = 0;
  std::size_t distinct_j = 0;  // across curves of emitted partitions
  std::vector<std::string> errors;  // isolated per-pair/per-set failures
};

// Five steps: sieve partition, pairwise certification, reducibility
// split, twist-criteria typing with 2-coloring, reducible handling
// (exact only at p = 7).  A failing pair never aborts the run.
PipelineResult run_pipeline(const std::vector<CurveRecord>& records,
                            const PipelineConfig& cfg);

// 2-coloring of labels by signed decisions (Symplectic +1, Antisymplectic
// -1, composition multiplicative).  An inconsistent cycle throws; labels
// unreachable from the first one end up undecided.
SymplecticPartition step4_partition(const CongruenceSet& set,
                                    const std::vector<std::string>& labels,
                                    const std::vector<PairDecision>& pairwise);

struct FreyMazurReport {
  // label -> (q, p): q multiplicative, p >= p_min prime, p | v_q(disc_min)
  std::map<std::string, std::vector<std::pair<Int, u64>>> exponents;
  std::optional<u64> max_p;
  // conductor -> stabilized gcd of trace differences over its
  // non-isogenous class pairs (largest across pairs)
  std::map<std::string, Int> same_conductor_gcds;
  std::vector<std::string> notes;
};

FreyMazurReport freymazur_audit(const std::vector<CurveRecord>& records, u64 p_min = 19);

}  // namespace ecsym
