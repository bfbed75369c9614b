#pragma once

#include <optional>
#include <string>
#include <vector>

#include "acasim/aca.hpp"
#include "acasim/constructions.hpp"
#include "acasim/sequences.hpp"
#include "acasim/tm.hpp"

#include <nlohmann/json_fwd.hpp>

namespace acasim {

enum class Verdict : uint8_t { kPass, kFail, kBudgetExceeded };

std::string verdict_name(Verdict v);

struct MatchEntry {
  uint64_t tm_time = 0;
  uint64_t aca_time = 0;
  bool operator==(const MatchEntry&) const = default;
};

struct SimulationReport {
  Verdict verdict = Verdict::kFail;
  std::string reason;                        // violated condition, when FAIL
  std::optional<uint64_t> first_unmatched;   // tm time, when BUDGET_EXCEEDED
  std::vector<MatchEntry> matches;           // one entry per matched tm time
  bool initial_ok = false;
  bool monotone_ok = false;
  uint64_t budget_used = 0;
  uint64_t tm_steps = 0;  // effective step count (clamped to the halt time)
  bool tm_halted = false;
  int construction_id = 0;
  int64_t gap = 1;
  std::string sequence_spec;
  std::string bound_formula;
  uint64_t bound_value = 0;
  bool bound_ok = false;

  std::optional<uint64_t> match_time(uint64_t tm_time) const;
};

/// Canonical per-construction slowdown formula value at T steps:
///   1: (3T^2+7T+4)/2    2: (T^2+3T+2)/2    3: 6p(T^2+(1+1/(2p))T)
uint64_t slowdown_bound(int construction_id, uint64_t tm_steps, int64_t gap = 1);
std::string slowdown_bound_formula(int construction_id);

/// Co-runs the reference interpreter and the compiled automaton. A TM time t
/// is matched at the first automaton time whose configuration carries the
/// full encoding of t: Γ-projection equal to the oracle tape over the light
/// cone and (constructions 1/3) a settled head cycle — no freshly written
/// cell and a unique marker at p_{t-1} holding state q_t and the direction
/// of p_t - p_{t-1}. Construction 2 has no head encoding, so matching is
/// tape-only with a strictly increasing cursor. tm_steps is clamped to the
/// halt time for halting runs.
SimulationReport verify_strict(const TuringMachine& tm, std::span<const SymbolId> input,
                               const CompiledACA& aca, const UpdateSequence& seq,
                               uint64_t tm_steps, uint64_t budget);

/// Same check through the support map: projections are taken at psi(i), the
/// marker must sit at psi(p_{t-1}), and the start configuration must satisfy
/// the scattered shape conditions (constant off-support component, support
/// pattern). psi gaps must not exceed the rule radius.
SimulationReport verify_scattered(const TuringMachine& tm, std::span<const SymbolId> input,
                                  const CompiledACA& aca, const ScatterMap& scatter,
                                  const UpdateSequence& seq, uint64_t tm_steps,
                                  uint64_t budget);

struct SlowdownProfile {
  std::vector<uint64_t> per_step_cost;  // t'_{t+1} - t'_t
  double fitted_leading_coefficient = 0.0;
  std::string bound_formula;
  uint64_t bound_value = 0;
  bool bound_ok = false;
};

/// Per-step costs and a least-squares quadratic fit of t'(t). PASS only.
SlowdownProfile slowdown_profile(const SimulationReport& report);

/// Incremental checker for the head-tracking control invariant:
/// (#ctl0, #ctl1) stays in {(0,1),(1,1),(1,0)} and the two cells are
/// adjacent whenever both are present.
class ControlInvariantChecker {
 public:
  explicit ControlInvariantChecker(const Configuration& initial);
  /// Feed one applied update; returns whether the invariant still holds.
  bool on_update(int64_t pos, const ProductSymbol& before, const ProductSymbol& after);
  bool ok() const { return ok_; }

 private:
  void note(uint8_t ctl, int64_t pos, int delta);
  void recheck();
  int64_t fresh_pos_ = 0, head_pos_ = 0;
  int fresh_count_ = 0, head_count_ = 0;
  bool ok_ = true;
};

/// Replays a head-tracking trace and checks the control invariant after the
/// initial configuration and every update.
bool check_construction1_control_invariant(const ACATrace& trace);

nlohmann::json report_to_json(const SimulationReport& report);

}  // namespace acasim
