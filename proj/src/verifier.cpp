#include "acasim/verifier.hpp"

#include <algorithm>
#include <map>
#include <nlohmann/json.hpp>
#include <set>

namespace acasim {

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kPass: return "PASS";
    case Verdict::kFail: return "FAIL";
    case Verdict::kBudgetExceeded: return "BUDGET_EXCEEDED";
  }
  return "?";
}

std::optional<uint64_t> SimulationReport::match_time(uint64_t tm_time) const {
  for (const MatchEntry& m : matches)
    if (m.tm_time == tm_time) return m.aca_time;
  return std::nullopt;
}

uint64_t slowdown_bound(int construction_id, uint64_t t, int64_t gap) {
  switch (construction_id) {
    case 1: return (3 * t * t + 7 * t + 4) / 2;
    case 2: return (t * t + 3 * t + 2) / 2;
    case 3: {
      uint64_t p = uint64_t(gap);
      return 6 * p * t * t + 6 * p * t + 3 * t;
    }
    default: throw std::invalid_argument("construction id must be 1, 2 or 3");
  }
}

std::string slowdown_bound_formula(int construction_id) {
  switch (construction_id) {
    case 1: return "(3/2)(T^2 + (7/3)T + 4/3)";
    case 2: return "(1/2)(T^2 + 3T + 2)";
    case 3: return "6p(T^2 + (1 + 1/(2p))T)";
    default: throw std::invalid_argument("construction id must be 1, 2 or 3");
  }
}

namespace {

struct Engine {
  const TuringMachine& tm;
  const CompiledACA& aca;
  const ScatterMap scatter;  // gap 1 => identity
  RunTrace oracle;
  int64_t window_lo = 0, window_hi = 0;  // light cone, support indices

  Engine(const TuringMachine& tm_, std::span<const SymbolId> input,
         const CompiledACA& aca_, const ScatterMap& scatter_, uint64_t tm_steps)
      : tm(tm_), aca(aca_), scatter(scatter_) {
    oracle = tm_run(tm, input, tm_steps);
    window_lo = -int64_t(effective_steps()) - 1;
    window_hi = int64_t(input.size()) + int64_t(effective_steps()) + 1;
  }

  uint64_t effective_steps() const { return oracle.configs.size() - 1; }

  int64_t marker_index(uint64_t t) const {
    return t == 0 ? -1 : oracle.configs[t - 1].head;
  }

  bool tape_matches(const Configuration& cfg, uint64_t t) const {
    const Tape& tape = oracle.configs[t].tape;
    for (int64_t j = window_lo; j <= window_hi; ++j)
      if (cfg.at(scatter.psi(j)).gamma != tape.at(j)) return false;
    return true;
  }

  // The encoding of machine time t is the settled configuration the head
  // cycle reaches after completing step t: no freshly written cell remains,
  // the unique marker sits at p_{t-1} carrying q_t and the direction of the
  // step, and the Γ-projection equals the oracle tape. Without the
  // settledness requirement, mid-cycle states of machines that rewrite a
  // symbol in place would collide with later encodings.
  bool encoding_matches(const Configuration& cfg, uint64_t t,
                        const std::set<int64_t>& markers, size_t fresh_count) const {
    if (markers.size() != 1 || fresh_count != 0) return false;
    int64_t expect = scatter.psi(marker_index(t));
    if (*markers.begin() != expect) return false;
    ProductSymbol cell = cfg.at(expect);
    if (cell.state != oracle.configs[t].state) return false;
    Move dir = oracle.configs[t].head > marker_index(t) ? Move::R : Move::L;
    if (cell.dir != dir) return false;
    return tape_matches(cfg, t);
  }
};

// Condition on the start configuration: Γ-projection is the padded input and
// the non-Γ component is constant except at the single marker cell. For
// scattered starts the check runs over support cells, and off-support cells
// must share one constant value.
bool initial_shape_ok(const Engine& eng, const Configuration& cfg,
                      std::span<const SymbolId> input, std::string* why) {
  auto non_gamma = [](const ProductSymbol& s) {
    return std::tuple(s.state, s.dir, s.ctl);
  };
  const int64_t p = eng.scatter.gap;
  ProductSymbol support_filler = cfg.background_at(0);
  int64_t differing = 0;
  for (int64_t j = eng.window_lo; j <= eng.window_hi; ++j) {
    ProductSymbol cell = cfg.at(eng.scatter.psi(j));
    SymbolId expect_gamma =
        (j >= 0 && j < int64_t(input.size())) ? input[size_t(j)] : eng.tm.blank();
    if (cell.gamma != expect_gamma) {
      if (why) *why = "condition 1: Γ-projection differs from the padded input";
      return false;
    }
    if (non_gamma(cell) != non_gamma(support_filler)) ++differing;
  }
  if (differing > 1) {
    if (why) *why = "condition 1: non-Γ component differs at more than one cell";
    return false;
  }
  if (p > 1) {
    // Off-support cells must all carry one constant value.
    ProductSymbol off = cfg.background_at(1);
    for (int64_t pos = eng.scatter.psi(eng.window_lo);
         pos <= eng.scatter.psi(eng.window_hi); ++pos) {
      if (((pos % p) + p) % p == 0) continue;
      if (cfg.at(pos) != off) {
        if (why) *why = "condition 1: off-support cells are not constant";
        return false;
      }
    }
  }
  return true;
}

SimulationReport run_verify(const TuringMachine& tm, std::span<const SymbolId> input,
                            const CompiledACA& aca, const ScatterMap& scatter,
                            const UpdateSequence& seq, uint64_t tm_steps,
                            uint64_t budget) {
  if (budget < 1) throw std::invalid_argument("verify: budget must be >= 1");
  Engine eng(tm, input, aca, scatter, tm_steps);
  const uint64_t steps = eng.effective_steps();

  SimulationReport report;
  report.construction_id = aca.construction_id;
  report.gap = aca.gap;
  report.sequence_spec = seq.spec();
  report.tm_steps = steps;
  report.tm_halted = eng.oracle.halted;
  report.bound_formula = slowdown_bound_formula(aca.construction_id);
  report.bound_value = slowdown_bound(aca.construction_id, steps, aca.gap);

  Configuration cfg = compiled_initial(aca, input, scatter);
  std::string why;
  report.initial_ok = initial_shape_ok(eng, cfg, input, &why);
  if (!report.initial_ok) {
    report.verdict = Verdict::kFail;
    report.reason = why;
    return report;
  }

  const bool head_encoded = aca.construction_id != 2;
  std::vector<std::optional<uint64_t>> found(steps + 1);
  uint64_t matched = 0;

  // Live marker (ctl 1) positions and fresh (ctl 0) cell count.
  std::set<int64_t> markers;
  size_t fresh_count = 0;
  for (int64_t pos = cfg.lo(); pos <= cfg.hi(); ++pos) {
    if (cfg.at(pos).ctl == kCtlHead) markers.insert(pos);
    if (cfg.at(pos).ctl == kCtlFresh) ++fresh_count;
  }

  // tm times keyed by their marker cell, for cheap candidate lookup.
  std::map<int64_t, std::vector<uint64_t>> by_marker;
  for (uint64_t t = 0; t <= steps; ++t)
    by_marker[eng.scatter.psi(eng.marker_index(t))].push_back(t);

  auto try_match_at = [&](uint64_t aca_time) {
    if (head_encoded) {
      if (markers.size() != 1 || fresh_count != 0) return;
      auto it = by_marker.find(*markers.begin());
      if (it == by_marker.end()) return;
      for (uint64_t t : it->second) {
        if (found[t]) continue;
        if (eng.encoding_matches(cfg, t, markers, fresh_count)) {
          found[t] = aca_time;
          ++matched;
        }
      }
    } else {
      // Tape-only matching with a strictly increasing cursor.
      if (matched <= steps && !found[matched] && eng.tape_matches(cfg, matched)) {
        found[matched] = aca_time;
        ++matched;
      }
    }
  };

  try_match_at(0);
  uint64_t used = 0;
  if (matched <= steps) {
    auto cursor = seq.cursor();
    std::vector<ProductSymbol> scratch;
    for (uint64_t k = 1; k <= budget; ++k) {
      int64_t pos;
      try {
        pos = cursor->next();
      } catch (const SequenceExhausted&) {
        break;  // a finite sequence ran out: treated as budget exhaustion
      }
      ProductSymbol before = cfg.at(pos);
      ProductSymbol after = aca.rule.apply(cfg, pos, scratch);
      used = k;
      if (after != before) {
        cfg.set(pos, after);
        if (before.ctl == kCtlHead) markers.erase(pos);
        if (after.ctl == kCtlHead) markers.insert(pos);
        if (before.ctl == kCtlFresh) --fresh_count;
        if (after.ctl == kCtlFresh) ++fresh_count;
      }
      try_match_at(k);
      if (matched > steps) break;
    }
  }
  report.budget_used = used;

  for (uint64_t t = 0; t <= steps; ++t) {
    if (!found[t]) {
      report.verdict = Verdict::kBudgetExceeded;
      report.first_unmatched = t;
      report.reason = "condition 2: tm time " + std::to_string(t) +
                      " not reached within budget " + std::to_string(budget);
      report.budget_used = budget;
      // Keep the matches found so far.
      for (uint64_t s = 0; s <= steps; ++s)
        if (found[s]) report.matches.push_back({s, *found[s]});
      report.monotone_ok = false;
      return report;
    }
  }

  report.monotone_ok = true;
  for (uint64_t t = 0; t <= steps; ++t) {
    report.matches.push_back({t, *found[t]});
    if (t > 0 && *found[t] <= *found[t - 1]) report.monotone_ok = false;
  }
  if (!report.monotone_ok) {
    report.verdict = Verdict::kFail;
    report.reason = "condition 3: matched times not strictly increasing";
    return report;
  }
  report.verdict = Verdict::kPass;
  report.bound_ok = report.matches.back().aca_time <= report.bound_value;
  return report;
}

}  // namespace

SimulationReport verify_strict(const TuringMachine& tm, std::span<const SymbolId> input,
                               const CompiledACA& aca, const UpdateSequence& seq,
                               uint64_t tm_steps, uint64_t budget) {
  if (aca.construction_id != 1 && aca.construction_id != 2)
    throw std::invalid_argument("verify_strict expects construction 1 or 2");
  return run_verify(tm, input, aca, ScatterMap{1}, seq, tm_steps, budget);
}

SimulationReport verify_scattered(const TuringMachine& tm, std::span<const SymbolId> input,
                                  const CompiledACA& aca, const ScatterMap& scatter,
                                  const UpdateSequence& seq, uint64_t tm_steps,
                                  uint64_t budget) {
  if (aca.construction_id != 3)
    throw std::invalid_argument("verify_scattered expects construction 3");
  if (scatter.gap < 1) throw std::invalid_argument("scatter gap must be >= 1");
  if (scatter.gap > aca.rule.radius)
    throw std::invalid_argument("support gap exceeds the rule radius");
  return run_verify(tm, input, aca, scatter, seq, tm_steps, budget);
}

SlowdownProfile slowdown_profile(const SimulationReport& report) {
  if (report.verdict != Verdict::kPass)
    throw std::invalid_argument("slowdown_profile needs a PASS report");
  SlowdownProfile prof;
  prof.bound_formula = report.bound_formula;
  prof.bound_value = report.bound_value;
  prof.bound_ok = report.bound_ok;
  const auto& m = report.matches;
  for (size_t i = 1; i < m.size(); ++i)
    prof.per_step_cost.push_back(m[i].aca_time - m[i - 1].aca_time);

  // Least-squares fit t' = a t^2 + b t + c via normal equations.
  double s0 = 0, s1 = 0, s2 = 0, s3 = 0, s4 = 0, y0 = 0, y1 = 0, y2 = 0;
  for (const MatchEntry& e : m) {
    double t = double(e.tm_time), y = double(e.aca_time);
    double t2 = t * t;
    s0 += 1;
    s1 += t;
    s2 += t2;
    s3 += t2 * t;
    s4 += t2 * t2;
    y0 += y;
    y1 += t * y;
    y2 += t2 * y;
  }
  double det = s4 * (s2 * s0 - s1 * s1) - s3 * (s3 * s0 - s1 * s2) +
               s2 * (s3 * s1 - s2 * s2);
  if (m.size() >= 3 && det != 0.0) {
    double da = y2 * (s2 * s0 - s1 * s1) - s3 * (y1 * s0 - s1 * y0) +
                s2 * (y1 * s1 - s2 * y0);
    prof.fitted_leading_coefficient = da / det;
  }
  return prof;
}

ControlInvariantChecker::ControlInvariantChecker(const Configuration& initial) {
  for (const ProductSymbol& bg : initial.background())
    if (bg.ctl == kCtlFresh || bg.ctl == kCtlHead) ok_ = false;
  if (!initial.empty_window())
    for (int64_t pos = initial.lo(); pos <= initial.hi(); ++pos)
      note(initial.at(pos).ctl, pos, +1);
  recheck();
}

void ControlInvariantChecker::note(uint8_t ctl, int64_t pos, int delta) {
  if (ctl == kCtlFresh) {
    fresh_count_ += delta;
    if (delta > 0) fresh_pos_ = pos;
  } else if (ctl == kCtlHead) {
    head_count_ += delta;
    if (delta > 0) head_pos_ = pos;
  }
}

void ControlInvariantChecker::recheck() {
  bool counts_ok = (fresh_count_ == 0 && head_count_ == 1) ||
                   (fresh_count_ == 1 && head_count_ == 1) ||
                   (fresh_count_ == 1 && head_count_ == 0);
  if (!counts_ok) ok_ = false;
  if (fresh_count_ == 1 && head_count_ == 1 &&
      (fresh_pos_ > head_pos_ ? fresh_pos_ - head_pos_ : head_pos_ - fresh_pos_) != 1)
    ok_ = false;
}

bool ControlInvariantChecker::on_update(int64_t pos, const ProductSymbol& before,
                                        const ProductSymbol& after) {
  if (before != after) {
    note(before.ctl, pos, -1);
    note(after.ctl, pos, +1);
    recheck();
  }
  return ok_;
}

bool check_construction1_control_invariant(const ACATrace& trace) {
  ControlInvariantChecker checker(trace.initial);
  if (!checker.ok()) return false;
  for (const UpdateRecord& u : trace.updates)
    if (!checker.on_update(u.pos, u.before, u.after)) return false;
  return true;
}

nlohmann::json report_to_json(const SimulationReport& report) {
  nlohmann::json j;
  j["verdict"] = verdict_name(report.verdict);
  nlohmann::json matches = nlohmann::json::array();
  for (const MatchEntry& m : report.matches)
    matches.push_back(nlohmann::json::array({m.tm_time, m.aca_time}));
  j["matches"] = matches;
  j["budget_used"] = report.budget_used;
  j["bound"] = {{"formula", report.bound_formula},
                {"value", report.bound_value},
                {"ok", report.bound_ok}};
  j["initial_ok"] = report.initial_ok;
  j["monotone_ok"] = report.monotone_ok;
  j["tm_steps"] = report.tm_steps;
  j["tm_halted"] = report.tm_halted;
  j["construction"] = report.construction_id;
  if (report.construction_id == 3) j["gap"] = report.gap;
  j["sequence"] = report.sequence_spec;
  if (report.first_unmatched) j["first_unmatched"] = *report.first_unmatched;
  if (!report.reason.empty()) j["reason"] = report.reason;
  return j;
}

}  // namespace acasim
