#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>

#include "acasim/constructions.hpp"
#include "acasim/sequences.hpp"
#include "acasim/verifier.hpp"

using namespace acasim;

namespace {

TuringMachine zig() { return zigzag_machine(); }

std::vector<SymbolId> word(const TuringMachine& tm, const std::string& w) {
  return w.empty() ? std::vector<SymbolId>{} : tm.parse_word(w);
}

ProductSymbol sym(const TuringMachine& tm, const std::string& g, const std::string& q,
                  Move d, uint8_t ctl) {
  return {*tm.find_symbol(g), *tm.find_state(q), d, ctl};
}

ProductSymbol apply3(const CompiledACA& aca, ProductSymbol u, ProductSymbol v,
                     ProductSymbol z) {
  std::vector<ProductSymbol> n = {u, v, z};
  return aca.rule.table(n);
}

}  // namespace

TEST_CASE("compiled alphabets carry the construction's control values") {
  TuringMachine tm = zig();
  CHECK(construction1(tm).ctl_values == std::vector<uint8_t>{0, 1, 2});
  CHECK(construction2(tm).ctl_values == std::vector<uint8_t>{1, 2});
  CHECK(construction3(tm, 2).ctl_values == std::vector<uint8_t>{0, 1, 2, 3});
  CHECK(construction1(tm).alphabet_size() == 36);
  CHECK(construction1(tm).rule.radius == 1);
  CHECK(construction2(tm).rule.radius == 1);
  CHECK(construction3(tm, 4).rule.radius == 4);
  CHECK_THROWS_AS(construction3(tm, 0), std::invalid_argument);
  CHECK_THROWS_AS(compile_construction(tm, 4), std::invalid_argument);
}

TEST_CASE("head-tracking rule: transition fire writes the table's output") {
  TuringMachine tm = zig();
  CompiledACA aca = construction1(tm);
  ProductSymbol marker = sym(tm, "_", "qR", Move::R, kCtlHead);
  ProductSymbol settled = sym(tm, "_", "qR", Move::R, kCtlSettled);
  // Any right neighbor that is not a facing marker lets the fire happen.
  for (ProductSymbol z : {settled, sym(tm, "1", "qL", Move::L, kCtlSettled),
                          sym(tm, "0", "qL", Move::R, kCtlHead),
                          sym(tm, "0", "qL", Move::L, kCtlFresh)}) {
    ProductSymbol out = apply3(aca, marker, settled, z);
    CHECK(out == sym(tm, "1", "qL", Move::L, kCtlFresh));
  }
  // A facing marker on the other side suppresses both fires.
  ProductSymbol facing = sym(tm, "0", "qL", Move::L, kCtlHead);
  CHECK(apply3(aca, marker, settled, facing) == settled);
}

TEST_CASE("head-tracking rule: promote rewrites only the control value") {
  TuringMachine tm = zig();
  CompiledACA aca = construction1(tm);
  ProductSymbol fresh = sym(tm, "1", "qL", Move::L, kCtlFresh);
  ProductSymbol demoted = sym(tm, "_", "qR", Move::R, kCtlSettled);
  ProductSymbol out = apply3(aca, demoted, fresh, sym(tm, "0", "qR", Move::R, kCtlSettled));
  CHECK(out == sym(tm, "1", "qL", Move::L, kCtlHead));
  // Promotion waits until no marker is adjacent.
  ProductSymbol marker = sym(tm, "_", "qR", Move::R, kCtlHead);
  CHECK(apply3(aca, marker, fresh, demoted) == fresh);
}

TEST_CASE("head-tracking rule: all-settled neighborhoods are inert") {
  TuringMachine tm = zig();
  CompiledACA aca = construction1(tm);
  ProductSymbol a = sym(tm, "0", "qL", Move::L, kCtlSettled);
  ProductSymbol b = sym(tm, "1", "qR", Move::R, kCtlSettled);
  CHECK(apply3(aca, a, b, a) == b);
  CHECK(apply3(aca, b, a, b) == a);
}

TEST_CASE("start configuration shape") {
  TuringMachine tm = zig();
  Configuration cfg = construction1_initial(tm, word(tm, "01"));
  CHECK(cfg.at(-1) == sym(tm, "_", "qR", Move::R, kCtlHead));
  CHECK(cfg.at(0) == sym(tm, "0", "qR", Move::R, kCtlSettled));
  CHECK(cfg.at(1) == sym(tm, "1", "qR", Move::R, kCtlSettled));
  CHECK(cfg.background_at(12) == sym(tm, "_", "qR", Move::R, kCtlSettled));

  Configuration empty = construction1_initial(tm, {});
  CHECK(empty.lo() == -1);
  CHECK(empty.hi() == -1);

  // The non-Γ component is constant except at the marker cell.
  int differing = 0;
  for (int64_t i = -4; i <= 5; ++i) {
    ProductSymbol c = cfg.at(i);
    if (std::tuple(c.state, c.dir, c.ctl) !=
        std::tuple(StateId(0), Move::R, kCtlSettled))
      ++differing;
  }
  CHECK(differing == 1);

  SymbolId blank = tm.blank();
  std::vector<SymbolId> bad = {blank};
  CHECK_THROWS_AS(construction1_initial(tm, bad), std::invalid_argument);
}

TEST_CASE("headless rule fires into the neighbor and demotes by default") {
  const TuringMachine& inc = builtin_machine("unary-inc");
  CompiledACA aca = construction2(inc);
  Configuration cfg = compiled_initial(aca, word(inc, "1"));

  // Update cell 0: the marker fires and moves in one go.
  Configuration fired = async_step(cfg, aca.rule, 0);
  ProductSymbol cell0 = fired.at(0);
  CHECK(cell0.ctl == kCtlHead);
  CHECK(cell0.gamma == *inc.find_symbol("1"));
  CHECK(cell0.dir == Move::R);
  CHECK(fired.at(-1).ctl == kCtlHead);  // old marker still present

  // Updating the old marker finds no matching clause: the otherwise clause
  // demotes it to settled.
  Configuration demoted = async_step(fired, aca.rule, -1);
  CHECK(demoted.at(-1) == sym(inc, "_", "scan", Move::R, kCtlSettled));

  // A settled cell with no marker neighbor keeps its value.
  Configuration idle = async_step(demoted, aca.rule, 5);
  CHECK(idle == demoted);
}

TEST_CASE("scattered rule at gap 1 equals the head-tracking rule") {
  TuringMachine tm = zig();
  CompiledACA dense = construction1(tm);
  CompiledACA scat = construction3(tm, 1);
  std::vector<ProductSymbol> alphabet = enumerate_alphabet(dense);  // ctl 0..2 only
  REQUIRE(alphabet.size() == 36);
  std::vector<ProductSymbol> n(3);
  for (const ProductSymbol& u : alphabet)
    for (const ProductSymbol& v : alphabet)
      for (const ProductSymbol& z : alphabet) {
        n = {u, v, z};
        CHECK(dense.rule.table(n) == scat.rule.table(n));
      }
}

TEST_CASE("scattered rule ignores inactive flanks and reaches over them") {
  TuringMachine tm = zig();
  CompiledACA aca = construction3(tm, 2);
  ProductSymbol inact = sym(tm, "_", "qR", Move::R, kCtlInactive);
  ProductSymbol marker = sym(tm, "_", "qR", Move::R, kCtlHead);
  ProductSymbol settled = sym(tm, "_", "qR", Move::R, kCtlSettled);

  // Fire reaches across an inactive cell to the nearest marker.
  std::vector<ProductSymbol> n = {marker, inact, settled, inact, settled};
  ProductSymbol out = aca.rule.table(n);
  CHECK(out == sym(tm, "1", "qL", Move::L, kCtlFresh));

  // All-inactive flanks leave the centre untouched whatever it is.
  for (ProductSymbol centre : {settled, marker, sym(tm, "1", "qL", Move::L, kCtlFresh)}) {
    std::vector<ProductSymbol> quiet = {inact, inact, centre, inact, inact};
    CHECK(aca.rule.table(quiet) == centre);
  }

  // An inactive centre never changes.
  std::vector<ProductSymbol> inert = {marker, settled, inact, settled, marker};
  CHECK(aca.rule.table(inert) == inact);
}

TEST_CASE("scattered start configuration spreads the input over the support") {
  TuringMachine tm = zig();
  ScatterMap psi{2};
  Configuration cfg = construction3_initial(tm, word(tm, "1"), psi);
  CHECK(cfg.at(-2) == sym(tm, "_", "qR", Move::R, kCtlHead));
  CHECK(cfg.at(0) == sym(tm, "1", "qR", Move::R, kCtlSettled));
  CHECK(cfg.at(-1).ctl == kCtlInactive);
  CHECK(cfg.at(1).ctl == kCtlInactive);
  CHECK(cfg.at(7).ctl == kCtlInactive);
  CHECK(cfg.at(8).ctl == kCtlSettled);

  // Gap 1 reduces to the dense start: no inactive cells anywhere.
  Configuration dense = construction3_initial(tm, word(tm, "1"), ScatterMap{1});
  CHECK(dense == construction1_initial(tm, word(tm, "1")));

  // Reading through the support map reproduces the dense projections.
  Configuration base = construction1_initial(tm, word(tm, "1"));
  for (int64_t i = -3; i <= 4; ++i) CHECK(cfg.at(psi.psi(i)) == base.at(i));
}

TEST_CASE("clause exclusivity holds over the whole alphabet cube") {
  TuringMachine tm = zig();
  CompiledACA aca = construction1(tm);
  std::vector<ProductSymbol> alphabet = enumerate_alphabet(aca);
  std::vector<ProductSymbol> n(3);
  int double_matches = 0;
  for (const ProductSymbol& u : alphabet)
    for (const ProductSymbol& v : alphabet)
      for (const ProductSymbol& z : alphabet) {
        n = {u, v, z};
        unsigned mask = clause_match_mask(aca, n);
        if (mask & (mask - 1)) ++double_matches;
      }
  CHECK(double_matches == 0);
  CHECK(clause_names(1).size() == 5);
}

TEST_CASE("the control pair (fresh,marker) cycles through its three phases") {
  TuringMachine tm = zig();
  CompiledACA aca = construction1(tm);
  Configuration cfg = compiled_initial(aca, word(tm, "01"));
  for (uint64_t seed : {3ull, 4ull}) {
    Configuration state = cfg;
    auto cur = random_walk_sequence(seed).cursor();
    ControlInvariantChecker checker(state);
    REQUIRE(checker.ok());
    evolve_visit(state, aca.rule, *cur, 20000, [&](const UpdateRecord& u) {
      CHECK(checker.on_update(u.pos, u.before, u.after));
    });
  }
}

TEST_CASE("the tape component changes only when a transition fires") {
  TuringMachine tm = zig();
  CompiledACA aca = construction1(tm);
  Configuration cfg = compiled_initial(aca, word(tm, ""));
  ACATrace trace = evolve(cfg, aca.rule, quadratic_universal(), 2000);
  for (const UpdateRecord& u : trace.updates) {
    if (u.before.gamma != u.after.gamma) {
      // Only a fire writes the tape: the written cell becomes fresh.
      CHECK(u.after.ctl == kCtlFresh);
      CHECK(u.before.ctl == kCtlSettled);
    }
  }
}

TEST_CASE("scattered evolution never touches inactive cells") {
  TuringMachine tm = zig();
  CompiledACA aca = construction3(tm, 3);
  Configuration cfg = compiled_initial(aca, word(tm, "1"));
  ACATrace trace = evolve(cfg, aca.rule, scattered_sequence(3), 3000);
  for (const UpdateRecord& u : trace.updates) {
    CHECK(u.before.ctl != kCtlInactive);  // the canonical sequence stays on support
    CHECK(u.after.ctl != kCtlInactive);
  }
  // Off-support cells still inactive at the end.
  for (int64_t pos = trace.final.lo(); pos <= trace.final.hi(); ++pos)
    if (((pos % 3) + 3) % 3 != 0) CHECK(trace.final.at(pos).ctl == kCtlInactive);
}

TEST_CASE("rule manifest lists the alphabet and conformance vectors") {
  TuringMachine tm = zig();
  nlohmann::json j = rule_manifest(construction1(tm), 8);
  CHECK(j["machine"] == "zigzag");
  CHECK(j["construction"] == 1);
  CHECK(j["radius"] == 1);
  CHECK(j["alphabet"]["ctl"] == std::vector<int>{0, 1, 2});
  CHECK(j["alphabet_size"] == 36);
  CHECK(j["test_vectors"].size() == 8);
  for (const auto& vec : j["test_vectors"]) {
    CHECK(vec["neighborhood"].size() == 3);
    CHECK(vec["output"].size() == 4);
  }
  // Deterministic: same manifest twice.
  CHECK(rule_manifest(construction1(tm), 8) == j);

  nlohmann::json j3 = rule_manifest(construction3(tm, 2), 4);
  CHECK(j3["radius"] == 2);
  CHECK(j3["gap"] == 2);
  for (const auto& vec : j3["test_vectors"]) CHECK(vec["neighborhood"].size() == 5);
}
