#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>

#include "acasim/aca.hpp"
#include "acasim/constructions.hpp"
#include "acasim/render.hpp"
#include "acasim/sequences.hpp"

using namespace acasim;

namespace {

TuringMachine zig() { return zigzag_machine(); }

std::vector<SymbolId> word(const TuringMachine& tm, const std::string& w) {
  return w.empty() ? std::vector<SymbolId>{} : tm.parse_word(w);
}

}  // namespace

TEST_CASE("reads outside the window return the background") {
  TuringMachine tm = zig();
  Configuration cfg = construction1_initial(tm, word(tm, "01"));
  CHECK(cfg.lo() == -1);
  CHECK(cfg.hi() == 1);
  ProductSymbol far = cfg.at(1000);
  CHECK(far.gamma == tm.blank());
  CHECK(far.ctl == kCtlSettled);
  CHECK(cfg.at(-1).ctl == kCtlHead);
}

TEST_CASE("an update far outside the window leaves the configuration alone") {
  TuringMachine tm = zig();
  CompiledACA aca = construction1(tm);
  Configuration cfg = compiled_initial(aca, word(tm, ""));
  Configuration after = async_step(cfg, aca.rule, 500);
  CHECK(after == cfg);
  CHECK(after.hi() == cfg.hi());  // window did not grow
}

TEST_CASE("first transition fires at cell 0") {
  TuringMachine tm = zig();
  CompiledACA aca = construction1(tm);
  Configuration cfg = compiled_initial(aca, word(tm, ""));
  Configuration after = async_step(cfg, aca.rule, 0);
  ProductSymbol cell = after.at(0);
  CHECK(cell.gamma == *tm.find_symbol("1"));
  CHECK(cell.state == *tm.find_state("qL"));
  CHECK(cell.dir == Move::L);
  CHECK(cell.ctl == kCtlFresh);
  CHECK(after.at(-1) == cfg.at(-1));
}

TEST_CASE("quiescent cells are fixed points of the update") {
  TuringMachine tm = zig();
  CompiledACA aca = construction1(tm);
  Configuration cfg = compiled_initial(aca, word(tm, "01"));
  Configuration after = async_step(cfg, aca.rule, 1);  // settled, marker not adjacent
  CHECK(after == cfg);
}

TEST_CASE("evolution records replayable deltas") {
  TuringMachine tm = zig();
  CompiledACA aca = construction1(tm);
  Configuration cfg = compiled_initial(aca, word(tm, ""));
  UpdateSequence seq = quadratic_universal();

  ACATrace none = evolve(cfg, aca.rule, seq, 0);
  CHECK(none.final == none.initial);

  ACATrace trace = evolve(cfg, aca.rule, seq, 3);
  REQUIRE(trace.updates.size() == 3);
  std::vector<uint8_t> ctl_cell0, ctl_cellm1;
  Configuration replay = trace.initial;
  for (const UpdateRecord& u : trace.updates) {
    replay.set(u.pos, u.after);
    ctl_cell0.push_back(replay.at(0).ctl);
    ctl_cellm1.push_back(replay.at(-1).ctl);
  }
  CHECK(replay == trace.final);
  CHECK(ctl_cell0 == std::vector<uint8_t>{0, 0, 1});
  CHECK(ctl_cellm1 == std::vector<uint8_t>{1, 2, 2});
}

TEST_CASE("evolving a prefix then the rest equals evolving the whole") {
  TuringMachine tm = zig();
  CompiledACA aca = construction1(tm);
  Configuration cfg = compiled_initial(aca, word(tm, "1"));
  UpdateSequence seq = quadratic_universal();
  ACATrace whole = evolve(cfg, aca.rule, seq, 40);
  ACATrace first = evolve(cfg, aca.rule, seq, 25);
  Configuration rest = first.final;
  auto cur = seq.cursor(25);
  evolve_visit(rest, aca.rule, *cur, 15, nullptr);
  CHECK(rest == whole.final);
}

TEST_CASE("replaying the same evolution is bit-identical") {
  TuringMachine tm = zig();
  CompiledACA aca = construction1(tm);
  Configuration cfg = compiled_initial(aca, word(tm, "10"));
  UpdateSequence seq = random_walk_sequence(7);
  ACATrace a = evolve(cfg, aca.rule, seq, 500);
  ACATrace b = evolve(cfg, aca.rule, seq, 500);
  REQUIRE(a.updates.size() == b.updates.size());
  for (size_t i = 0; i < a.updates.size(); ++i) {
    CHECK(a.updates[i].pos == b.updates[i].pos);
    CHECK(a.updates[i].before == b.updates[i].before);
    CHECK(a.updates[i].after == b.updates[i].after);
  }
  CHECK(a.final == b.final);
}

TEST_CASE("synchronous step maps background to background") {
  TuringMachine tm = zig();
  CompiledACA aca = construction1(tm);
  Configuration cfg = compiled_initial(aca, word(tm, ""));
  Configuration all_bg(0, {}, {cfg.background_at(0)});
  CHECK(sync_step(all_bg, aca.rule) == all_bg);
}

TEST_CASE("synchronous step on the start configuration changes only cell 0") {
  TuringMachine tm = zig();
  CompiledACA aca = construction1(tm);
  Configuration cfg = compiled_initial(aca, word(tm, ""));
  Configuration synced = sync_step(cfg, aca.rule);
  for (int64_t i = -5; i <= 5; ++i) {
    if (i == 0) continue;
    CHECK(synced.at(i) == cfg.at(i));
  }
  CHECK(synced.at(0).ctl == kCtlFresh);

  // With disjoint active neighborhoods the synchronous step equals the
  // composition of the one-cell updates over the window.
  Configuration composed = cfg;
  for (int64_t i = cfg.lo() - 1; i <= cfg.hi() + 1; ++i) {
    Configuration stepped = async_step(cfg, aca.rule, i);
    if (!(stepped == cfg)) composed.set(i, stepped.at(i));
  }
  CHECK(composed == synced);
}

TEST_CASE("projections select one component over a range") {
  TuringMachine tm = zig();
  Configuration cfg = construction1_initial(tm, word(tm, "01"));
  SymbolId b = tm.blank(), s0 = *tm.find_symbol("0"), s1 = *tm.find_symbol("1");

  std::vector<int> gammas = project(cfg, Component::Gamma, -2, 2);
  CHECK(gammas == std::vector<int>{b, b, s0, s1, b});
  std::vector<int> ctls = project(cfg, Component::Ctl, -2, 2);
  CHECK(ctls == std::vector<int>{2, 1, 2, 2, 2});
  std::vector<int> gam_flank = project(cfg, Component::Gamma, -1, 2);
  CHECK(gam_flank == std::vector<int>{b, s0, s1, b});

  std::vector<int> far = project(cfg, Component::Ctl, 50, 55);
  CHECK(far == std::vector<int>(6, kCtlSettled));
}

TEST_CASE("reindex reads through a strictly increasing map") {
  TuringMachine tm = zig();
  ScatterMap psi{2};
  Configuration cfg = construction3_initial(tm, word(tm, "1"), psi);

  auto identity = [](int64_t i) { return i; };
  std::vector<ProductSymbol> direct = reindex(cfg, identity, -2, 2);
  for (int64_t i = -2; i <= 2; ++i) CHECK(direct[size_t(i + 2)] == cfg.at(i));

  std::vector<ProductSymbol> support =
      reindex(cfg, [&](int64_t i) { return psi.psi(i); }, -2, 2);
  for (const ProductSymbol& s : support) CHECK(s.ctl != kCtlInactive);
  CHECK(support[1].ctl == kCtlHead);   // psi(-1)
  CHECK(support[2].gamma == *tm.find_symbol("1"));

  CHECK_THROWS_AS(reindex(cfg, [](int64_t i) { return -i; }, 0, 3),
                  std::invalid_argument);

  // reindex then project equals project componentwise through the map.
  std::vector<int> via_reindex;
  for (const ProductSymbol& s : support) via_reindex.push_back(s.ctl);
  std::vector<int> direct_ctl;
  for (int64_t i = -2; i <= 2; ++i) direct_ctl.push_back(cfg.at(psi.psi(i)).ctl);
  CHECK(via_reindex == direct_ctl);
}

TEST_CASE("rule output depends only on the neighborhood") {
  TuringMachine tm = zig();
  CompiledACA aca = construction1(tm);
  Configuration cfg = compiled_initial(aca, word(tm, "0110"));
  std::vector<ProductSymbol> alphabet = enumerate_alphabet(aca);
  std::vector<ProductSymbol> scratch;
  for (uint64_t trial = 0; trial < 200; ++trial) {
    int64_t pos = int64_t(mix64(11, trial * 3) % 9) - 4;
    ProductSymbol base = aca.rule.apply(cfg, pos, scratch);
    Configuration mutated = cfg;
    // Mutate two cells outside the radius-1 neighborhood of pos.
    for (int k = 0; k < 2; ++k) {
      int64_t off = 2 + int64_t(mix64(11, trial * 3 + 1 + k) % 7);
      int64_t cell = pos + (k == 0 ? off : -off);
      mutated.set(cell, alphabet[mix64(11, trial * 5 + k) % alphabet.size()]);
    }
    CHECK(aca.rule.apply(mutated, pos, scratch) == base);
  }
}

TEST_CASE("every shipped rule is quiescent on its background") {
  TuringMachine tm = zig();
  for (int id : {1, 2}) {
    CompiledACA aca = compile_construction(tm, id);
    Configuration cfg = compiled_initial(aca, word(tm, "01"));
    CHECK(background_closed(aca.rule, cfg));
  }
  for (int64_t p : {1, 2, 3}) {
    CompiledACA aca = construction3(tm, p);
    Configuration cfg = compiled_initial(aca, word(tm, "01"));
    CHECK(background_closed(aca.rule, cfg));
  }
}

TEST_CASE("trace JSON round-trips") {
  TuringMachine tm = zig();
  CompiledACA aca = construction1(tm);
  Configuration cfg = compiled_initial(aca, word(tm, "1"));
  ACATrace trace = evolve(cfg, aca.rule, quadratic_universal(), 25);
  nlohmann::json j = trace_to_json(trace, tm);
  ACATrace back = trace_from_json(j, tm);
  CHECK(back.initial == trace.initial);
  CHECK(back.final == trace.final);
  REQUIRE(back.updates.size() == trace.updates.size());
  CHECK(trace_to_json(back, tm) == j);

  CompiledACA scat = construction3(tm, 3);
  Configuration scfg = compiled_initial(scat, word(tm, "1"));
  ACATrace strace = evolve(scfg, scat.rule, scattered_sequence(3), 40);
  nlohmann::json sj = trace_to_json(strace, tm);
  CHECK(sj.at("background_period") == 3);
  ACATrace sback = trace_from_json(sj, tm);
  CHECK(sback.final == strace.final);
}

TEST_CASE("ascii rendering brackets the marker and dims inactive cells") {
  TuringMachine tm = zig();
  CompiledACA aca = construction1(tm);
  Configuration cfg = compiled_initial(aca, word(tm, ""));
  ACATrace trace =
      evolve(cfg, aca.rule, UpdateSequence::explicit_list({0, -1, 0}), 3);
  RenderOptions opts;
  opts.window_lo = -1;
  opts.window_hi = 0;
  std::string art = render_ascii(trace, tm, opts);
  const char* expected =
      "cells -1..0\n"
      "t'=0          |[_] _ |\n"
      "t'=1       @0 |[_] 1 |\n"
      "t'=2      @-1 | _  1 |\n"
      "t'=3       @0 | _ [1]|\n";
  CHECK(art == expected);

  CompiledACA scat = construction3(tm, 2);
  Configuration scfg = compiled_initial(scat, word(tm, ""));
  ACATrace strace = evolve(scfg, scat.rule, scattered_sequence(2), 0);
  std::string sart = render_ascii(strace, tm, {});
  CHECK(sart.find('.') != std::string::npos);  // inactive cells dimmed
}
