#include "acasim/constructions.hpp"

#include <nlohmann/json.hpp>
#include <stdexcept>

namespace acasim {

namespace {

bool is_marker(const ProductSymbol& c, Move dir) {
  return c.ctl == kCtlHead && c.dir == dir;
}

// Head-tracking radius-1 clause table. The head marker (ctl 1) fires the
// transition into its neighbor (ctl 2 -> ctl 0 with the written symbol), is
// then demoted (ctl 1 -> 2), and finally the fresh cell is promoted to the
// new marker (ctl 0 -> 1). Guards keep the clauses pairwise exclusive and
// delay promotion until the old marker is gone; on every configuration
// reachable from a compiled start the guards are vacuous.
struct Clauses1 {
  const TuringMachine* tm;

  // Returns clause index (0-based, 5 = otherwise) and writes the output.
  int eval(const ProductSymbol& u, const ProductSymbol& v, const ProductSymbol& z,
           ProductSymbol& out) const {
    if (is_marker(u, Move::R) && v.ctl == kCtlSettled && !is_marker(z, Move::L)) {
      const TmAction& a = tm->action(u.state, v.gamma);
      out = {a.symbol, a.state, a.move, kCtlFresh};
      return 0;  // fire right
    }
    if (is_marker(z, Move::L) && v.ctl == kCtlSettled && !is_marker(u, Move::R)) {
      const TmAction& a = tm->action(z.state, v.gamma);
      out = {a.symbol, a.state, a.move, kCtlFresh};
      return 1;  // fire left
    }
    if (is_marker(v, Move::R) && z.ctl == kCtlFresh) {
      out = {v.gamma, v.state, Move::R, kCtlSettled};
      return 2;  // demote right-moving marker
    }
    if (is_marker(v, Move::L) && u.ctl == kCtlFresh) {
      out = {v.gamma, v.state, Move::L, kCtlSettled};
      return 3;  // demote left-moving marker
    }
    if (v.ctl == kCtlFresh && u.ctl != kCtlHead && z.ctl != kCtlHead &&
        ((u.ctl == kCtlSettled && u.dir == Move::R) ||
         (z.ctl == kCtlSettled && z.dir == Move::L))) {
      out = {v.gamma, v.state, v.dir, kCtlHead};
      return 4;  // promote fresh cell to marker
    }
    out = v;
    return 5;
  }
};

// Headless radius-1 table: a fire moves the marker into the neighbor in one
// go; stale markers are cleaned up by the demoting otherwise-clause. Two
// markers may transiently coexist, so no single-marker invariant holds here.
struct Clauses2 {
  const TuringMachine* tm;

  int eval(const ProductSymbol& u, const ProductSymbol& v, const ProductSymbol& z,
           ProductSymbol& out) const {
    if (is_marker(u, Move::R) && z.ctl != kCtlHead) {
      const TmAction& a = tm->action(u.state, v.gamma);
      out = {a.symbol, a.state, a.move, kCtlHead};
      return 0;
    }
    if (is_marker(z, Move::L) && u.ctl != kCtlHead) {
      const TmAction& a = tm->action(z.state, v.gamma);
      out = {a.symbol, a.state, a.move, kCtlHead};
      return 1;
    }
    out = {v.gamma, v.state, v.dir, kCtlSettled};
    return 2;  // otherwise (demotes)
  }
};

// Scattered radius-r table: same cycle as the head-tracking table, but each
// clause's relevant neighbor is the nearest cell on the proper side carrying
// the required ctl value; inactive cells (ctl 3) never match anything.
struct Clauses3 {
  const TuringMachine* tm;
  int64_t radius;

  // nbhd has 2*radius+1 entries, centre at index radius.
  int eval(std::span<const ProductSymbol> nbhd, ProductSymbol& out) const {
    const ProductSymbol& v = nbhd[size_t(radius)];
    auto nearest_left = [&](uint8_t ctl) -> const ProductSymbol* {
      for (int64_t j = radius - 1; j >= 0; --j)
        if (nbhd[size_t(j)].ctl == ctl) return &nbhd[size_t(j)];
      return nullptr;
    };
    auto nearest_right = [&](uint8_t ctl) -> const ProductSymbol* {
      for (int64_t j = radius + 1; j <= 2 * radius; ++j)
        if (nbhd[size_t(j)].ctl == ctl) return &nbhd[size_t(j)];
      return nullptr;
    };
    const ProductSymbol* lm = nearest_left(kCtlHead);
    const ProductSymbol* rm = nearest_right(kCtlHead);
    if (lm && lm->dir == Move::R && v.ctl == kCtlSettled && !(rm && rm->dir == Move::L)) {
      const TmAction& a = tm->action(lm->state, v.gamma);
      out = {a.symbol, a.state, a.move, kCtlFresh};
      return 0;
    }
    if (rm && rm->dir == Move::L && v.ctl == kCtlSettled && !(lm && lm->dir == Move::R)) {
      const TmAction& a = tm->action(rm->state, v.gamma);
      out = {a.symbol, a.state, a.move, kCtlFresh};
      return 1;
    }
    if (is_marker(v, Move::R) && nearest_right(kCtlFresh)) {
      out = {v.gamma, v.state, Move::R, kCtlSettled};
      return 2;
    }
    if (is_marker(v, Move::L) && nearest_left(kCtlFresh)) {
      out = {v.gamma, v.state, Move::L, kCtlSettled};
      return 3;
    }
    if (v.ctl == kCtlFresh && !lm && !rm) {
      const ProductSymbol* ls = nearest_left(kCtlSettled);
      const ProductSymbol* rs = nearest_right(kCtlSettled);
      if ((ls && ls->dir == Move::R) || (rs && rs->dir == Move::L)) {
        out = {v.gamma, v.state, v.dir, kCtlHead};
        return 4;
      }
    }
    out = v;
    return 5;
  }
};

ProductSymbol settled_filler(const TuringMachine& tm) {
  // Fixed arbitrary fillers: first declared state, movement R.
  return {tm.blank(), 0, Move::R, kCtlSettled};
}

void check_input(const TuringMachine& tm, std::span<const SymbolId> input) {
  for (SymbolId s : input)
    if (!tm.is_input_symbol(s))
      throw std::invalid_argument("symbol '" + tm.symbol_name(s) +
                                  "' not in the input alphabet");
}

void assert_background_closed(const CompiledACA& aca, const Configuration& cfg) {
  if (!background_closed(aca.rule, cfg))
    throw std::logic_error("rule is not quiescent on the background");
}

}  // namespace

CompiledACA construction1(const TuringMachine& tm) {
  CompiledACA aca;
  aca.construction_id = 1;
  aca.gap = 1;
  aca.machine = std::make_shared<TuringMachine>(tm);
  aca.ctl_values = {0, 1, 2};
  Clauses1 clauses{aca.machine.get()};
  aca.rule.radius = 1;
  aca.rule.table = [clauses](std::span<const ProductSymbol> n) {
    ProductSymbol out;
    clauses.eval(n[0], n[1], n[2], out);
    return out;
  };
  return aca;
}

CompiledACA construction2(const TuringMachine& tm) {
  CompiledACA aca;
  aca.construction_id = 2;
  aca.gap = 1;
  aca.machine = std::make_shared<TuringMachine>(tm);
  aca.ctl_values = {1, 2};
  Clauses2 clauses{aca.machine.get()};
  aca.rule.radius = 1;
  aca.rule.table = [clauses](std::span<const ProductSymbol> n) {
    ProductSymbol out;
    clauses.eval(n[0], n[1], n[2], out);
    return out;
  };
  return aca;
}

CompiledACA construction3(const TuringMachine& tm, int64_t gap) {
  if (gap < 1) throw std::invalid_argument("construction3: gap must be >= 1");
  CompiledACA aca;
  aca.construction_id = 3;
  aca.gap = gap;
  aca.machine = std::make_shared<TuringMachine>(tm);
  aca.ctl_values = {0, 1, 2, 3};
  Clauses3 clauses{aca.machine.get(), gap};
  aca.rule.radius = gap;
  aca.rule.table = [clauses](std::span<const ProductSymbol> n) {
    ProductSymbol out;
    clauses.eval(n, out);
    return out;
  };
  return aca;
}

CompiledACA compile_construction(const TuringMachine& tm, int construction_id,
                                 int64_t gap) {
  switch (construction_id) {
    case 1: return construction1(tm);
    case 2: return construction2(tm);
    case 3: return construction3(tm, gap);
    default: throw std::invalid_argument("construction id must be 1, 2 or 3");
  }
}

namespace {

Configuration dense_initial(const TuringMachine& tm, std::span<const SymbolId> input) {
  check_input(tm, input);
  ProductSymbol bg = settled_filler(tm);
  std::vector<ProductSymbol> cells;
  cells.push_back({tm.blank(), tm.initial(), Move::R, kCtlHead});  // cell -1
  for (SymbolId s : input) cells.push_back({s, 0, Move::R, kCtlSettled});
  return Configuration(-1, std::move(cells), {bg});
}

}  // namespace

Configuration construction1_initial(const TuringMachine& tm,
                                    std::span<const SymbolId> input) {
  return dense_initial(tm, input);
}

Configuration construction2_initial(const TuringMachine& tm,
                                    std::span<const SymbolId> input) {
  return dense_initial(tm, input);
}

Configuration construction3_initial(const TuringMachine& tm,
                                    std::span<const SymbolId> input,
                                    const ScatterMap& scatter) {
  if (scatter.gap < 1) throw std::invalid_argument("scatter gap must be >= 1");
  check_input(tm, input);
  const int64_t p = scatter.gap;
  const ProductSymbol support = settled_filler(tm);
  ProductSymbol inactive = support;
  inactive.ctl = kCtlInactive;
  // Background repeats with period p: support cells on p·ℤ, inactive between.
  std::vector<ProductSymbol> bg;
  bg.push_back(support);
  for (int64_t i = 1; i < p; ++i) bg.push_back(inactive);

  Configuration cfg(0, {}, std::move(bg));
  cfg.set(scatter.psi(-1), {tm.blank(), tm.initial(), Move::R, kCtlHead});
  for (size_t i = 0; i < input.size(); ++i)
    cfg.set(scatter.psi(int64_t(i)), {input[i], 0, Move::R, kCtlSettled});
  return cfg;
}

Configuration compiled_initial(const CompiledACA& aca, std::span<const SymbolId> input,
                               const ScatterMap& scatter) {
  Configuration cfg = aca.construction_id == 3
                          ? construction3_initial(*aca.machine, input, scatter)
                          : dense_initial(*aca.machine, input);
  assert_background_closed(aca, cfg);
  return cfg;
}

Configuration compiled_initial(const CompiledACA& aca, std::span<const SymbolId> input) {
  return compiled_initial(aca, input, ScatterMap{aca.gap});
}

unsigned clause_match_mask(const CompiledACA& aca, std::span<const ProductSymbol> nbhd) {
  if (int64_t(nbhd.size()) != 2 * aca.rule.radius + 1)
    throw std::invalid_argument("neighborhood size mismatch");
  unsigned mask = 0;
  if (aca.construction_id == 1) {
    const ProductSymbol &u = nbhd[0], &v = nbhd[1], &z = nbhd[2];
    if (is_marker(u, Move::R) && v.ctl == kCtlSettled && !is_marker(z, Move::L))
      mask |= 1u << 0;
    if (is_marker(z, Move::L) && v.ctl == kCtlSettled && !is_marker(u, Move::R))
      mask |= 1u << 1;
    if (is_marker(v, Move::R) && z.ctl == kCtlFresh) mask |= 1u << 2;
    if (is_marker(v, Move::L) && u.ctl == kCtlFresh) mask |= 1u << 3;
    if (v.ctl == kCtlFresh && u.ctl != kCtlHead && z.ctl != kCtlHead &&
        ((u.ctl == kCtlSettled && u.dir == Move::R) ||
         (z.ctl == kCtlSettled && z.dir == Move::L)))
      mask |= 1u << 4;
    return mask;
  }
  if (aca.construction_id == 2) {
    const ProductSymbol &u = nbhd[0], &z = nbhd[2];
    if (is_marker(u, Move::R) && z.ctl != kCtlHead) mask |= 1u << 0;
    if (is_marker(z, Move::L) && u.ctl != kCtlHead) mask |= 1u << 1;
    return mask;
  }
  const int64_t r = aca.rule.radius;
  const ProductSymbol& v = nbhd[size_t(r)];
  auto nearest_left = [&](uint8_t ctl) -> const ProductSymbol* {
    for (int64_t j = r - 1; j >= 0; --j)
      if (nbhd[size_t(j)].ctl == ctl) return &nbhd[size_t(j)];
    return nullptr;
  };
  auto nearest_right = [&](uint8_t ctl) -> const ProductSymbol* {
    for (int64_t j = r + 1; j <= 2 * r; ++j)
      if (nbhd[size_t(j)].ctl == ctl) return &nbhd[size_t(j)];
    return nullptr;
  };
  const ProductSymbol* lm = nearest_left(kCtlHead);
  const ProductSymbol* rm = nearest_right(kCtlHead);
  if (lm && lm->dir == Move::R && v.ctl == kCtlSettled && !(rm && rm->dir == Move::L))
    mask |= 1u << 0;
  if (rm && rm->dir == Move::L && v.ctl == kCtlSettled && !(lm && lm->dir == Move::R))
    mask |= 1u << 1;
  if (is_marker(v, Move::R) && nearest_right(kCtlFresh)) mask |= 1u << 2;
  if (is_marker(v, Move::L) && nearest_left(kCtlFresh)) mask |= 1u << 3;
  if (v.ctl == kCtlFresh && !lm && !rm) {
    const ProductSymbol* ls = nearest_left(kCtlSettled);
    const ProductSymbol* rs = nearest_right(kCtlSettled);
    if ((ls && ls->dir == Move::R) || (rs && rs->dir == Move::L)) mask |= 1u << 4;
  }
  return mask;
}

const std::vector<std::string>& clause_names(int construction_id) {
  static const std::vector<std::string> c1 = {"fire-right", "fire-left", "demote-right",
                                              "demote-left", "promote"};
  static const std::vector<std::string> c2 = {"fire-right", "fire-left"};
  switch (construction_id) {
    case 1: return c1;
    case 2: return c2;
    case 3: return c1;
    default: throw std::invalid_argument("construction id must be 1, 2 or 3");
  }
}

std::vector<ProductSymbol> enumerate_alphabet(const CompiledACA& aca) {
  const TuringMachine& tm = *aca.machine;
  std::vector<ProductSymbol> out;
  out.reserve(aca.alphabet_size());
  for (size_t g = 0; g < tm.symbol_count(); ++g)
    for (size_t q = 0; q < tm.state_count(); ++q)
      for (Move d : {Move::L, Move::R})
        for (uint8_t ctl : aca.ctl_values)
          out.push_back({SymbolId(g), StateId(q), d, ctl});
  return out;
}

namespace {

nlohmann::json symbol_json(const TuringMachine& tm, const ProductSymbol& s) {
  return nlohmann::json::array({tm.symbol_name(s.gamma), tm.state_name(s.state),
                                std::string(1, move_char(s.dir)), int(s.ctl)});
}

}  // namespace

nlohmann::json rule_manifest(const CompiledACA& aca, size_t num_vectors) {
  const TuringMachine& tm = *aca.machine;
  nlohmann::json j;
  j["machine"] = tm.name();
  j["construction"] = aca.construction_id;
  j["radius"] = aca.rule.radius;
  if (aca.construction_id == 3) j["gap"] = aca.gap;
  nlohmann::json alpha;
  for (size_t i = 0; i < tm.symbol_count(); ++i)
    alpha["gamma"].push_back(tm.symbol_name(SymbolId(i)));
  for (size_t i = 0; i < tm.state_count(); ++i)
    alpha["states"].push_back(tm.state_name(StateId(i)));
  alpha["dirs"] = {"L", "R"};
  alpha["ctl"] = aca.ctl_values;
  j["alphabet"] = alpha;
  j["alphabet_size"] = aca.alphabet_size();

  // Deterministic conformance vectors drawn from the full alphabet.
  std::vector<ProductSymbol> alphabet = enumerate_alphabet(aca);
  size_t width = size_t(2 * aca.rule.radius + 1);
  std::vector<ProductSymbol> nbhd(width);
  nlohmann::json vectors = nlohmann::json::array();
  for (size_t k = 0; k < num_vectors; ++k) {
    nlohmann::json vec;
    for (size_t i = 0; i < width; ++i) {
      nbhd[i] = alphabet[size_t(mix64(0xACA0, k * width + i) % alphabet.size())];
      vec["neighborhood"].push_back(symbol_json(tm, nbhd[i]));
    }
    vec["output"] = symbol_json(tm, aca.rule.table(nbhd));
    vectors.push_back(vec);
  }
  j["test_vectors"] = vectors;
  return j;
}

}  // namespace acasim
