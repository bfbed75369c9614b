#include "acasim/render.hpp"

#include <algorithm>
#include <nlohmann/json.hpp>
#include <sstream>

namespace acasim {

namespace {

constexpr const char* kAnsiMarker = "\x1b[1;36m";
constexpr const char* kAnsiReset = "\x1b[0m";

std::string cell_text(const TuringMachine& tm, const ProductSymbol& s, size_t width,
                      bool ansi) {
  std::string body = s.ctl == kCtlInactive ? "." : tm.symbol_name(s.gamma);
  while (body.size() < width) body += ' ';
  std::string out;
  if (s.ctl == kCtlHead) {
    if (ansi) out += kAnsiMarker;
    out += "[" + body + "]";
    if (ansi) out += kAnsiReset;
  } else {
    out += " " + body + " ";
  }
  return out;
}

}  // namespace

std::string render_ascii(const ACATrace& trace, const TuringMachine& tm,
                         const RenderOptions& opts) {
  int64_t lo = std::min(trace.initial.lo(), trace.final.lo());
  int64_t hi = std::max(trace.initial.hi(), trace.final.hi());
  if (trace.initial.empty_window() && trace.final.empty_window()) lo = 0, hi = 0;
  if (opts.window_lo) lo = *opts.window_lo;
  if (opts.window_hi) hi = *opts.window_hi;
  if (lo > hi) std::swap(lo, hi);

  size_t width = 1;
  for (size_t i = 0; i < tm.symbol_count(); ++i)
    width = std::max(width, tm.symbol_name(SymbolId(i)).size());

  std::ostringstream out;
  out << "cells " << lo << ".." << hi << "\n";
  Configuration cfg = trace.initial;
  auto row = [&](uint64_t t, std::optional<int64_t> upd) {
    out << "t'=" << t;
    std::string head = upd ? " @" + std::to_string(*upd) : "";
    for (size_t pad = std::to_string(t).size() + head.size(); pad < 10; ++pad) out << ' ';
    out << head << " |";
    for (int64_t i = lo; i <= hi; ++i) out << cell_text(tm, cfg.at(i), width, opts.ansi);
    out << "|\n";
  };
  row(0, std::nullopt);
  for (const UpdateRecord& u : trace.updates) {
    cfg.set(u.pos, u.after);
    row(u.time, u.pos);
  }
  return out.str();
}

namespace {

nlohmann::json symbol_to_json(const TuringMachine& tm, const ProductSymbol& s) {
  return nlohmann::json::array({tm.symbol_name(s.gamma), tm.state_name(s.state),
                                std::string(1, move_char(s.dir)), int(s.ctl)});
}

ProductSymbol symbol_from_json(const nlohmann::json& j, const TuringMachine& tm) {
  auto gamma = tm.find_symbol(j.at(0).get<std::string>());
  auto state = tm.find_state(j.at(1).get<std::string>());
  std::string dir = j.at(2).get<std::string>();
  if (!gamma || !state || (dir != "L" && dir != "R"))
    throw std::invalid_argument("bad product symbol in trace JSON");
  return {*gamma, *state, dir == "R" ? Move::R : Move::L,
          uint8_t(j.at(3).get<int>())};
}

}  // namespace

nlohmann::json trace_to_json(const ACATrace& trace, const TuringMachine& tm) {
  nlohmann::json j;
  const Configuration& init = trace.initial;
  j["window"] = {init.lo(), init.hi()};
  if (init.background().size() == 1) {
    j["background"] = symbol_to_json(tm, init.background()[0]);
  } else {
    j["background_period"] = init.background().size();
    nlohmann::json phases = nlohmann::json::array();
    for (const ProductSymbol& s : init.background()) phases.push_back(symbol_to_json(tm, s));
    j["background"] = phases;
  }
  nlohmann::json cells = nlohmann::json::array();
  if (!init.empty_window())
    for (int64_t i = init.lo(); i <= init.hi(); ++i)
      cells.push_back(symbol_to_json(tm, init.at(i)));
  j["initial"] = cells;
  nlohmann::json updates = nlohmann::json::array();
  for (const UpdateRecord& u : trace.updates) {
    updates.push_back({{"t", u.time},
                       {"pos", u.pos},
                       {"old", symbol_to_json(tm, u.before)},
                       {"new", symbol_to_json(tm, u.after)}});
  }
  j["updates"] = updates;
  return j;
}

ACATrace trace_from_json(const nlohmann::json& j, const TuringMachine& tm) {
  std::vector<ProductSymbol> background;
  if (j.contains("background_period")) {
    for (const auto& phase : j.at("background"))
      background.push_back(symbol_from_json(phase, tm));
  } else {
    background.push_back(symbol_from_json(j.at("background"), tm));
  }
  int64_t lo = j.at("window").at(0).get<int64_t>();
  std::vector<ProductSymbol> cells;
  for (const auto& c : j.at("initial")) cells.push_back(symbol_from_json(c, tm));
  Configuration initial(lo, std::move(cells), std::move(background));
  ACATrace trace{initial, {}, initial};
  for (const auto& u : j.at("updates")) {
    UpdateRecord rec{u.at("t").get<uint64_t>(), u.at("pos").get<int64_t>(),
                     symbol_from_json(u.at("old"), tm), symbol_from_json(u.at("new"), tm)};
    trace.updates.push_back(rec);
    trace.final.set(rec.pos, rec.after);
  }
  return trace;
}

}  // namespace acasim
