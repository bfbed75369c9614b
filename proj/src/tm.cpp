#include "acasim/tm.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace acasim {

TuringMachine::TuringMachine(std::string name, std::vector<std::string> states,
                             std::vector<std::string> symbols,
                             std::vector<bool> input_symbol, SymbolId blank,
                             StateId initial, std::vector<bool> final_state,
                             std::vector<TmAction> delta)
    : name_(std::move(name)),
      state_names_(std::move(states)),
      symbol_names_(std::move(symbols)),
      input_(std::move(input_symbol)),
      blank_(blank),
      initial_(initial),
      final_(std::move(final_state)),
      delta_(std::move(delta)) {
  if (delta_.size() != state_names_.size() * symbol_names_.size())
    throw std::invalid_argument("transition table size mismatch");
  if (input_[blank_]) throw std::invalid_argument("blank in input alphabet");
}

std::optional<StateId> TuringMachine::find_state(std::string_view name) const {
  for (size_t i = 0; i < state_names_.size(); ++i)
    if (state_names_[i] == name) return StateId(i);
  return std::nullopt;
}

std::optional<SymbolId> TuringMachine::find_symbol(std::string_view name) const {
  for (size_t i = 0; i < symbol_names_.size(); ++i)
    if (symbol_names_[i] == name) return SymbolId(i);
  return std::nullopt;
}

size_t TuringMachine::input_symbol_count() const {
  return size_t(std::count(input_.begin(), input_.end(), true));
}

std::vector<SymbolId> TuringMachine::parse_word(std::string_view word) const {
  std::vector<std::string> tokens;
  if (word.find_first_of(" \t") != std::string_view::npos) {
    std::istringstream in{std::string(word)};
    std::string tok;
    while (in >> tok) tokens.push_back(tok);
  } else {
    for (char c : word) tokens.emplace_back(1, c);
  }
  std::vector<SymbolId> out;
  out.reserve(tokens.size());
  for (const auto& tok : tokens) {
    auto id = find_symbol(tok);
    if (!id || !input_[*id])
      throw std::invalid_argument("symbol '" + tok + "' not in the input alphabet of " +
                                  name_);
    out.push_back(*id);
  }
  return out;
}

std::string TuringMachine::word_string(std::span<const SymbolId> word) const {
  bool single = true;
  for (SymbolId s : word)
    if (symbol_name(s).size() != 1) single = false;
  std::string out;
  for (size_t i = 0; i < word.size(); ++i) {
    if (i && !single) out += ' ';
    out += symbol_name(word[i]);
  }
  return out;
}

void Tape::set(int64_t pos, SymbolId v) {
  if (cells_.empty()) {
    if (v == blank_) return;
    lo_ = pos;
    cells_.push_back(v);
    return;
  }
  if (pos < lo_) {
    if (v == blank_) return;
    cells_.insert(cells_.begin(), size_t(lo_ - pos), blank_);
    lo_ = pos;
  } else if (pos > hi()) {
    if (v == blank_) return;
    cells_.insert(cells_.end(), size_t(pos - hi()), blank_);
  }
  cells_[size_t(pos - lo_)] = v;
}

bool Tape::operator==(const Tape& other) const {
  if (blank_ != other.blank_) return false;
  int64_t a = std::min(lo_, other.lo_);
  int64_t b = std::max(hi(), other.hi());
  for (int64_t i = a; i <= b; ++i)
    if (at(i) != other.at(i)) return false;
  return true;
}

TMConfiguration tm_initial_configuration(const TuringMachine& tm,
                                         std::span<const SymbolId> input) {
  TMConfiguration cfg{Tape(tm.blank()), tm.initial(), 0};
  for (size_t i = 0; i < input.size(); ++i) cfg.tape.set(int64_t(i), input[i]);
  return cfg;
}

TMConfiguration tm_step(const TuringMachine& tm, const TMConfiguration& cfg) {
  if (tm.is_final(cfg.state)) return cfg;
  const TmAction& act = tm.action(cfg.state, cfg.tape.at(cfg.head));
  TMConfiguration next = cfg;
  next.tape.set(cfg.head, act.symbol);
  next.state = act.state;
  next.head = cfg.head + (act.move == Move::R ? 1 : -1);
  return next;
}

RunTrace tm_run(const TuringMachine& tm, std::span<const SymbolId> input,
                uint64_t max_steps) {
  RunTrace trace;
  trace.configs.push_back(tm_initial_configuration(tm, input));
  if (tm.is_final(trace.configs.back().state)) {
    trace.halted = true;
    trace.steps_to_halt = 0;
    return trace;
  }
  for (uint64_t t = 0; t < max_steps; ++t) {
    trace.configs.push_back(tm_step(tm, trace.configs.back()));
    if (tm.is_final(trace.configs.back().state)) {
      trace.halted = true;
      trace.steps_to_halt = t + 1;
      break;
    }
  }
  return trace;
}

std::vector<SymbolId> tm_output(const TuringMachine& tm, const RunTrace& trace) {
  if (!trace.halted) throw std::invalid_argument("tm_output: run did not halt");
  const Tape& tape = trace.configs.back().tape;
  std::vector<SymbolId> out;
  int64_t a = tape.lo(), b = tape.hi();
  while (a <= b && tape.at(a) == tm.blank()) ++a;
  while (b >= a && tape.at(b) == tm.blank()) --b;
  for (int64_t i = a; i <= b; ++i) out.push_back(tape.at(i));
  return out;
}

namespace {

struct Line {
  int number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  int number = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view raw = text.substr(pos, eol - pos);
    ++number;
    if (size_t hash = raw.find('#'); hash != std::string_view::npos)
      raw = raw.substr(0, hash);
    std::istringstream in{std::string(raw)};
    Line line{number, {}};
    std::string tok;
    while (in >> tok) line.tokens.push_back(tok);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (eol == text.size()) break;
    pos = eol + 1;
  }
  return lines;
}

}  // namespace

TuringMachine parse_tm(std::string_view text) {
  std::string name;
  std::optional<std::string> blank_tok;
  std::vector<std::string> input_toks, work_toks, state_toks, final_toks;
  std::optional<std::string> initial_tok;
  bool saw_final = false;
  struct DeltaRow {
    int line;
    std::string q, s, q2, s2, mv;
  };
  std::vector<DeltaRow> rows;

  for (const Line& line : tokenize(text)) {
    const auto& t = line.tokens;
    const std::string& key = t[0];
    auto need = [&](size_t n) {
      if (t.size() != n)
        throw TmParseError(line.number, "'" + key + "' expects " + std::to_string(n - 1) +
                                            " argument(s)");
    };
    if (key == "machine") {
      need(2);
      name = t[1];
    } else if (key == "blank") {
      need(2);
      blank_tok = t[1];
    } else if (key == "input") {
      input_toks.assign(t.begin() + 1, t.end());
    } else if (key == "work") {
      work_toks.assign(t.begin() + 1, t.end());
    } else if (key == "states") {
      state_toks.assign(t.begin() + 1, t.end());
    } else if (key == "initial") {
      need(2);
      initial_tok = t[1];
    } else if (key == "final") {
      saw_final = true;
      final_toks.assign(t.begin() + 1, t.end());
    } else if (key == "delta") {
      if (t.size() != 7 || t[3] != "->")
        throw TmParseError(line.number, "delta syntax: delta <q> <sym> -> <q'> <sym'> <L|R>");
      rows.push_back({line.number, t[1], t[2], t[4], t[5], t[6]});
    } else {
      throw TmParseError(line.number, "unknown directive '" + key + "'");
    }
  }

  if (name.empty()) throw TmParseError(0, "missing 'machine' directive");
  if (!blank_tok) throw TmParseError(0, "missing 'blank' directive");
  if (work_toks.empty()) throw TmParseError(0, "missing 'work' directive");
  if (state_toks.empty()) throw TmParseError(0, "missing 'states' directive");
  if (!initial_tok) throw TmParseError(0, "missing 'initial' directive");
  if (!saw_final) throw TmParseError(0, "missing 'final' directive");

  if (work_toks.size() > 255) throw TmParseError(0, "too many work symbols");
  if (state_toks.size() > 65535) throw TmParseError(0, "too many states");

  std::map<std::string, SymbolId> sym_ids;
  for (const auto& s : work_toks) {
    if (!sym_ids.emplace(s, SymbolId(sym_ids.size())).second)
      throw TmParseError(0, "duplicate work symbol '" + s + "'");
  }
  std::map<std::string, StateId> state_ids;
  for (const auto& s : state_toks) {
    if (!state_ids.emplace(s, StateId(state_ids.size())).second)
      throw TmParseError(0, "duplicate state '" + s + "'");
  }

  auto sym = [&](const std::string& s, int line) {
    auto it = sym_ids.find(s);
    if (it == sym_ids.end())
      throw TmParseError(line, "unknown symbol '" + s + "'");
    return it->second;
  };
  auto state = [&](const std::string& s, int line) {
    auto it = state_ids.find(s);
    if (it == state_ids.end())
      throw TmParseError(line, "unknown state '" + s + "'");
    return it->second;
  };

  SymbolId blank = sym(*blank_tok, 0);
  std::vector<bool> is_input(work_toks.size(), false);
  for (const auto& s : input_toks) {
    SymbolId id = sym(s, 0);
    if (id == blank) throw TmParseError(0, "blank in input alphabet");
    is_input[id] = true;
  }
  StateId initial = state(*initial_tok, 0);
  std::vector<bool> is_final(state_toks.size(), false);
  for (const auto& s : final_toks) is_final[state(s, 0)] = true;

  const TmAction unset{0, 0, Move::L};
  std::vector<TmAction> delta(state_toks.size() * work_toks.size(), unset);
  std::vector<bool> defined(delta.size(), false);
  for (const auto& row : rows) {
    StateId q = state(row.q, row.line);
    SymbolId s = sym(row.s, row.line);
    size_t idx = size_t(q) * work_toks.size() + s;
    if (defined[idx])
      throw TmParseError(row.line, "duplicate delta row for (" + row.q + ", " + row.s + ")");
    if (row.mv != "L" && row.mv != "R")
      throw TmParseError(row.line, "move must be L or R");
    delta[idx] = {state(row.q2, row.line), sym(row.s2, row.line),
                  row.mv == "R" ? Move::R : Move::L};
    defined[idx] = true;
  }
  for (size_t q = 0; q < state_toks.size(); ++q)
    for (size_t s = 0; s < work_toks.size(); ++s)
      if (!defined[q * work_toks.size() + s])
        throw TmParseError(0, "partial transition function: missing delta for (" +
                                  state_toks[q] + ", " + work_toks[s] + ")");

  return TuringMachine(name, state_toks, work_toks, is_input, blank, initial, is_final,
                       std::move(delta));
}

}  // namespace acasim
