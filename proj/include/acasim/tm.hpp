#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace acasim {

using StateId = uint16_t;
using SymbolId = uint8_t;

enum class Move : uint8_t { L = 0, R = 1 };

inline char move_char(Move m) { return m == Move::L ? 'L' : 'R'; }

/// One row of the transition table: next state, written symbol, head move.
struct TmAction {
  StateId state;
  SymbolId symbol;
  Move move;
  bool operator==(const TmAction&) const = default;
};

struct TmParseError : std::runtime_error {
  TmParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line(line) {}
  int line;
};

/// Deterministic single-tape machine with a total transition function.
/// States and symbols are interned; ids index the declaration order.
class TuringMachine {
 public:
  TuringMachine(std::string name, std::vector<std::string> states,
                std::vector<std::string> symbols, std::vector<bool> input_symbol,
                SymbolId blank, StateId initial, std::vector<bool> final_state,
                std::vector<TmAction> delta);

  const std::string& name() const { return name_; }
  size_t state_count() const { return state_names_.size(); }
  size_t symbol_count() const { return symbol_names_.size(); }
  const std::string& state_name(StateId q) const { return state_names_[q]; }
  const std::string& symbol_name(SymbolId s) const { return symbol_names_[s]; }
  std::optional<StateId> find_state(std::string_view name) const;
  std::optional<SymbolId> find_symbol(std::string_view name) const;

  SymbolId blank() const { return blank_; }
  StateId initial() const { return initial_; }
  bool is_final(StateId q) const { return final_[q]; }
  bool is_input_symbol(SymbolId s) const { return input_[s]; }
  size_t input_symbol_count() const;

  const TmAction& action(StateId q, SymbolId s) const {
    return delta_[size_t(q) * symbol_names_.size() + s];
  }

  /// Tokenizes an input word: whitespace-separated symbol names, or one
  /// symbol per character when no whitespace is present. Rejects symbols
  /// outside the input alphabet.
  std::vector<SymbolId> parse_word(std::string_view word) const;

  std::string word_string(std::span<const SymbolId> word) const;

 private:
  std::string name_;
  std::vector<std::string> state_names_;
  std::vector<std::string> symbol_names_;
  std::vector<bool> input_;
  SymbolId blank_;
  StateId initial_;
  std::vector<bool> final_;
  std::vector<TmAction> delta_;
};

/// Parses the line-oriented machine format:
///   machine <name> / blank <sym> / input <sym>... / work <sym>... /
///   states <id>... / initial <id> / final [<id>...] /
///   delta <q> <sym> -> <q'> <sym'> <L|R>
/// '#' starts a comment. Throws TmParseError.
TuringMachine parse_tm(std::string_view text);

/// Two-state machine that shuttles over the tape forever, rewriting it with
/// 1s rightward and 0s leftward; its head visits every cell infinitely often.
TuringMachine zigzag_machine();

const TuringMachine& builtin_machine(std::string_view name);
std::vector<std::string> builtin_machine_names();
const std::string& builtin_machine_source(std::string_view name);

/// Tape window over Γ with blank background outside.
class Tape {
 public:
  Tape() = default;
  explicit Tape(SymbolId blank) : blank_(blank) {}

  SymbolId at(int64_t pos) const {
    if (cells_.empty() || pos < lo_ || pos >= lo_ + int64_t(cells_.size())) return blank_;
    return cells_[size_t(pos - lo_)];
  }
  void set(int64_t pos, SymbolId v);
  SymbolId blank() const { return blank_; }
  int64_t lo() const { return lo_; }
  int64_t hi() const { return lo_ + int64_t(cells_.size()) - 1; }

  /// Equality of tape contents (window-representation independent).
  bool operator==(const Tape& other) const;

 private:
  int64_t lo_ = 0;
  std::vector<SymbolId> cells_;
  SymbolId blank_ = 0;
};

struct TMConfiguration {
  Tape tape;
  StateId state = 0;
  int64_t head = 0;
  bool operator==(const TMConfiguration&) const = default;
};

struct RunTrace {
  std::vector<TMConfiguration> configs;  // configs[t] = machine state after t steps
  bool halted = false;
  uint64_t steps_to_halt = 0;  // meaningful when halted

  uint64_t steps() const { return configs.size() - 1; }
};

TMConfiguration tm_initial_configuration(const TuringMachine& tm,
                                         std::span<const SymbolId> input);

/// One step. Final states freeze: the configuration is returned unchanged.
TMConfiguration tm_step(const TuringMachine& tm, const TMConfiguration& cfg);

/// Runs for at most max_steps; stops early at the freeze point.
RunTrace tm_run(const TuringMachine& tm, std::span<const SymbolId> input,
                uint64_t max_steps);

/// Non-blank content of the frozen tape, left to right. Requires a halted trace.
std::vector<SymbolId> tm_output(const TuringMachine& tm, const RunTrace& trace);

}  // namespace acasim
