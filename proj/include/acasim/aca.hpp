#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "acasim/sequences.hpp"
#include "acasim/tm.hpp"

namespace acasim {

// Control component values of a product cell.
inline constexpr uint8_t kCtlFresh = 0;     // freshly written transition target
inline constexpr uint8_t kCtlHead = 1;      // head marker
inline constexpr uint8_t kCtlSettled = 2;   // ordinary settled cell
inline constexpr uint8_t kCtlInactive = 3;  // never participates

/// One cell value of the product alphabet Γ × Q × D × C.
struct ProductSymbol {
  SymbolId gamma = 0;
  StateId state = 0;
  Move dir = Move::R;
  uint8_t ctl = kCtlSettled;
  bool operator==(const ProductSymbol&) const = default;
};

/// A line of cells over ℤ: a finite window plus an eventually-periodic
/// background (period 1 everywhere except scattered starts, where the
/// support pattern repeats with period p). Reads outside the window return
/// the background value of the position's phase.
class Configuration {
 public:
  Configuration(int64_t lo, std::vector<ProductSymbol> cells,
                std::vector<ProductSymbol> background);

  ProductSymbol at(int64_t pos) const {
    if (cells_.empty() || pos < lo_ || pos >= lo_ + int64_t(cells_.size()))
      return background_at(pos);
    return cells_[size_t(pos - lo_)];
  }

  /// Writes v at pos; the window grows only when v differs from background.
  void set(int64_t pos, ProductSymbol v);

  int64_t lo() const { return lo_; }
  int64_t hi() const { return lo_ + int64_t(cells_.size()) - 1; }
  bool empty_window() const { return cells_.empty(); }

  const std::vector<ProductSymbol>& background() const { return background_; }
  ProductSymbol background_at(int64_t pos) const {
    int64_t p = int64_t(background_.size());
    return background_[size_t(((pos % p) + p) % p)];
  }

  /// Content equality, independent of window representation.
  bool operator==(const Configuration& other) const;

 private:
  int64_t lo_ = 0;
  std::vector<ProductSymbol> cells_;
  std::vector<ProductSymbol> background_;  // value at pos = background_[pos mod period]
};

/// Radius-r local rule as a decision procedure over (2r+1)-neighborhoods.
struct LocalRule {
  int64_t radius = 1;
  std::function<ProductSymbol(std::span<const ProductSymbol>)> table;

  ProductSymbol apply(const Configuration& cfg, int64_t pos,
                      std::vector<ProductSymbol>& scratch) const;
};

struct UpdateRecord {
  uint64_t time = 0;  // 1-based update count
  int64_t pos = 0;
  ProductSymbol before, after;
};

struct ACATrace {
  Configuration initial;
  std::vector<UpdateRecord> updates;  // deltas; every update is recorded
  Configuration final;
};

/// Applies the rule at one position; everything else is left untouched.
Configuration async_step(const Configuration& cfg, const LocalRule& rule, int64_t pos);

/// Applies the rule at every position simultaneously.
Configuration sync_step(const Configuration& cfg, const LocalRule& rule);

/// Runs n asynchronous updates in place; update t (1-based) is applied at the
/// next position of the cursor. on_update may be empty.
void evolve_visit(Configuration& cfg, const LocalRule& rule, SequenceCursor& positions,
                  uint64_t n, const std::function<void(const UpdateRecord&)>& on_update);

/// Trace-producing wrapper; replaying updates from initial reproduces final.
ACATrace evolve(const Configuration& cfg, const LocalRule& rule,
                const UpdateSequence& seq, uint64_t n);

enum class Component : uint8_t { Gamma, State, Dir, Ctl };

/// Componentwise projection over an inclusive position range.
std::vector<int> project(const Configuration& cfg, Component component, int64_t a,
                         int64_t b);

/// Values at psi(a..b); psi must be strictly increasing on the range.
std::vector<ProductSymbol> reindex(const Configuration& cfg,
                                   const std::function<int64_t(int64_t)>& psi, int64_t a,
                                   int64_t b);

/// True when every all-background neighborhood maps to the background value
/// of its centre position (required of every shipped rule).
bool background_closed(const LocalRule& rule, const Configuration& cfg);

}  // namespace acasim
