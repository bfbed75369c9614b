#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace acasim {

/// Pinned 64-bit avalanche mixer; the only randomness source in the project,
/// so every "random" artifact is reproducible across runs and platforms.
inline uint64_t mix64(uint64_t seed, uint64_t t) {
  uint64_t z = seed + (t + 1) * 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

struct SequenceExhausted : std::out_of_range {
  using std::out_of_range::out_of_range;
};

/// Pull-based reader over a position stream; amortized O(1) per element.
class SequenceCursor {
 public:
  virtual ~SequenceCursor() = default;
  virtual int64_t next() = 0;  // throws SequenceExhausted on finite streams
};

struct Insertion {
  uint64_t index;    // before this index of the base stream
  int64_t position;  // cell to update
};

/// A deterministic, replayable stream of cell positions. The t-th update of
/// an evolution (t starting at 1) is applied at position at(t-1).
class UpdateSequence {
 public:
  class Impl;

  static UpdateSequence explicit_list(std::vector<int64_t> positions);
  static UpdateSequence cyclic(std::vector<int64_t> positions);

  int64_t at(uint64_t index) const;
  std::optional<uint64_t> size() const;  // nullopt = infinite
  std::unique_ptr<SequenceCursor> cursor(uint64_t start = 0) const;
  const std::string& spec() const;  // canonical CLI spec string

  std::vector<int64_t> prefix(uint64_t n) const;

  explicit UpdateSequence(std::shared_ptr<const Impl> impl);
  const Impl& impl() const { return *impl_; }

 private:
  std::shared_ptr<const Impl> impl_;
};

/// Centered position run (-i, -i+2, ..., i); i+1 entries, all sharing i's parity.
std::vector<int64_t> sweep_block(int64_t i);

/// The bootstrap triple 0,-1,0 followed, for i = 1,2,..., by the groups
/// block(i) block(i-1) block(i); every cell occurs infinitely often and one
/// machine step completes within each group.
UpdateSequence quadratic_universal();

/// Plain concatenation block(0) block(1) block(2) ...
UpdateSequence sweep_sequence();

/// Support-restricted analogue of the quadratic sequence: for each group
/// t = 1,2,... emits the positions j*p for j in [-k,k] with k = tp, 2tp, 3tp.
/// Group t has 12tp+3 entries; the first T groups total 6p(T^2+(1+1/(2p))T).
UpdateSequence scattered_sequence(int64_t p);

/// Walk positions theta_1, theta_2, ... with theta_0 = 0 (the anchor is not
/// emitted) and theta_t = theta_{t-1} +- 1 decided by bit 0 of mix64(seed, t).
UpdateSequence random_walk_sequence(uint64_t seed);

/// Splices extra positions into base; insertion (i, p) lands immediately
/// before base element i. Indices must be non-decreasing.
UpdateSequence insert_noise(UpdateSequence base, std::vector<Insertion> insertions);

struct SeqAnalysis {
  int64_t window_lo = 0, window_hi = 0;
  uint64_t prefix_len = 0;
  std::map<int64_t, uint64_t> per_cell_counts;  // cells in the window that were hit
  uint64_t min_count = 0;                       // over every cell of the window
  int64_t support_gap = 0;  // max gap between consecutive distinct support cells
  uint64_t universality_witness_k = 0;  // largest k with every window cell hit >= k
};

/// Finite-prefix universality/syndeticity witness counts.
SeqAnalysis analyze(const UpdateSequence& seq, uint64_t prefix_len, int64_t window_lo,
                    int64_t window_hi);

/// Parses CLI sequence specs: quadratic | sweep | scattered:p=2 |
/// randomwalk:seed=42 | explicit:@file | cyclic:0,-1,0,1 |
/// inserted:base=<spec>,@file
UpdateSequence parse_sequence_spec(const std::string& spec);

}  // namespace acasim
