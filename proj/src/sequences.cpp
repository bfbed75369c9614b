#include "acasim/sequences.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace acasim {

class UpdateSequence::Impl {
 public:
  explicit Impl(std::string spec) : spec_(std::move(spec)) {}
  virtual ~Impl() = default;
  virtual int64_t at(uint64_t index) const = 0;
  virtual std::optional<uint64_t> size() const { return std::nullopt; }
  // The cursor keeps `self` alive, so temporaries can hand out cursors.
  virtual std::unique_ptr<SequenceCursor> cursor(std::shared_ptr<const Impl> self,
                                                 uint64_t start) const;
  const std::string& spec() const { return spec_; }

 private:
  std::string spec_;
};

namespace {

class AtCursor : public SequenceCursor {
 public:
  AtCursor(std::shared_ptr<const UpdateSequence::Impl> impl, uint64_t start)
      : impl_(std::move(impl)), next_(start) {}
  int64_t next() override { return impl_->at(next_++); }

 private:
  std::shared_ptr<const UpdateSequence::Impl> impl_;
  uint64_t next_;
};

}  // namespace

std::unique_ptr<SequenceCursor> UpdateSequence::Impl::cursor(
    std::shared_ptr<const Impl> self, uint64_t start) const {
  return std::make_unique<AtCursor>(std::move(self), start);
}

UpdateSequence::UpdateSequence(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
int64_t UpdateSequence::at(uint64_t index) const { return impl_->at(index); }
std::optional<uint64_t> UpdateSequence::size() const { return impl_->size(); }
std::unique_ptr<SequenceCursor> UpdateSequence::cursor(uint64_t start) const {
  return impl_->cursor(impl_, start);
}
const std::string& UpdateSequence::spec() const { return impl_->spec(); }

std::vector<int64_t> UpdateSequence::prefix(uint64_t n) const {
  std::vector<int64_t> out;
  out.reserve(n);
  auto cur = cursor();
  for (uint64_t i = 0; i < n; ++i) out.push_back(cur->next());
  return out;
}

std::vector<int64_t> sweep_block(int64_t i) {
  if (i < 0) throw std::invalid_argument("sweep_block: negative index");
  std::vector<int64_t> out;
  out.reserve(size_t(i) + 1);
  for (int64_t v = -i; v <= i; v += 2) out.push_back(v);
  return out;
}

namespace {

std::string join_positions(const std::vector<int64_t>& v) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out;
}

class ExplicitImpl : public UpdateSequence::Impl {
 public:
  explicit ExplicitImpl(std::vector<int64_t> positions)
      : Impl("explicit:" + join_positions(positions)), positions_(std::move(positions)) {}
  int64_t at(uint64_t index) const override {
    if (index >= positions_.size())
      throw SequenceExhausted("explicit sequence exhausted at index " +
                              std::to_string(index));
    return positions_[index];
  }
  std::optional<uint64_t> size() const override { return positions_.size(); }

 private:
  std::vector<int64_t> positions_;
};

class CyclicImpl : public UpdateSequence::Impl {
 public:
  explicit CyclicImpl(std::vector<int64_t> positions)
      : Impl("cyclic:" + join_positions(positions)), positions_(std::move(positions)) {
    if (positions_.empty()) throw std::invalid_argument("cyclic sequence needs positions");
  }
  int64_t at(uint64_t index) const override {
    return positions_[index % positions_.size()];
  }

 private:
  std::vector<int64_t> positions_;
};

// Shared walker over a block-structured stream: a group layout callback
// yields the concatenated blocks lazily.
class QuadraticImpl : public UpdateSequence::Impl {
 public:
  QuadraticImpl() : Impl("quadratic") {}

  int64_t at(uint64_t index) const override {
    if (index < 3) return index == 1 ? -1 : 0;  // bootstrap 0,-1,0
    uint64_t rest = index - 3;
    uint64_t i = 1;
    while (rest >= group_len(i)) rest -= group_len(i++);
    // group i = block(i) block(i-1) block(i)
    uint64_t bi = uint64_t(i) + 1;
    if (rest < bi) return -int64_t(i) + 2 * int64_t(rest);
    rest -= bi;
    if (rest < bi - 1) return -int64_t(i - 1) + 2 * int64_t(rest);
    rest -= bi - 1;
    return -int64_t(i) + 2 * int64_t(rest);
  }

  static uint64_t group_len(uint64_t i) { return 3 * i + 2; }
};

class SweepImpl : public UpdateSequence::Impl {
 public:
  SweepImpl() : Impl("sweep") {}
  int64_t at(uint64_t index) const override {
    uint64_t i = 0;
    while (index >= i + 1) index -= ++i;
    return -int64_t(i) + 2 * int64_t(index);
  }
};

class ScatteredImpl : public UpdateSequence::Impl {
 public:
  explicit ScatteredImpl(int64_t p) : Impl("scattered:p=" + std::to_string(p)), p_(p) {
    if (p < 1) throw std::invalid_argument("scattered gap must be >= 1");
  }

  int64_t at(uint64_t index) const override {
    uint64_t t = 1;
    while (index >= group_len(t)) index -= group_len(t++);
    for (uint64_t mult : {1, 2, 3}) {
      uint64_t k = mult * t * uint64_t(p_);
      uint64_t len = 2 * k + 1;
      if (index < len) return (int64_t(index) - int64_t(k)) * p_;
      index -= len;
    }
    throw std::logic_error("scattered group walk out of range");
  }

  int64_t gap() const { return p_; }
  uint64_t group_len(uint64_t t) const { return 12 * t * uint64_t(p_) + 3; }

 private:
  int64_t p_;
};

class RandomWalkImpl : public UpdateSequence::Impl {
 public:
  explicit RandomWalkImpl(uint64_t seed)
      : Impl("randomwalk:seed=" + std::to_string(seed)), seed_(seed) {}

  // Positions theta_1, theta_2, ...; theta_0 = 0 is the anchor, not emitted.
  int64_t at(uint64_t index) const override {
    int64_t pos = 0;
    for (uint64_t t = 1; t <= index + 1; ++t) pos += step(t);
    return pos;
  }

  int64_t step(uint64_t t) const { return (mix64(seed_, t) & 1) ? 1 : -1; }

  class Cursor : public SequenceCursor {
   public:
    Cursor(std::shared_ptr<const UpdateSequence::Impl> self, const RandomWalkImpl& impl,
           uint64_t start)
        : self_(std::move(self)), impl_(impl), t_(start),
          pos_(start ? impl.at(start - 1) : 0) {}
    int64_t next() override {
      pos_ += impl_.step(++t_);
      return pos_;
    }

   private:
    std::shared_ptr<const UpdateSequence::Impl> self_;
    const RandomWalkImpl& impl_;
    uint64_t t_;
    int64_t pos_;
  };

  std::unique_ptr<SequenceCursor> cursor(std::shared_ptr<const Impl> self,
                                         uint64_t start) const override {
    return std::make_unique<Cursor>(std::move(self), *this, start);
  }

 private:
  uint64_t seed_;
};

class InsertedImpl : public UpdateSequence::Impl {
 public:
  InsertedImpl(UpdateSequence base, std::vector<Insertion> insertions)
      : Impl("inserted:base=" + base.spec() + ",n=" + std::to_string(insertions.size())),
        base_(std::move(base)),
        insertions_(std::move(insertions)) {
    for (size_t i = 1; i < insertions_.size(); ++i)
      if (insertions_[i].index < insertions_[i - 1].index)
        throw std::invalid_argument("insertion indices must be non-decreasing");
  }

  // The k-th insertion occupies output index insertions_[k].index + k.
  int64_t at(uint64_t index) const override {
    uint64_t lo = 0, hi = insertions_.size();
    while (lo < hi) {  // first k with insertions_[k].index + k >= index
      uint64_t mid = (lo + hi) / 2;
      if (insertions_[mid].index + mid < index)
        lo = mid + 1;
      else
        hi = mid;
    }
    if (lo < insertions_.size() && insertions_[lo].index + lo == index)
      return insertions_[lo].position;
    return base_.at(index - lo);
  }

  std::optional<uint64_t> size() const override {
    if (auto n = base_.size()) return *n + insertions_.size();
    return std::nullopt;
  }

 private:
  UpdateSequence base_;
  std::vector<Insertion> insertions_;
};

}  // namespace

UpdateSequence UpdateSequence::explicit_list(std::vector<int64_t> positions) {
  return UpdateSequence(std::make_shared<ExplicitImpl>(std::move(positions)));
}

UpdateSequence UpdateSequence::cyclic(std::vector<int64_t> positions) {
  return UpdateSequence(std::make_shared<CyclicImpl>(std::move(positions)));
}

UpdateSequence quadratic_universal() {
  return UpdateSequence(std::make_shared<QuadraticImpl>());
}

UpdateSequence sweep_sequence() { return UpdateSequence(std::make_shared<SweepImpl>()); }

UpdateSequence scattered_sequence(int64_t p) {
  return UpdateSequence(std::make_shared<ScatteredImpl>(p));
}

UpdateSequence random_walk_sequence(uint64_t seed) {
  return UpdateSequence(std::make_shared<RandomWalkImpl>(seed));
}

UpdateSequence insert_noise(UpdateSequence base, std::vector<Insertion> insertions) {
  return UpdateSequence(
      std::make_shared<InsertedImpl>(std::move(base), std::move(insertions)));
}

SeqAnalysis analyze(const UpdateSequence& seq, uint64_t prefix_len, int64_t window_lo,
                    int64_t window_hi) {
  if (prefix_len < 1) throw std::invalid_argument("analyze: prefix length must be >= 1");
  if (window_lo > window_hi) throw std::invalid_argument("analyze: empty window");
  SeqAnalysis out;
  out.window_lo = window_lo;
  out.window_hi = window_hi;
  out.prefix_len = prefix_len;
  auto cur = seq.cursor();
  for (uint64_t i = 0; i < prefix_len; ++i) {
    int64_t pos = cur->next();
    if (pos >= window_lo && pos <= window_hi) ++out.per_cell_counts[pos];
  }
  out.min_count = UINT64_MAX;
  for (int64_t c = window_lo; c <= window_hi; ++c) {
    auto it = out.per_cell_counts.find(c);
    uint64_t n = it == out.per_cell_counts.end() ? 0 : it->second;
    out.min_count = std::min(out.min_count, n);
  }
  out.support_gap = 0;
  std::optional<int64_t> prev;
  for (const auto& [cell, _] : out.per_cell_counts) {
    if (prev) out.support_gap = std::max(out.support_gap, cell - *prev);
    prev = cell;
  }
  out.universality_witness_k = out.min_count;
  return out;
}

namespace {

int64_t parse_int(std::string_view s, const std::string& what) {
  int64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    throw std::invalid_argument("bad integer '" + std::string(s) + "' in " + what);
  return v;
}

std::vector<int64_t> parse_position_list(std::string_view s) {
  std::vector<int64_t> out;
  size_t pos = 0;
  while (pos < s.size()) {
    size_t comma = s.find(',', pos);
    if (comma == std::string_view::npos) comma = s.size();
    out.push_back(parse_int(s.substr(pos, comma - pos), "position list"));
    pos = comma + 1;
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open sequence file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<int64_t> parse_whitespace_ints(const std::string& text) {
  std::istringstream in(text);
  std::vector<int64_t> out;
  int64_t v;
  while (in >> v) out.push_back(v);
  if (!in.eof()) throw std::invalid_argument("non-integer token in sequence file");
  return out;
}

}  // namespace

UpdateSequence parse_sequence_spec(const std::string& spec) {
  size_t colon = spec.find(':');
  std::string kind = spec.substr(0, colon);
  std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);

  if (kind == "quadratic") return quadratic_universal();
  if (kind == "sweep") return sweep_sequence();
  if (kind == "scattered") {
    if (args.rfind("p=", 0) != 0)
      throw std::invalid_argument("scattered spec wants scattered:p=<gap>");
    return scattered_sequence(parse_int(std::string_view(args).substr(2), "scattered gap"));
  }
  if (kind == "randomwalk") {
    if (args.rfind("seed=", 0) != 0)
      throw std::invalid_argument("randomwalk spec wants randomwalk:seed=<n>");
    return random_walk_sequence(
        uint64_t(parse_int(std::string_view(args).substr(5), "randomwalk seed")));
  }
  if (kind == "explicit") {
    if (!args.empty() && args[0] == '@')
      return UpdateSequence::explicit_list(parse_whitespace_ints(read_file(args.substr(1))));
    return UpdateSequence::explicit_list(parse_position_list(args));
  }
  if (kind == "cyclic") return UpdateSequence::cyclic(parse_position_list(args));
  if (kind == "inserted") {
    // inserted:base=<spec>,@file — insertion file lines are "index position".
    if (args.rfind("base=", 0) != 0)
      throw std::invalid_argument("inserted spec wants inserted:base=<spec>,@file");
    size_t at = args.rfind(",@");
    if (at == std::string::npos)
      throw std::invalid_argument("inserted spec wants inserted:base=<spec>,@file");
    UpdateSequence base = parse_sequence_spec(args.substr(5, at - 5));
    std::vector<int64_t> raw = parse_whitespace_ints(read_file(args.substr(at + 2)));
    if (raw.size() % 2)
      throw std::invalid_argument("insertion file wants (index, position) pairs");
    std::vector<Insertion> ins;
    for (size_t i = 0; i < raw.size(); i += 2) {
      if (raw[i] < 0) throw std::invalid_argument("negative insertion index");
      ins.push_back({uint64_t(raw[i]), raw[i + 1]});
    }
    return insert_noise(std::move(base), std::move(ins));
  }
  throw std::invalid_argument("unknown sequence spec '" + spec + "'");
}

}  // namespace acasim
