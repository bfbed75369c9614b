#include "acasim/aca.hpp"

#include <algorithm>
#include <stdexcept>

namespace acasim {

Configuration::Configuration(int64_t lo, std::vector<ProductSymbol> cells,
                             std::vector<ProductSymbol> background)
    : lo_(lo), cells_(std::move(cells)), background_(std::move(background)) {
  if (background_.empty()) throw std::invalid_argument("configuration needs a background");
}

void Configuration::set(int64_t pos, ProductSymbol v) {
  if (cells_.empty()) {
    if (v == background_at(pos)) return;
    lo_ = pos;
    cells_.push_back(v);
    return;
  }
  if (pos < lo_) {
    if (v == background_at(pos)) return;
    int64_t grow = lo_ - pos;
    std::vector<ProductSymbol> fill;
    fill.reserve(size_t(grow));
    for (int64_t i = pos; i < lo_; ++i) fill.push_back(background_at(i));
    cells_.insert(cells_.begin(), fill.begin(), fill.end());
    lo_ = pos;
  } else if (pos > hi()) {
    if (v == background_at(pos)) return;
    for (int64_t i = hi() + 1; i <= pos; ++i) cells_.push_back(background_at(i));
  }
  cells_[size_t(pos - lo_)] = v;
}

bool Configuration::operator==(const Configuration& other) const {
  int64_t period = int64_t(background_.size());
  if (period != int64_t(other.background_.size())) return false;
  for (int64_t i = 0; i < period; ++i)
    if (background_at(i) != other.background_at(i)) return false;
  int64_t a = std::min(lo_, other.lo_);
  int64_t b = std::max(hi(), other.hi());
  if (cells_.empty() && other.cells_.empty()) return true;
  for (int64_t i = a; i <= b; ++i)
    if (at(i) != other.at(i)) return false;
  return true;
}

ProductSymbol LocalRule::apply(const Configuration& cfg, int64_t pos,
                               std::vector<ProductSymbol>& scratch) const {
  scratch.clear();
  for (int64_t i = pos - radius; i <= pos + radius; ++i) scratch.push_back(cfg.at(i));
  return table(scratch);
}

Configuration async_step(const Configuration& cfg, const LocalRule& rule, int64_t pos) {
  Configuration next = cfg;
  std::vector<ProductSymbol> scratch;
  next.set(pos, rule.apply(cfg, pos, scratch));
  return next;
}

Configuration sync_step(const Configuration& cfg, const LocalRule& rule) {
  Configuration next = cfg;
  if (cfg.empty_window()) return next;
  std::vector<ProductSymbol> scratch;
  int64_t a = cfg.lo() - rule.radius;
  int64_t b = cfg.hi() + rule.radius;
  std::vector<ProductSymbol> values;
  values.reserve(size_t(b - a + 1));
  for (int64_t i = a; i <= b; ++i) values.push_back(rule.apply(cfg, i, scratch));
  for (int64_t i = a; i <= b; ++i) next.set(i, values[size_t(i - a)]);
  return next;
}

void evolve_visit(Configuration& cfg, const LocalRule& rule, SequenceCursor& positions,
                  uint64_t n, const std::function<void(const UpdateRecord&)>& on_update) {
  std::vector<ProductSymbol> scratch;
  for (uint64_t t = 1; t <= n; ++t) {
    int64_t pos = positions.next();
    ProductSymbol before = cfg.at(pos);
    ProductSymbol after = rule.apply(cfg, pos, scratch);
    if (after != before) cfg.set(pos, after);
    if (on_update) on_update(UpdateRecord{t, pos, before, after});
  }
}

ACATrace evolve(const Configuration& cfg, const LocalRule& rule, const UpdateSequence& seq,
                uint64_t n) {
  ACATrace trace{cfg, {}, cfg};
  trace.updates.reserve(n);
  auto cur = seq.cursor();
  evolve_visit(trace.final, rule, *cur, n,
               [&](const UpdateRecord& u) { trace.updates.push_back(u); });
  return trace;
}

std::vector<int> project(const Configuration& cfg, Component component, int64_t a,
                         int64_t b) {
  if (a > b) throw std::invalid_argument("project: empty range");
  std::vector<int> out;
  out.reserve(size_t(b - a + 1));
  for (int64_t i = a; i <= b; ++i) {
    ProductSymbol v = cfg.at(i);
    switch (component) {
      case Component::Gamma: out.push_back(v.gamma); break;
      case Component::State: out.push_back(v.state); break;
      case Component::Dir: out.push_back(int(v.dir)); break;
      case Component::Ctl: out.push_back(v.ctl); break;
    }
  }
  return out;
}

std::vector<ProductSymbol> reindex(const Configuration& cfg,
                                   const std::function<int64_t(int64_t)>& psi, int64_t a,
                                   int64_t b) {
  if (a > b) throw std::invalid_argument("reindex: empty range");
  std::vector<ProductSymbol> out;
  out.reserve(size_t(b - a + 1));
  std::optional<int64_t> prev;
  for (int64_t i = a; i <= b; ++i) {
    int64_t target = psi(i);
    if (prev && target <= *prev)
      throw std::invalid_argument("reindex: map not strictly increasing");
    prev = target;
    out.push_back(cfg.at(target));
  }
  return out;
}

bool background_closed(const LocalRule& rule, const Configuration& cfg) {
  int64_t period = int64_t(cfg.background().size());
  std::vector<ProductSymbol> nbhd;
  for (int64_t phase = 0; phase < period; ++phase) {
    nbhd.clear();
    for (int64_t i = phase - rule.radius; i <= phase + rule.radius; ++i)
      nbhd.push_back(cfg.background_at(i));
    if (rule.table(nbhd) != cfg.background_at(phase)) return false;
  }
  return true;
}

}  // namespace acasim
