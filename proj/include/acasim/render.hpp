#pragma once

#include <optional>
#include <string>

#include "acasim/aca.hpp"
#include "acasim/tm.hpp"

#include <nlohmann/json_fwd.hpp>

namespace acasim {

struct RenderOptions {
  std::optional<int64_t> window_lo, window_hi;  // default: trace extent
  bool ansi = false;                            // color the marker cell
};

/// Space-time diagram, one row per update: Γ-symbol per cell, the head
/// marker bracketed, inactive cells dimmed to '.', the updated cell flagged
/// in the row header.
std::string render_ascii(const ACATrace& trace, const TuringMachine& tm,
                         const RenderOptions& opts = {});

/// {"window":[lo,hi], "background":[γ,q,d,ξ], "initial":[...],
///  "updates":[{"t","pos","old","new"}]}; scattered traces add
/// "background_period" and per-phase background symbols.
nlohmann::json trace_to_json(const ACATrace& trace, const TuringMachine& tm);
ACATrace trace_from_json(const nlohmann::json& j, const TuringMachine& tm);

}  // namespace acasim
