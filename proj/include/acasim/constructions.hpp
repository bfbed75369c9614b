#pragma once

#include <memory>
#include <string>
#include <vector>

#include "acasim/aca.hpp"
#include "acasim/tm.hpp"

#include <nlohmann/json_fwd.hpp>

namespace acasim {

/// Arithmetic support map i -> gap*i. Gap 1 is the dense (identity) layout.
struct ScatterMap {
  int64_t gap = 1;
  int64_t psi(int64_t i) const { return gap * i; }
};

/// A machine compiled to an asynchronous rule over Γ × Q × D × C.
struct CompiledACA {
  int construction_id = 1;  // 1 = head-tracking, 2 = headless, 3 = scattered
  int64_t gap = 1;          // support gap; radius of the rule for id 3
  std::shared_ptr<const TuringMachine> machine;
  std::vector<uint8_t> ctl_values;
  LocalRule rule;

  size_t alphabet_size() const {
    return machine->symbol_count() * machine->state_count() * 2 * ctl_values.size();
  }
};

CompiledACA construction1(const TuringMachine& tm);
CompiledACA construction2(const TuringMachine& tm);
CompiledACA construction3(const TuringMachine& tm, int64_t gap);
CompiledACA compile_construction(const TuringMachine& tm, int construction_id,
                                 int64_t gap = 1);

Configuration construction1_initial(const TuringMachine& tm,
                                    std::span<const SymbolId> input);
Configuration construction2_initial(const TuringMachine& tm,
                                    std::span<const SymbolId> input);
Configuration construction3_initial(const TuringMachine& tm,
                                    std::span<const SymbolId> input,
                                    const ScatterMap& scatter);

/// Start configuration matching the compiled rule's construction; the
/// two-argument form uses the compiled gap as the support map.
Configuration compiled_initial(const CompiledACA& aca, std::span<const SymbolId> input,
                               const ScatterMap& scatter);
Configuration compiled_initial(const CompiledACA& aca, std::span<const SymbolId> input);

/// Bitmask of non-otherwise clauses matching the neighborhood (bit i =
/// clause i of clause_names). Used by the exclusivity scan.
unsigned clause_match_mask(const CompiledACA& aca, std::span<const ProductSymbol> nbhd);
const std::vector<std::string>& clause_names(int construction_id);

/// All product symbols of the compiled alphabet, in a fixed enumeration order.
std::vector<ProductSymbol> enumerate_alphabet(const CompiledACA& aca);

/// JSON manifest: alphabet spec, construction id, radius, machine name, and
/// deterministic (neighborhood, output) conformance vectors.
nlohmann::json rule_manifest(const CompiledACA& aca, size_t num_vectors = 24);

}  // namespace acasim
