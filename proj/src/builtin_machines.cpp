#include <map>
#include <stdexcept>

#include "acasim/tm.hpp"

namespace acasim {

namespace {

// In-repo fixture machines. The same sources are shipped under machines/.
constexpr const char* kZigzag = R"(# Shuttles over the tape forever: 1s rightward, 0s leftward.
machine zigzag
blank _
input 0 1
work 0 1 _
states qR qL
initial qR
final
delta qR _ -> qL 1 L
delta qR 0 -> qR 1 R
delta qR 1 -> qR 1 R
delta qL _ -> qR 0 R
delta qL 0 -> qL 0 L
delta qL 1 -> qL 0 L
)";

constexpr const char* kUnaryInc = R"(# Appends one 1 to a unary number, then halts.
machine unary-inc
blank _
input 1
work 1 _
states scan done
initial scan
final done
delta scan 1 -> scan 1 R
delta scan _ -> done 1 R
delta done 1 -> done 1 R
delta done _ -> done _ R
)";

constexpr const char* kBinCounter = R"(# Counts forever in binary, least-significant bit at cell 0.
machine bin-counter
blank _
input 0 1
work 0 1 _
states inc back
initial inc
final
delta inc 0 -> back 1 L
delta inc 1 -> inc 0 R
delta inc _ -> back 1 L
delta back 0 -> back 0 L
delta back 1 -> back 1 L
delta back _ -> inc _ R
)";

constexpr const char* kPalindrome = R"(# Decides whether the input is a palindrome; erases matched ends.
machine palindrome
blank _
input a b
work a b _
states q0 seekA endA seekB endB back acc rej
initial q0
final acc rej
delta q0 a -> seekA _ R
delta q0 b -> seekB _ R
delta q0 _ -> acc _ R
delta seekA a -> seekA a R
delta seekA b -> seekA b R
delta seekA _ -> endA _ L
delta endA a -> back _ L
delta endA b -> rej b L
delta endA _ -> acc _ R
delta seekB a -> seekB a R
delta seekB b -> seekB b R
delta seekB _ -> endB _ L
delta endB b -> back _ L
delta endB a -> rej a L
delta endB _ -> acc _ R
delta back a -> back a L
delta back b -> back b L
delta back _ -> q0 _ R
delta acc a -> acc a R
delta acc b -> acc b R
delta acc _ -> acc _ R
delta rej a -> rej a R
delta rej b -> rej b R
delta rej _ -> rej _ R
)";

const std::map<std::string, const char*, std::less<>>& source_table() {
  static const std::map<std::string, const char*, std::less<>> table = {
      {"zigzag", kZigzag},
      {"unary-inc", kUnaryInc},
      {"bin-counter", kBinCounter},
      {"palindrome", kPalindrome},
  };
  return table;
}

}  // namespace

TuringMachine zigzag_machine() { return parse_tm(kZigzag); }

const std::string& builtin_machine_source(std::string_view name) {
  auto it = source_table().find(name);
  if (it == source_table().end())
    throw std::invalid_argument("no builtin machine named '" + std::string(name) + "'");
  static std::map<std::string, std::string, std::less<>> cache;
  auto [pos, inserted] = cache.try_emplace(it->first, it->second);
  return pos->second;
}

const TuringMachine& builtin_machine(std::string_view name) {
  static std::map<std::string, TuringMachine, std::less<>> cache;
  if (auto it = cache.find(name); it != cache.end()) return it->second;
  auto it = source_table().find(name);
  if (it == source_table().end())
    throw std::invalid_argument("no builtin machine named '" + std::string(name) + "'");
  return cache.emplace(it->first, parse_tm(it->second)).first->second;
}

std::vector<std::string> builtin_machine_names() {
  std::vector<std::string> names;
  for (const auto& [name, _] : source_table()) names.push_back(name);
  return names;
}

}  // namespace acasim
