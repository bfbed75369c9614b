// Command-line front end: compile machines to asynchronous rules, run and
// render evolutions, verify simulations against the reference interpreter,
// analyze updating sequences, and benchmark slowdowns.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "acasim/constructions.hpp"
#include "acasim/render.hpp"
#include "acasim/sequences.hpp"
#include "acasim/tm.hpp"
#include "acasim/verifier.hpp"

namespace {

using namespace acasim;

TuringMachine load_machine(const std::string& spec) {
  for (const std::string& name : builtin_machine_names())
    if (name == spec) return builtin_machine(spec);
  std::ifstream in(spec);
  if (!in) throw std::invalid_argument("no builtin machine or readable file '" + spec + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_tm(ss.str());
}

std::pair<int64_t, int64_t> parse_window(const std::string& s) {
  size_t dots = s.find("..");
  if (dots == std::string::npos)
    throw std::invalid_argument("window wants <lo>..<hi>, e.g. -2..2");
  return {std::stoll(s.substr(0, dots)), std::stoll(s.substr(dots + 2))};
}

bool ansi_enabled() {
  const char* v = std::getenv("ACA_COLOR");
  return v != nullptr && std::string(v) != "0";
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
    out << text;
  }
}

struct CommonArgs {
  std::string tm_spec;
  std::string input_word;
  int construction = 1;
  int64_t gap = 0;  // 0 = not set
  std::string seq_spec = "quadratic";
  std::string format = "ascii";
  std::string out_path;
  std::string window;

  void add_machine_flags(CLI::App* cmd, bool with_seq = true) {
    cmd->add_option("--tm", tm_spec, "builtin machine name or path to a machine file")
        ->required();
    cmd->add_option("--input", input_word, "input word over the machine's input alphabet");
    cmd->add_option("--construction", construction, "construction id (1, 2 or 3)")
        ->check(CLI::Range(1, 3))
        ->required();
    cmd->add_option("--gap", gap, "support gap p (construction 3 only)");
    if (with_seq)
      cmd->add_option("--seq", seq_spec,
                      "sequence spec: quadratic | sweep | scattered:p=2 | "
                      "randomwalk:seed=42 | explicit:@file | cyclic:0,-1,0,1 | "
                      "inserted:base=<spec>,@file");
  }

  CompiledACA compile_machine(const TuringMachine& tm) const {
    if (construction == 3 && gap < 1)
      throw CLI::ValidationError("--gap", "construction 3 requires --gap >= 1");
    if (construction != 3 && gap != 0)
      throw CLI::ValidationError("--gap", "--gap only applies to construction 3");
    return compile_construction(tm, construction, construction == 3 ? gap : 1);
  }
};

int cmd_compile(const CommonArgs& args, size_t vectors) {
  TuringMachine tm = load_machine(args.tm_spec);
  CompiledACA aca = args.compile_machine(tm);
  emit(rule_manifest(aca, vectors).dump(2), args.out_path);
  return 0;
}

int cmd_run(const CommonArgs& args, uint64_t steps) {
  TuringMachine tm = load_machine(args.tm_spec);
  CompiledACA aca = args.compile_machine(tm);
  std::vector<SymbolId> input = tm.parse_word(args.input_word);
  Configuration cfg = compiled_initial(aca, input);
  UpdateSequence seq = parse_sequence_spec(args.seq_spec);
  ACATrace trace = evolve(cfg, aca.rule, seq, steps);
  if (args.format == "json") {
    emit(trace_to_json(trace, tm).dump(2), args.out_path);
  } else {
    RenderOptions opts;
    opts.ansi = args.out_path.empty() && ansi_enabled();
    if (!args.window.empty()) {
      auto [lo, hi] = parse_window(args.window);
      opts.window_lo = lo;
      opts.window_hi = hi;
    }
    emit(render_ascii(trace, tm, opts), args.out_path);
  }
  return 0;
}

int verdict_exit_code(Verdict v) {
  switch (v) {
    case Verdict::kPass: return 0;
    case Verdict::kFail: return 2;
    case Verdict::kBudgetExceeded: return 3;
  }
  return 2;
}

int cmd_verify(const CommonArgs& args, uint64_t tm_steps, uint64_t budget, double slack) {
  TuringMachine tm = load_machine(args.tm_spec);
  CompiledACA aca = args.compile_machine(tm);
  std::vector<SymbolId> input = tm.parse_word(args.input_word);
  UpdateSequence seq = parse_sequence_spec(args.seq_spec);
  if (budget == 0) {
    double base = double(slowdown_bound(args.construction, tm_steps, aca.gap));
    budget = uint64_t(std::ceil(base * slack));
  }
  SimulationReport report =
      args.construction == 3
          ? verify_scattered(tm, input, aca, ScatterMap{aca.gap}, seq, tm_steps, budget)
          : verify_strict(tm, input, aca, seq, tm_steps, budget);
  if (args.format == "json") {
    emit(report_to_json(report).dump(2), args.out_path);
  } else {
    std::ostringstream out;
    out << verdict_name(report.verdict) << " machine=" << tm.name()
        << " construction=" << report.construction_id << " seq=" << report.sequence_spec
        << " tm_steps=" << report.tm_steps << " budget_used=" << report.budget_used
        << "\n";
    if (report.verdict == Verdict::kPass) {
      out << "matches:";
      for (const MatchEntry& m : report.matches)
        out << " (" << m.tm_time << "," << m.aca_time << ")";
      out << "\nbound " << report.bound_formula << " = " << report.bound_value
          << (report.bound_ok ? " satisfied" : " exceeded") << "\n";
    } else {
      out << "reason: " << report.reason << "\n";
    }
    emit(out.str(), args.out_path);
  }
  return verdict_exit_code(report.verdict);
}

int cmd_analyze(const std::string& seq_spec, uint64_t prefix, const std::string& window,
                const std::string& format, const std::string& out_path) {
  UpdateSequence seq = parse_sequence_spec(seq_spec);
  auto [lo, hi] = parse_window(window);
  SeqAnalysis a = analyze(seq, prefix, lo, hi);
  if (format == "json") {
    nlohmann::json j;
    j["window"] = {a.window_lo, a.window_hi};
    j["prefix_len"] = a.prefix_len;
    nlohmann::json counts;
    for (const auto& [cell, n] : a.per_cell_counts) counts[std::to_string(cell)] = n;
    j["per_cell_counts"] = counts;
    j["min_count"] = a.min_count;
    j["support_gap"] = a.support_gap;
    j["universality_witness_k"] = a.universality_witness_k;
    emit(j.dump(2), out_path);
  } else {
    std::ostringstream out;
    out << "sequence " << seq.spec() << ", prefix " << a.prefix_len << ", window ["
        << a.window_lo << "," << a.window_hi << "]\n";
    out << "counts:";
    for (const auto& [cell, n] : a.per_cell_counts) out << " " << cell << ":" << n;
    out << "\nmin_count " << a.min_count << ", support_gap " << a.support_gap
        << ", universality_witness_k " << a.universality_witness_k << "\n";
    emit(out.str(), out_path);
  }
  return 0;
}

int cmd_bench(const CommonArgs& args, uint64_t t_from, uint64_t t_to, double slack) {
  TuringMachine tm = load_machine(args.tm_spec);
  CompiledACA aca = args.compile_machine(tm);
  std::vector<SymbolId> input = tm.parse_word(args.input_word);
  UpdateSequence seq = parse_sequence_spec(args.seq_spec);
  uint64_t budget =
      uint64_t(std::ceil(double(slowdown_bound(args.construction, t_to, aca.gap)) * slack));
  SimulationReport report =
      args.construction == 3
          ? verify_scattered(tm, input, aca, ScatterMap{aca.gap}, seq, t_to, budget)
          : verify_strict(tm, input, aca, seq, t_to, budget);
  std::ostringstream out;
  out << "T,tprime,bound,ok,construction,seq\n";
  for (uint64_t t = t_from; t <= report.tm_steps; ++t) {
    auto tprime = report.match_time(t);
    if (!tprime) break;
    uint64_t bound = slowdown_bound(args.construction, t, aca.gap);
    out << t << "," << *tprime << "," << bound << "," << (*tprime <= bound ? 1 : 0) << ","
        << args.construction << "," << args.seq_spec << "\n";
  }
  emit(out.str(), args.out_path);
  return report.verdict == Verdict::kPass ? 0 : verdict_exit_code(report.verdict);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"asynchronous cellular automaton simulator & verifier"};
  app.require_subcommand(1);

  CommonArgs compile_args, run_args, verify_args, bench_args;
  size_t compile_vectors = 24;
  uint64_t run_steps = 0;
  uint64_t verify_tm_steps = 1, verify_budget = 0;
  double verify_slack = 1.0, bench_slack = 1.0;
  std::string analyze_seq, analyze_window = "-5..5", analyze_format = "ascii",
              analyze_out;
  uint64_t analyze_prefix = 100;
  uint64_t bench_from = 1, bench_to = 30;

  CLI::App* compile = app.add_subcommand("compile", "emit a JSON rule manifest");
  compile_args.add_machine_flags(compile, /*with_seq=*/false);
  compile->add_option("--vectors", compile_vectors, "number of conformance vectors");
  compile->add_option("--out", compile_args.out_path, "output file (default stdout)");

  CLI::App* run = app.add_subcommand("run", "evolve and render a trace");
  run_args.add_machine_flags(run);
  run->add_option("--steps", run_steps, "number of asynchronous updates")->required();
  run->add_option("--format", run_args.format, "ascii | json")
      ->check(CLI::IsMember({"ascii", "json"}));
  run->add_option("--window", run_args.window, "render window <lo>..<hi>");
  run->add_option("--out", run_args.out_path, "output file (default stdout)");

  CLI::App* verify = app.add_subcommand(
      "verify", "check the simulation against the reference interpreter");
  verify_args.add_machine_flags(verify);
  verify->add_option("--tm-steps", verify_tm_steps, "machine steps to verify")->required();
  verify->add_option("--budget", verify_budget,
                     "update budget (default: slowdown formula x slack)");
  verify->add_option("--slack", verify_slack, "budget multiplier");
  verify->add_option("--format", verify_args.format, "ascii | json")
      ->check(CLI::IsMember({"ascii", "json"}));
  verify->add_option("--out", verify_args.out_path, "output file (default stdout)");

  CLI::App* analyze = app.add_subcommand("analyze", "per-cell update counts of a prefix");
  analyze->add_option("--seq", analyze_seq, "sequence spec")->required();
  analyze->add_option("--prefix", analyze_prefix, "prefix length")->required();
  analyze->add_option("--window", analyze_window, "window <lo>..<hi>");
  analyze->add_option("--format", analyze_format, "ascii | json")
      ->check(CLI::IsMember({"ascii", "json"}));
  analyze->add_option("--out", analyze_out, "output file (default stdout)");

  CLI::App* bench = app.add_subcommand("bench", "CSV of measured vs bounded slowdown");
  bench_args.add_machine_flags(bench);
  bench->add_option("--t-from", bench_from, "first machine step");
  bench->add_option("--t-to", bench_to, "last machine step")->required();
  bench->add_option("--slack", bench_slack, "budget multiplier");
  bench->add_option("--out", bench_args.out_path, "output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (compile->parsed()) return cmd_compile(compile_args, compile_vectors);
    if (run->parsed()) return cmd_run(run_args, run_steps);
    if (verify->parsed())
      return cmd_verify(verify_args, verify_tm_steps, verify_budget, verify_slack);
    if (analyze->parsed())
      return cmd_analyze(analyze_seq, analyze_prefix, analyze_window, analyze_format,
                         analyze_out);
    if (bench->parsed()) return cmd_bench(bench_args, bench_from, bench_to, bench_slack);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
