#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "lss/circuit_io.hpp"
#include "lss/dependency.hpp"
#include "lss/layout.hpp"
#include "lss/oracle.hpp"
#include "lss/scheduler.hpp"
#include "lss/transpiler.hpp"

namespace {

using namespace lss;

// Exit codes: 0 ok, 2 usage, 3 parse/validation, 4 capacity, 5 scheduling,
// 6 domain/invariant, 7 i/o.
enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kParse = 3,
  kCapacity = 4,
  kScheduling = 5,
  kDomain = 6,
  kIo = 7,
};

void emit_error(const std::string& type, const std::string& message) {
  nlohmann::json j;
  j["error"]["type"] = type;
  j["error"]["message"] = message;
  std::cerr << j.dump() << "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::ios_base::failure("cannot open '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::ios_base::failure("cannot open '" + path + "' for writing");
  }
  out << content;
}

struct LayoutFlags {
  std::string layout_json;
  std::string style = "compact";
  std::size_t aisles = 1;
  std::size_t patches = 1;
  std::size_t n_storage = 1;
  std::size_t n_ancillary = 1;

  void add_to(CLI::App& cmd) {
    cmd.add_option("--layout", layout_json, "layout as a JSON object or a path to one");
    cmd.add_option("--style", style, "layout style: compact|parallelizable");
    cmd.add_option("--aisles", aisles, "number of data aisles (A)");
    cmd.add_option("--patches", patches, "data patches per aisle (P)");
    cmd.add_option("--storage", n_storage, "magic state storage qubits");
    cmd.add_option("--ancillary", n_ancillary, "ancillary qubits");
  }

  LayoutSpec resolve() const {
    if (!layout_json.empty()) {
      std::string text = layout_json;
      if (!text.empty() && text.front() != '{') {
        text = read_file(layout_json);
      }
      return layout_spec_from_json(text);
    }
    LayoutSpec spec;
    const auto parsed = parse_layout_style(style);
    if (!parsed) {
      throw ValidationError("unknown layout style '" + style + "'");
    }
    spec.style = *parsed;
    spec.aisles = aisles;
    spec.patches_per_aisle = patches;
    spec.n_storage = n_storage;
    spec.n_ancillary = n_ancillary;
    return spec;
  }
};

struct ScheduleFlags {
  std::string rule = "trivial";
  std::string assign = "sequential";
  std::int64_t order_seed = -1;
  bool allow_shared_data = false;
  bool no_route_cache = false;

  void add_to(CLI::App& cmd) {
    cmd.add_option("--rule", rule, "dependency rule: serial|trivial|general");
    cmd.add_option("--assign", assign, "qubit placement: sequential|random:<seed>");
    cmd.add_option("--order-seed", order_seed, "shuffle candidate order with this seed");
    cmd.add_flag("--allow-shared-data", allow_shared_data,
                 "let simultaneous commuting operations share a data qubit");
    cmd.add_flag("--no-route-cache", no_route_cache, "disable route memoization");
  }

  DependencyRule resolve_rule() const {
    const auto parsed = parse_dependency_rule(rule);
    if (!parsed) {
      throw ValidationError("unknown dependency rule '" + rule + "'");
    }
    return *parsed;
  }

  ScheduleOptions resolve_options() const {
    ScheduleOptions opts;
    if (order_seed >= 0) opts.order_seed = static_cast<std::uint64_t>(order_seed);
    opts.allow_shared_data = allow_shared_data;
    opts.use_route_cache = !no_route_cache;
    if (const char* env = std::getenv("LSS_ROUTE_CACHE_ENTRIES")) {
      opts.cache_entries = std::strtoull(env, nullptr, 10);
      if (opts.cache_entries == 0) opts.use_route_cache = false;
    }
    if (assign == "sequential") {
      opts.assign = AssignPolicy::Sequential;
    } else if (assign.rfind("random:", 0) == 0) {
      opts.assign = AssignPolicy::Random;
      opts.assign_seed = std::strtoull(assign.c_str() + 7, nullptr, 10);
    } else {
      throw ValidationError("unknown assignment policy '" + assign + "'");
    }
    return opts;
  }
};

nlohmann::json report_json(const Report& report, DependencyRule rule, const LayoutSpec& layout) {
  nlohmann::json j;
  j["EN"] = report.en;
  j["LB"] = report.lb;
  j["UB"] = report.ub;
  j["t_dep_s"] = report.t_dep_s;
  j["t_sch_s"] = report.t_sch_s;
  j["rule"] = std::string(dependency_rule_name(rule));
  j["layout"] = nlohmann::json::parse(layout_spec_to_json(layout));
  return j;
}

int cmd_convert(const std::string& input, const std::string& output) {
  std::size_t n = 0;
  const auto gates = parse_gate_circuit(read_file(input), n);
  write_file(output, emit_circuit(convert_gates(gates, n)));
  return kOk;
}

int cmd_transpile(const std::string& input, const std::string& output, bool fixpoint) {
  const Circuit in = parse_rotation_circuit(read_file(input));
  const TranspileResult result = fixpoint ? optimize_fixpoint(in) : transpile(in);
  write_file(output, emit_circuit(result.circuit));
  nlohmann::json summary;
  summary["input_ops"] = in.ops.size();
  summary["input_pi8"] = in.pi8_count();
  summary["output_ops"] = result.circuit.ops.size();
  summary["output_pi8"] = result.circuit.pi8_count();
  std::cout << summary.dump() << "\n";
  return kOk;
}

int cmd_gen_random(std::size_t m, std::size_t n, double npct, std::uint64_t seed,
                   const std::string& output) {
  RandomSpec spec{m, n, npct, seed};
  const Circuit c = gen_random(spec);
  std::ostringstream header;
  header << "# gen-random m=" << m << " N=" << n << " npct=" << npct << " seed=" << seed
         << "\n";
  write_file(output, header.str() + emit_circuit(c));
  return kOk;
}

int cmd_schedule(const std::string& input, const std::string& output,
                 const LayoutFlags& layout_flags, const ScheduleFlags& sched_flags) {
  const Circuit c = parse_rotation_circuit(read_file(input));
  const LayoutSpec spec = layout_flags.resolve();
  const LayoutGraph g = build_layout(spec);
  const auto result = schedule(c, g, sched_flags.resolve_rule(), sched_flags.resolve_options());
  write_file(output, emit_schedule_json(result.schedule, result.report));
  std::cout << report_json(result.report, result.schedule.rule, spec).dump() << "\n";
  return kOk;
}

int cmd_compare(const std::string& input, const std::string& output,
                const LayoutFlags& layout_flags, const ScheduleFlags& sched_flags) {
  const Circuit raw = parse_rotation_circuit(read_file(input));
  const LayoutSpec spec = layout_flags.resolve();
  const LayoutGraph g = build_layout(spec);
  const DependencyRule rule = sched_flags.resolve_rule();
  const ScheduleOptions opts = sched_flags.resolve_options();

  const auto pre = schedule(raw, g, rule, opts);
  const TranspileResult transpiled = optimize_fixpoint(raw);
  const auto post = schedule(transpiled.circuit, g, rule, opts);

  nlohmann::json j;
  j["pre"] = report_json(pre.report, rule, spec);
  j["post"] = report_json(post.report, rule, spec);
  j["pre"]["ops"] = raw.ops.size();
  j["post"]["ops"] = transpiled.circuit.ops.size();
  const double reduction =
      pre.report.en == 0
          ? 0.0
          : 100.0 * (static_cast<double>(pre.report.en) - static_cast<double>(post.report.en)) /
                static_cast<double>(pre.report.en);
  j["en_reduction_pct"] = reduction;
  write_file(output, j.dump(2) + "\n");
  return kOk;
}

int cmd_report(const std::vector<std::string>& inputs, const std::string& rules_csv,
               const std::string& output, const LayoutFlags& layout_flags,
               const ScheduleFlags& sched_flags, std::size_t threads) {
  std::vector<DependencyRule> rules;
  std::stringstream rule_stream(rules_csv);
  std::string rule_name;
  while (std::getline(rule_stream, rule_name, ',')) {
    const auto parsed = parse_dependency_rule(rule_name);
    if (!parsed) {
      throw ValidationError("unknown dependency rule '" + rule_name + "'");
    }
    rules.push_back(*parsed);
  }
  if (rules.empty()) {
    throw ValidationError("no dependency rules given");
  }
  const LayoutSpec spec = layout_flags.resolve();
  const ScheduleOptions opts = sched_flags.resolve_options();

  struct Row {
    std::string circuit;
    DependencyRule rule;
    Report report;
    double avg_width = 0.0;
  };
  std::vector<Row> rows(inputs.size() * rules.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::string first_error;
  std::mutex error_mutex;

  auto worker = [&] {
    for (std::size_t k = next.fetch_add(1); k < rows.size(); k = next.fetch_add(1)) {
      if (failed.load()) return;
      const std::string& path = inputs[k / rules.size()];
      const DependencyRule rule = rules[k % rules.size()];
      try {
        const Circuit c = parse_rotation_circuit(read_file(path));
        const LayoutGraph g = build_layout(spec);
        const auto result = schedule(c, g, rule, opts);
        const auto metrics = graph_metrics(build_dependency(c, rule));
        rows[k] = Row{path, rule, result.report, metrics.avg_width};
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!failed.exchange(true)) first_error = e.what();
      }
    }
  };
  const std::size_t worker_count = std::max<std::size_t>(1, std::min(threads, rows.size()));
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < worker_count; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failed.load()) {
    throw ValidationError(first_error);
  }

  std::ostringstream csv;
  csv << "circuit,rule,EN,LB,UB,W_bar,t_dep_s,t_sch_s,t_tot_s,gap_pct\n";
  for (std::size_t c = 0; c < inputs.size(); ++c) {
    std::size_t best = SIZE_MAX;
    for (std::size_t r = 0; r < rules.size(); ++r) {
      best = std::min(best, rows[c * rules.size() + r].report.en);
    }
    for (std::size_t r = 0; r < rules.size(); ++r) {
      const Row& row = rows[c * rules.size() + r];
      csv << row.circuit << ',' << dependency_rule_name(row.rule) << ',' << row.report.en << ','
          << row.report.lb << ',' << row.report.ub << ',' << row.avg_width << ','
          << row.report.t_dep_s << ',' << row.report.t_sch_s << ',' << row.report.t_tot_s << ','
          << compute_gap(row.report.en, best) << "\n";
    }
  }
  write_file(output, csv.str());
  return kOk;
}

int cmd_oracle(const std::string& input, const LayoutFlags& layout_flags,
               const ScheduleFlags& sched_flags) {
  const Circuit c = parse_rotation_circuit(read_file(input));
  const LayoutSpec spec = layout_flags.resolve();
  const LayoutGraph g = build_layout(spec);
  const std::size_t t_star = oracle::exact_min_steps(c, g, sched_flags.resolve_rule(),
                                                     sched_flags.allow_shared_data);
  nlohmann::json j;
  j["exact_min_steps"] = t_star;
  std::cout << j.dump() << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lss - lattice surgery scheduling toolchain"};
  app.require_subcommand(1);

  std::string input;
  std::string output;

  auto* convert = app.add_subcommand("convert", "convert a Clifford+T gate file to rotations");
  convert->add_option("-i,--input", input, "gate circuit file")->required();
  convert->add_option("-o,--output", output, "rotation circuit file (default stdout)");

  bool fixpoint = false;
  auto* transpile_cmd = app.add_subcommand("transpile", "remove Clifford rotations");
  transpile_cmd->add_option("-i,--input", input, "rotation circuit file")->required();
  transpile_cmd->add_option("-o,--output", output, "output circuit file (default stdout)");
  transpile_cmd->add_flag("--fixpoint", fixpoint,
                          "repeat transpile + layer merging until stable");

  std::size_t gen_m = 100;
  std::size_t gen_n = 10;
  double gen_npct = 0.5;
  std::uint64_t gen_seed = 0;
  auto* gen = app.add_subcommand("gen-random", "generate a random pi/8 circuit");
  gen->add_option("-m,--length", gen_m, "number of pi/8 rotations");
  gen->add_option("-N,--qubits", gen_n, "qubit count");
  gen->add_option("--npct", gen_npct, "mean support fraction in (0, 1]");
  gen->add_option("--seed", gen_seed, "PRNG seed");
  gen->add_option("-o,--output", output, "output circuit file (default stdout)");

  LayoutFlags layout_flags;
  ScheduleFlags sched_flags;

  auto* sched = app.add_subcommand("schedule", "schedule a rotation circuit onto a layout");
  sched->add_option("-i,--input", input, "rotation circuit file")->required();
  sched->add_option("-o,--output", output, "schedule JSON file (default stdout)");
  layout_flags.add_to(*sched);
  sched_flags.add_to(*sched);

  auto* compare = app.add_subcommand("compare", "schedule raw vs transpiled circuit");
  compare->add_option("-i,--input", input, "rotation circuit file")->required();
  compare->add_option("-o,--output", output, "comparison JSON file (default stdout)");
  layout_flags.add_to(*compare);
  sched_flags.add_to(*compare);

  std::vector<std::string> report_inputs;
  std::string report_rules = "serial,trivial,general";
  std::size_t report_threads = 1;
  auto* report = app.add_subcommand("report", "CSV metrics for circuits under several rules");
  report->add_option("-i,--inputs", report_inputs, "rotation circuit files")->required();
  report->add_option("--rules", report_rules, "comma-separated dependency rules");
  report->add_option("--threads", report_threads, "worker threads for independent runs");
  report->add_option("-o,--output", output, "CSV file (default stdout)");
  layout_flags.add_to(*report);
  sched_flags.add_to(*report);

  auto* oracle_cmd = app.add_subcommand("oracle", "exact minimum-step count (debug)");
  oracle_cmd->group("");  // hidden
  oracle_cmd->add_option("-i,--input", input, "rotation circuit file")->required();
  layout_flags.add_to(*oracle_cmd);
  sched_flags.add_to(*oracle_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e);  // --help
    }
    emit_error("usage", e.what());
    return kUsage;
  }

  try {
    if (convert->parsed()) return cmd_convert(input, output);
    if (transpile_cmd->parsed()) return cmd_transpile(input, output, fixpoint);
    if (gen->parsed()) return cmd_gen_random(gen_m, gen_n, gen_npct, gen_seed, output);
    if (sched->parsed()) return cmd_schedule(input, output, layout_flags, sched_flags);
    if (compare->parsed()) return cmd_compare(input, output, layout_flags, sched_flags);
    if (report->parsed()) {
      return cmd_report(report_inputs, report_rules, output, layout_flags, sched_flags,
                        report_threads);
    }
    if (oracle_cmd->parsed()) return cmd_oracle(input, layout_flags, sched_flags);
  } catch (const ParseError& e) {
    emit_error("parse", e.what());
    return kParse;
  } catch (const ValidationError& e) {
    emit_error("validation", e.what());
    return kParse;
  } catch (const CapacityError& e) {
    emit_error("capacity", e.what());
    return kCapacity;
  } catch (const SchedulingError& e) {
    emit_error("scheduling", e.what());
    return kScheduling;
  } catch (const DomainError& e) {
    emit_error("domain", e.what());
    return kDomain;
  } catch (const InvariantViolation& e) {
    emit_error("invariant", e.what());
    return kDomain;
  } catch (const std::ios_base::failure& e) {
    emit_error("io", e.what());
    return kIo;
  } catch (const std::exception& e) {
    emit_error("internal", e.what());
    return kDomain;
  }
  return kOk;
}
