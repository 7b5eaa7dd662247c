#include "itx/cli.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "itx/behavior.hpp"
#include "itx/fixtures.hpp"
#include "itx/laws.hpp"

namespace itx {
namespace {

std::string join(const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t k = 0; k < names.size(); ++k) {
    if (k > 0) out += ", ";
    out += names[k];
  }
  return out;
}

std::vector<std::string> behavior_names() {
  std::vector<std::string> names;
  for (const BehaviorEntry& e : behavior_registry()) names.push_back(e.name);
  return names;
}

std::vector<std::string> sim_names() {
  std::vector<std::string> names;
  for (const SimEntry& e : sim_registry()) names.push_back(e.name);
  return names;
}

int unknown_name(std::ostream& err, const std::string& what,
                 const std::string& name,
                 const std::vector<std::string>& candidates) {
  err << "unknown " << what << " '" << name
      << "'; candidates: " << join(candidates) << "\n";
  return 2;
}

std::string flat_text(const std::vector<Value>& elements) {
  std::string out = "[";
  for (std::size_t k = 0; k < elements.size(); ++k) {
    if (k > 0) out += ", ";
    out += decode_text(elements[k].encode());
  }
  return out + "]";
}

nlohmann::json flat_json(const std::vector<Value>& elements) {
  nlohmann::json arr = nlohmann::json::array();
  for (const Value& v : elements) {
    if (v.is(Value::Kind::Nat))
      arr.push_back(v.as_nat());
    else
      arr.push_back(decode_text(v.encode()));
  }
  return arr;
}

/// Streams print as flat element lists; anything branching prints as a
/// depth-bounded tree. `take` asks for that many stream elements and falls
/// back to the tree rendering when the behavior is not stream shaped.
int print_behavior(const CliConfig& cfg, const Behavior& behavior,
                   std::ostream& out) {
  std::size_t count = cfg.take > 0 ? cfg.take : cfg.depth;
  std::optional<std::vector<Value>> flat = take_stream(behavior, count);
  if (flat.has_value()) {
    if (cfg.format == "json")
      out << flat_json(*flat).dump() << "\n";
    else
      out << flat_text(*flat) << "\n";
    return 0;
  }
  TruncTree tree = truncate(behavior, cfg.depth, Budget{cfg.budget});
  if (cfg.format == "json")
    out << trunc_to_json(tree).dump(2) << "\n";
  else
    out << trunc_to_text(tree);
  return 0;
}

int cmd_list(const CliConfig& cfg, std::ostream& out) {
  if (cfg.format == "json") {
    nlohmann::json j;
    j["systems"] = nlohmann::json::array();
    for (const auto& [name, w] : system_registry()) j["systems"].push_back(name);
    j["behaviors"] = nlohmann::json::array();
    for (const BehaviorEntry& e : behavior_registry())
      j["behaviors"].push_back(
          {{"name", e.name}, {"over", e.over}, {"seeded", e.seeded}});
    j["sims"] = nlohmann::json::array();
    for (const SimEntry& e : sim_registry())
      j["sims"].push_back({{"name", e.name},
                           {"kind", e.kind},
                           {"source", e.source},
                           {"target", e.target}});
    out << j.dump(2) << "\n";
    return 0;
  }
  out << "systems:\n";
  for (const auto& [name, w] : system_registry()) out << "  " << name << "\n";
  out << "behaviors:\n";
  for (const BehaviorEntry& e : behavior_registry()) {
    out << "  " << e.name << "  (over " << e.over;
    if (e.seeded) out << ", seeded";
    out << ")\n";
  }
  out << "simulations:\n";
  for (const SimEntry& e : sim_registry())
    out << "  " << e.name << "  (" << e.kind << ": " << e.source << " -> "
        << e.target << ")\n";
  return 0;
}

int cmd_show(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  const BehaviorEntry* entry = find_behavior(cfg.input);
  if (entry == nullptr)
    return unknown_name(err, "behavior", cfg.input, behavior_names());
  return print_behavior(cfg, entry->make(cfg.seed), out);
}

int cmd_transduce(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  const SimEntry* sim = find_sim(cfg.sim);
  if (sim == nullptr)
    return unknown_name(err, "simulation", cfg.sim, sim_names());
  const BehaviorEntry* input = find_behavior(cfg.input);
  if (input == nullptr)
    return unknown_name(err, "behavior", cfg.input, behavior_names());
  if (sim->source != "*" && sim->source != input->over) {
    err << "simulation '" << sim->name << "' reads inputs over '" << sim->source
        << "', but behavior '" << input->name << "' runs over '" << input->over
        << "'\n";
    return 2;
  }
  return print_behavior(cfg, sim->eval(input->make(cfg.seed)), out);
}

int cmd_bisim(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  const BehaviorEntry* lhs = find_behavior(cfg.left);
  if (lhs == nullptr)
    return unknown_name(err, "behavior", cfg.left, behavior_names());
  const BehaviorEntry* rhs = find_behavior(cfg.right);
  if (rhs == nullptr)
    return unknown_name(err, "behavior", cfg.right, behavior_names());
  BisimResult result = bisim_depth(lhs->make(cfg.seed), rhs->make(cfg.seed),
                                   cfg.depth, Budget{cfg.budget});
  if (cfg.format == "json") {
    nlohmann::json j{{"related", result.related},
                     {"depth", cfg.depth},
                     {"notes", result.notes}};
    out << j.dump() << "\n";
  } else {
    out << (result.related ? "bisimilar" : "not bisimilar") << " (depth "
        << cfg.depth << ")\n";
    for (const std::string& note : result.notes) err << "note: " << note << "\n";
  }
  return result.related ? 0 : 1;
}

int cmd_laws(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  LawParams params;
  // The suites pick feasible depths on their own; an explicit --depth only
  // overrides the stream depth (some checks grow exponentially with it).
  if (cfg.depth_given) params.stream_depth = cfg.depth;
  params.budget = Budget{cfg.budget};
  params.seed = cfg.seed;
  std::vector<LawCheck> checks;
  if (cfg.suite.empty()) {
    checks = run_all_law_suites(params);
  } else {
    try {
      checks = run_law_suite(cfg.suite, params);
    } catch (const ShapeError&) {
      return unknown_name(err, "law suite", cfg.suite, law_suite_names());
    }
    for (LawCheck& check : checks) check.name = cfg.suite + "/" + check.name;
  }
  std::size_t failures = 0;
  for (const LawCheck& check : checks)
    if (!check.pass) ++failures;
  if (cfg.format == "json") {
    nlohmann::json j;
    j["checks"] = nlohmann::json::array();
    for (const LawCheck& check : checks)
      j["checks"].push_back({{"name", check.name},
                             {"pass", check.pass},
                             {"detail", check.detail}});
    j["failures"] = failures;
    out << j.dump(2) << "\n";
  } else {
    for (const LawCheck& check : checks) {
      if (check.pass) {
        out << "PASS " << check.name << "\n";
      } else {
        out << "FAIL " << check.name;
        if (!check.detail.empty()) out << ": " << check.detail;
        out << "\n";
      }
    }
    out << checks.size() << " checks, " << failures << " failures\n";
  }
  return failures == 0 ? 0 : 1;
}

}  // namespace

int run_command(const CliConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.command == "list") return cmd_list(config, out);
    if (config.command == "show") return cmd_show(config, out, err);
    if (config.command == "transduce") return cmd_transduce(config, out, err);
    if (config.command == "bisim") return cmd_bisim(config, out, err);
    if (config.command == "laws") return cmd_laws(config, out, err);
    err << "unknown command '" << config.command
        << "'; candidates: list, show, transduce, bisim, laws\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CliConfig cfg;
  CLI::App app{"transducers over indexed interaction systems"};
  app.require_subcommand(1);

  CLI::App* list = app.add_subcommand(
      "list", "list registered systems, behaviors and simulations");
  CLI::App* show =
      app.add_subcommand("show", "print a registered behavior, truncated");
  CLI::App* transduce = app.add_subcommand(
      "transduce", "run a simulation against a registered behavior");
  CLI::App* bisim = app.add_subcommand(
      "bisim", "compare two registered behaviors to a bounded depth");
  CLI::App* laws =
      app.add_subcommand("laws", "run law suites and report pass/fail");

  for (CLI::App* sub : {list, show, transduce, bisim, laws})
    sub->add_option("--format", cfg.format, "output format (text | json)")
        ->check(CLI::IsMember({"text", "json"}));
  for (CLI::App* sub : {show, transduce, bisim, laws}) {
    sub->add_option("--depth", cfg.depth, "truncation / comparison depth");
    sub->add_option("--budget", cfg.budget, "per-axis enumeration bound");
    sub->add_option("--seed", cfg.seed, "seed for seeded fixtures");
  }
  for (CLI::App* sub : {show, transduce})
    sub->add_option("--take", cfg.take, "stream elements to print");

  show->add_option("--input", cfg.input, "behavior name")->required();
  transduce->add_option("--sim", cfg.sim, "simulation name")->required();
  transduce->add_option("--input", cfg.input, "behavior name")->required();
  bisim->add_option("--left", cfg.left, "behavior name")->required();
  bisim->add_option("--right", cfg.right, "behavior name")->required();
  laws->add_option("--suite", cfg.suite, "suite name (default: every suite)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  for (const CLI::App* sub : {list, show, transduce, bisim, laws})
    if (sub->parsed()) cfg.command = sub->get_name();
  cfg.depth_given = laws->count("--depth") > 0;
  return run_command(cfg, out, err);
}

}  // namespace itx
