// Command-line driver: learn schemata from experiences, inspect scopes,
// retrieve and plan, classify problems, generate benchmark instances and run
// suites.
//
// Exit codes: 0 ok, 1 usage, 2 parse error, 3 no applicable schema,
// 4 planning failure.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ebpd/bench.hpp"
#include "ebpd/generators.hpp"
#include "ebpd/learning.hpp"
#include "ebpd/planner.hpp"
#include "ebpd/text.hpp"

using namespace ebpd;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitParse = 2;
constexpr int kExitNoSchema = 3;
constexpr int kExitPlanning = 4;

struct Options {
  std::string experience_path, domain_path, problem_path, library_path, output_path;
  std::vector<std::string> problem_paths;
  bool dot = false;
  std::string metrics_path;
  int bridge_depth = 3;

  std::string stack_class = "base";
  int blocks = 4;
  std::uint64_t seed = 0;
  int waypoints = 2, objectives = 5, cameras = 5, goals = 5;

  std::string suite_config;
};

void emit(const std::string& path, const std::string& content) {
  if (path.empty())
    std::cout << content;
  else
    text::write_file(path, content);
}

int cmd_learn(const Options& opt, bool scope_only) {
  const model::Domain domain =
      text::parse_domain(text::read_file(opt.domain_path), opt.domain_path);
  const model::Experience exp =
      text::parse_experience(text::read_file(opt.experience_path), opt.experience_path);
  text::validate_against_domain(exp, domain);
  const schema::ActivitySchema learned = learning::learn_schema(exp, domain);
  if (scope_only) {
    if (opt.dot)
      emit(opt.output_path, logic::to_dot(learned.scope));
    else
      emit(opt.output_path, logic::serialize_scope(learned.scope) + "\n");
  } else {
    emit(opt.output_path, text::serialize_schema(learned));
  }
  return kExitOk;
}

int cmd_retrieve(const Options& opt) {
  const model::Problem problem =
      text::parse_problem(text::read_file(opt.problem_path), opt.problem_path);
  planning::SchemaLibrary lib{
      text::parse_schema_library(text::read_file(opt.library_path), opt.library_path)};
  const schema::ActivitySchema* chosen = planning::retrieve(problem, lib);
  if (chosen == nullptr) {
    std::cout << "no-schema\n";
    return kExitNoSchema;
  }
  std::cout << chosen->name << "\n";
  return kExitOk;
}

int cmd_plan(const Options& opt) {
  const model::Domain domain =
      text::parse_domain(text::read_file(opt.domain_path), opt.domain_path);
  const model::Problem problem =
      text::parse_problem(text::read_file(opt.problem_path), opt.problem_path);
  planning::SchemaLibrary lib{
      text::parse_schema_library(text::read_file(opt.library_path), opt.library_path)};

  planning::PlannerConfig config;
  config.bridge_depth = opt.bridge_depth;
  const planning::PlanResult result = planning::solve(problem, lib, domain, config);

  std::ostringstream plan_text;
  plan_text << "(:plan";
  for (const auto& a : result.plan) plan_text << "\n  " << model::to_string(a);
  plan_text << ")\n";

  std::ostringstream metrics;
  metrics << problem.name << "," << (result.schema_used.empty() ? "-" : result.schema_used) << ","
          << result.elapsed.count() / 1000.0 << "," << result.nodes_evaluated << ","
          << result.plan.size() << "," << planning::to_string(result.status) << "\n";

  if (result.status == planning::PlanStatus::Solved) emit(opt.output_path, plan_text.str());
  if (!opt.metrics_path.empty())
    text::write_file(opt.metrics_path,
                     "problem,schema,plan_ms,nodes,plan_len,status\n" + metrics.str());
  std::cerr << metrics.str();

  switch (result.status) {
    case planning::PlanStatus::Solved: return kExitOk;
    case planning::PlanStatus::NoSchema: return kExitNoSchema;
    default:
      std::cerr << result.message << "\n";
      return kExitPlanning;
  }
}

int cmd_classify(const Options& opt) {
  std::vector<model::Problem> problems;
  for (const auto& path : opt.problem_paths)
    problems.push_back(text::parse_problem(text::read_file(path), path));
  const gen::ClassificationReport report = gen::classify(problems);

  std::ostringstream os;
  for (std::size_t s = 0; s < report.sets.size(); ++s) {
    os << "set" << s << ":";
    for (const auto idx : report.sets[s]) os << ' ' << problems[idx].name;
    os << "\n";
  }
  std::cout << os.str();
  if (!opt.metrics_path.empty()) {
    std::ostringstream csv;
    csv << "problem,set_id,abstraction_ms\n";
    for (std::size_t s = 0; s < report.sets.size(); ++s)
      for (const auto idx : report.sets[s])
        csv << problems[idx].name << ",set" << s << "," << report.abstraction_ms[idx] << "\n";
    text::write_file(opt.metrics_path, csv.str());
  }
  return kExitOk;
}

int cmd_gen_stack(const Options& opt) {
  const auto cls = gen::stack_class_from_string(opt.stack_class);
  if (!cls) {
    std::cerr << "unknown stack class '" << opt.stack_class << "' (base, i, ii, iii)\n";
    return kExitUsage;
  }
  const model::Problem p = gen::gen_stack({*cls, opt.blocks, opt.blocks, opt.seed});
  emit(opt.output_path, text::serialize_problem(p));
  return kExitOk;
}

int cmd_gen_rover(const Options& opt) {
  const model::Problem p =
      gen::gen_rover({opt.waypoints, opt.objectives, opt.cameras, opt.goals, opt.seed});
  emit(opt.output_path, text::serialize_problem(p));
  return kExitOk;
}

int cmd_bench(const Options& opt) {
  const bench::SuiteConfig config = bench::load_config(opt.suite_config);
  const bench::SuiteResult result = bench::run_suite(config);
  std::cout << result.problems << " problems, " << result.failures << " failures\n"
            << result.retrieval_csv << "\n"
            << result.planning_csv << "\n"
            << result.classification_csv << "\n";
  return result.failures == 0 ? kExitOk : kExitPlanning;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Activity-schema learning and planning over experience-based domains"};
  app.require_subcommand(1);
  Options opt;

  auto* learn = app.add_subcommand("learn", "Learn an activity schema from an experience");
  learn->add_option("experience", opt.experience_path)->required();
  learn->add_option("domain", opt.domain_path)->required();
  learn->add_option("-o,--output", opt.output_path, "Schema file (stdout when omitted)");

  auto* scope = app.add_subcommand("scope", "Print the scope inferred from an experience");
  scope->add_option("experience", opt.experience_path)->required();
  scope->add_option("domain", opt.domain_path)->required();
  scope->add_flag("--dot", opt.dot, "Emit a Graphviz rendering instead of the text form");
  scope->add_option("-o,--output", opt.output_path);

  auto* retrieve = app.add_subcommand("retrieve", "Find an applicable schema for a problem");
  retrieve->add_option("problem", opt.problem_path)->required();
  retrieve->add_option("library", opt.library_path)->required();

  auto* plan = app.add_subcommand("plan", "Solve a problem with a schema library");
  plan->add_option("problem", opt.problem_path)->required();
  plan->add_option("library", opt.library_path)->required();
  plan->add_option("domain", opt.domain_path)->required();
  plan->add_option("-o,--output", opt.output_path, "Plan file (stdout when omitted)");
  plan->add_option("--metrics", opt.metrics_path, "Write a CSV metrics row");
  plan->add_option("--bridge-depth", opt.bridge_depth, "Gap-filling search depth")
      ->capture_default_str();

  auto* classify = app.add_subcommand("classify", "Partition problems by scope structure");
  classify->add_option("problems", opt.problem_paths)->required()->expected(-1);
  classify->add_option("--csv", opt.metrics_path, "Write classification.csv");

  auto* genc = app.add_subcommand("gen", "Generate benchmark problems");
  genc->require_subcommand(1);
  auto* gstack = genc->add_subcommand("stack");
  gstack->add_option("--class", opt.stack_class, "base, i, ii or iii")->capture_default_str();
  gstack->add_option("--blocks", opt.blocks, "Blocks per color")->capture_default_str();
  gstack->add_option("--seed", opt.seed)->capture_default_str();
  gstack->add_option("-o,--output", opt.output_path);
  auto* grover = genc->add_subcommand("rover");
  grover->add_option("--waypoints", opt.waypoints)->capture_default_str();
  grover->add_option("--objectives", opt.objectives)->capture_default_str();
  grover->add_option("--cameras", opt.cameras)->capture_default_str();
  grover->add_option("--goals", opt.goals)->capture_default_str();
  grover->add_option("--seed", opt.seed)->capture_default_str();
  grover->add_option("-o,--output", opt.output_path);

  auto* benchc = app.add_subcommand("bench", "Run a benchmark suite from a config file");
  benchc->add_option("config", opt.suite_config)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (learn->parsed()) return cmd_learn(opt, false);
    if (scope->parsed()) return cmd_learn(opt, true);
    if (retrieve->parsed()) return cmd_retrieve(opt);
    if (plan->parsed()) return cmd_plan(opt);
    if (classify->parsed()) return cmd_classify(opt);
    if (genc->parsed()) {
      if (gstack->parsed()) return cmd_gen_stack(opt);
      if (grover->parsed()) return cmd_gen_rover(opt);
    }
    if (benchc->parsed()) return cmd_bench(opt);
  } catch (const text::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitParse;
  } catch (const text::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kExitParse;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitPlanning;
  }
  return kExitUsage;
}
