#include "ebpd/bench.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "ebpd/learning.hpp"
#include "ebpd/planner.hpp"
#include "ebpd/rng.hpp"
#include "ebpd/text.hpp"

namespace ebpd::bench {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

bool truthy(const std::string& s) { return s == "true" || s == "yes" || s == "1" || s == "on"; }

double median(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  if (n == 0) return 0.0;
  return n % 2 ? xs[n / 2] : (xs[n / 2 - 1] + xs[n / 2]) / 2.0;
}

template <typename F>
double median_ms(int repetitions, F&& once) {
  std::vector<double> times;
  for (int i = 0; i < std::max(1, repetitions); ++i) {
    const auto start = std::chrono::steady_clock::now();
    once();
    times.push_back(
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count());
  }
  return median(std::move(times));
}

std::string fmt_ms(double ms) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(3);
  os << ms;
  return os.str();
}

}  // namespace

SuiteConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open suite config " + path);

  SuiteConfig cfg;
  std::string line, section;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t comment = line.find_first_of("#;");
    if (comment != std::string::npos) line = line.substr(0, comment);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw std::runtime_error(path + ":" + std::to_string(line_no) + ": malformed section");
      section = trim(line.substr(1, line.size() - 2));
      if (section == "stack") cfg.stack_enabled = true;
      if (section == "rover") cfg.rover_enabled = true;
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    if (section == "stack") {
      if (key == "enabled") cfg.stack_enabled = truthy(value);
      else if (key == "domain") cfg.stack_domain = value;
      else if (key == "experiences") cfg.stack_experiences = split_list(value);
      else if (key == "classes") {
        for (const auto& c : split_list(value)) {
          auto cls = gen::stack_class_from_string(c);
          if (!cls) throw std::runtime_error("unknown stack class " + c);
          cfg.stack_classes.push_back(*cls);
        }
      } else if (key == "sizes") {
        for (const auto& v : split_list(value)) cfg.stack_sizes.push_back(std::stoi(v));
      } else if (key == "seeds") {
        for (const auto& v : split_list(value)) cfg.stack_seeds.push_back(std::stoull(v));
      } else if (key == "baseline") {
        cfg.baseline = truthy(value);
      } else if (key == "baseline_node_limit") {
        cfg.baseline_node_limit = std::stoll(value);
      } else {
        throw std::runtime_error("unknown [stack] key " + key);
      }
    } else if (section == "rover") {
      if (key == "enabled") cfg.rover_enabled = truthy(value);
      else if (key == "domain") cfg.rover_domain = value;
      else if (key == "count") cfg.rover_count = std::stoi(value);
      else if (key == "seed") cfg.rover_seed = std::stoull(value);
      else throw std::runtime_error("unknown [rover] key " + key);
    } else if (section == "output") {
      if (key == "dir") cfg.output_dir = value;
      else if (key == "repetitions") cfg.repetitions = std::stoi(value);
      else throw std::runtime_error("unknown [output] key " + key);
    } else {
      throw std::runtime_error("unknown section [" + section + "]");
    }
  }
  return cfg;
}

namespace {

struct Rows {
  // keyed by problem id for the order-stable output
  std::map<std::string, std::string> retrieval;
  std::map<std::string, std::string> planning;
  std::map<std::string, std::string> classification;
};

void run_stack_suite(const SuiteConfig& cfg, Rows& rows, SuiteResult& result) {
  const model::Domain domain = text::parse_domain(text::read_file(cfg.stack_domain),
                                                  cfg.stack_domain);
  planning::SchemaLibrary lib;
  for (const auto& path : cfg.stack_experiences) {
    const model::Experience exp = text::parse_experience(text::read_file(path), path);
    lib.schemata.push_back(learning::learn_schema(exp, domain));
  }

  for (const auto cls : cfg.stack_classes) {
    for (const int n : cfg.stack_sizes) {
      for (const auto seed : cfg.stack_seeds) {
        const model::Problem p = gen::gen_stack({cls, n, n, seed});
        ++result.problems;
        const auto structure = model::struc_from_problem(p);

        const schema::ActivitySchema* chosen = nullptr;
        const double retrieval_ms = median_ms(cfg.repetitions, [&] {
          chosen = planning::retrieve(p, lib);
        });
        rows.retrieval[p.name] = p.name + "," + std::to_string(structure.universe.size()) + "," +
                                 (chosen ? chosen->name : "-") + "," + fmt_ms(retrieval_ms) + "," +
                                 (chosen ? "ok" : "no-schema");

        planning::PlanResult solved;
        const double plan_ms = median_ms(cfg.repetitions, [&] {
          solved = planning::solve(p, lib, domain);
        });
        std::string row = p.name + "," + (chosen ? chosen->name : "-") + "," + fmt_ms(plan_ms) +
                          "," + std::to_string(solved.nodes_evaluated) + "," +
                          std::to_string(solved.plan.size()) + "," +
                          std::string(planning::to_string(solved.status));
        if (solved.status != planning::PlanStatus::Solved) ++result.failures;
        if (cfg.baseline) {
          planning::SearchLimits limits;
          limits.max_nodes = cfg.baseline_node_limit;
          const auto base = planning::baseline_forward_search(p, domain, limits);
          row += "," + std::to_string(base.nodes_evaluated) + "," +
                 std::to_string(base.plan.size());
        }
        rows.planning[p.name] = row;
      }
    }
  }
}

void run_rover_suite(const SuiteConfig& cfg, Rows& rows, SuiteResult& result) {
  const model::Domain domain = text::parse_domain(text::read_file(cfg.rover_domain),
                                                  cfg.rover_domain);
  std::vector<model::Problem> problems;
  for (int i = 0; i < cfg.rover_count; ++i) {
    SplitMix64 rng(cfg.rover_seed + static_cast<std::uint64_t>(i));
    gen::RoverSpec spec;
    spec.waypoints = static_cast<int>(rng.range(1, 3));
    spec.objectives = static_cast<int>(rng.range(5, 30));
    spec.cameras = static_cast<int>(rng.range(5, 10));
    spec.goals = static_cast<int>(rng.range(5, 20));
    spec.seed = cfg.rover_seed + static_cast<std::uint64_t>(i);
    problems.push_back(gen::gen_rover(spec));
  }
  result.problems += static_cast<int>(problems.size());

  const gen::ClassificationReport report = gen::classify(problems);
  for (std::size_t s = 0; s < report.sets.size(); ++s) {
    for (const std::size_t idx : report.sets[s]) {
      const double ms = median_ms(cfg.repetitions, [&] {
        (void)logic::canonical_abstraction(model::struc_from_problem(problems[idx]));
      });
      rows.classification[problems[idx].name] =
          problems[idx].name + ",set" + std::to_string(s) + "," + fmt_ms(ms);
    }
  }

  // One schema per set, learned from the representative's demonstration.
  // More specific scopes go first so that first-match retrieval lands on a
  // problem's own set.
  std::vector<schema::ActivitySchema> schemata;
  std::vector<logic::TwoValuedStructure> rep_strucs;
  for (const auto& set : report.sets) {
    const model::Problem& rep = problems[set.front()];
    schemata.push_back(learning::learn_schema(gen::demonstrate_rover(rep), domain));
    rep_strucs.push_back(model::struc_from_problem(rep));
  }
  const std::vector<std::size_t> order = planning::specificity_order(schemata, rep_strucs);
  planning::SchemaLibrary lib;
  for (const std::size_t i : order) lib.schemata.push_back(schemata[i]);

  for (const auto& p : problems) {
    const auto structure = model::struc_from_problem(p);
    const schema::ActivitySchema* chosen = nullptr;
    const double retrieval_ms = median_ms(cfg.repetitions, [&] {
      chosen = planning::retrieve(p, lib);
    });
    rows.retrieval[p.name] = p.name + "," + std::to_string(structure.universe.size()) + "," +
                             (chosen ? chosen->name : "-") + "," + fmt_ms(retrieval_ms) + "," +
                             (chosen ? "ok" : "no-schema");

    planning::PlanResult solved;
    const double plan_ms = median_ms(cfg.repetitions, [&] {
      solved = planning::solve(p, lib, domain);
    });
    if (solved.status != planning::PlanStatus::Solved) ++result.failures;
    std::string row = p.name + "," + (chosen ? chosen->name : "-") + "," + fmt_ms(plan_ms) + "," +
                      std::to_string(solved.nodes_evaluated) + "," +
                      std::to_string(solved.plan.size()) + "," +
                      std::string(planning::to_string(solved.status));
    if (cfg.baseline) row += ",-,-";
    rows.planning[p.name] = row;
  }
}

}  // namespace

SuiteResult run_suite(const SuiteConfig& cfg) {
  SuiteResult result;
  Rows rows;

  if (cfg.stack_enabled) run_stack_suite(cfg, rows, result);
  if (cfg.rover_enabled) run_rover_suite(cfg, rows, result);

  std::filesystem::create_directories(cfg.output_dir);
  auto write_csv = [&](const std::string& name, const std::string& header,
                       const std::map<std::string, std::string>& body) {
    std::ostringstream os;
    os << header << '\n';
    for (const auto& [id, row] : body) os << row << '\n';
    const std::string path = cfg.output_dir + "/" + name;
    text::write_file(path, os.str());
    return path;
  };

  result.retrieval_csv =
      write_csv("retrieval.csv", "problem,n_objects,schema,retrieval_ms,status", rows.retrieval);
  const std::string planning_header =
      cfg.baseline ? "problem,schema,plan_ms,nodes,plan_len,status,baseline_nodes,baseline_len"
                   : "problem,schema,plan_ms,nodes,plan_len,status";
  result.planning_csv = write_csv("planning.csv", planning_header, rows.planning);
  result.classification_csv =
      write_csv("classification.csv", "problem,set_id,abstraction_ms", rows.classification);
  return result;
}

}  // namespace ebpd::bench
