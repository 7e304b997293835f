#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ebpd/generators.hpp"

namespace ebpd::bench {

/// Parsed from a small INI-style config: `[section]` headers, `key = value`
/// lines, comma-separated lists, `#` or `;` comments.
struct SuiteConfig {
  // [stack]
  bool stack_enabled = false;
  std::string stack_domain;
  std::vector<std::string> stack_experiences;  // learning sources, in order
  std::vector<gen::StackClass> stack_classes;
  std::vector<int> stack_sizes;  // blocks per color
  std::vector<std::uint64_t> stack_seeds;
  bool baseline = false;
  std::int64_t baseline_node_limit = 200'000;

  // [rover]
  bool rover_enabled = false;
  std::string rover_domain;
  int rover_count = 0;
  std::uint64_t rover_seed = 0;

  // [output]
  std::string output_dir = ".";
  int repetitions = 5;
};

SuiteConfig load_config(const std::string& path);

struct SuiteResult {
  std::string retrieval_csv;
  std::string planning_csv;
  std::string classification_csv;
  int problems = 0;
  int failures = 0;
};

/// Runs the configured suites and writes retrieval.csv, planning.csv and
/// classification.csv into the output directory. Per-problem failures become
/// status rows; they never abort the suite. Timing columns are medians over
/// the configured repetitions; rows are ordered by problem id.
SuiteResult run_suite(const SuiteConfig& config);

}  // namespace ebpd::bench
