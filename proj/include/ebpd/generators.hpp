#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ebpd/logic.hpp"
#include "ebpd/model.hpp"

namespace ebpd::gen {

enum class StackClass { Base, I, II, III };

std::string_view to_string(StackClass c);
std::optional<StackClass> stack_class_from_string(std::string_view s);

/// Base: all blocks start on the table. I: one pile, red at the bottom and
/// blue on top. II: alternating pile, blue at the bottom and red on top.
/// III: alternating pile, red at the bottom and blue on top. The goal is
/// always a fresh pile with blue blocks at the bottom and red on top.
struct StackSpec {
  StackClass cls = StackClass::Base;
  int blue = 4;
  int red = 4;
  std::uint64_t seed = 0;
};

/// Deterministic per (spec, seed): identical specs produce byte-identical
/// documents. Classes II and III require equal color counts.
model::Problem gen_stack(const StackSpec& spec);

struct RoverSpec {
  int waypoints = 2;   // 1..3
  int objectives = 5;  // 5..30
  int cameras = 5;     // 5..10
  int goals = 5;       // 5..20
  std::uint64_t seed = 0;
};

model::Problem gen_rover(const RoverSpec& spec);

/// Scripted demonstrations: a solution plan plus the key-property mirror of
/// the problem, packaged as an experience that schemata can be learned from.
model::Experience demonstrate_stack(const model::Problem& problem);
model::Experience demonstrate_rover(const model::Problem& problem);

struct ClassificationReport {
  // Indices into the input problem list, partitioned by structural
  // equivalence of the canonical abstractions; first member is the
  // representative.
  std::vector<std::vector<std::size_t>> sets;
  std::vector<logic::ThreeValuedStructure> representatives;
  std::vector<double> abstraction_ms;  // aligned with the input order
};

/// Partitions problems by the structural equivalence of their abstractions.
ClassificationReport classify(const std::vector<model::Problem>& problems);

}  // namespace ebpd::gen
