#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ebpd/model.hpp"
#include "ebpd/schema.hpp"

namespace ebpd::planning {

/// Ordered schema collection; heads may repeat with different scopes, and
/// retrieval returns the first applicable entry.
struct SchemaLibrary {
  std::vector<schema::ActivitySchema> schemata;
};

struct Provenance {
  std::size_t item_index = 0;
  std::size_t iteration = 0;  // 0 for singleton items, 1-based inside loops
  bool operator==(const Provenance&) const = default;
};

struct GroundAbstractPlan {
  std::vector<model::Action> steps;
  std::vector<Provenance> provenance;
};

enum class PlanStatus { Solved, NoSchema, Failure, Timeout };

std::string_view to_string(PlanStatus s);

struct PlanResult {
  PlanStatus status = PlanStatus::Failure;
  std::vector<model::Action> plan;
  std::int64_t nodes_evaluated = 0;
  std::chrono::microseconds elapsed{0};
  std::chrono::microseconds retrieval_elapsed{0};
  std::string schema_used;
  std::optional<std::size_t> failed_step;
  std::string message;
};

struct PlannerConfig {
  int bridge_depth = 3;
  std::int64_t max_nodes = 1'000'000;
};

/// First schema in library order whose head matches the task and whose scope
/// embeds the problem's structure.
const schema::ActivitySchema* retrieve(const model::Problem& problem, const SchemaLibrary& lib);

/// Number of features NOT verified under the binding: static features are
/// checked against the static info, init features against the initial state,
/// end features against the goal.
int feature_cost(const schema::AbstractAction& action, const model::Binding& binding,
                 const model::Problem& problem);

struct AbstractPlanResult {
  bool ok = false;
  GroundAbstractPlan plan;
  std::size_t failed_item = 0;
  std::int64_t nodes = 0;
};

/// Walks the schema items over an abstract state. Single actions take the
/// cheapest applicable instantiation. Loops generate successors for one
/// whole iteration at a time alongside the first action after the loop, and
/// keep iterating while a complete iteration is at most as costly as the
/// exit (free when the loop ends the schema); they stop when the exit wins
/// or no complete iteration applies. Candidates that reproduce a visited
/// abstract state are pruned.
AbstractPlanResult plan_abstract(const schema::ActivitySchema& s, const model::Problem& problem,
                                 const model::Domain& domain);

struct ConcretePlanResult {
  bool ok = false;
  std::vector<model::Action> plan;
  std::size_t failed_step = 0;
  std::int64_t nodes = 0;
};

/// Substitutes concrete operators for the skeleton steps, depth-first with
/// full backtracking. When a chosen operator is not yet applicable, a
/// bounded forward search (up to bridge_depth steps) bridges the gap; a
/// final bridge closes any remaining goal distance.
ConcretePlanResult plan_concrete(const GroundAbstractPlan& skeleton,
                                 const model::Problem& problem, const model::Domain& domain,
                                 const PlannerConfig& config = {});

/// retrieve + plan_abstract + plan_concrete, with retrieval timed
/// separately. A missing schema is its own outcome, not a failure.
PlanResult solve(const model::Problem& problem, const SchemaLibrary& lib,
                 const model::Domain& domain, const PlannerConfig& config = {});

struct SearchLimits {
  std::int64_t max_nodes = 200'000;
  std::chrono::milliseconds max_time{60'000};
};

/// Uninformed breadth-first search over ground concrete actions, for the
/// node-count contrast with the schema-based planner.
PlanResult baseline_forward_search(const model::Problem& problem, const model::Domain& domain,
                                   const SearchLimits& limits = {});

/// Library insertion order for schemata learned from classified problem
/// sets: strictly more specific scopes first (schema a is strictly more
/// specific than b when a's source structure embeds in b's scope but not
/// conversely), so first-match retrieval lands on a problem's own set.
/// Incomparable entries keep their given order.
std::vector<std::size_t> specificity_order(
    const std::vector<schema::ActivitySchema>& schemata,
    const std::vector<logic::TwoValuedStructure>& sources);

}  // namespace ebpd::planning
