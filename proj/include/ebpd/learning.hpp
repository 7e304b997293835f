#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "ebpd/logic.hpp"
#include "ebpd/model.hpp"
#include "ebpd/schema.hpp"

namespace ebpd::learning {

struct GeneralizedExperience {
  model::Experience experience;        // same shape, constants replaced by variables
  std::map<model::Term, model::Term> var_map;  // constant -> variable, a bijection
};

/// Replaces every distinct constant by a fresh variable, named in first
/// occurrence order with a prefix taken from the constant's static unary
/// type predicate (`?b1` for blocks, `?x1` when no type is known).
GeneralizedExperience generalize(const model::Experience& e);

/// Inverse of generalize under the recorded variable map.
model::Experience degeneralize(const GeneralizedExperience& g);

/// Maps each plan action to its operator's parent head, keeping only the
/// parent's argument subsequence. Actions of operators without a parent are
/// dropped. Throws std::runtime_error on unknown operators.
std::vector<model::Action> abstract_actions(const std::vector<model::Action>& plan,
                                            const model::Domain& domain);

/// Key-properties that mention at least one argument of the action and whose
/// terms all are action arguments or task parameters.
std::set<logic::KeyProperty> extract_features(const model::Action& action,
                                              const std::vector<logic::KeyProperty>& props,
                                              const std::vector<model::Term>& task_params);

/// Loop detection over abstract actions. Items are compared by equality key
/// (operator name, arity, feature shape); maximal contiguous runs of at
/// least two repeats become loops with positionally merged bodies.
std::vector<schema::PlanItem> detect_loops(const std::vector<schema::AbstractAction>& actions,
                                           const std::vector<model::Term>& task_params);

/// The equality keys used by detect_loops, exposed for the detection
/// cross-checks: equal ints mean equal (name, arity, feature shape).
std::vector<int> loop_keys(const std::vector<schema::AbstractAction>& actions,
                           const std::vector<model::Term>& task_params);

/// Full pipeline: generalize, abstract the plan, attach features, detect
/// loops, and infer the scope as the canonical abstraction of the
/// generalized key-properties. Deterministic.
schema::ActivitySchema learn_schema(const model::Experience& e, const model::Domain& domain);

}  // namespace ebpd::learning
