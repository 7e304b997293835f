#pragma once

#include <set>
#include <string>
#include <vector>

#include "ebpd/logic.hpp"
#include "ebpd/model.hpp"

namespace ebpd::schema {

/// Abstract action with the key-properties that tie its arguments to the
/// task parameters. Features steer instantiation during planning.
struct AbstractAction {
  model::Action head;
  std::set<logic::KeyProperty> features;

  bool operator==(const AbstractAction&) const = default;
};

/// One element of an abstract plan: a single action, or a loop over a
/// non-empty body of actions. Loops never nest.
struct PlanItem {
  enum class Kind { Action, Loop };
  Kind kind = Kind::Action;
  std::vector<AbstractAction> actions;  // exactly one for Kind::Action

  const AbstractAction& action() const { return actions.front(); }

  bool operator==(const PlanItem&) const = default;
};

struct ActivitySchema {
  std::string name;
  std::string domain_name;
  model::Action head;  // task pattern over variables
  std::vector<PlanItem> plan;
  logic::ThreeValuedStructure scope;

  bool operator==(const ActivitySchema&) const = default;
};

}  // namespace ebpd::schema
