#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "ebpd/logic.hpp"

namespace ebpd::model {

using Term = std::string;

/// Variables start with '?'; everything else is a constant.
bool is_variable(const Term& t);

struct Atom {
  std::string pred;
  std::vector<Term> args;

  bool is_ground() const;
  auto operator<=>(const Atom&) const = default;
};

std::string to_string(const Atom& a);

/// An operator or task instance: (name arg...).
struct Action {
  std::string name;
  std::vector<Term> args;

  bool is_ground() const;
  auto operator<=>(const Action&) const = default;
};

std::string to_string(const Action& a);

struct OperatorHead {
  std::string name;
  std::vector<Term> params;

  auto operator<=>(const OperatorHead&) const = default;
};

enum class OperatorKind { Abstract, Concrete };

/// Planning operator with a static part, precondition and split effects.
/// Concrete operators may carry a parent head whose parameters are a
/// subsequence of their own; abstract operators never do.
struct Operator {
  OperatorHead head;
  std::vector<Atom> static_part;
  std::vector<Atom> precondition;
  std::vector<Atom> add_effects;
  std::vector<Atom> del_effects;
  std::optional<OperatorHead> parent;
  OperatorKind kind = OperatorKind::Concrete;

  bool operator==(const Operator&) const = default;
};

struct State {
  std::set<Atom> atoms;

  bool contains(const Atom& a) const { return atoms.contains(a); }
  auto operator<=>(const State&) const = default;
};

struct Problem {
  std::string name;
  std::string domain_name;
  Action task;
  std::vector<Atom> static_info;
  State init;
  std::vector<Atom> goal;
  std::set<Term> objects;

  bool operator==(const Problem&) const = default;
};

struct Experience {
  std::string name;
  std::string domain_name;
  Action task;
  std::set<Term> objects;
  std::vector<logic::KeyProperty> key_properties;
  std::vector<Action> plan;

  bool operator==(const Experience&) const = default;
};

struct Domain {
  std::string name;
  std::vector<Operator> abstract_ops;
  std::vector<Operator> concrete_ops;

  const Operator* find_abstract(const std::string& name, std::size_t arity) const;
  const Operator* find_concrete(const std::string& name, std::size_t arity) const;

  bool operator==(const Domain&) const = default;
};

using Binding = std::map<Term, Term>;

/// Substitutes bound variables; unbound variables and constants pass through.
Atom substitute(const Atom& a, const Binding& b);
Action substitute(const Action& a, const Binding& b);

/// True when the bound static part holds in `statics` and the bound
/// precondition holds in `state`. The binding must cover every operator
/// parameter.
bool applicable(const State& state, const State& statics, const Operator& op, const Binding& b);

struct ApplyError : std::runtime_error {
  Atom violated;
  explicit ApplyError(Atom a)
      : std::runtime_error("operator not applicable, missing " + to_string(a)),
        violated(std::move(a)) {}
};

/// Deletes then adds the bound effects. Throws ApplyError (carrying the
/// violated atom) when the operator is not applicable.
State apply(const State& state, const State& statics, const Operator& op, const Binding& b);

struct ValidationReport {
  bool success = false;
  std::optional<std::size_t> failing_step;
  State final_state;
  bool goal_satisfied = false;
  std::string message;
};

/// Replays a ground plan from the problem's initial state.
ValidationReport validate_plan(const Problem& problem, const std::vector<Action>& plan,
                               const Domain& domain);

/// The key-property mirror of a problem: static facts from the static info,
/// init facts from the initial state, end facts from the goal.
std::vector<logic::KeyProperty> problem_keyprops(const Problem& p);

/// Concrete structure of a problem. Task arguments enter the universe even
/// when no atom mentions them.
logic::TwoValuedStructure struc_from_problem(const Problem& p);

}  // namespace ebpd::model
