#include "ebpd/model.hpp"

#include <algorithm>
#include <sstream>

namespace ebpd::model {

bool is_variable(const Term& t) { return !t.empty() && t.front() == '?'; }

bool Atom::is_ground() const {
  return std::none_of(args.begin(), args.end(), is_variable);
}

bool Action::is_ground() const {
  return std::none_of(args.begin(), args.end(), is_variable);
}

std::string to_string(const Atom& a) {
  std::ostringstream os;
  os << '(' << a.pred;
  for (const auto& t : a.args) os << ' ' << t;
  os << ')';
  return os.str();
}

std::string to_string(const Action& a) {
  std::ostringstream os;
  os << '(' << a.name;
  for (const auto& t : a.args) os << ' ' << t;
  os << ')';
  return os.str();
}

const Operator* Domain::find_abstract(const std::string& name, std::size_t arity) const {
  for (const auto& op : abstract_ops)
    if (op.head.name == name && op.head.params.size() == arity) return &op;
  return nullptr;
}

const Operator* Domain::find_concrete(const std::string& name, std::size_t arity) const {
  for (const auto& op : concrete_ops)
    if (op.head.name == name && op.head.params.size() == arity) return &op;
  return nullptr;
}

Atom substitute(const Atom& a, const Binding& b) {
  Atom out{a.pred, {}};
  out.args.reserve(a.args.size());
  for (const auto& t : a.args) {
    auto it = b.find(t);
    out.args.push_back(it == b.end() ? t : it->second);
  }
  return out;
}

Action substitute(const Action& a, const Binding& b) {
  Action out{a.name, {}};
  out.args.reserve(a.args.size());
  for (const auto& t : a.args) {
    auto it = b.find(t);
    out.args.push_back(it == b.end() ? t : it->second);
  }
  return out;
}

namespace {

void require_total(const Operator& op, const Binding& b) {
  for (const auto& p : op.head.params) {
    if (is_variable(p) && !b.contains(p))
      throw std::invalid_argument("binding does not cover parameter " + p + " of operator " +
                                  op.head.name);
  }
}

const Atom* first_violated(const State& state, const State& statics, const Operator& op,
                           const Binding& b, Atom& storage) {
  for (const auto& a : op.static_part) {
    storage = substitute(a, b);
    if (!statics.contains(storage)) return &storage;
  }
  for (const auto& a : op.precondition) {
    storage = substitute(a, b);
    if (!state.contains(storage)) return &storage;
  }
  return nullptr;
}

}  // namespace

bool applicable(const State& state, const State& statics, const Operator& op, const Binding& b) {
  require_total(op, b);
  Atom storage;
  return first_violated(state, statics, op, b, storage) == nullptr;
}

State apply(const State& state, const State& statics, const Operator& op, const Binding& b) {
  require_total(op, b);
  Atom storage;
  if (const Atom* violated = first_violated(state, statics, op, b, storage))
    throw ApplyError(*violated);
  State out = state;
  for (const auto& a : op.del_effects) out.atoms.erase(substitute(a, b));
  for (const auto& a : op.add_effects) out.atoms.insert(substitute(a, b));
  return out;
}

ValidationReport validate_plan(const Problem& problem, const std::vector<Action>& plan,
                               const Domain& domain) {
  ValidationReport report;
  State statics;
  statics.atoms.insert(problem.static_info.begin(), problem.static_info.end());
  State state = problem.init;

  for (std::size_t i = 0; i < plan.size(); ++i) {
    const Action& step = plan[i];
    const Operator* op = domain.find_concrete(step.name, step.args.size());
    if (op == nullptr) {
      report.failing_step = i;
      report.message = "unknown operator " + step.name + "/" + std::to_string(step.args.size());
      report.final_state = state;
      return report;
    }
    Binding b;
    for (std::size_t j = 0; j < step.args.size(); ++j) b[op->head.params[j]] = step.args[j];
    try {
      state = apply(state, statics, *op, b);
    } catch (const ApplyError& e) {
      report.failing_step = i;
      report.message = "step " + std::to_string(i) + " " + to_string(step) +
                       " not applicable: missing " + to_string(e.violated);
      report.final_state = state;
      return report;
    }
  }

  report.success = true;
  report.final_state = state;
  report.goal_satisfied =
      std::all_of(problem.goal.begin(), problem.goal.end(),
                  [&](const Atom& g) { return state.contains(g); });
  return report;
}

std::vector<logic::KeyProperty> problem_keyprops(const Problem& p) {
  std::vector<logic::KeyProperty> props;
  auto push = [&](logic::Temporal tag, const Atom& a) {
    props.push_back({{tag, a.pred, static_cast<int>(a.args.size())}, a.args});
  };
  for (const auto& a : p.static_info) push(logic::Temporal::Static, a);
  for (const auto& a : p.init.atoms) push(logic::Temporal::Init, a);
  for (const auto& a : p.goal) push(logic::Temporal::End, a);
  return props;
}

logic::TwoValuedStructure struc_from_problem(const Problem& p) {
  auto c = logic::struc_from_keyprops(problem_keyprops(p));
  for (const auto& arg : p.task.args) c.universe.insert(arg);
  return c;
}

}  // namespace ebpd::model
