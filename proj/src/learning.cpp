#include "ebpd/learning.hpp"

#include <algorithm>
#include <stdexcept>

#include "ebpd/repeats.hpp"

namespace ebpd::learning {

namespace {

using model::Action;
using model::Term;

std::string type_prefix(const Term& constant, const model::Experience& e) {
  // The lexicographically first static unary predicate naming the constant.
  std::string type;
  for (const auto& kp : e.key_properties) {
    if (kp.predicate.temporal != logic::Temporal::Static || kp.predicate.arity != 1) continue;
    if (kp.terms.front() != constant) continue;
    if (type.empty() || kp.predicate.name < type) type = kp.predicate.name;
  }
  if (type.empty()) return "x";
  return type.substr(0, 1);
}

}  // namespace

GeneralizedExperience generalize(const model::Experience& e) {
  GeneralizedExperience g;
  std::map<std::string, int> counters;

  auto var_of = [&](const Term& constant) -> Term {
    auto it = g.var_map.find(constant);
    if (it != g.var_map.end()) return it->second;
    const std::string prefix = type_prefix(constant, e);
    Term var = "?" + prefix + std::to_string(++counters[prefix]);
    g.var_map[constant] = var;
    return var;
  };

  model::Experience out;
  out.name = e.name;
  out.domain_name = e.domain_name;
  out.task.name = e.task.name;
  for (const auto& t : e.task.args) out.task.args.push_back(var_of(t));
  for (const auto& kp : e.key_properties) {
    logic::KeyProperty v = kp;
    v.terms.clear();
    for (const auto& t : kp.terms) v.terms.push_back(var_of(t));
    out.key_properties.push_back(std::move(v));
  }
  for (const auto& a : e.plan) {
    Action v{a.name, {}};
    for (const auto& t : a.args) v.args.push_back(var_of(t));
    out.plan.push_back(std::move(v));
  }
  for (const auto& [constant, var] : g.var_map) out.objects.insert(var);
  g.experience = std::move(out);
  return g;
}

model::Experience degeneralize(const GeneralizedExperience& g) {
  std::map<Term, Term> inverse;
  for (const auto& [constant, var] : g.var_map) inverse[var] = constant;
  auto back = [&](const Term& t) {
    auto it = inverse.find(t);
    return it == inverse.end() ? t : it->second;
  };

  model::Experience out;
  out.name = g.experience.name;
  out.domain_name = g.experience.domain_name;
  out.task.name = g.experience.task.name;
  for (const auto& t : g.experience.task.args) out.task.args.push_back(back(t));
  for (const auto& kp : g.experience.key_properties) {
    logic::KeyProperty v = kp;
    v.terms.clear();
    for (const auto& t : kp.terms) v.terms.push_back(back(t));
    out.key_properties.push_back(std::move(v));
  }
  for (const auto& a : g.experience.plan) {
    Action v{a.name, {}};
    for (const auto& t : a.args) v.args.push_back(back(t));
    out.plan.push_back(std::move(v));
  }
  for (const auto& o : g.experience.objects) out.objects.insert(back(o));
  return out;
}

std::vector<Action> abstract_actions(const std::vector<Action>& plan,
                                     const model::Domain& domain) {
  std::vector<Action> out;
  for (const auto& a : plan) {
    const model::Operator* op = domain.find_concrete(a.name, a.args.size());
    if (op == nullptr)
      throw std::runtime_error("unknown operator in plan: " + model::to_string(a));
    if (!op->parent) continue;  // excluded from the abstract plan
    model::Binding b;
    for (std::size_t i = 0; i < a.args.size(); ++i) b[op->head.params[i]] = a.args[i];
    Action abstract{op->parent->name, {}};
    for (const auto& p : op->parent->params) abstract.args.push_back(b.at(p));
    out.push_back(std::move(abstract));
  }
  return out;
}

std::set<logic::KeyProperty> extract_features(const Action& action,
                                              const std::vector<logic::KeyProperty>& props,
                                              const std::vector<Term>& task_params) {
  std::set<Term> args(action.args.begin(), action.args.end());
  std::set<Term> allowed = args;
  allowed.insert(task_params.begin(), task_params.end());

  std::set<logic::KeyProperty> features;
  for (const auto& kp : props) {
    bool touches = false;
    bool confined = true;
    for (const auto& t : kp.terms) {
      if (args.contains(t)) touches = true;
      if (!allowed.contains(t)) confined = false;
    }
    if (touches && confined) features.insert(kp);
  }
  return features;
}

namespace {

// Feature shape: predicate identity plus, per term, which action-argument
// and task-parameter positions it occupies. Variable identity is erased so
// that iterations of a loop compare equal.
struct TermTag {
  int arg_index = -1;
  int param_index = -1;
  auto operator<=>(const TermTag&) const = default;
};

struct FeatureShape {
  logic::PredicateSymbol predicate;
  std::vector<TermTag> tags;
  auto operator<=>(const FeatureShape&) const = default;
};

struct ItemKey {
  std::string name;
  std::size_t arity = 0;
  std::set<FeatureShape> shape;
  auto operator<=>(const ItemKey&) const = default;
};

ItemKey key_of(const schema::AbstractAction& a, const std::vector<Term>& task_params) {
  ItemKey key{a.head.name, a.head.args.size(), {}};
  for (const auto& f : a.features) {
    FeatureShape shape{f.predicate, {}};
    for (const auto& t : f.terms) {
      TermTag tag;
      for (std::size_t i = 0; i < a.head.args.size(); ++i)
        if (a.head.args[i] == t) {
          tag.arg_index = static_cast<int>(i);
          break;
        }
      for (std::size_t i = 0; i < task_params.size(); ++i)
        if (task_params[i] == t) {
          tag.param_index = static_cast<int>(i);
          break;
        }
      shape.tags.push_back(tag);
    }
    key.shape.insert(std::move(shape));
  }
  return key;
}

// Merge the r iterations of a run into one body: argument positions take the
// first iteration's variables, and a feature survives only if every
// iteration carries it after renaming that iteration's variables onto the
// first one's.
std::vector<schema::AbstractAction> merge_run(const std::vector<schema::AbstractAction>& actions,
                                              const repeats::Run& run) {
  std::vector<schema::AbstractAction> body;
  for (std::size_t i = 0; i < run.period; ++i) {
    const schema::AbstractAction& first = actions[run.start + i];
    schema::AbstractAction merged{first.head, first.features};
    for (std::size_t j = 1; j < run.repeats; ++j) {
      const schema::AbstractAction& iter = actions[run.start + j * run.period + i];
      std::map<Term, Term> rename;
      for (std::size_t a = 0; a < iter.head.args.size(); ++a)
        rename.emplace(iter.head.args[a], first.head.args[a]);  // first position wins
      std::set<logic::KeyProperty> renamed;
      for (const auto& f : iter.features) {
        logic::KeyProperty kp = f;
        for (auto& t : kp.terms) {
          auto it = rename.find(t);
          if (it != rename.end()) t = it->second;
        }
        renamed.insert(std::move(kp));
      }
      std::set<logic::KeyProperty> kept;
      for (const auto& f : merged.features)
        if (renamed.contains(f)) kept.insert(f);
      merged.features = std::move(kept);
    }
    body.push_back(std::move(merged));
  }
  return body;
}

}  // namespace

std::vector<int> loop_keys(const std::vector<schema::AbstractAction>& actions,
                           const std::vector<Term>& task_params) {
  std::map<ItemKey, int> dense;
  std::vector<int> keys;
  keys.reserve(actions.size());
  for (const auto& a : actions) {
    ItemKey key = key_of(a, task_params);
    auto it = dense.emplace(std::move(key), static_cast<int>(dense.size())).first;
    keys.push_back(it->second);
  }
  return keys;
}

std::vector<schema::PlanItem> detect_loops(const std::vector<schema::AbstractAction>& actions,
                                           const std::vector<Term>& task_params) {
  const std::vector<int> keys = loop_keys(actions, task_params);
  const std::vector<repeats::Run> runs = repeats::find_runs(keys);

  std::vector<schema::PlanItem> items;
  std::size_t pos = 0;
  std::size_t next_run = 0;
  while (pos < actions.size()) {
    if (next_run < runs.size() && runs[next_run].start == pos) {
      const repeats::Run& run = runs[next_run++];
      schema::PlanItem loop;
      loop.kind = schema::PlanItem::Kind::Loop;
      loop.actions = merge_run(actions, run);
      items.push_back(std::move(loop));
      pos += run.length();
    } else {
      schema::PlanItem single;
      single.kind = schema::PlanItem::Kind::Action;
      single.actions.push_back(actions[pos]);
      items.push_back(std::move(single));
      ++pos;
    }
  }
  return items;
}

schema::ActivitySchema learn_schema(const model::Experience& e, const model::Domain& domain) {
  GeneralizedExperience g = generalize(e);
  const std::vector<Action> abstracted = abstract_actions(g.experience.plan, domain);

  std::vector<schema::AbstractAction> actions;
  actions.reserve(abstracted.size());
  for (const auto& head : abstracted) {
    schema::AbstractAction a;
    a.head = head;
    a.features = extract_features(head, g.experience.key_properties, g.experience.task.args);
    actions.push_back(std::move(a));
  }

  schema::ActivitySchema s;
  s.name = e.name;
  s.domain_name = e.domain_name;
  s.head = g.experience.task;
  s.plan = detect_loops(actions, g.experience.task.args);
  s.scope = logic::canonical_abstraction(logic::struc_from_keyprops(g.experience.key_properties));
  return s;
}

}  // namespace ebpd::learning
