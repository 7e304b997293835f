#include "ebpd/planner.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

namespace ebpd::planning {

using model::Action;
using model::Atom;
using model::Binding;
using model::Operator;
using model::State;
using model::Term;

std::string_view to_string(PlanStatus s) {
  switch (s) {
    case PlanStatus::Solved: return "solved";
    case PlanStatus::NoSchema: return "no-schema";
    case PlanStatus::Failure: return "failure";
    case PlanStatus::Timeout: return "timeout";
  }
  return "?";
}

namespace {

struct FactIndex {
  std::map<std::string, std::vector<const Atom*>> by_pred;

  explicit FactIndex(const State& s) {
    for (const auto& a : s.atoms) by_pred[a.pred].push_back(&a);
  }
};

// Backtracking match of the query atoms against the two fact sets, then
// enumeration of any still-unbound required variables over the objects.
// Emits every complete binding once, in deterministic order.
void enumerate_bindings(const std::vector<Atom>& static_q, const std::vector<Atom>& pre_q,
                        const FactIndex& statics, const FactIndex& state,
                        const std::set<Term>& objects, const std::vector<Term>& must_bind,
                        Binding& b, std::set<Binding>& out) {
  const std::size_t ns = static_q.size();

  std::function<void(std::size_t)> go = [&](std::size_t qi) {
    if (qi == ns + pre_q.size()) {
      std::vector<Term> free;
      for (const auto& v : must_bind)
        if (model::is_variable(v) && !b.contains(v) &&
            std::find(free.begin(), free.end(), v) == free.end())
          free.push_back(v);
      if (free.empty()) {
        out.insert(b);
        return;
      }
      std::function<void(std::size_t)> fill = [&](std::size_t fi) {
        if (fi == free.size()) {
          out.insert(b);
          return;
        }
        for (const auto& obj : objects) {
          b[free[fi]] = obj;
          fill(fi + 1);
        }
        b.erase(free[fi]);
      };
      fill(0);
      return;
    }

    const Atom& q = qi < ns ? static_q[qi] : pre_q[qi - ns];
    const FactIndex& facts = qi < ns ? statics : state;
    auto it = facts.by_pred.find(q.pred);
    if (it == facts.by_pred.end()) return;
    for (const Atom* fact : it->second) {
      if (fact->args.size() != q.args.size()) continue;
      std::vector<Term> bound_here;
      bool ok = true;
      for (std::size_t k = 0; k < q.args.size() && ok; ++k) {
        const Term& qt = q.args[k];
        const Term& ft = fact->args[k];
        if (model::is_variable(qt)) {
          auto at = b.find(qt);
          if (at == b.end()) {
            b[qt] = ft;
            bound_here.push_back(qt);
          } else if (at->second != ft) {
            ok = false;
          }
        } else if (qt != ft) {
          ok = false;
        }
      }
      if (ok) go(qi + 1);
      for (const auto& v : bound_here) b.erase(v);
    }
  };
  go(0);
}

std::vector<Binding> operator_bindings(const Operator& op, const Binding& seed,
                                       const FactIndex& statics, const FactIndex& state,
                                       const std::set<Term>& objects) {
  std::set<Binding> found;
  Binding b = seed;
  enumerate_bindings(op.static_part, op.precondition, statics, state, objects, op.head.params,
                     b, found);
  return {found.begin(), found.end()};
}

struct ProblemView {
  State statics;
  std::set<Atom> goal;

  explicit ProblemView(const model::Problem& p) {
    statics.atoms.insert(p.static_info.begin(), p.static_info.end());
    goal.insert(p.goal.begin(), p.goal.end());
  }

  bool goal_satisfied(const State& s) const {
    return std::all_of(goal.begin(), goal.end(),
                       [&](const Atom& g) { return s.contains(g); });
  }
};

int cost_with_view(const schema::AbstractAction& action, const Binding& binding,
                   const model::Problem& problem, const ProblemView& view) {
  int unverified = 0;
  for (const auto& f : action.features) {
    Atom atom{f.predicate.name, {}};
    for (const auto& t : f.terms) {
      if (model::is_variable(t)) {
        auto it = binding.find(t);
        if (it == binding.end())
          throw std::invalid_argument("feature " + logic::to_string(f) +
                                      " has an unbound variable " + t);
        atom.args.push_back(it->second);
      } else {
        atom.args.push_back(t);
      }
    }
    bool verified = false;
    switch (f.predicate.temporal) {
      case logic::Temporal::Static: verified = view.statics.contains(atom); break;
      case logic::Temporal::Init: verified = problem.init.contains(atom); break;
      case logic::Temporal::End: verified = view.goal.contains(atom); break;
    }
    if (!verified) ++unverified;
  }
  return unverified;
}

}  // namespace

int feature_cost(const schema::AbstractAction& action, const Binding& binding,
                 const model::Problem& problem) {
  return cost_with_view(action, binding, problem, ProblemView(problem));
}

const schema::ActivitySchema* retrieve(const model::Problem& problem, const SchemaLibrary& lib) {
  const auto structure = model::struc_from_problem(problem);
  for (const auto& s : lib.schemata) {
    if (s.head.name != problem.task.name || s.head.args.size() != problem.task.args.size())
      continue;
    if (logic::embeds_canonical(structure, s.scope).embedded) return &s;
  }
  return nullptr;
}

namespace {

struct Candidate {
  Binding item_binding;  // over the schema item's variables
  Binding op_binding;    // over the operator's parameters
  int cost = 0;
  Action ground;
  State next;
};

class AbstractPlanner {
 public:
  AbstractPlanner(const schema::ActivitySchema& s, const model::Problem& problem,
                  const model::Domain& domain)
      : schema_(s), problem_(problem), domain_(domain), view_(problem),
        statics_idx_(view_.statics) {}

  AbstractPlanResult run() {
    AbstractPlanResult result;
    if (schema_.head.args.size() != problem_.task.args.size()) {
      result.failed_item = 0;
      return result;
    }
    for (std::size_t i = 0; i < schema_.head.args.size(); ++i)
      task_env_[schema_.head.args[i]] = problem_.task.args[i];

    state_ = problem_.init;
    visited_.insert(state_);

    for (std::size_t index = 0; index < schema_.plan.size(); ++index) {
      const schema::PlanItem& item = schema_.plan[index];
      if (item.kind == schema::PlanItem::Kind::Action) {
        if (!run_single(item.action(), index)) {
          result.failed_item = index;
          result.nodes = nodes_;
          return result;
        }
      } else {
        run_loop(item, index);
      }
    }

    result.ok = true;
    result.plan = std::move(plan_);
    result.nodes = nodes_;
    return result;
  }

 private:
  // All instantiations of one abstract action in `from`, cheapest first.
  std::vector<Candidate> raw_candidates(const schema::AbstractAction& act, const Binding& env,
                                        const State& from) {
    const Operator* op = domain_.find_abstract(act.head.name, act.head.args.size());
    if (op == nullptr)
      throw std::runtime_error("abstract action " + model::to_string(act.head) +
                               " names no abstract operator");

    // Rewrite the operator atoms into the item's variable space.
    Binding rename;
    for (std::size_t i = 0; i < op->head.params.size(); ++i)
      rename[op->head.params[i]] = act.head.args[i];
    std::vector<Atom> static_q, pre_q;
    for (const auto& a : op->static_part) static_q.push_back(model::substitute(a, rename));
    for (const auto& a : op->precondition) pre_q.push_back(model::substitute(a, rename));

    Binding seed;
    for (const auto& arg : act.head.args) {
      auto it = env.find(arg);
      if (it != env.end()) seed[arg] = it->second;
    }

    std::set<Binding> bindings;
    FactIndex state_idx(from);
    enumerate_bindings(static_q, pre_q, statics_idx_, state_idx, problem_.objects,
                       act.head.args, seed, bindings);

    std::vector<Candidate> out;
    for (const auto& b : bindings) {
      Candidate c;
      c.item_binding = b;
      for (std::size_t i = 0; i < op->head.params.size(); ++i) {
        const Term& arg = act.head.args[i];
        c.op_binding[op->head.params[i]] = model::is_variable(arg) ? b.at(arg) : arg;
      }
      c.ground = model::substitute(act.head, b);
      c.next = model::apply(from, view_.statics, *op, c.op_binding);
      Binding cost_binding = b;
      cost_binding.insert(task_env_.begin(), task_env_.end());
      c.cost = cost_with_view(act, cost_binding, problem_, view_);
      out.push_back(std::move(c));
    }
    std::sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) {
      if (a.cost != b.cost) return a.cost < b.cost;
      return a.item_binding < b.item_binding;
    });
    return out;
  }

  // Successors of a single action from the current state, counted and with
  // already-visited results pruned.
  std::vector<Candidate> candidates(const schema::AbstractAction& act, const Binding& env) {
    auto all = raw_candidates(act, env, state_);
    nodes_ += static_cast<std::int64_t>(all.size());
    std::vector<Candidate> out;
    for (auto& c : all)
      if (!visited_.contains(c.next)) out.push_back(std::move(c));
    return out;
  }

  struct IterationOption {
    std::vector<Candidate> steps;
    int cost = 0;
  };

  // Complete instantiations of one loop iteration: every body action bound
  // and applied in order, sharing the iteration's variable bindings. Options
  // whose final state was already visited are pruned.
  std::vector<IterationOption> iteration_options(const schema::PlanItem& loop) {
    constexpr std::size_t kMaxOptions = 20'000;
    constexpr std::size_t kMaxExpansions = 200'000;
    std::vector<IterationOption> out;
    std::vector<Candidate> acc;
    std::size_t expansions = 0;

    std::function<void(std::size_t, const State&, const Binding&, int)> go =
        [&](std::size_t pos, const State& from, const Binding& env, int cost) {
          if (out.size() >= kMaxOptions || expansions >= kMaxExpansions) return;
          if (pos == loop.actions.size()) {
            ++nodes_;
            if (!visited_.contains(from)) out.push_back({acc, cost});
            return;
          }
          for (const auto& c : raw_candidates(loop.actions[pos], env, from)) {
            ++expansions;
            acc.push_back(c);
            Binding next_env = env;
            for (const auto& [var, value] : c.item_binding) next_env[var] = value;
            go(pos + 1, c.next, next_env, cost + c.cost);
            acc.pop_back();
          }
        };
    go(0, state_, task_env_, 0);

    std::sort(out.begin(), out.end(), [](const IterationOption& a, const IterationOption& b) {
      if (a.cost != b.cost) return a.cost < b.cost;
      std::vector<Action> ga, gb;
      for (const auto& c : a.steps) ga.push_back(c.ground);
      for (const auto& c : b.steps) gb.push_back(c.ground);
      return ga < gb;
    });
    return out;
  }

  void commit(const Candidate& c, std::size_t item, std::size_t iteration) {
    state_ = c.next;
    visited_.insert(state_);
    plan_.steps.push_back(c.ground);
    plan_.provenance.push_back({item, iteration});
  }

  bool run_single(const schema::AbstractAction& act, std::size_t index) {
    auto cands = candidates(act, task_env_);
    if (cands.empty()) return false;
    commit(cands.front(), index, 0);
    return true;
  }

  // A loop weighs one more whole iteration against the first action after
  // the loop. Ties stay in the loop; with nothing after the loop, leaving is
  // free, so only fully feature-verified iterations keep it running.
  void run_loop(const schema::PlanItem& loop, std::size_t index) {
    std::size_t iteration = 0;
    while (true) {
      auto options = iteration_options(loop);
      if (options.empty()) return;

      int exit_cost = 0;
      if (index + 1 < schema_.plan.size()) {
        auto exits = candidates(schema_.plan[index + 1].actions.front(), task_env_);
        exit_cost = exits.empty() ? std::numeric_limits<int>::max() : exits.front().cost;
      }
      if (exit_cost < options.front().cost) return;

      ++iteration;
      for (const auto& step : options.front().steps) commit(step, index, iteration);
    }
  }

  const schema::ActivitySchema& schema_;
  const model::Problem& problem_;
  const model::Domain& domain_;
  ProblemView view_;
  FactIndex statics_idx_;
  Binding task_env_;
  State state_;
  std::set<State> visited_;
  GroundAbstractPlan plan_;
  std::int64_t nodes_ = 0;
};

}  // namespace

AbstractPlanResult plan_abstract(const schema::ActivitySchema& s, const model::Problem& problem,
                                 const model::Domain& domain) {
  return AbstractPlanner(s, problem, domain).run();
}

namespace {

// All applicable ground actions in `state`, in deterministic order.
std::vector<std::pair<const Operator*, Binding>> applicable_actions(
    const State& state, const FactIndex& statics_idx, const model::Domain& domain,
    const std::set<Term>& objects) {
  std::vector<std::pair<const Operator*, Binding>> out;
  FactIndex state_idx(state);
  for (const auto& op : domain.concrete_ops) {
    for (auto& b : operator_bindings(op, {}, statics_idx, state_idx, objects))
      out.emplace_back(&op, std::move(b));
  }
  return out;
}

State apply_op(const State& state, const State& statics, const Operator& op, const Binding& b) {
  return model::apply(state, statics, op, b);
}

struct Bridge {
  std::vector<Action> actions;
  State result;
};

// Breadth-first search for short action sequences after which `targets`
// hold. Results come shortest-first; the exploration is capped.
std::vector<Bridge> find_bridges(const State& start, const std::vector<Atom>& targets,
                                 const State& statics, const FactIndex& statics_idx,
                                 const model::Domain& domain, const std::set<Term>& objects,
                                 int max_depth, std::int64_t& nodes, std::int64_t max_nodes) {
  auto satisfied = [&](const State& s) {
    return std::all_of(targets.begin(), targets.end(),
                       [&](const Atom& t) { return s.contains(t); });
  };

  std::vector<Bridge> found;
  if (satisfied(start)) {
    found.push_back({{}, start});
    return found;
  }
  if (max_depth <= 0) return found;

  constexpr std::size_t kMaxBridges = 16;
  constexpr std::size_t kMaxStates = 20'000;

  struct Node {
    State state;
    int parent;
    Action action;
    int depth;
  };
  std::vector<Node> tree;
  tree.push_back({start, -1, {}, 0});
  std::set<State> seen{start};
  std::deque<int> frontier{0};

  while (!frontier.empty() && found.size() < kMaxBridges && tree.size() < kMaxStates &&
         nodes < max_nodes) {
    const int at = frontier.front();
    frontier.pop_front();
    if (tree[at].depth >= max_depth) continue;
    const State current = tree[at].state;
    for (const auto& [op, b] : applicable_actions(current, statics_idx, domain, objects)) {
      ++nodes;
      State next = apply_op(current, statics, *op, b);
      if (seen.contains(next)) continue;
      seen.insert(next);
      Action ground{op->head.name, {}};
      for (const auto& p : op->head.params) ground.args.push_back(b.at(p));
      tree.push_back({next, at, ground, tree[at].depth + 1});
      const int id = static_cast<int>(tree.size()) - 1;
      if (satisfied(next)) {
        Bridge bridge;
        bridge.result = next;
        for (int walk = id; walk > 0; walk = tree[walk].parent)
          bridge.actions.push_back(tree[walk].action);
        std::reverse(bridge.actions.begin(), bridge.actions.end());
        found.push_back(std::move(bridge));
        if (found.size() >= kMaxBridges) break;
      } else {
        frontier.push_back(id);
      }
    }
  }
  return found;
}

}  // namespace

ConcretePlanResult plan_concrete(const GroundAbstractPlan& skeleton,
                                 const model::Problem& problem, const model::Domain& domain,
                                 const PlannerConfig& config) {
  ConcretePlanResult result;
  ProblemView view(problem);
  FactIndex statics_idx(view.statics);

  std::int64_t nodes = 0;
  std::size_t deepest = 0;
  bool exhausted = false;
  std::vector<Action> acc;

  std::function<bool(std::size_t, const State&)> go = [&](std::size_t i,
                                                          const State& state) -> bool {
    if (nodes > config.max_nodes) {
      exhausted = true;
      return false;
    }
    deepest = std::max(deepest, i);
    if (i == skeleton.steps.size()) {
      if (view.goal_satisfied(state)) return true;
      std::vector<Atom> goal(view.goal.begin(), view.goal.end());
      auto bridges = find_bridges(state, goal, view.statics, statics_idx, domain,
                                  problem.objects, config.bridge_depth, nodes, config.max_nodes);
      if (bridges.empty()) return false;
      acc.insert(acc.end(), bridges.front().actions.begin(), bridges.front().actions.end());
      return true;
    }

    const Action& step = skeleton.steps[i];
    for (const auto& op : domain.concrete_ops) {
      if (!op.parent || op.parent->name != step.name ||
          op.parent->params.size() != step.args.size())
        continue;
      Binding seed;
      bool consistent = true;
      for (std::size_t j = 0; j < step.args.size() && consistent; ++j) {
        auto [it, inserted] = seed.emplace(op.parent->params[j], step.args[j]);
        consistent = inserted || it->second == step.args[j];
      }
      if (!consistent) continue;

      // Static facts cannot be bridged, so complete the binding over them
      // only; the precondition is checked (or bridged) per candidate.
      std::set<Binding> bindings;
      {
        const State no_state;
        FactIndex empty_idx(no_state);
        Binding b = seed;
        enumerate_bindings(op.static_part, {}, statics_idx, empty_idx, problem.objects,
                           op.head.params, b, bindings);
      }

      for (int pass = 0; pass < 2; ++pass) {
        for (const auto& b : bindings) {
          const bool direct = model::applicable(state, view.statics, op, b);
          if ((pass == 0) != direct) continue;
          ++nodes;
          Action ground{op.head.name, {}};
          for (const auto& p : op.head.params) ground.args.push_back(b.at(p));

          if (direct) {
            State next = apply_op(state, view.statics, op, b);
            acc.push_back(ground);
            if (go(i + 1, next)) return true;
            acc.pop_back();
          } else {
            std::vector<Atom> targets;
            for (const auto& a : op.precondition) targets.push_back(model::substitute(a, b));
            auto bridges = find_bridges(state, targets, view.statics, statics_idx, domain,
                                        problem.objects, config.bridge_depth, nodes,
                                        config.max_nodes);
            for (const auto& bridge : bridges) {
              State next = apply_op(bridge.result, view.statics, op, b);
              const std::size_t mark = acc.size();
              acc.insert(acc.end(), bridge.actions.begin(), bridge.actions.end());
              acc.push_back(ground);
              if (go(i + 1, next)) return true;
              acc.resize(mark);
            }
          }
          if (exhausted) return false;
        }
      }
    }
    return false;
  };

  const bool ok = go(0, problem.init);
  result.nodes = nodes;
  if (ok) {
    result.ok = true;
    result.plan = std::move(acc);
  } else {
    result.failed_step = deepest;  // steps.size() means the final goal stage
  }
  (void)exhausted;
  return result;
}

PlanResult solve(const model::Problem& problem, const SchemaLibrary& lib,
                 const model::Domain& domain, const PlannerConfig& config) {
  using clock = std::chrono::steady_clock;
  PlanResult result;
  const auto start = clock::now();

  const schema::ActivitySchema* chosen = retrieve(problem, lib);
  result.retrieval_elapsed =
      std::chrono::duration_cast<std::chrono::microseconds>(clock::now() - start);
  if (chosen == nullptr) {
    result.status = PlanStatus::NoSchema;
    result.message = "no applicable activity schema for " + model::to_string(problem.task);
    result.elapsed = result.retrieval_elapsed;
    return result;
  }
  result.schema_used = chosen->name;

  AbstractPlanResult abstract = plan_abstract(*chosen, problem, domain);
  result.nodes_evaluated = abstract.nodes;
  if (!abstract.ok) {
    result.status = PlanStatus::Failure;
    result.failed_step = abstract.failed_item;
    result.message = "abstract planning stuck at schema item " + std::to_string(abstract.failed_item);
    result.elapsed = std::chrono::duration_cast<std::chrono::microseconds>(clock::now() - start);
    return result;
  }

  ConcretePlanResult concrete = plan_concrete(abstract.plan, problem, domain, config);
  result.nodes_evaluated += concrete.nodes;
  if (!concrete.ok) {
    result.status = concrete.nodes > config.max_nodes ? PlanStatus::Timeout : PlanStatus::Failure;
    result.failed_step = concrete.failed_step;
    result.message = "concrete planning failed at abstract step " +
                     std::to_string(concrete.failed_step);
    result.elapsed = std::chrono::duration_cast<std::chrono::microseconds>(clock::now() - start);
    return result;
  }

  const auto report = model::validate_plan(problem, concrete.plan, domain);
  if (!report.success || !report.goal_satisfied) {
    result.status = PlanStatus::Failure;
    result.message = "produced plan failed validation: " + report.message;
    result.elapsed = std::chrono::duration_cast<std::chrono::microseconds>(clock::now() - start);
    return result;
  }

  result.status = PlanStatus::Solved;
  result.plan = std::move(concrete.plan);
  result.elapsed = std::chrono::duration_cast<std::chrono::microseconds>(clock::now() - start);
  return result;
}

PlanResult baseline_forward_search(const model::Problem& problem, const model::Domain& domain,
                                   const SearchLimits& limits) {
  using clock = std::chrono::steady_clock;
  PlanResult result;
  const auto start = clock::now();
  ProblemView view(problem);
  FactIndex statics_idx(view.statics);

  result.nodes_evaluated = 1;
  if (view.goal_satisfied(problem.init)) {
    result.status = PlanStatus::Solved;
    result.elapsed = std::chrono::duration_cast<std::chrono::microseconds>(clock::now() - start);
    return result;
  }

  struct Node {
    State state;
    int parent;
    Action action;
  };
  std::vector<Node> tree;
  tree.push_back({problem.init, -1, {}});
  std::set<State> seen{problem.init};
  std::deque<int> frontier{0};

  while (!frontier.empty()) {
    if (result.nodes_evaluated >= limits.max_nodes ||
        clock::now() - start > limits.max_time) {
      result.status = PlanStatus::Timeout;
      result.message = "baseline search limit reached";
      result.elapsed = std::chrono::duration_cast<std::chrono::microseconds>(clock::now() - start);
      return result;
    }
    const int at = frontier.front();
    frontier.pop_front();
    const State current = tree[at].state;
    for (const auto& [op, b] : applicable_actions(current, statics_idx, domain,
                                                  problem.objects)) {
      ++result.nodes_evaluated;
      if (result.nodes_evaluated >= limits.max_nodes) break;
      State next = apply_op(current, view.statics, *op, b);
      if (seen.contains(next)) continue;
      seen.insert(next);
      Action ground{op->head.name, {}};
      for (const auto& p : op->head.params) ground.args.push_back(b.at(p));
      tree.push_back({next, at, ground});
      const int id = static_cast<int>(tree.size()) - 1;
      if (view.goal_satisfied(next)) {
        for (int walk = id; walk > 0; walk = tree[walk].parent)
          result.plan.push_back(tree[walk].action);
        std::reverse(result.plan.begin(), result.plan.end());
        result.status = PlanStatus::Solved;
        result.elapsed =
            std::chrono::duration_cast<std::chrono::microseconds>(clock::now() - start);
        return result;
      }
      frontier.push_back(id);
    }
  }

  result.status = PlanStatus::Failure;
  result.message = "search space exhausted without reaching the goal";
  result.elapsed = std::chrono::duration_cast<std::chrono::microseconds>(clock::now() - start);
  return result;
}

std::vector<std::size_t> specificity_order(
    const std::vector<schema::ActivitySchema>& schemata,
    const std::vector<logic::TwoValuedStructure>& sources) {
  const std::size_t n = schemata.size();
  std::vector<std::vector<bool>> narrower(n, std::vector<bool>(n, false));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) continue;
      const bool a_in_b = logic::embeds_canonical(sources[a], schemata[b].scope).embedded;
      const bool b_in_a = logic::embeds_canonical(sources[b], schemata[a].scope).embedded;
      narrower[a][b] = a_in_b && !b_in_a;
    }
  std::vector<std::size_t> order;
  std::vector<bool> emitted(n, false);
  for (std::size_t round = 0; round < n; ++round) {
    std::size_t pick = n;
    for (std::size_t i = 0; i < n && pick == n; ++i) {
      if (emitted[i]) continue;
      bool blocked = false;
      for (std::size_t j = 0; j < n && !blocked; ++j)
        blocked = !emitted[j] && j != i && narrower[j][i];
      if (!blocked) pick = i;
    }
    if (pick == n)  // mutual embeddings; keep the given order
      for (std::size_t i = 0; i < n && pick == n; ++i)
        if (!emitted[i]) pick = i;
    emitted[pick] = true;
    order.push_back(pick);
  }
  return order;
}

}  // namespace ebpd::planning
