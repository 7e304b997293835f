#include "ebpd/generators.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>
#include <stdexcept>

#include "ebpd/rng.hpp"

namespace ebpd::gen {

using model::Action;
using model::Atom;
using model::Problem;
using model::Term;

std::string_view to_string(StackClass c) {
  switch (c) {
    case StackClass::Base: return "base";
    case StackClass::I: return "i";
    case StackClass::II: return "ii";
    case StackClass::III: return "iii";
  }
  return "?";
}

std::optional<StackClass> stack_class_from_string(std::string_view s) {
  if (s == "base") return StackClass::Base;
  if (s == "i") return StackClass::I;
  if (s == "ii") return StackClass::II;
  if (s == "iii") return StackClass::III;
  return std::nullopt;
}

namespace {

std::vector<Term> numbered(const std::string& prefix, int n) {
  std::vector<Term> out;
  for (int i = 1; i <= n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

}  // namespace

model::Problem gen_stack(const StackSpec& spec) {
  if (spec.blue < 1 || spec.red < 1)
    throw std::invalid_argument("gen_stack: need at least one block of each color");
  if ((spec.cls == StackClass::II || spec.cls == StackClass::III) && spec.blue != spec.red)
    throw std::invalid_argument("gen_stack: alternating classes need equal color counts");

  SplitMix64 rng(spec.seed);
  Problem p;
  p.name = "stack-" + std::string(to_string(spec.cls)) + "-" + std::to_string(spec.blue) + "x" +
           std::to_string(spec.red) + "-s" + std::to_string(spec.seed);
  p.domain_name = "stack";

  const std::vector<Term> blues = numbered("b", spec.blue);
  const std::vector<Term> reds = numbered("r", spec.red);
  const Term table = "t1", pile = "p1", hoist = "h1", pallet = "pl1", location = "l1";

  p.task = {"stack", {table, pile}};
  for (const auto& b : blues) p.objects.insert(b);
  for (const auto& r : reds) p.objects.insert(r);
  p.objects.insert({table, pile, hoist, pallet, location});

  p.static_info.push_back({"table", {table}});
  p.static_info.push_back({"pile", {pile}});
  p.static_info.push_back({"hoist", {hoist}});
  p.static_info.push_back({"pallet", {pallet}});
  p.static_info.push_back({"location", {location}});
  for (const auto& b : blues) {
    p.static_info.push_back({"block", {b}});
    p.static_info.push_back({"blue", {b}});
  }
  for (const auto& r : reds) {
    p.static_info.push_back({"block", {r}});
    p.static_info.push_back({"red", {r}});
  }

  p.init.atoms.insert({"empty", {hoist}});

  // Initial arrangement. The seed permutes the pile order within each color;
  // the goal tower is the canonical one (blue b1..bn from the pallet up, then
  // red r1..rn), matching how demonstrations rebuild it. Initial piles avoid
  // reusing a goal support pair, so a demonstration never carries an initial
  // fact that doubles as a goal fact.
  std::set<std::pair<Term, Term>> goal_pairs;
  {
    Term under = pallet;
    for (const auto& b : blues) {
      goal_pairs.emplace(b, under);
      under = b;
    }
    for (const auto& r : reds) {
      goal_pairs.emplace(r, under);
      under = r;
    }
  }

  auto build_tower = [&](const std::vector<Term>& pile_blues,
                         const std::vector<Term>& pile_reds) {
    std::vector<Term> tower;  // bottom to top
    switch (spec.cls) {
      case StackClass::Base:
        break;
      case StackClass::I:
        tower.insert(tower.end(), pile_reds.begin(), pile_reds.end());
        tower.insert(tower.end(), pile_blues.begin(), pile_blues.end());
        break;
      case StackClass::II:
        for (int i = 0; i < spec.blue; ++i) {
          tower.push_back(pile_blues[static_cast<std::size_t>(i)]);
          tower.push_back(pile_reds[static_cast<std::size_t>(i)]);
        }
        break;
      case StackClass::III:
        for (int i = 0; i < spec.red; ++i) {
          tower.push_back(pile_reds[static_cast<std::size_t>(i)]);
          tower.push_back(pile_blues[static_cast<std::size_t>(i)]);
        }
        break;
    }
    return tower;
  };
  // A pair is a coincidence when the goal relates the same two blocks in
  // either orientation; such pairs would show up as extra features of the
  // demonstrated steps and break the uniformity of the loop iterations.
  auto coincides = [&](const std::vector<Term>& tower) {
    Term under = pallet;
    for (const auto& block : tower) {
      if (goal_pairs.contains({block, under}) || goal_pairs.contains({under, block}))
        return true;
      under = block;
    }
    return false;
  };

  if (spec.cls == StackClass::Base) {
    for (const auto& b : blues) p.init.atoms.insert({"ontable", {b, table}});
    for (const auto& r : reds) p.init.atoms.insert({"ontable", {r, table}});
  } else {
    std::vector<Term> pile_blues = blues, pile_reds = reds;
    std::vector<Term> tower;
    for (int attempt = 0; attempt < 200; ++attempt) {
      rng.shuffle(pile_blues);
      rng.shuffle(pile_reds);
      tower = build_tower(pile_blues, pile_reds);
      if (!coincides(tower)) break;  // single-block piles cannot always avoid it
    }
    Term below = pallet;
    for (const auto& block : tower) {
      p.init.atoms.insert({"on", {block, below}});
      below = block;
    }
  }

  Term goal_below = pallet;
  for (const auto& b : blues) {
    p.goal.push_back({"on", {b, goal_below}});
    goal_below = b;
  }
  for (const auto& r : reds) {
    p.goal.push_back({"on", {r, goal_below}});
    goal_below = r;
  }
  return p;
}

namespace {

const std::vector<Term> kModes = {"colour", "high_res", "low_res"};

}  // namespace

model::Problem gen_rover(const RoverSpec& spec) {
  if (spec.waypoints < 1 || spec.waypoints > 3)
    throw std::invalid_argument("gen_rover: waypoints must be in 1..3");
  if (spec.objectives < 5 || spec.objectives > 30)
    throw std::invalid_argument("gen_rover: objectives must be in 5..30");
  if (spec.cameras < 5 || spec.cameras > 10)
    throw std::invalid_argument("gen_rover: cameras must be in 5..10");
  if (spec.goals < 5 || spec.goals > 20)
    throw std::invalid_argument("gen_rover: goals must be in 5..20");

  SplitMix64 rng(spec.seed);
  Problem p;
  p.name = "rover-" + std::to_string(spec.waypoints) + "w" + std::to_string(spec.objectives) +
           "o" + std::to_string(spec.cameras) + "c" + std::to_string(spec.goals) + "g-s" +
           std::to_string(spec.seed);
  p.domain_name = "rover";

  const Term rover = "rv1", lander = "ld1", store = "st1";
  const std::vector<Term> waypoints = numbered("w", spec.waypoints);
  const std::vector<Term> objectives = numbered("o", spec.objectives);
  const std::vector<Term> cameras = numbered("c", spec.cameras);

  p.task = {"explore", {rover, lander}};
  p.objects.insert({rover, lander, store});
  for (const auto& w : waypoints) p.objects.insert(w);
  for (const auto& o : objectives) p.objects.insert(o);
  for (const auto& c : cameras) p.objects.insert(c);
  for (const auto& m : kModes) p.objects.insert(m);

  p.static_info.push_back({"rover", {rover}});
  p.static_info.push_back({"lander", {lander}});
  p.static_info.push_back({"store", {store}});
  for (const auto& w : waypoints) p.static_info.push_back({"waypoint", {w}});
  for (const auto& o : objectives) p.static_info.push_back({"objective", {o}});
  for (const auto& c : cameras) p.static_info.push_back({"camera", {c}});
  for (const auto& m : kModes) p.static_info.push_back({"mode", {m}});
  p.static_info.push_back({"store_of", {store, rover}});
  p.static_info.push_back({"equipped_for_imaging", {rover}});
  p.static_info.push_back({"at_lander", {lander, waypoints.back()}});
  for (const auto& c : cameras) p.static_info.push_back({"on_board", {c, rover}});

  // Visibility between waypoints includes the co-located pair so that a
  // rover can always talk to a lander at its own waypoint.
  for (const auto& a : waypoints)
    for (const auto& b : waypoints) {
      p.static_info.push_back({"visible", {a, b}});
      if (a != b) p.static_info.push_back({"can_traverse", {rover, a, b}});
    }

  for (const auto& c : cameras) {
    const Term target = objectives[rng.below(objectives.size())];
    p.static_info.push_back({"calibration_target", {c, target}});
  }

  // Two structural regimes each for camera support and objective
  // visibility: complete relations abstract to definite facts, sampled ones
  // to indefinite facts.
  const bool support_complete = rng.chance(0.5);
  std::map<Term, std::vector<Term>> supports;
  for (const auto& c : cameras) {
    if (support_complete) {
      supports[c] = kModes;
    } else {
      std::vector<Term> chosen;
      for (const auto& m : kModes)
        if (rng.chance(0.5)) chosen.push_back(m);
      if (chosen.empty()) chosen.push_back(kModes[rng.below(kModes.size())]);
      supports[c] = chosen;
    }
  }
  // Keep enough feasible goal pairs available. Distinct goals cannot exceed
  // objectives x modes, so the goal count is capped there.
  const int max_goals = spec.objectives * static_cast<int>(kModes.size());
  const int n_goals = std::min(spec.goals, max_goals);
  std::set<Term> supported_modes;
  for (const auto& [c, ms] : supports)
    for (const auto& m : ms) supported_modes.insert(m);
  while (static_cast<int>(supported_modes.size()) < static_cast<int>(kModes.size()) &&
         static_cast<int>(supported_modes.size()) * spec.objectives < n_goals) {
    for (const auto& m : kModes)
      if (!supported_modes.contains(m)) {
        supports[cameras.front()].push_back(m);
        supported_modes.insert(m);
        break;
      }
  }
  for (const auto& c : cameras)
    for (const auto& m : kModes)
      if (std::find(supports[c].begin(), supports[c].end(), m) != supports[c].end())
        p.static_info.push_back({"supports", {c, m}});

  const bool visibility_complete = spec.waypoints == 1 || rng.chance(0.5);
  for (const auto& o : objectives) {
    if (visibility_complete) {
      for (const auto& w : waypoints) p.static_info.push_back({"visible_from", {o, w}});
    } else {
      std::vector<Term> chosen;
      for (const auto& w : waypoints)
        if (rng.chance(0.5)) chosen.push_back(w);
      if (chosen.empty()) chosen.push_back(waypoints[rng.below(waypoints.size())]);
      for (const auto& w : chosen) p.static_info.push_back({"visible_from", {o, w}});
    }
  }

  p.init.atoms.insert({"at", {rover, waypoints.front()}});
  p.init.atoms.insert({"available", {rover}});
  p.init.atoms.insert({"channel_free", {lander}});
  p.init.atoms.insert({"empty", {store}});

  std::vector<std::pair<Term, Term>> pairs;
  for (const auto& o : objectives)
    for (const auto& m : kModes)
      if (supported_modes.contains(m)) pairs.emplace_back(o, m);
  rng.shuffle(pairs);
  for (int i = 0; i < std::min<int>(n_goals, static_cast<int>(pairs.size())); ++i)
    p.goal.push_back({"communicated_image_data", {pairs[static_cast<std::size_t>(i)].first,
                                                  pairs[static_cast<std::size_t>(i)].second}});
  return p;
}

namespace {

struct StackLayout {
  std::vector<Term> tower;  // bottom to top, empty for the base class
  std::vector<Term> goal_tower;
  Term table, pile, hoist, pallet, location;
};

StackLayout read_stack_layout(const Problem& p) {
  StackLayout out;
  std::map<Term, Term> on_top_of;  // below -> above
  std::set<Term> bases;
  for (const auto& a : p.static_info) {
    if (a.pred == "table") out.table = a.args.front();
    if (a.pred == "pile") out.pile = a.args.front();
    if (a.pred == "hoist") out.hoist = a.args.front();
    if (a.pred == "pallet") out.pallet = a.args.front();
    if (a.pred == "location") out.location = a.args.front();
  }
  for (const auto& a : p.init.atoms)
    if (a.pred == "on") on_top_of[a.args[1]] = a.args[0];
  for (Term at = out.pallet; on_top_of.contains(at); at = on_top_of.at(at))
    out.tower.push_back(on_top_of.at(at));

  std::map<Term, Term> goal_above;
  for (const auto& a : p.goal)
    if (a.pred == "on") goal_above[a.args[1]] = a.args[0];
  for (Term at = out.pallet; goal_above.contains(at); at = goal_above.at(at))
    out.goal_tower.push_back(goal_above.at(at));
  return out;
}

model::Experience experience_shell(const Problem& p) {
  model::Experience e;
  e.name = p.name + "-exp";
  e.domain_name = p.domain_name;
  e.task = p.task;
  e.objects = p.objects;
  for (const auto& kp : model::problem_keyprops(p)) e.key_properties.push_back(kp);
  return e;
}

}  // namespace

model::Experience demonstrate_stack(const model::Problem& problem) {
  const StackLayout lay = read_stack_layout(problem);
  model::Experience e = experience_shell(problem);

  // The hoist shuttles between the table and the pile around every transfer;
  // the final return trip is skipped.
  std::vector<Action> plan;
  auto move = [&](const Term& from, const Term& to) {
    plan.push_back({"move", {lay.hoist, from, to, lay.location}});
  };

  // Disassemble the initial tower (if any) onto the table, top down.
  std::map<Term, Term> below_of;
  for (const auto& a : problem.init.atoms)
    if (a.pred == "on") below_of[a.args[0]] = a.args[1];
  for (auto it = lay.tower.rbegin(); it != lay.tower.rend(); ++it) {
    plan.push_back({"unstack", {lay.hoist, *it, below_of.at(*it), lay.pile, lay.location}});
    move(lay.pile, lay.table);
    plan.push_back({"put", {lay.hoist, *it, lay.table, lay.location}});
    move(lay.table, lay.pile);
  }

  // Rebuild the goal tower from the table, bottom up.
  Term below = lay.pallet;
  for (const auto& block : lay.goal_tower) {
    plan.push_back({"pick", {lay.hoist, block, lay.table, lay.location}});
    move(lay.table, lay.pile);
    plan.push_back({"stack", {lay.hoist, block, below, lay.pile, lay.location}});
    move(lay.pile, lay.table);
    below = block;
  }
  if (!plan.empty() && plan.back().name == "move") plan.pop_back();

  e.plan = std::move(plan);
  return e;
}

model::Experience demonstrate_rover(const model::Problem& problem) {
  model::Experience e = experience_shell(problem);

  Term rover, lander, current;
  std::map<Term, Term> target_of;                 // camera -> calibration target
  std::map<Term, std::set<Term>> supported;      // camera -> modes
  std::map<Term, std::vector<Term>> seen_from;   // objective -> waypoints
  Term lander_wp;
  for (const auto& a : problem.static_info) {
    if (a.pred == "rover") rover = a.args.front();
    if (a.pred == "lander") lander = a.args.front();
    if (a.pred == "calibration_target") target_of[a.args[0]] = a.args[1];
    if (a.pred == "supports") supported[a.args[0]].insert(a.args[1]);
    if (a.pred == "visible_from") seen_from[a.args[0]].push_back(a.args[1]);
    if (a.pred == "at_lander") lander_wp = a.args[1];
  }
  for (const auto& a : problem.init.atoms)
    if (a.pred == "at") current = a.args[1];

  std::vector<Action> plan;
  auto go_to = [&](const Term& wp) {
    if (wp == current) return;
    plan.push_back({"navigate", {rover, current, wp}});
    current = wp;
  };

  for (const auto& g : problem.goal) {
    const Term& objective = g.args[0];
    const Term& mode = g.args[1];
    // Prefer a camera not calibrated against the imaged objective, so the
    // demonstrated steps stay uniform across goals.
    Term camera;
    for (const auto& [c, modes] : supported)
      if (modes.contains(mode) && target_of.at(c) != objective) {
        camera = c;
        break;
      }
    if (camera.empty())
      for (const auto& [c, modes] : supported)
        if (modes.contains(mode)) {
          camera = c;
          break;
        }
    const Term& cal_obj = target_of.at(camera);
    go_to(seen_from.at(cal_obj).front());
    plan.push_back({"calibrate", {rover, camera, cal_obj, current}});
    go_to(seen_from.at(objective).front());
    plan.push_back({"take_image", {rover, current, objective, camera, mode}});
    plan.push_back({"communicate_image_data", {rover, lander, objective, mode, current, lander_wp}});
  }

  e.plan = std::move(plan);
  return e;
}

ClassificationReport classify(const std::vector<model::Problem>& problems) {
  ClassificationReport report;
  for (std::size_t i = 0; i < problems.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    auto structure = logic::canonical_abstraction(model::struc_from_problem(problems[i]));
    const auto elapsed = std::chrono::steady_clock::now() - start;
    report.abstraction_ms.push_back(
        std::chrono::duration<double, std::milli>(elapsed).count());

    bool placed = false;
    for (std::size_t s = 0; s < report.representatives.size() && !placed; ++s) {
      if (logic::struc_equivalent(structure, report.representatives[s])) {
        report.sets[s].push_back(i);
        placed = true;
      }
    }
    if (!placed) {
      report.sets.push_back({i});
      report.representatives.push_back(std::move(structure));
    }
  }
  return report;
}

}  // namespace ebpd::gen
