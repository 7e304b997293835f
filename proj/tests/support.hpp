// Shared test helpers: independent oracles and random generators. Everything
// here recomputes results by direct definition-following enumeration, kept
// deliberately separate from the library's algorithms.

#pragma once

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ebpd/logic.hpp"
#include "ebpd/model.hpp"
#include "ebpd/repeats.hpp"
#include "ebpd/rng.hpp"
#include "ebpd/schema.hpp"
#include "ebpd/text.hpp"

#ifndef EBPD_FIXTURE_DIR
#define EBPD_FIXTURE_DIR "fixtures"
#endif

namespace testsupport {

inline std::string fixture_path(const std::string& name) {
  return std::string(EBPD_FIXTURE_DIR) + "/" + name;
}

inline std::string fixture_text(const std::string& name) {
  return ebpd::text::read_file(fixture_path(name));
}

// ---------------------------------------------------------------------------
// Abstraction oracle: join over the full preimage tuple set by enumeration.

inline ebpd::logic::ThreeValuedStructure brute_force_abstraction(
    const ebpd::logic::TwoValuedStructure& c) {
  using namespace ebpd::logic;
  std::map<ObjectId, std::set<PredicateSymbol>> names;
  for (const auto& u : c.universe) names[u] = canonical_name(u, c);

  std::map<std::set<PredicateSymbol>, std::vector<ObjectId>> groups;
  for (const auto& u : c.universe) groups[names[u]].push_back(u);

  ThreeValuedStructure s;
  s.vocabulary = c.vocabulary;
  std::map<ObjectId, ObjectId> node_of;
  for (const auto& [name, members] : groups) {
    AbstractNode n{members.front(), name, members.size() >= 2};
    for (const auto& m : members) node_of[m] = n.id;
    s.universe.push_back(n);
  }
  std::sort(s.universe.begin(), s.universe.end(),
            [](const AbstractNode& a, const AbstractNode& b) { return a.id < b.id; });

  const std::vector<ObjectId> objects(c.universe.begin(), c.universe.end());
  for (const auto& pred : c.vocabulary) {
    const std::size_t k = static_cast<std::size_t>(pred.arity);
    Tuple tuple(k);
    std::function<void(std::size_t)> walk = [&](std::size_t i) {
      if (i == k) {
        Tuple image(k);
        for (std::size_t j = 0; j < k; ++j) image[j] = node_of.at(tuple[j]);
        const TruthValue v = c.holds(pred, tuple) ? TruthValue::True : TruthValue::False;
        auto it = s.truths[pred].find(image);
        if (it == s.truths[pred].end()) {
          s.truths[pred][image] = v;
        } else if (it->second != v) {
          it->second = TruthValue::Half;
        }
        return;
      }
      for (const auto& obj : objects) {
        tuple[i] = obj;
        walk(i + 1);
      }
    };
    walk(0);
    // Keep only non-false entries, matching the library's sparse form.
    for (auto it = s.truths[pred].begin(); it != s.truths[pred].end();) {
      if (it->second == TruthValue::False)
        it = s.truths[pred].erase(it);
      else
        ++it;
    }
    if (s.truths[pred].empty()) s.truths.erase(pred);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Periodic-run oracle: direct scanning, longest run first, then leftmost,
// then shortest period; claimed regions never re-enter detection.

inline std::vector<ebpd::repeats::Run> run_oracle(const std::vector<int>& seq) {
  using ebpd::repeats::Run;
  const std::size_t n = seq.size();
  std::vector<Run> out;
  std::vector<std::pair<std::size_t, std::size_t>> gaps{{0, n}};
  while (true) {
    bool found = false;
    Run best;
    for (const auto& [lo, hi] : gaps) {
      for (std::size_t p = 1; lo + 2 * p <= hi; ++p) {
        for (std::size_t s = lo; s + 2 * p <= hi; ++s) {
          std::size_t r = 1;
          while (s + (r + 1) * p <= hi) {
            bool same = true;
            for (std::size_t k = 0; k < p && same; ++k)
              same = seq[s + (r - 1) * p + k] == seq[s + r * p + k];
            if (!same) break;
            ++r;
          }
          if (r < 2) continue;
          const Run cand{s, p, r};
          const bool better =
              !found || cand.length() > best.length() ||
              (cand.length() == best.length() &&
               (cand.start < best.start ||
                (cand.start == best.start && cand.period < best.period)));
          if (better) best = cand;
          found = true;
        }
      }
    }
    if (!found) break;
    out.push_back(best);
    std::vector<std::pair<std::size_t, std::size_t>> next;
    for (const auto& [lo, hi] : gaps) {
      if (best.start >= hi || best.start + best.length() <= lo) {
        next.emplace_back(lo, hi);
        continue;
      }
      if (best.start > lo) next.emplace_back(lo, best.start);
      if (best.start + best.length() < hi) next.emplace_back(best.start + best.length(), hi);
    }
    gaps = std::move(next);
  }
  std::sort(out.begin(), out.end(),
            [](const Run& a, const Run& b) { return a.start < b.start; });
  return out;
}

// ---------------------------------------------------------------------------
// Random structures.

inline ebpd::logic::TwoValuedStructure random_structure(ebpd::SplitMix64& rng, int max_objects,
                                                        int max_preds, int max_arity) {
  using namespace ebpd::logic;
  const int n_objects = static_cast<int>(rng.range(1, max_objects));
  const int n_preds = static_cast<int>(rng.range(1, max_preds));

  std::vector<KeyProperty> props;
  std::vector<ObjectId> objects;
  for (int i = 1; i <= n_objects; ++i) objects.push_back("o" + std::to_string(i));

  for (int pi = 0; pi < n_preds; ++pi) {
    PredicateSymbol p;
    p.temporal = static_cast<Temporal>(rng.below(3));
    p.name = "p" + std::to_string(pi);
    p.arity = static_cast<int>(rng.range(1, max_arity));
    // Sample a fraction of the possible tuples as true.
    std::size_t total = 1;
    for (int k = 0; k < p.arity; ++k) total *= objects.size();
    const std::size_t picks = rng.below(std::max<std::size_t>(total, 2));
    for (std::size_t t = 0; t < picks; ++t) {
      Tuple tuple;
      for (int k = 0; k < p.arity; ++k)
        tuple.push_back(objects[rng.below(objects.size())]);
      props.push_back({p, tuple});
    }
    if (picks == 0) {
      // keep the predicate in the vocabulary through one tuple
      Tuple tuple;
      for (int k = 0; k < p.arity; ++k)
        tuple.push_back(objects[rng.below(objects.size())]);
      props.push_back({p, tuple});
    }
  }
  auto c = struc_from_keyprops(props);
  // Objects mentioned in no atom stay in the universe, as task arguments do.
  for (const auto& o : objects) c.universe.insert(o);
  return c;
}

// A concrete structure drawn from a scope: several objects per node, true
// tuples kept, indefinite tuples sampled. Such structures usually embed.
inline ebpd::logic::TwoValuedStructure concretize(ebpd::SplitMix64& rng,
                                                  const ebpd::logic::ThreeValuedStructure& s,
                                                  int max_copies) {
  using namespace ebpd::logic;
  std::map<ObjectId, std::vector<ObjectId>> members;
  std::vector<KeyProperty> props;
  int counter = 0;
  for (const auto& node : s.universe) {
    const int copies = node.is_summary ? static_cast<int>(rng.range(1, max_copies)) : 1;
    for (int i = 0; i < copies; ++i) {
      const ObjectId obj = "c" + std::to_string(++counter);
      members[node.id].push_back(obj);
      for (const auto& p : node.canonical_name) props.push_back({p, {obj}});
    }
  }
  for (const auto& [pred, entries] : s.truths) {
    if (pred.arity == 1) continue;  // unary facts come from canonical names
    for (const auto& [tuple, value] : entries) {
      std::vector<const std::vector<ObjectId>*> blocks;
      for (const auto& id : tuple) blocks.push_back(&members.at(id));
      std::vector<std::size_t> at(tuple.size(), 0);
      std::function<void(std::size_t)> walk = [&](std::size_t i) {
        if (i == tuple.size()) {
          const bool keep = value == TruthValue::True || rng.chance(0.5);
          if (keep) {
            Tuple concrete;
            for (std::size_t j = 0; j < tuple.size(); ++j)
              concrete.push_back((*blocks[j])[at[j]]);
            props.push_back({pred, concrete});
          }
          return;
        }
        for (at[i] = 0; at[i] < blocks[i]->size(); ++at[i]) walk(i + 1);
      };
      walk(0);
    }
  }
  auto c = struc_from_keyprops(props);
  c.vocabulary.insert(s.vocabulary.begin(), s.vocabulary.end());
  return c;
}

}  // namespace testsupport
