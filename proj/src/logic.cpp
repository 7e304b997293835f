#include "ebpd/logic.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace ebpd::logic {

std::string_view to_string(Temporal t) {
  switch (t) {
    case Temporal::Static: return "static";
    case Temporal::Init: return "init";
    case Temporal::End: return "end";
  }
  return "?";
}

std::optional<Temporal> temporal_from_string(std::string_view s) {
  if (s == "static") return Temporal::Static;
  if (s == "init") return Temporal::Init;
  if (s == "end") return Temporal::End;
  return std::nullopt;
}

std::string to_string(const PredicateSymbol& p) {
  std::ostringstream os;
  os << to_string(p.temporal) << '(' << p.name << '/' << p.arity << ')';
  return os.str();
}

std::string to_string(const KeyProperty& k) {
  std::ostringstream os;
  os << '(' << to_string(k.predicate.temporal) << " (" << k.predicate.name;
  for (const auto& t : k.terms) os << ' ' << t;
  os << "))";
  return os.str();
}

bool TwoValuedStructure::holds(const PredicateSymbol& p, const Tuple& t) const {
  auto it = truths.find(p);
  return it != truths.end() && it->second.contains(t);
}

std::string_view to_string(TruthValue v) {
  switch (v) {
    case TruthValue::False: return "0";
    case TruthValue::True: return "1";
    case TruthValue::Half: return "1/2";
  }
  return "?";
}

TruthValue kleene_join(const std::set<TruthValue>& vals) {
  if (vals.empty()) throw std::invalid_argument("kleene_join: empty value set");
  if (vals.size() == 1) return *vals.begin();
  return TruthValue::Half;
}

bool truth_leq(TruthValue a, TruthValue b) {
  return a == b || b == TruthValue::Half;
}

TruthValue ThreeValuedStructure::value(const PredicateSymbol& p, const Tuple& t) const {
  auto it = truths.find(p);
  if (it == truths.end()) return TruthValue::False;
  auto jt = it->second.find(t);
  return jt == it->second.end() ? TruthValue::False : jt->second;
}

const AbstractNode* ThreeValuedStructure::find_node(const ObjectId& id) const {
  for (const auto& n : universe)
    if (n.id == id) return &n;
  return nullptr;
}

TwoValuedStructure struc_from_keyprops(const std::vector<KeyProperty>& props) {
  TwoValuedStructure c;
  for (const auto& kp : props) {
    if (static_cast<int>(kp.terms.size()) != kp.predicate.arity)
      throw std::invalid_argument("key-property term count does not match arity: " + to_string(kp));
    for (const auto& voc : c.vocabulary) {
      if (voc.temporal == kp.predicate.temporal && voc.name == kp.predicate.name &&
          voc.arity != kp.predicate.arity)
        throw std::invalid_argument("arity conflict for predicate " + to_string(kp.predicate));
    }
    c.vocabulary.insert(kp.predicate);
    for (const auto& t : kp.terms) c.universe.insert(t);
    c.truths[kp.predicate].insert(kp.terms);
  }
  return c;
}

std::set<PredicateSymbol> canonical_name(const ObjectId& u, const TwoValuedStructure& c) {
  if (!c.universe.contains(u))
    throw std::invalid_argument("canonical_name: object not in universe: " + u);
  std::set<PredicateSymbol> name;
  for (const auto& p : c.vocabulary) {
    if (p.arity != 1) continue;
    if (c.holds(p, Tuple{u})) name.insert(p);
  }
  return name;
}

ThreeValuedStructure canonical_abstraction(const TwoValuedStructure& c) {
  // Group objects by canonical name; the node id is the least member.
  std::map<ObjectId, std::set<PredicateSymbol>> names;
  for (const auto& u : c.universe) names[u] = canonical_name(u, c);

  std::map<std::set<PredicateSymbol>, std::vector<ObjectId>> groups;
  for (const auto& u : c.universe) groups[names[u]].push_back(u);  // universe is sorted

  ThreeValuedStructure s;
  s.vocabulary = c.vocabulary;
  std::map<ObjectId, ObjectId> node_of;   // object -> node id
  std::map<ObjectId, std::size_t> block;  // node id -> merged object count
  for (const auto& [name, members] : groups) {
    AbstractNode n;
    n.id = members.front();
    n.canonical_name = name;
    n.is_summary = members.size() >= 2;
    block[n.id] = members.size();
    for (const auto& m : members) node_of[m] = n.id;
    s.universe.push_back(std::move(n));
  }
  std::sort(s.universe.begin(), s.universe.end(),
            [](const AbstractNode& a, const AbstractNode& b) { return a.id < b.id; });

  // Count true tuples per abstract image; the join is 1 exactly when the
  // count covers the whole preimage, 1/2 otherwise. All-false images stay
  // absent (false by omission).
  for (const auto& [pred, tuples] : c.truths) {
    std::map<Tuple, std::size_t> hits;
    for (const auto& t : tuples) {
      Tuple image;
      image.reserve(t.size());
      for (const auto& obj : t) image.push_back(node_of.at(obj));
      ++hits[image];
    }
    for (const auto& [image, cnt] : hits) {
      std::size_t preimage = 1;
      for (const auto& node : image) preimage *= block.at(node);
      s.truths[pred][image] = (cnt == preimage) ? TruthValue::True : TruthValue::Half;
    }
  }
  return s;
}

std::string_view to_string(EmbedFailure f) {
  switch (f) {
    case EmbedFailure::None: return "none";
    case EmbedFailure::UnmatchedCanonicalName: return "unmatched-canonical-name";
    case EmbedFailure::SurjectivityViolation: return "surjectivity-violation";
    case EmbedFailure::TruthValueConflict: return "truth-value-conflict";
    case EmbedFailure::VocabularyMismatch: return "vocabulary-mismatch";
  }
  return "?";
}

namespace {

std::string tuple_text(const Tuple& t) {
  std::string out = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ' ';
    out += t[i];
  }
  return out + ")";
}

}  // namespace

EmbeddingResult embeds_canonical(const TwoValuedStructure& c, const ThreeValuedStructure& s) {
  EmbeddingResult r;

  std::set<PredicateSymbol> s_unary;
  for (const auto& p : s.vocabulary)
    if (p.arity == 1) s_unary.insert(p);

  std::map<std::set<PredicateSymbol>, ObjectId> node_by_name;
  for (const auto& n : s.universe) node_by_name[n.canonical_name] = n.id;

  // Totality: every object's restricted canonical name must match a node.
  std::map<ObjectId, ObjectId> f;
  std::map<ObjectId, std::vector<ObjectId>> preimage;
  for (const auto& u : c.universe) {
    std::set<PredicateSymbol> restricted;
    for (const auto& p : canonical_name(u, c))
      if (s_unary.contains(p)) restricted.insert(p);
    auto it = node_by_name.find(restricted);
    if (it == node_by_name.end()) {
      r.failure = EmbedFailure::UnmatchedCanonicalName;
      r.detail = "no node matches the canonical name of " + u;
      return r;
    }
    f[u] = it->second;
    preimage[it->second].push_back(u);
  }

  // Surjectivity onto the scope universe.
  for (const auto& n : s.universe) {
    if (!preimage.contains(n.id)) {
      r.failure = EmbedFailure::SurjectivityViolation;
      r.detail = "no object maps onto node " + n.id;
      return r;
    }
  }

  auto map_tuple = [&](const Tuple& t) {
    Tuple image;
    image.reserve(t.size());
    for (const auto& obj : t) image.push_back(f.at(obj));
    return image;
  };

  // Every true concrete tuple must land on a 1 or 1/2 image. This also
  // covers all-false abstract images, which must have all-false preimages.
  for (const auto& [pred, tuples] : c.truths) {
    const bool known = s.vocabulary.contains(pred);
    for (const auto& t : tuples) {
      if (!known) {
        r.failure = EmbedFailure::VocabularyMismatch;
        r.detail = to_string(pred) + tuple_text(t) + " is true but the scope does not know the predicate";
        return r;
      }
      if (s.value(pred, map_tuple(t)) == TruthValue::False) {
        r.failure = EmbedFailure::TruthValueConflict;
        r.detail = to_string(pred) + tuple_text(t) + " is true but maps to a false scope tuple";
        return r;
      }
    }
  }

  // Every definite-1 abstract tuple must have an all-true preimage. Tuples
  // with 1/2 images hold vacuously.
  for (const auto& [pred, entries] : s.truths) {
    for (const auto& [tuple, value] : entries) {
      if (value != TruthValue::True) continue;
      std::vector<const std::vector<ObjectId>*> blocks;
      blocks.reserve(tuple.size());
      for (const auto& node : tuple) blocks.push_back(&preimage.at(node));
      Tuple probe(tuple.size());
      std::function<bool(std::size_t)> walk = [&](std::size_t i) -> bool {
        if (i == tuple.size()) return c.holds(pred, probe);
        for (const auto& obj : *blocks[i]) {
          probe[i] = obj;
          if (!walk(i + 1)) return false;
        }
        return true;
      };
      if (!walk(0)) {
        r.failure = EmbedFailure::TruthValueConflict;
        r.detail = to_string(pred) + tuple_text(tuple) + " is definite in the scope but not true for every mapped tuple";
        return r;
      }
    }
  }

  r.embedded = true;
  r.mapping = std::move(f);
  return r;
}

namespace {

bool check_assignment(const TwoValuedStructure& c, const ThreeValuedStructure& s,
                      const std::vector<ObjectId>& objects,
                      const std::vector<std::size_t>& assign) {
  std::map<ObjectId, ObjectId> f;
  for (std::size_t i = 0; i < objects.size(); ++i) f[objects[i]] = s.universe[assign[i]].id;

  std::set<PredicateSymbol> vocab = c.vocabulary;
  vocab.insert(s.vocabulary.begin(), s.vocabulary.end());

  for (const auto& pred : vocab) {
    const std::size_t k = static_cast<std::size_t>(pred.arity);
    Tuple t(k);
    std::function<bool(std::size_t)> walk = [&](std::size_t i) -> bool {
      if (i == k) {
        const TruthValue lhs = c.holds(pred, t) ? TruthValue::True : TruthValue::False;
        Tuple image(k);
        for (std::size_t j = 0; j < k; ++j) image[j] = f.at(t[j]);
        return truth_leq(lhs, s.value(pred, image));
      }
      for (const auto& obj : objects) {
        t[i] = obj;
        if (!walk(i + 1)) return false;
      }
      return true;
    };
    if (!walk(0)) return false;
  }
  return true;
}

}  // namespace

bool embeds_oracle(const TwoValuedStructure& c, const ThreeValuedStructure& s) {
  if (c.universe.size() > 8)
    throw std::invalid_argument("embeds_oracle: universe larger than 8 objects");
  const std::vector<ObjectId> objects(c.universe.begin(), c.universe.end());
  const std::size_t n = objects.size();
  const std::size_t m = s.universe.size();
  if (n < m) return false;  // no surjection exists
  if (m == 0) return n == 0;

  std::vector<std::size_t> assign(n, 0);
  std::vector<std::size_t> covered(m, 0);
  std::function<bool(std::size_t)> place = [&](std::size_t i) -> bool {
    if (i == n) return check_assignment(c, s, objects, assign);
    for (std::size_t node = 0; node < m; ++node) {
      assign[i] = node;
      ++covered[node];
      // Surjectivity is still reachable when the uncovered nodes fit into
      // the remaining slots.
      std::size_t uncovered = 0;
      for (std::size_t x = 0; x < m; ++x)
        if (covered[x] == 0) ++uncovered;
      if (uncovered <= n - i - 1) {
        if (place(i + 1)) return true;
      }
      --covered[node];
    }
    return false;
  };
  return place(0);
}

bool struc_equivalent(const ThreeValuedStructure& a, const ThreeValuedStructure& b) {
  if (a.vocabulary != b.vocabulary) return false;
  if (a.universe.size() != b.universe.size()) return false;

  std::map<std::set<PredicateSymbol>, std::vector<const AbstractNode*>> ga, gb;
  for (const auto& n : a.universe) ga[n.canonical_name].push_back(&n);
  for (const auto& n : b.universe) gb[n.canonical_name].push_back(&n);
  if (ga.size() != gb.size()) return false;
  for (const auto& [name, nodes] : ga) {
    auto it = gb.find(name);
    if (it == gb.end() || it->second.size() != nodes.size()) return false;
  }

  auto matches = [&](const std::map<ObjectId, ObjectId>& rename) {
    for (const auto& n : a.universe) {
      const AbstractNode* other = b.find_node(rename.at(n.id));
      if (other == nullptr || other->is_summary != n.is_summary) return false;
    }
    std::map<PredicateSymbol, std::map<Tuple, TruthValue>> renamed;
    for (const auto& [pred, entries] : a.truths) {
      for (const auto& [tuple, value] : entries) {
        Tuple image;
        image.reserve(tuple.size());
        for (const auto& id : tuple) image.push_back(rename.at(id));
        renamed[pred][image] = value;
      }
    }
    return renamed == b.truths;
  };

  // Canonical names are pairwise distinct for abstraction-produced
  // structures, so groups are singletons and there is a single candidate
  // bijection. The general case backtracks over per-group permutations.
  std::vector<std::pair<std::vector<const AbstractNode*>, std::vector<const AbstractNode*>>> groups;
  for (auto& [name, nodes] : ga) groups.emplace_back(nodes, gb.at(name));

  std::map<ObjectId, ObjectId> rename;
  std::function<bool(std::size_t)> assign_group = [&](std::size_t g) -> bool {
    if (g == groups.size()) return matches(rename);
    auto& [from, to] = groups[g];
    std::vector<std::size_t> perm(to.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    do {
      for (std::size_t i = 0; i < from.size(); ++i) rename[from[i]->id] = to[perm[i]]->id;
      if (assign_group(g + 1)) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    for (const auto* n : from) rename.erase(n->id);
    return false;
  };
  return assign_group(0);
}

std::string serialize_scope(const ThreeValuedStructure& s, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  std::ostringstream os;
  os << pad << "(:scope";
  for (const auto& n : s.universe) {
    if (n.is_summary) os << '\n' << pad << "  (summary " << n.id << ')';
  }

  struct Fact {
    PredicateSymbol pred;
    Tuple tuple;
    TruthValue value;
  };
  std::vector<Fact> facts;
  for (const auto& [pred, entries] : s.truths)
    for (const auto& [tuple, value] : entries)
      if (value != TruthValue::False) facts.push_back({pred, tuple, value});
  std::sort(facts.begin(), facts.end(), [](const Fact& a, const Fact& b) {
    return std::tie(a.pred.temporal, a.pred.name, a.tuple, a.pred.arity) <
           std::tie(b.pred.temporal, b.pred.name, b.tuple, b.pred.arity);
  });

  for (const auto& f : facts) {
    os << '\n' << pad << "  ";
    std::string inner = "(" + std::string(to_string(f.pred.temporal)) + " (" + f.pred.name;
    for (const auto& t : f.tuple) inner += ' ' + t;
    inner += "))";
    if (f.value == TruthValue::Half)
      os << "(maybe " << inner << ')';
    else
      os << inner;
  }
  os << '\n' << pad << ')';
  return os.str();
}

namespace {

// Quotes only; labels embed intentional \n breaks.
std::string dot_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (ch == '"') out += '\\';
    out += ch;
  }
  return out;
}

}  // namespace

std::string to_dot(const TwoValuedStructure& c) {
  std::ostringstream os;
  os << "digraph structure {\n  rankdir=LR;\n";
  for (const auto& u : c.universe) {
    std::string label = u;
    for (const auto& p : canonical_name(u, c))
      label += "\\n" + std::string(to_string(p.temporal)) + "(" + p.name + ")";
    os << "  \"" << dot_escape(u) << "\" [shape=circle,label=\"" << dot_escape(label) << "\"];\n";
  }
  for (const auto& [pred, tuples] : c.truths) {
    if (pred.arity < 2) continue;
    for (const auto& t : tuples) {
      os << "  \"" << dot_escape(t.front()) << "\" -> \"" << dot_escape(t.back())
         << "\" [label=\"" << dot_escape(std::string(to_string(pred.temporal)) + "(" + pred.name + ")")
         << "\"];\n";
    }
  }
  os << "}\n";
  return os.str();
}

std::string to_dot(const ThreeValuedStructure& s) {
  std::ostringstream os;
  os << "digraph scope {\n  rankdir=LR;\n";
  for (const auto& n : s.universe) {
    std::string label = n.id;
    for (const auto& p : n.canonical_name)
      label += "\\n" + std::string(to_string(p.temporal)) + "(" + p.name + ")";
    os << "  \"" << dot_escape(n.id) << "\" [shape=" << (n.is_summary ? "doublecircle" : "circle")
       << ",label=\"" << dot_escape(label) << "\"];\n";
  }
  for (const auto& [pred, entries] : s.truths) {
    if (pred.arity < 2) continue;
    for (const auto& [t, value] : entries) {
      if (value == TruthValue::False) continue;
      os << "  \"" << dot_escape(t.front()) << "\" -> \"" << dot_escape(t.back())
         << "\" [label=\"" << dot_escape(std::string(to_string(pred.temporal)) + "(" + pred.name + ")")
         << "\"" << (value == TruthValue::Half ? ",style=dashed" : "") << "];\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace ebpd::logic
