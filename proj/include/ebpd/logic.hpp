#pragma once

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace ebpd::logic {

/// Temporal tag of a key-property: facts that hold throughout, at the initial
/// state, or at the final state.
enum class Temporal { Static, Init, End };

std::string_view to_string(Temporal t);
std::optional<Temporal> temporal_from_string(std::string_view s);

/// A predicate together with its temporal tag. Two symbols that differ only
/// in the tag are distinct predicates.
struct PredicateSymbol {
  Temporal temporal = Temporal::Static;
  std::string name;
  int arity = 0;

  auto operator<=>(const PredicateSymbol&) const = default;
};

std::string to_string(const PredicateSymbol& p);

using ObjectId = std::string;
using Tuple = std::vector<ObjectId>;

/// A tagged ground or variablized fact, e.g. init(ontable b1 t1).
struct KeyProperty {
  PredicateSymbol predicate;
  std::vector<std::string> terms;

  auto operator<=>(const KeyProperty&) const = default;
};

std::string to_string(const KeyProperty& k);

/// Concrete structure: universe of objects plus a Boolean interpretation.
/// Tuples absent from `truths` are false; the interpretation is total.
struct TwoValuedStructure {
  std::set<ObjectId> universe;
  std::set<PredicateSymbol> vocabulary;
  std::map<PredicateSymbol, std::set<Tuple>> truths;

  bool holds(const PredicateSymbol& p, const Tuple& t) const;

  bool operator==(const TwoValuedStructure&) const = default;
};

enum class TruthValue { False, True, Half };

std::string_view to_string(TruthValue v);

/// Kleene join over a non-empty set of truth values: the value itself for a
/// singleton, 1/2 otherwise.
TruthValue kleene_join(const std::set<TruthValue>& vals);

/// Information order: a is at most b when a == b or b == 1/2.
bool truth_leq(TruthValue a, TruthValue b);

struct AbstractNode {
  ObjectId id;  // representative object name, lexicographically least member
  std::set<PredicateSymbol> canonical_name;
  bool is_summary = false;

  bool operator==(const AbstractNode&) const = default;
};

/// Abstract structure: nodes keyed by canonical name, values in {0, 1, 1/2}.
/// Tuples absent from `truths` are false.
struct ThreeValuedStructure {
  std::vector<AbstractNode> universe;  // sorted by id
  std::set<PredicateSymbol> vocabulary;
  std::map<PredicateSymbol, std::map<Tuple, TruthValue>> truths;

  TruthValue value(const PredicateSymbol& p, const Tuple& t) const;
  const AbstractNode* find_node(const ObjectId& id) const;

  bool operator==(const ThreeValuedStructure&) const = default;
};

/// Builds the concrete structure of a key-property set: the universe is the
/// set of terms occurring in K, and a tuple is true exactly when the
/// corresponding key-property is present. Duplicates are idempotent; an arity
/// conflict for the same tagged predicate name throws std::invalid_argument.
TwoValuedStructure struc_from_keyprops(const std::vector<KeyProperty>& props);

/// Set of unary predicates true of `u`. Throws std::invalid_argument when `u`
/// is not in the universe.
std::set<PredicateSymbol> canonical_name(const ObjectId& u, const TwoValuedStructure& c);

/// Merges all objects with equal canonical names into one node (a summary
/// node when two or more objects are merged) and joins truth values over the
/// preimage tuples.
ThreeValuedStructure canonical_abstraction(const TwoValuedStructure& c);

enum class EmbedFailure {
  None,
  UnmatchedCanonicalName,
  SurjectivityViolation,
  TruthValueConflict,
  VocabularyMismatch,
};

std::string_view to_string(EmbedFailure f);

struct EmbeddingResult {
  bool embedded = false;
  std::map<ObjectId, ObjectId> mapping;  // object id -> node id, present iff embedded
  EmbedFailure failure = EmbedFailure::None;
  std::string detail;
};

/// Embedding test via the canonical mapping: each object goes to the node
/// whose canonical name equals the object's name restricted to the unary
/// vocabulary of S. The map must be total and surjective, and every truth
/// value must be preserved up to 1/2. Predicates missing from one side are
/// read as identically false there.
EmbeddingResult embeds_canonical(const TwoValuedStructure& c, const ThreeValuedStructure& s);

/// Exhaustive search over all surjective maps (the general existential form
/// of the embedding relation). Test oracle only; refuses universes larger
/// than 8 objects.
bool embeds_oracle(const TwoValuedStructure& c, const ThreeValuedStructure& s);

/// Structural equivalence: a bijection matching canonical names exactly under
/// which vocabularies, summary flags and all truth values coincide.
bool struc_equivalent(const ThreeValuedStructure& a, const ThreeValuedStructure& b);

/// Canonical text form of a scope: one `(summary ?o)` per summary node, then
/// one line per non-false fact, 1/2-valued facts wrapped in `(maybe ...)`.
/// Deterministic ordering; round-trips through the scope parser.
std::string serialize_scope(const ThreeValuedStructure& s, int indent = 0);

/// Graphviz renderings for debugging. No stability guarantee.
std::string to_dot(const TwoValuedStructure& c);
std::string to_dot(const ThreeValuedStructure& s);

}  // namespace ebpd::logic
