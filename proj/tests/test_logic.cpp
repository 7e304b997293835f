#include <doctest.h>

#include "ebpd/learning.hpp"
#include "ebpd/logic.hpp"
#include "ebpd/text.hpp"
#include "support.hpp"

using namespace ebpd;
using namespace ebpd::logic;

namespace {

KeyProperty kp(Temporal tag, const std::string& pred, std::vector<std::string> terms) {
  return {{tag, pred, static_cast<int>(terms.size())}, std::move(terms)};
}

model::Experience base_experience() {
  return text::parse_experience(testsupport::fixture_text("stack_base.exp"));
}

TwoValuedStructure generalized_base_structure() {
  const auto g = learning::generalize(base_experience());
  return struc_from_keyprops(g.experience.key_properties);
}

}  // namespace

TEST_CASE("struc_from_keyprops builds the universe and interpretation from the properties") {
  const auto c = struc_from_keyprops({
      kp(Temporal::Init, "on", {"b1", "b2"}),
      kp(Temporal::Static, "block", {"b1"}),
      kp(Temporal::Static, "block", {"b2"}),
  });
  CHECK(c.universe == std::set<ObjectId>{"b1", "b2"});
  CHECK(c.vocabulary.size() == 2);
  CHECK(c.holds({Temporal::Init, "on", 2}, {"b1", "b2"}));
  CHECK_FALSE(c.holds({Temporal::Init, "on", 2}, {"b2", "b1"}));
  CHECK_FALSE(c.holds({Temporal::Init, "on", 2}, {"b1", "b1"}));
  CHECK(c.holds({Temporal::Static, "block", 1}, {"b2"}));
}

TEST_CASE("struc_from_keyprops is idempotent on duplicates and rejects arity conflicts") {
  const auto c = struc_from_keyprops({
      kp(Temporal::Init, "empty", {"h1"}),
      kp(Temporal::Init, "empty", {"h1"}),
  });
  CHECK(c.truths.at({Temporal::Init, "empty", 1}).size() == 1);

  CHECK_THROWS_AS(struc_from_keyprops({
                      kp(Temporal::Init, "on", {"a", "b"}),
                      kp(Temporal::Init, "on", {"a"}),
                  }),
                  std::invalid_argument);
}

TEST_CASE("struc_from_keyprops of nothing is the empty structure") {
  const auto c = struc_from_keyprops({});
  CHECK(c.universe.empty());
  CHECK(c.vocabulary.empty());
}

TEST_CASE("the eight-block experience yields thirteen objects") {
  const auto c = generalized_base_structure();
  CHECK(c.universe.size() == 13);
}

TEST_CASE("canonical names of the stack experience objects") {
  const auto c = generalized_base_structure();

  CHECK(canonical_name("?t1", c) ==
        std::set<PredicateSymbol>{{Temporal::Static, "table", 1}});
  CHECK(canonical_name("?h1", c) ==
        std::set<PredicateSymbol>{{Temporal::Static, "hoist", 1}, {Temporal::Init, "empty", 1}});
  const std::set<PredicateSymbol> blue_name{{Temporal::Static, "block", 1},
                                            {Temporal::Static, "blue", 1}};
  const std::set<PredicateSymbol> red_name{{Temporal::Static, "block", 1},
                                           {Temporal::Static, "red", 1}};
  for (const auto& b : {"?b1", "?b2", "?b3", "?b4"}) CHECK(canonical_name(b, c) == blue_name);
  for (const auto& r : {"?b5", "?b6", "?b7", "?b8"}) CHECK(canonical_name(r, c) == red_name);

  CHECK_THROWS_AS(canonical_name("nope", c), std::invalid_argument);
}

TEST_CASE("objects with no unary facts have an empty canonical name") {
  const auto c = struc_from_keyprops({kp(Temporal::Init, "on", {"a", "b"})});
  CHECK(canonical_name("a", c).empty());
}

TEST_CASE("kleene join") {
  CHECK(kleene_join({TruthValue::True}) == TruthValue::True);
  CHECK(kleene_join({TruthValue::False, TruthValue::True}) == TruthValue::Half);
  CHECK(kleene_join({TruthValue::Half}) == TruthValue::Half);
  CHECK_THROWS_AS(kleene_join({}), std::invalid_argument);
}

TEST_CASE("canonical abstraction of the stack experience matches the expected shape") {
  const auto s = canonical_abstraction(generalized_base_structure());

  CHECK(s.universe.size() == 7);
  int summaries = 0;
  for (const auto& n : s.universe) summaries += n.is_summary ? 1 : 0;
  CHECK(summaries == 2);

  const auto* blue = s.find_node("?b1");
  const auto* red = s.find_node("?b5");
  REQUIRE(blue != nullptr);
  REQUIRE(red != nullptr);
  CHECK(blue->is_summary);
  CHECK(red->is_summary);

  // All blocks start on the table, so the fact stays definite; the tower
  // relates only some pairs, so the end facts become indefinite.
  CHECK(s.value({Temporal::Init, "ontable", 2}, {"?b1", "?t1"}) == TruthValue::True);
  CHECK(s.value({Temporal::Init, "ontable", 2}, {"?b5", "?t1"}) == TruthValue::True);
  CHECK(s.value({Temporal::End, "on", 2}, {"?b5", "?b1"}) == TruthValue::Half);
  CHECK(s.value({Temporal::End, "on", 2}, {"?b1", "?b1"}) == TruthValue::Half);
  CHECK(s.value({Temporal::End, "on", 2}, {"?b1", "?b5"}) == TruthValue::False);
  CHECK(s.value({Temporal::Init, "empty", 1}, {"?h1"}) == TruthValue::True);
}

TEST_CASE("abstraction with all-distinct canonical names is isomorphic to the input") {
  const auto c = struc_from_keyprops({
      kp(Temporal::Static, "table", {"t"}),
      kp(Temporal::Static, "hoist", {"h"}),
      kp(Temporal::Init, "near", {"h", "t"}),
  });
  const auto s = canonical_abstraction(c);
  CHECK(s.universe.size() == c.universe.size());
  for (const auto& n : s.universe) CHECK_FALSE(n.is_summary);
  for (const auto& [pred, entries] : s.truths)
    for (const auto& [tuple, value] : entries) CHECK(value == TruthValue::True);
}

TEST_CASE("abstract truth values equal the brute-force join over preimage tuples") {
  SplitMix64 rng(20260810);
  for (int round = 0; round < 200; ++round) {
    const auto c = testsupport::random_structure(rng, 6, 5, 2);
    CHECK(canonical_abstraction(c) == testsupport::brute_force_abstraction(c));
  }
}

TEST_CASE("abstraction is idempotent: re-abstracting the definite part changes nothing") {
  SplitMix64 rng(42);
  for (int round = 0; round < 50; ++round) {
    const auto c = testsupport::random_structure(rng, 10, 6, 2);
    const auto s = canonical_abstraction(c);

    std::set<std::set<PredicateSymbol>> names;
    for (const auto& n : s.universe) CHECK(names.insert(n.canonical_name).second);

    // Definite part as a concrete structure over the nodes.
    std::vector<KeyProperty> defs;
    for (const auto& [pred, entries] : s.truths)
      for (const auto& [tuple, value] : entries)
        if (value == TruthValue::True) defs.push_back({pred, tuple});
    auto definite = struc_from_keyprops(defs);
    for (const auto& n : s.universe) definite.universe.insert(n.id);
    definite.vocabulary = s.vocabulary;
    const auto again = canonical_abstraction(definite);
    CHECK(again.universe.size() == s.universe.size());
    for (const auto& n : again.universe) CHECK_FALSE(n.is_summary);
  }
}

TEST_CASE("embedding: every structure embeds in its own abstraction") {
  SplitMix64 rng(7);
  for (int round = 0; round < 100; ++round) {
    const auto c = testsupport::random_structure(rng, 20, 8, 2);
    const auto r = embeds_canonical(c, canonical_abstraction(c));
    CHECK(r.embedded);
    REQUIRE(r.embedded);
    CHECK(r.mapping.size() == c.universe.size());
  }
}

TEST_CASE("embedding failures carry the reason") {
  const auto scope = canonical_abstraction(struc_from_keyprops({
      kp(Temporal::Static, "block", {"a"}),
      kp(Temporal::Static, "block", {"b"}),
      kp(Temporal::Init, "ontable", {"a", "t"}),
      kp(Temporal::Init, "ontable", {"b", "t"}),
      kp(Temporal::Static, "table", {"t"}),
  }));

  SUBCASE("unknown unary predicate on the problem side") {
    const auto c = struc_from_keyprops({
        kp(Temporal::Static, "block", {"x"}),
        kp(Temporal::Static, "table", {"t"}),
        kp(Temporal::Init, "ontable", {"x", "t"}),
        kp(Temporal::Init, "shiny", {"x"}),
    });
    const auto r = embeds_canonical(c, scope);
    CHECK_FALSE(r.embedded);
    // Name matching ignores predicates the scope does not know, so the
    // failure surfaces as a vocabulary mismatch on the true tuple.
    CHECK(r.failure == EmbedFailure::VocabularyMismatch);
  }

  SUBCASE("unknown binary predicate is a vocabulary mismatch") {
    const auto c = struc_from_keyprops({
        kp(Temporal::Static, "block", {"x"}),
        kp(Temporal::Static, "table", {"t"}),
        kp(Temporal::Init, "ontable", {"x", "t"}),
        kp(Temporal::Init, "near", {"x", "t"}),
    });
    const auto r = embeds_canonical(c, scope);
    CHECK_FALSE(r.embedded);
    CHECK(r.failure == EmbedFailure::VocabularyMismatch);
  }

  SUBCASE("missing node blocks surjectivity") {
    const auto c = struc_from_keyprops({kp(Temporal::Static, "block", {"x"})});
    const auto r = embeds_canonical(c, scope);
    CHECK_FALSE(r.embedded);
    CHECK(r.failure == EmbedFailure::SurjectivityViolation);
  }

  SUBCASE("definite fact missing in the problem is a truth-value conflict") {
    const auto c = struc_from_keyprops({
        kp(Temporal::Static, "block", {"x"}),
        kp(Temporal::Static, "block", {"y"}),
        kp(Temporal::Static, "table", {"t"}),
        kp(Temporal::Init, "ontable", {"x", "t"}),
    });
    const auto r = embeds_canonical(c, scope);
    CHECK_FALSE(r.embedded);
    CHECK(r.failure == EmbedFailure::TruthValueConflict);
  }
}

TEST_CASE("embedding oracle handles the degenerate cases") {
  const auto c = struc_from_keyprops({
      kp(Temporal::Static, "block", {"a"}),
      kp(Temporal::Static, "table", {"t"}),
  });
  const auto s = canonical_abstraction(c);
  CHECK(embeds_oracle(c, s));

  // Fewer objects than nodes: no surjection exists.
  const auto small = struc_from_keyprops({kp(Temporal::Static, "block", {"a"})});
  CHECK_FALSE(embeds_oracle(small, s));

  // Guard on big universes.
  std::vector<KeyProperty> many;
  for (int i = 0; i < 9; ++i) many.push_back(kp(Temporal::Static, "block", {"o" + std::to_string(i)}));
  CHECK_THROWS_AS(embeds_oracle(struc_from_keyprops(many), s), std::invalid_argument);
}

TEST_CASE("the canonical embedding test is sound for the exhaustive one") {
  SplitMix64 rng(99);
  int positives = 0;
  for (int round = 0; round < 60; ++round) {
    const auto base = testsupport::random_structure(rng, 3, 4, 2);
    const auto scope = canonical_abstraction(base);
    const auto c = testsupport::concretize(rng, scope, 2);
    if (c.universe.size() > 8) continue;
    const auto r = embeds_canonical(c, scope);
    if (r.embedded) {
      ++positives;
      CHECK(embeds_oracle(c, scope));
    }
  }
  CHECK(positives > 10);  // the sample must actually exercise the implication
}

TEST_CASE("structural equivalence is reflexive and distinguishes different scopes") {
  const auto a = canonical_abstraction(generalized_base_structure());
  CHECK(struc_equivalent(a, a));

  const auto b = canonical_abstraction(struc_from_keyprops({
      kp(Temporal::Static, "block", {"x"}),
  }));
  CHECK_FALSE(struc_equivalent(a, b));
}

TEST_CASE("structures of same-template problems are equivalent across sizes") {
  // Same construction, different object counts: summaries absorb the size.
  auto tower = [](int n) {
    std::vector<KeyProperty> props;
    props.push_back(kp(Temporal::Static, "table", {"t"}));
    for (int i = 0; i < n; ++i) {
      const std::string id = "b" + std::to_string(i);
      props.push_back(kp(Temporal::Static, "block", {id}));
      props.push_back(kp(Temporal::Init, "ontable", {id, "t"}));
    }
    return canonical_abstraction(struc_from_keyprops(props));
  };
  CHECK(struc_equivalent(tower(2), tower(9)));
  CHECK_FALSE(struc_equivalent(tower(1), tower(2)));  // summary flag differs
}

TEST_CASE("scope serialization of the stack experience") {
  const auto s = canonical_abstraction(generalized_base_structure());
  const std::string expected =
      "(:scope\n"
      "  (summary ?b1)\n"
      "  (summary ?b5)\n"
      "  (static (block ?b1))\n"
      "  (static (block ?b5))\n"
      "  (static (blue ?b1))\n"
      "  (static (hoist ?h1))\n"
      "  (static (location ?l1))\n"
      "  (static (pallet ?p2))\n"
      "  (static (pile ?p1))\n"
      "  (static (red ?b5))\n"
      "  (static (table ?t1))\n"
      "  (init (empty ?h1))\n"
      "  (init (ontable ?b1 ?t1))\n"
      "  (init (ontable ?b5 ?t1))\n"
      "  (maybe (end (on ?b1 ?b1)))\n"
      "  (maybe (end (on ?b1 ?p2)))\n"
      "  (maybe (end (on ?b5 ?b1)))\n"
      "  (maybe (end (on ?b5 ?b5)))\n"
      ")";
  CHECK(serialize_scope(s) == expected);
}

TEST_CASE("scopes without summaries or indefinite facts serialize plainly") {
  const auto s = canonical_abstraction(struc_from_keyprops({
      kp(Temporal::Static, "table", {"t"}),
      kp(Temporal::Init, "clear", {"t"}),
  }));
  const std::string out = serialize_scope(s);
  CHECK(out.find("summary") == std::string::npos);
  CHECK(out.find("maybe") == std::string::npos);
  CHECK(out.find("(static (table t))") != std::string::npos);
}

TEST_CASE("serialize, parse, serialize is byte-identical") {
  SplitMix64 rng(1234);
  for (int round = 0; round < 50; ++round) {
    // Variable-named objects, as learned scopes use.
    auto raw = testsupport::random_structure(rng, 8, 5, 2);
    std::vector<KeyProperty> renamed_props;
    for (const auto& [pred, tuples] : raw.truths)
      for (const auto& t : tuples) {
        Tuple vars;
        for (const auto& o : t) vars.push_back("?" + o);
        renamed_props.push_back({pred, vars});
      }
    const auto scope = canonical_abstraction(struc_from_keyprops(renamed_props));
    const std::string once = serialize_scope(scope);
    const auto parsed = text::parse_scope(once);
    CHECK(serialize_scope(parsed) == once);
  }
}

TEST_CASE("embedding is stable as block counts grow") {
  const auto exp = base_experience();
  const auto scope = canonical_abstraction(generalized_base_structure());
  for (int n = 1; n <= 20; ++n) {
    std::vector<KeyProperty> props;
    props.push_back(kp(Temporal::Static, "table", {"t1"}));
    props.push_back(kp(Temporal::Static, "pile", {"p1"}));
    props.push_back(kp(Temporal::Static, "location", {"l1"}));
    props.push_back(kp(Temporal::Static, "hoist", {"h1"}));
    props.push_back(kp(Temporal::Static, "pallet", {"pl1"}));
    props.push_back(kp(Temporal::Init, "empty", {"h1"}));
    std::vector<std::string> blocks;
    for (int i = 1; i <= n; ++i) blocks.push_back("bb" + std::to_string(i));
    for (int i = 1; i <= n; ++i) blocks.push_back("rr" + std::to_string(i));
    for (int i = 0; i < n; ++i) {
      props.push_back(kp(Temporal::Static, "block", {blocks[i]}));
      props.push_back(kp(Temporal::Static, "blue", {blocks[i]}));
      props.push_back(kp(Temporal::Static, "block", {blocks[n + i]}));
      props.push_back(kp(Temporal::Static, "red", {blocks[n + i]}));
      props.push_back(kp(Temporal::Init, "ontable", {blocks[i], "t1"}));
      props.push_back(kp(Temporal::Init, "ontable", {blocks[n + i], "t1"}));
    }
    std::string below = "pl1";
    for (const auto& b : blocks) {
      props.push_back(kp(Temporal::End, "on", {b, below}));
      below = b;
    }
    const auto c = struc_from_keyprops(props);
    CHECK(embeds_canonical(c, scope).embedded);
  }
}

TEST_CASE("dot export marks summaries and indefinite edges") {
  const auto s = canonical_abstraction(generalized_base_structure());
  const std::string dot = to_dot(s);
  CHECK(dot.find("doublecircle") != std::string::npos);
  CHECK(dot.find("style=dashed") != std::string::npos);
}
