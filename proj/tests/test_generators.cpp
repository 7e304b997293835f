#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "ebpd/bench.hpp"
#include "ebpd/generators.hpp"
#include "ebpd/learning.hpp"
#include "ebpd/planner.hpp"
#include "ebpd/text.hpp"
#include "support.hpp"

using namespace ebpd;
using namespace ebpd::gen;

TEST_CASE("stack generation is deterministic per spec and seed") {
  const StackSpec spec{StackClass::II, 6, 6, 99};
  const auto a = text::serialize_problem(gen_stack(spec));
  const auto b = text::serialize_problem(gen_stack(spec));
  CHECK(a == b);
  const auto c = text::serialize_problem(gen_stack({StackClass::II, 6, 6, 100}));
  CHECK(a != c);
}

TEST_CASE("stack classes have the advertised shapes") {
  SUBCASE("base: everything on the table") {
    const auto p = gen_stack({StackClass::Base, 4, 4, 7});
    int ontable = 0;
    for (const auto& a : p.init.atoms)
      if (a.pred == "ontable") ++ontable;
    CHECK(ontable == 8);
  }

  SUBCASE("class i: red at the bottom, blue on top") {
    const auto p = gen_stack({StackClass::I, 3, 3, 7});
    std::map<model::Term, model::Term> above;  // below -> above
    for (const auto& a : p.init.atoms)
      if (a.pred == "on") above[a.args[1]] = a.args[0];
    std::vector<model::Term> tower;
    for (model::Term at = "pl1"; above.contains(at); at = above.at(at)) tower.push_back(above.at(at));
    REQUIRE(tower.size() == 6);
    for (int i = 0; i < 3; ++i) {
      CHECK(tower[static_cast<std::size_t>(i)][0] == 'r');
      CHECK(tower[static_cast<std::size_t>(3 + i)][0] == 'b');
    }
  }

  SUBCASE("class ii with one block per color is the minimal alternating pile") {
    const auto p = gen_stack({StackClass::II, 1, 1, 7});
    CHECK(p.init.atoms.contains({"on", {"b1", "pl1"}}));
    CHECK(p.init.atoms.contains({"on", {"r1", "b1"}}));
  }

  SUBCASE("class iii alternates starting from red") {
    const auto p = gen_stack({StackClass::III, 2, 2, 7});
    std::map<model::Term, model::Term> above;
    for (const auto& a : p.init.atoms)
      if (a.pred == "on") above[a.args[1]] = a.args[0];
    std::vector<model::Term> tower;
    for (model::Term at = "pl1"; above.contains(at); at = above.at(at)) tower.push_back(above.at(at));
    REQUIRE(tower.size() == 4);
    CHECK(tower[0][0] == 'r');
    CHECK(tower[1][0] == 'b');
    CHECK(tower[2][0] == 'r');
    CHECK(tower[3][0] == 'b');
  }

  SUBCASE("the goal is always blue at the bottom and red on top") {
    const auto p = gen_stack({StackClass::I, 2, 2, 7});
    REQUIRE(p.goal.size() == 4);
    CHECK(p.goal[0] == model::Atom{"on", {"b1", "pl1"}});
    CHECK(p.goal[3] == model::Atom{"on", {"r2", "r1"}});
  }
}

TEST_CASE("alternating classes reject unequal counts, every class rejects zero") {
  CHECK_THROWS_AS(gen_stack({StackClass::II, 3, 4, 1}), std::invalid_argument);
  CHECK_THROWS_AS(gen_stack({StackClass::III, 2, 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(gen_stack({StackClass::Base, 0, 3, 1}), std::invalid_argument);
  CHECK_NOTHROW(gen_stack({StackClass::I, 2, 5, 1}));  // unequal piles are fine here
}

TEST_CASE("generated stack problems embed exactly in their own class scope") {
  const auto domain = text::parse_domain(testsupport::fixture_text("stack.dom"));
  std::vector<schema::ActivitySchema> schemata;
  for (const char* f : {"stack_base.exp", "stack_i.exp", "stack_ii.exp", "stack_iii.exp"})
    schemata.push_back(
        learning::learn_schema(text::parse_experience(testsupport::fixture_text(f)), domain));

  const std::vector<StackClass> classes{StackClass::Base, StackClass::I, StackClass::II,
                                        StackClass::III};
  for (std::size_t ci = 0; ci < classes.size(); ++ci) {
    for (const int n : {2, 7, 20}) {
      const auto p = gen_stack({classes[ci], n, n, 5});
      const auto structure = model::struc_from_problem(p);
      for (std::size_t si = 0; si < schemata.size(); ++si) {
        const bool embedded = logic::embeds_canonical(structure, schemata[si].scope).embedded;
        INFO(p.name, " against schema ", si);
        CHECK(embedded == (si == ci));
      }
    }
  }
}

TEST_CASE("stack demonstrations validate and follow the four-step transfer pattern") {
  const auto domain = text::parse_domain(testsupport::fixture_text("stack.dom"));
  for (const auto cls : {StackClass::Base, StackClass::I, StackClass::II, StackClass::III}) {
    const auto p = gen_stack({cls, 3, 3, 17});
    const auto e = demonstrate_stack(p);
    const auto report = model::validate_plan(p, e.plan, domain);
    INFO(p.name);
    CHECK(report.success);
    CHECK(report.goal_satisfied);
  }
  // The base demonstration moves between every transfer, minus the last trip.
  const auto base = demonstrate_stack(gen_stack({StackClass::Base, 4, 4, 1}));
  CHECK(base.plan.size() == 31);
}

TEST_CASE("out-of-class problems are rejected by the exhaustive oracle too") {
  const auto domain = text::parse_domain(testsupport::fixture_text("stack.dom"));
  const auto base_scope =
      learning::learn_schema(text::parse_experience(testsupport::fixture_text("stack_base.exp")),
                             domain)
          .scope;
  // One block per color keeps the universe small enough for the oracle.
  const auto p = gen_stack({StackClass::I, 1, 1, 3});
  const auto structure = model::struc_from_problem(p);
  REQUIRE(structure.universe.size() == 7);
  CHECK_FALSE(logic::embeds_canonical(structure, base_scope).embedded);
  CHECK_FALSE(logic::embeds_oracle(structure, base_scope));
}

TEST_CASE("rover structures cover exactly the declared objects") {
  for (const std::uint64_t seed : {8u, 9u}) {
    const auto p = gen_rover({2, 6, 5, 6, seed});
    const auto structure = model::struc_from_problem(p);
    CHECK(structure.universe == std::set<logic::ObjectId>(p.objects.begin(), p.objects.end()));
  }
}

TEST_CASE("rover generation enforces the parameter ranges") {
  CHECK_THROWS_AS(gen_rover({0, 5, 5, 5, 1}), std::invalid_argument);
  CHECK_THROWS_AS(gen_rover({4, 5, 5, 5, 1}), std::invalid_argument);
  CHECK_THROWS_AS(gen_rover({1, 4, 5, 5, 1}), std::invalid_argument);
  CHECK_THROWS_AS(gen_rover({1, 5, 4, 5, 1}), std::invalid_argument);
  CHECK_THROWS_AS(gen_rover({1, 5, 5, 21, 1}), std::invalid_argument);
  CHECK_NOTHROW(gen_rover({1, 5, 5, 5, 1}));  // the minimal instance
}

TEST_CASE("rover generation is deterministic and batch-stable") {
  std::vector<std::string> first;
  for (int i = 0; i < 20; ++i) {
    SplitMix64 rng(1000 + static_cast<std::uint64_t>(i));
    RoverSpec spec{static_cast<int>(rng.range(1, 3)), static_cast<int>(rng.range(5, 30)),
                   static_cast<int>(rng.range(5, 10)), static_cast<int>(rng.range(5, 20)),
                   1000 + static_cast<std::uint64_t>(i)};
    first.push_back(text::serialize_problem(gen_rover(spec)));
  }
  for (int i = 0; i < 20; ++i) {
    SplitMix64 rng(1000 + static_cast<std::uint64_t>(i));
    RoverSpec spec{static_cast<int>(rng.range(1, 3)), static_cast<int>(rng.range(5, 30)),
                   static_cast<int>(rng.range(5, 10)), static_cast<int>(rng.range(5, 20)),
                   1000 + static_cast<std::uint64_t>(i)};
    CHECK(text::serialize_problem(gen_rover(spec)) == first[static_cast<std::size_t>(i)]);
  }
}

TEST_CASE("generated rover problems parse back and demonstrations validate") {
  const auto domain = text::parse_domain(testsupport::fixture_text("rover.dom"));
  for (const std::uint64_t seed : {3u, 4u, 5u}) {
    const auto p = gen_rover({2, 7, 5, 6, seed});
    CHECK(text::parse_problem(text::serialize_problem(p)) == p);
    const auto e = demonstrate_rover(p);
    const auto report = model::validate_plan(p, e.plan, domain);
    INFO(p.name);
    CHECK(report.success);
    CHECK(report.goal_satisfied);
  }
}

TEST_CASE("classification partitions stack problems by class") {
  std::vector<model::Problem> problems;
  for (const auto cls : {StackClass::Base, StackClass::I, StackClass::II, StackClass::III})
    for (const int n : {3, 6})
      for (const std::uint64_t seed : {1u, 2u}) problems.push_back(gen_stack({cls, n, n, seed}));

  const auto report = classify(problems);
  CHECK(report.sets.size() == 4);

  // Partition invariants: disjoint, covering, structurally uniform.
  std::set<std::size_t> seen;
  for (std::size_t s = 0; s < report.sets.size(); ++s) {
    for (const auto idx : report.sets[s]) {
      CHECK(seen.insert(idx).second);
      CHECK(logic::struc_equivalent(
          logic::canonical_abstraction(model::struc_from_problem(problems[idx])),
          report.representatives[s]));
    }
  }
  CHECK(seen.size() == problems.size());

  // Sets follow the generator classes (4 problems per class above).
  for (const auto& set : report.sets) CHECK(set.size() == 4);
}

TEST_CASE("classifying a single problem gives a single set") {
  const auto report = classify({gen_stack({StackClass::Base, 3, 3, 1})});
  REQUIRE(report.sets.size() == 1);
  CHECK(report.sets[0] == std::vector<std::size_t>{0});
  CHECK(report.abstraction_ms.size() == 1);
}

TEST_CASE("the suite runner writes the three reports") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "ebpd-bench-test";
  fs::remove_all(dir);
  fs::create_directories(dir);

  const std::string config_path = (dir / "suite.conf").string();
  {
    std::ofstream cfg(config_path);
    cfg << "[stack]\n"
        << "domain = " << testsupport::fixture_path("stack.dom") << "\n"
        << "experiences = " << testsupport::fixture_path("stack_base.exp") << ", "
        << testsupport::fixture_path("stack_i.exp") << "\n"
        << "classes = base, i\n"
        << "sizes = 3\n"
        << "seeds = 5, 6\n"
        << "baseline = false\n"
        << "[output]\n"
        << "dir = " << (dir / "out").string() << "\n"
        << "repetitions = 1\n";
  }

  const auto cfg = bench::load_config(config_path);
  CHECK(cfg.stack_enabled);
  CHECK_FALSE(cfg.rover_enabled);
  CHECK(cfg.stack_seeds.size() == 2);

  const auto result = bench::run_suite(cfg);
  CHECK(result.problems == 4);
  CHECK(result.failures == 0);

  const std::string retrieval = text::read_file(result.retrieval_csv);
  CHECK(retrieval.substr(0, retrieval.find('\n')) ==
        "problem,n_objects,schema,retrieval_ms,status");
  CHECK(std::count(retrieval.begin(), retrieval.end(), '\n') == 5);  // header + 4 rows

  const std::string planning = text::read_file(result.planning_csv);
  CHECK(planning.substr(0, planning.find('\n')) == "problem,schema,plan_ms,nodes,plan_len,status");
  CHECK(std::count(planning.begin(), planning.end(), '\n') == 5);

  // Identical rerun, timing columns aside.
  auto strip_times = [](const std::string& csv) {
    std::string out;
    std::istringstream in(csv);
    std::string line;
    while (std::getline(in, line)) {
      std::vector<std::string> cells;
      std::stringstream ls(line);
      std::string cell;
      while (std::getline(ls, cell, ',')) cells.push_back(cell);
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (cells[i].find('.') != std::string::npos && i >= 2) continue;  // a timing cell
        out += cells[i] + "|";
      }
      out += "\n";
    }
    return out;
  };
  const auto again = bench::run_suite(cfg);
  CHECK(strip_times(text::read_file(again.retrieval_csv)) == strip_times(retrieval));
  CHECK(strip_times(text::read_file(again.planning_csv)) == strip_times(planning));

  SUBCASE("an empty suite yields headers only") {
    const std::string empty_path = (dir / "empty.conf").string();
    {
      std::ofstream cfg2(empty_path);
      cfg2 << "[output]\ndir = " << (dir / "empty_out").string() << "\n";
    }
    const auto empty = bench::run_suite(bench::load_config(empty_path));
    CHECK(text::read_file(empty.retrieval_csv) ==
          "problem,n_objects,schema,retrieval_ms,status\n");
    CHECK(text::read_file(empty.classification_csv) == "problem,set_id,abstraction_ms\n");
  }
}
