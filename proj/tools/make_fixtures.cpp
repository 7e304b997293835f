// Regenerates the experience and sample problem fixtures under fixtures/.
// The domain files are maintained by hand; everything else is derived
// deterministically from the generators, so a rerun is byte-stable.

#include <filesystem>
#include <iostream>

#include "ebpd/generators.hpp"
#include "ebpd/text.hpp"

using namespace ebpd;

int main(int argc, char** argv) {
  std::string dir = "fixtures";
  if (argc > 1) dir = argv[1];
  std::filesystem::create_directories(dir);
  std::filesystem::create_directories(dir + "/problems");

  const model::Domain stack_domain =
      text::parse_domain(text::read_file(dir + "/stack.dom"), dir + "/stack.dom");
  const model::Domain rover_domain =
      text::parse_domain(text::read_file(dir + "/rover.dom"), dir + "/rover.dom");

  struct StackFixture {
    const char* file;
    gen::StackSpec spec;
  };
  const StackFixture fixtures[] = {
      {"stack_base.exp", {gen::StackClass::Base, 4, 4, 1}},
      {"stack_i.exp", {gen::StackClass::I, 20, 20, 2}},
      {"stack_ii.exp", {gen::StackClass::II, 20, 20, 3}},
      {"stack_iii.exp", {gen::StackClass::III, 20, 20, 4}},
  };
  for (const auto& f : fixtures) {
    const model::Problem p = gen::gen_stack(f.spec);
    const model::Experience e = gen::demonstrate_stack(p);
    const auto report = model::validate_plan(p, e.plan, stack_domain);
    if (!report.success || !report.goal_satisfied) {
      std::cerr << "demonstration for " << p.name << " does not validate: " << report.message
                << "\n";
      return 1;
    }
    text::write_file(dir + "/" + f.file, text::serialize_experience(e));
    std::cout << f.file << ": " << e.plan.size() << " actions\n";
  }

  // A few sample problems, one per stack class plus one rover instance.
  for (const auto cls :
       {gen::StackClass::Base, gen::StackClass::I, gen::StackClass::II, gen::StackClass::III}) {
    const model::Problem p = gen::gen_stack({cls, 4, 4, 7});
    text::write_file(dir + "/problems/" + p.name + ".prob", text::serialize_problem(p));
  }
  {
    const model::Problem p = gen::gen_rover({2, 6, 5, 5, 7});
    const model::Experience e = gen::demonstrate_rover(p);
    const auto report = model::validate_plan(p, e.plan, rover_domain);
    if (!report.success || !report.goal_satisfied) {
      std::cerr << "rover demonstration does not validate: " << report.message << "\n";
      return 1;
    }
    text::write_file(dir + "/problems/" + p.name + ".prob", text::serialize_problem(p));
  }
  std::cout << "fixtures written to " << dir << "\n";
  return 0;
}
