// Generates a small instance, runs INSGA-III and prints the front.
#include <iostream>

#include "mpmdl/mpmdl.hpp"

int main() {
  const mpmdl::Instance inst = mpmdl::generate_instance(mpmdl::generator_preset(mpmdl::ScalePreset::Small), 7);

  mpmdl::EvoConfig cfg;
  cfg.population = 40;
  cfg.generations = 30;
  cfg.seed = 1;
  const mpmdl::ParetoArchive front = mpmdl::run_insga3(inst, cfg);

  std::cout << "stations  energy/station  total energy\n";
  for (const auto& e : front.entries()) {
    std::cout << e.objectives.f1 << "  " << e.objectives.f2 << "  " << e.objectives.f3 << "\n";
  }
  const auto report = mpmdl::check_constraints(front.entries().front().schedule, inst);
  std::cout << "first schedule feasible: " << (report.feasible() ? "yes" : "no") << "\n";
}
