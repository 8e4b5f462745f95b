#ifndef COUPLER_ACCEPTANCE_HPP
#define COUPLER_ACCEPTANCE_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace coupler {

struct CriterionResult {
  int id;
  std::string name;
  bool passed;
  std::string detail;
};

// Runs the full verification battery against the published reference values
// and the model's internal consistency identities. Deterministic for a fixed
// seed.
std::vector<CriterionResult> run_acceptance_criteria(std::uint64_t seed = 42);

}  // namespace coupler

#endif  // COUPLER_ACCEPTANCE_HPP
