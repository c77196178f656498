#pragma once

// Quick self-checks of the core identities, run by `wrank check`.

#include <cstdint>
#include <string>
#include <vector>

namespace wrank {

struct CheckOutcome {
  std::string name;
  bool passed = false;
  std::string detail;
};

std::vector<CheckOutcome> run_checks(std::uint64_t seed);

}  // namespace wrank
