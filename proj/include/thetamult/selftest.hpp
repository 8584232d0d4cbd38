// Deterministic invariant suite: one item per documented library property.
// The CLI runs it for its selftest subcommand; tests run it directly and can
// swap the character evaluation to prove a corrupted build is caught.
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "thetamult/linalg.hpp"
#include "thetamult/symplectic.hpp"

namespace thetamult {

using LambdaFn = std::function<int(const SymplecticSpace&, const QuadraticForm&,
                                   const Z4Matrix&)>;

struct SelftestItem {
  int index;
  std::string name;
  bool passed;
  std::string detail;  // fixed-format, free of timestamps: reports stay byte-identical per seed
};

struct SelftestOptions {
  uint64_t seed = 1;
  // Replaces the character evaluation in every item that consumes it;
  // empty means the library implementation.
  LambdaFn lambda_override;
};

std::vector<SelftestItem> run_selftest(const SelftestOptions& options = {});

bool all_passed(const std::vector<SelftestItem>& items);

}  // namespace thetamult
