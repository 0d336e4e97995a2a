#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace curvlab {

struct SuiteRow {
  std::string module;
  std::string property;
  int trials = 0;
  double worst = 0.0;      // largest observed residual (or failure count)
  double threshold = 0.0;  // pass iff worst < threshold
  bool pass = true;
};

struct SuiteOptions {
  std::vector<int> dims{4, 6};
  int trials = 20;
  std::uint64_t seed = 7;
};

/// Runs the seeded property checks of every module. Rows come back in a fixed
/// order so the table is reproducible.
std::vector<SuiteRow> run_lemma_suite(const SuiteOptions& options);

}  // namespace curvlab
