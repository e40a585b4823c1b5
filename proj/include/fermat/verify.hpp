#pragma once

#include <string>
#include <vector>

namespace fermat::verify {

struct CheckResult {
  std::string name;
  int n = 0;
  bool pass = false;
  std::string detail;  // empty on success
};

struct Options {
  int n_max = 5;
  // Flips one entry of the relation matrix before the consistency
  // check; used to exercise the failure path end to end.
  bool corrupt_relation_entry = false;
  unsigned seed = 0x5eed;
  int word_samples = 200;        // psl2 round-trip samples per n
  int translation_samples = 50;  // Phi(n) left-translation samples per n
};

// Runs the invariant suite for one level n.
std::vector<CheckResult> run_level(int n, const Options& opts);

// Runs levels 1..n_max; independent levels run concurrently.
std::vector<CheckResult> run(const Options& opts);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace fermat::verify
