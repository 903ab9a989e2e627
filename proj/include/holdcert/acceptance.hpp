#pragma once

#include "holdcert/core.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace holdcert::acceptance {

struct Check {
  std::string name;
  std::string expected;
  std::string got;
  std::string tolerance;
  bool pass = false;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<Check> checks;
  double seconds = 0.0;
  std::string error;  // set when a check threw
  bool pass() const;
};

struct Options {
  std::uint64_t seed = 1;
  Tolerances tol;
  int theta_samples = 720;
  std::size_t escape_budget = 100000;
  int escape_seeds = 5;
  int random_cases = 1000;
};

// Suite names map to subsets of the 14 criteria; "all" runs every one.
// A bare number selects a single criterion.
const std::vector<std::pair<std::string, std::vector<int>>>& suites();
std::vector<int> resolve_suite(const std::string& name);  // throws InvalidInput on unknown names

CriterionResult run_criterion(int id, const Options& options);

using Progress = std::function<void(const CriterionResult&)>;
std::vector<CriterionResult> run_suite(const std::string& name, const Options& options, const Progress& progress = {});

std::string summary_line(const CriterionResult& r);
std::string detail_lines(const CriterionResult& r);

}  // namespace holdcert::acceptance
