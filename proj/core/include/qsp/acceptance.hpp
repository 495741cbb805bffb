#pragma once

#include <string>
#include <vector>

namespace qsp {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

int acceptance_criterion_count();
CriterionResult run_criterion(int id);
/// Empty selection runs every criterion.
std::vector<CriterionResult> run_acceptance(const std::vector<int>& which = {});

}  // namespace qsp
