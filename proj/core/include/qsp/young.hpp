#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qsp/qarith.hpp"

namespace qsp {

/// Highest weight (lambda_1 >= ... >= lambda_{l+1} >= 0).
struct YoungDiagram {
  std::vector<int> lambda;

  YoungDiagram() = default;
  explicit YoungDiagram(std::vector<int> entries);

  int ell() const { return static_cast<int>(lambda.size()) - 1; }
  int operator[](int i) const { return lambda[static_cast<std::size_t>(i - 1)]; }
  YoungDiagram canonical() const;
  bool operator==(const YoungDiagram&) const = default;
  auto operator<=>(const YoungDiagram&) const = default;
};

/// All canonical diagrams of rank ell with lambda_1 <= n_max, lexicographic.
std::vector<YoungDiagram> young_diagrams(int ell, int n_max);

/// Classical dimension prod_{i<j} (l_i - l_j + j - i)/(j - i), exact.
std::int64_t weyl_dimension(const YoungDiagram& lambda);

/// q-dimension prod_{i<j} [l_i - l_j + j - i]/[j - i].
Scalar weyl_q_dimension(const YoungDiagram& lambda, QParam q);

}  // namespace qsp
