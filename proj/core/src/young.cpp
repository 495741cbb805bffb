#include "qsp/young.hpp"

#include <stdexcept>

namespace qsp {

YoungDiagram::YoungDiagram(std::vector<int> entries) : lambda(std::move(entries)) {
  if (lambda.size() < 2) throw std::invalid_argument("Young diagram needs at least 2 entries");
  for (std::size_t i = 0; i + 1 < lambda.size(); ++i)
    if (lambda[i] < lambda[i + 1]) throw std::invalid_argument("Young diagram entries must be non-increasing");
  if (lambda.back() < 0) throw std::invalid_argument("Young diagram entries must be nonnegative");
}

YoungDiagram YoungDiagram::canonical() const {
  std::vector<int> c = lambda;
  int s = c.back();
  for (int& x : c) x -= s;
  return YoungDiagram(std::move(c));
}

std::vector<YoungDiagram> young_diagrams(int ell, int n_max) {
  std::vector<YoungDiagram> out;
  std::vector<int> cur(static_cast<std::size_t>(ell + 1), 0);
  // lexicographic ascending: recurse from small to large first entry
  auto rec = [&](auto&& self, int pos, int hi) -> void {
    if (pos == ell) {
      cur[static_cast<std::size_t>(ell)] = 0;
      out.emplace_back(cur);
      return;
    }
    for (int x = 0; x <= hi; ++x) {
      cur[static_cast<std::size_t>(pos)] = x;
      self(self, pos + 1, x);
    }
  };
  // entries must be non-increasing, so enumerate pos 0 freely then bound the rest
  for (int x = 0; x <= n_max; ++x) {
    cur[0] = x;
    rec(rec, 1, x);
  }
  return out;
}

std::int64_t weyl_dimension(const YoungDiagram& lambda) {
  const int n = lambda.ell() + 1;
  __int128 num = 1, den = 1;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      num *= lambda[i] - lambda[j] + j - i;
      den *= j - i;
    }
  return static_cast<std::int64_t>(num / den);
}

Scalar weyl_q_dimension(const YoungDiagram& lambda, QParam q) {
  const int n = lambda.ell() + 1;
  Scalar v = Scalar::one();
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) v = v * q_int(lambda[i] - lambda[j] + j - i, q) / q_int(j - i, q);
  return v;
}

}  // namespace qsp
