#pragma once

#include <Eigen/SparseCore>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qsp/repn.hpp"

namespace qsp {

class GapViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// q^{-l} pi(u_{1,l+1}) on the sphere basis.
SparseOperator build_omega(QParam q, std::shared_ptr<const BasisSpec> basis);

/// Exact q = 0 limit on the n = 0 plane; zero on sectors with n >= 1.
SparseOperator omega_zero(std::shared_ptr<const BasisSpec> basis);

/// s^k: anti-diagonal entries 0, every other entry k.
GTTableau s_k(int k, int ell);

struct GammaResult {
  Eigen::SparseMatrix<double> gamma;
  std::size_t selected = 0;    // rank of chi({1})(omega^* omega) on the interior
  std::size_t eigenvalues = 0;
  double gap_low = 0, gap_high = 0;
};

/// gamma = chi(omega^* omega)(omega - I) + I with chi the projection onto eigenvalues > (1+q^2)/2,
/// computed on interior(margin); q = 0 when zero_limit.
GammaResult build_gamma(const SparseOperator& omega, double q, int margin, bool zero_limit = false);

struct OmegaSpectrum {
  std::size_t eigenvalues = 0;
  std::size_t resolved = 0;
  double max_distance = 0;  // of resolved eigenvalues to {0} U {q^{2m}}
  double max_value = 0;
};

OmegaSpectrum omega_spectrum(const SparseOperator& omega, double q, int margin, double resolve_tol = 1e-8);

struct TrailEntry {
  int cutoff = 0;
  int margin = 0;
  double trace_kernel = 0;    // trace(1 - T^*T)
  double trace_cokernel = 0;  // trace(1 - T T^*)
  double estimate = 0;
  std::size_t traced = 0;
  std::size_t excluded = 0;
  std::vector<double> by_k;   // contributions to trace(1 - T^*T) per n = 0 sector k
};

struct IndexReport {
  double q = 0;
  bool zero_limit = false;
  int ell = 1;
  std::vector<TrailEntry> trail;
  std::optional<long long> index;
  bool stable = false;
};

/// T = Q gamma Q on the n = 0 plane; traces over degree <= N - 2 margin.
TrailEntry fredholm_index(const Eigen::SparseMatrix<double>& gamma, const BasisSpec& basis, int margin);

/// Exact integer path for q = 0.
TrailEntry fredholm_index_zero(const BasisSpec& basis, int margin);

IndexReport sphere_index(int ell, double q, const std::vector<int>& schedule, int margin);

/// Kernel of Q gamma_0 Q on the n = 0 plane from the three-case action, sectors k <= k_max, independent of truncation.
std::vector<GTTableau> symbolic_kernel(int ell, int k_max);

}  // namespace qsp
