#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "qsp/repn.hpp"
#include "qsp/tableaux.hpp"

namespace qsp {

/// Label set a Dirac operator lives on; group labels are row tableaux, sphere labels are r^{nk}.
struct Domain {
  int ell = 1;
  Space space = Space::group;
  int cutoff = 0;
};

/// Equivariant operator e_{r,s} -> T(r) e_{r,s}, T scalar or m x m.
struct DiracSpec {
  Domain domain;
  std::string name;
  int m = 1;
  std::function<double(const GTTableau&)> scalar;
  std::function<Eigen::MatrixXcd(const GTTableau&)> matrix;

  bool is_matrix() const { return static_cast<bool>(matrix); }
  double eigenvalue(const GTTableau& r) const;
  Eigen::MatrixXcd block(const GTTableau& r) const;
  /// |eigenvalues| of T(r), ascending (singular values, T hermitian).
  std::vector<double> singular_values(const GTTableau& r) const;
};

/// Sector (n, k) of a sphere row label r^{nk}.
std::pair<int, int> sphere_sector_of(const GTTableau& r);

DiracSpec make_scalar_dirac(Domain dom, std::string name, std::function<double(const GTTableau&)> d);
DiracSpec build_d_tilde(Domain dom);
DiracSpec build_Ni(int i, Domain dom);
DiracSpec build_sphere_D(Domain dom);

/// Integer Gaussian matrix, row-major.
struct GaussMatrix {
  int m = 0;
  std::vector<std::complex<int>> a;

  std::complex<int> operator()(int i, int j) const { return a[static_cast<std::size_t>(i * m + j)]; }
  GaussMatrix operator*(const GaussMatrix& o) const;
  GaussMatrix operator+(const GaussMatrix& o) const;
  bool operator==(const GaussMatrix& o) const = default;
  static GaussMatrix identity(int m);
  Eigen::MatrixXcd to_eigen() const;
};

struct SpinSet {
  int m = 1;
  std::vector<GaussMatrix> gammas;
};

/// n anticommuting self-adjoint involutions on C^m, m = 2^ceil(n/2).
SpinSet clifford_generators(int n);
/// l+1 generators.
SpinSet spin_matrices(int ell);
/// gamma_i gamma_j + gamma_j gamma_i == 2 delta_ij I in exact integer arithmetic.
bool anticommutation_exact(const SpinSet& s);
/// Whether every gamma is self-adjoint, exactly.
bool self_adjoint_exact(const SpinSet& s);

/// f_i(r) = min_a H_{ai}(r).
int f_value(int i, const GTTableau& r);

/// sum_i N_i (x) gamma_i + D~ (x) gamma_{l+1}.
DiracSpec build_full_D(Domain dom);

/// Coordinate labels "V{a}1" and "H{a}{b}" in default order.
std::vector<std::string> coordinate_names(int ell);
/// sum_k coordinate_k(r) gamma_k; ordering is a permutation of coordinate_names(ell).
DiracSpec build_coordinate_D(Domain dom, const std::vector<std::string>& ordering);

struct CommutatorNorm {
  int cutoff = 0;
  double norm = 0;         // power iteration on the interior
  double entry_bound = 0;  // max |d(row) - d(col)| |A_{row,col}| over interior columns
  int iterations = 0;
  bool converged = false;
};

struct PowerIterationConfig {
  double tolerance = 1e-6;
  int max_iterations = 2000;
};

/// Norm of [D, A] restricted to interior(margin) columns.
CommutatorNorm commutator_norm(const DiracSpec& D, const SparseOperator& A, int margin,
                               PowerIterationConfig cfg = {});

struct CommutatorGrowth {
  std::vector<CommutatorNorm> points;
  /// |last - previous| / last.
  double tail_variation() const;
  /// last / first.
  double growth_ratio() const;
};

CommutatorGrowth commutator_growth(const std::function<DiracSpec(Domain)>& make_D,
                                   const std::function<SparseOperator(std::shared_ptr<const BasisSpec>)>& make_A,
                                   int ell, Space space, const std::vector<int>& schedule, int margin,
                                   PowerIterationConfig cfg = {});

/// Exact eigenvalue multiplicities (value -> count) from dimension formulas, |value| <= Lambda.
std::map<double, long long> spectrum(const DiracSpec& D, double Lambda);
/// N(Lambda) = number of eigenvalues with |value| <= Lambda, with multiplicity.
long long counting_function(const DiracSpec& D, double Lambda);

struct SummabilityFit {
  std::vector<double> lambdas;
  std::vector<long long> counts;
  double exponent = 0;        // slope of log N = p log L + b + c / L
  double plain_exponent = 0;  // slope of log N = p log L + b
};

SummabilityFit summability_exponent(const DiracSpec& D, const std::vector<double>& schedule);

struct PlaneInfo {
  std::string key;
  int size = 0;
  int positive = 0;
  int negative = 0;
  int sign = 1;  // majority sign
};

struct SignReport {
  int positive = 0;
  int negative = 0;
  std::vector<GTTableau> zero_modes;
  std::vector<PlaneInfo> planes;
  std::vector<std::string> negative_planes;
  std::vector<GTTableau> exceptional;
};

/// Vertex labels of the domain truncation.
std::vector<GTTableau> domain_vertices(const Domain& dom);
/// Free-plane key (group) or "n=..." (sphere).
std::string plane_key(const GTTableau& r, Space space);
/// Sign with sign(0) = +1.
int sign_of(double d);

SignReport sign_decomposition(const DiracSpec& D);

struct CanonicalFormCheck {
  bool canonical = false;
  std::vector<std::string> negative_planes;
  std::size_t exceptional_small = 0;
  std::size_t exceptional_large = 0;
  std::size_t new_exceptional = 0;
};

/// Compare two truncations: canonical iff no exceptional vertex appears beyond the smaller window
/// and the exceptional set and generating planes restricted to it agree.
CanonicalFormCheck canonical_form(const DiracSpec& small, const DiracSpec& large);

}  // namespace qsp
