#include "qsp/dirac.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace qsp {

double DiracSpec::eigenvalue(const GTTableau& r) const {
  if (is_matrix()) throw std::logic_error(name + " is matrix-valued");
  return scalar(r);
}

Eigen::MatrixXcd DiracSpec::block(const GTTableau& r) const {
  if (is_matrix()) return matrix(r);
  Eigen::MatrixXcd t(1, 1);
  t(0, 0) = scalar(r);
  return t;
}

std::vector<double> DiracSpec::singular_values(const GTTableau& r) const {
  std::vector<double> out;
  if (!is_matrix()) {
    out.push_back(std::fabs(scalar(r)));
    return out;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(matrix(r), Eigen::EigenvaluesOnly);
  for (int i = 0; i < es.eigenvalues().size(); ++i) out.push_back(std::fabs(es.eigenvalues()(i)));
  std::sort(out.begin(), out.end());
  return out;
}

std::pair<int, int> sphere_sector_of(const GTTableau& r) {
  int k = r(2, 1);
  return {r(1, 1) - k, k};
}

DiracSpec make_scalar_dirac(Domain dom, std::string name, std::function<double(const GTTableau&)> d) {
  DiracSpec D;
  D.domain = dom;
  D.name = std::move(name);
  D.scalar = std::move(d);
  return D;
}

DiracSpec build_d_tilde(Domain dom) {
  if (dom.space != Space::group) throw std::invalid_argument("D~ lives on the group");
  return make_scalar_dirac(dom, "D~", [](const GTTableau& r) { return static_cast<double>(r.r11()); });
}

int f_value(int i, const GTTableau& r) {
  int mn = r(2, i) - r(1, i + 1);
  for (int a = 2; a <= r.ell + 1 - i; ++a) mn = std::min(mn, r(a + 1, i) - r(a, i + 1));
  return mn;
}

DiracSpec build_Ni(int i, Domain dom) {
  if (dom.space != Space::group) throw std::invalid_argument("N_i lives on the group");
  if (i < 1 || i > dom.ell) throw std::invalid_argument("N_i needs 1 <= i <= l");
  return make_scalar_dirac(dom, "N" + std::to_string(i),
                           [i](const GTTableau& r) { return static_cast<double>(f_value(i, r)); });
}

DiracSpec build_sphere_D(Domain dom) {
  if (dom.space != Space::sphere) throw std::invalid_argument("sphere D lives on the sphere");
  return make_scalar_dirac(dom, "D_sphere", [](const GTTableau& r) {
    auto [n, k] = sphere_sector_of(r);
    return static_cast<double>(n == 0 ? -k : n + k);
  });
}

GaussMatrix GaussMatrix::identity(int m) {
  GaussMatrix g;
  g.m = m;
  g.a.assign(static_cast<std::size_t>(m * m), {0, 0});
  for (int i = 0; i < m; ++i) g.a[static_cast<std::size_t>(i * m + i)] = {1, 0};
  return g;
}

GaussMatrix GaussMatrix::operator*(const GaussMatrix& o) const {
  GaussMatrix r;
  r.m = m;
  r.a.assign(a.size(), {0, 0});
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < m; ++k) {
      auto x = (*this)(i, k);
      if (x == std::complex<int>(0, 0)) continue;
      for (int j = 0; j < m; ++j) r.a[static_cast<std::size_t>(i * m + j)] += x * o(k, j);
    }
  return r;
}

GaussMatrix GaussMatrix::operator+(const GaussMatrix& o) const {
  GaussMatrix r = *this;
  for (std::size_t t = 0; t < a.size(); ++t) r.a[t] += o.a[t];
  return r;
}

Eigen::MatrixXcd GaussMatrix::to_eigen() const {
  Eigen::MatrixXcd e(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) e(i, j) = std::complex<double>((*this)(i, j).real(), (*this)(i, j).imag());
  return e;
}

namespace {

GaussMatrix kron(const GaussMatrix& x, const GaussMatrix& y) {
  GaussMatrix r;
  r.m = x.m * y.m;
  r.a.assign(static_cast<std::size_t>(r.m * r.m), {0, 0});
  for (int i = 0; i < x.m; ++i)
    for (int j = 0; j < x.m; ++j)
      for (int k = 0; k < y.m; ++k)
        for (int l = 0; l < y.m; ++l) r.a[static_cast<std::size_t>((i * y.m + k) * r.m + j * y.m + l)] = x(i, j) * y(k, l);
  return r;
}

GaussMatrix pauli(int which) {
  GaussMatrix s;
  s.m = 2;
  switch (which) {
    case 1: s.a = {{0, 0}, {1, 0}, {1, 0}, {0, 0}}; break;
    case 2: s.a = {{0, 0}, {0, -1}, {0, 1}, {0, 0}}; break;
    default: s.a = {{1, 0}, {0, 0}, {0, 0}, {-1, 0}}; break;
  }
  return s;
}

}  // namespace

SpinSet clifford_generators(int n) {
  if (n < 1) throw std::invalid_argument("need at least one generator");
  const int steps = (n + 1) / 2;
  std::vector<GaussMatrix> g{GaussMatrix::identity(1)};
  for (int s = 0; s < steps; ++s) {
    std::vector<GaussMatrix> next;
    GaussMatrix id = GaussMatrix::identity(g.front().m);
    for (const auto& x : g) next.push_back(kron(x, pauli(1)));
    next.push_back(kron(id, pauli(3)));
    next.push_back(kron(id, pauli(2)));
    g = std::move(next);
  }
  g.resize(static_cast<std::size_t>(n));
  return {g.front().m, g};
}

SpinSet spin_matrices(int ell) {
  if (ell < 1) throw std::invalid_argument("rank must be >= 1");
  return clifford_generators(ell + 1);
}

bool anticommutation_exact(const SpinSet& s) {
  GaussMatrix two = GaussMatrix::identity(s.m) + GaussMatrix::identity(s.m);
  GaussMatrix zero = GaussMatrix::identity(s.m);
  for (auto& x : zero.a) x = {0, 0};
  for (std::size_t i = 0; i < s.gammas.size(); ++i)
    for (std::size_t j = 0; j < s.gammas.size(); ++j) {
      GaussMatrix ac = s.gammas[i] * s.gammas[j] + s.gammas[j] * s.gammas[i];
      if (!(ac == (i == j ? two : zero))) return false;
    }
  return true;
}

bool self_adjoint_exact(const SpinSet& s) {
  for (const auto& g : s.gammas)
    for (int i = 0; i < g.m; ++i)
      for (int j = 0; j < g.m; ++j)
        if (g(i, j) != std::conj(g(j, i))) return false;
  return true;
}

DiracSpec build_full_D(Domain dom) {
  if (dom.space != Space::group) throw std::invalid_argument("full D lives on the group");
  SpinSet s = spin_matrices(dom.ell);
  std::vector<Eigen::MatrixXcd> gam;
  for (const auto& g : s.gammas) gam.push_back(g.to_eigen());
  DiracSpec D;
  D.domain = dom;
  D.name = "D_full";
  D.m = s.m;
  const int ell = dom.ell;
  D.matrix = [gam, ell](const GTTableau& r) {
    Eigen::MatrixXcd t = static_cast<double>(r.r11()) * gam[static_cast<std::size_t>(ell)];
    for (int i = 1; i <= ell; ++i) t += static_cast<double>(f_value(i, r)) * gam[static_cast<std::size_t>(i - 1)];
    return t;
  };
  return D;
}

std::vector<std::string> coordinate_names(int ell) {
  std::vector<std::string> out;
  for (int a = 1; a <= ell; ++a) out.push_back("V" + std::to_string(a) + "1");
  for (int a = 1; a <= ell; ++a)
    for (int b = 1; b <= ell + 1 - a; ++b) out.push_back("H" + std::to_string(a) + std::to_string(b));
  return out;
}

DiracSpec build_coordinate_D(Domain dom, const std::vector<std::string>& ordering) {
  if (dom.space != Space::group) throw std::invalid_argument("coordinate D lives on the group");
  std::vector<std::string> names = coordinate_names(dom.ell);
  std::vector<std::string> sorted_order = ordering, sorted_names = names;
  std::sort(sorted_order.begin(), sorted_order.end());
  std::sort(sorted_names.begin(), sorted_names.end());
  if (sorted_order != sorted_names) throw std::invalid_argument("ordering must permute the coordinate names");
  SpinSet s = clifford_generators(static_cast<int>(names.size()));
  std::vector<Eigen::MatrixXcd> gam;
  for (const auto& g : s.gammas) gam.push_back(g.to_eigen());
  DiracSpec D;
  D.domain = dom;
  D.name = "D_coord";
  D.m = s.m;
  D.matrix = [gam, ordering, m = s.m](const GTTableau& r) {
    DiffCoords d = coords(r);
    Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(m, m);
    for (std::size_t k = 0; k < ordering.size(); ++k) {
      const std::string& nm = ordering[k];
      int a = nm[1] - '0';
      double v = nm[0] == 'V' ? d.v(a) : d.h(a, nm[2] - '0');
      t += v * gam[k];
    }
    return t;
  };
  return D;
}

CommutatorNorm commutator_norm(const DiracSpec& D, const SparseOperator& A, int margin, PowerIterationConfig cfg) {
  const BasisSpec& B = A.basis();
  if (B.space() != D.domain.space || B.ell() != D.domain.ell)
    throw std::invalid_argument("operator and Dirac operator live on different spaces");
  const std::size_t n = B.size();
  const int m = D.m;
  CommutatorNorm out;
  out.cutoff = B.cutoff();

  // T per basis index, shared across equal row labels
  std::vector<int> tid(n);
  std::vector<Eigen::MatrixXcd> blocks;
  for (const auto& blk : B.blocks()) {
    std::vector<int> ids;
    for (const auto& r : blk.rows) {
      ids.push_back(static_cast<int>(blocks.size()));
      blocks.push_back(D.block(r));
    }
    for (std::size_t ir = 0; ir < blk.rows.size(); ++ir)
      for (std::size_t is = 0; is < blk.cols.size(); ++is) tid[blk.offset + ir * blk.cols.size() + is] = ids[ir];
  }
  std::vector<char> inner(n, 0);
  std::size_t n_inner = 0;
  for (std::size_t c : B.interior_indices(margin)) {
    inner[c] = 1;
    ++n_inner;
  }
  if (n_inner == 0) throw std::invalid_argument("no interior columns; raise N");

  if (!D.is_matrix()) {
    std::vector<Eigen::Triplet<double>> trip;
    for (const auto& t : A.triplets()) {
      if (!inner[t.col]) continue;
      double w = static_cast<double>(t.value.value()) *
                 (blocks[static_cast<std::size_t>(tid[t.row])](0, 0).real() -
                  blocks[static_cast<std::size_t>(tid[t.col])](0, 0).real());
      out.entry_bound = std::max(out.entry_bound, std::fabs(w));
      if (w != 0) trip.emplace_back(static_cast<int>(t.row), static_cast<int>(t.col), w);
    }
    const int dim = static_cast<int>(n);
    Eigen::SparseMatrix<double> C(dim, dim);
    C.setFromTriplets(trip.begin(), trip.end());
    Eigen::SparseMatrix<double> Ct = C.transpose();
    Eigen::VectorXd x = Eigen::VectorXd::Zero(dim);
    for (std::size_t c = 0; c < n; ++c)
      if (inner[c]) x(static_cast<Eigen::Index>(c)) = 1;
    x.normalize();
    double lam = 0;
    for (int it = 1; it <= cfg.max_iterations; ++it) {
      Eigen::VectorXd y = C * x;
      Eigen::VectorXd z = Ct * y;
      double nz = z.norm();
      out.iterations = it;
      if (nz == 0) {
        lam = 0;
        out.converged = true;
        break;
      }
      double prev = lam;
      lam = nz;
      x = z / nz;
      if (it > 1 && std::fabs(lam - prev) <= cfg.tolerance * lam) {
        out.converged = true;
        break;
      }
    }
    out.norm = std::sqrt(lam);
    return out;
  }

  // commutator entries (row, col, block) for interior columns
  struct Entry {
    std::size_t row, col;
    Eigen::MatrixXcd w;
  };
  std::vector<Entry> ent;
  for (const auto& t : A.triplets()) {
    if (!inner[t.col]) continue;
    Eigen::MatrixXcd w = static_cast<double>(t.value.value()) *
                         (blocks[static_cast<std::size_t>(tid[t.row])] - blocks[static_cast<std::size_t>(tid[t.col])]);
    double wn = m == 1 ? std::abs(w(0, 0)) : w.operatorNorm();
    out.entry_bound = std::max(out.entry_bound, wn);
    if (wn == 0) continue;
    ent.push_back({t.row, t.col, std::move(w)});
  }

  Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(m, static_cast<Eigen::Index>(n));
  for (std::size_t c = 0; c < n; ++c)
    if (inner[c]) x.col(static_cast<Eigen::Index>(c)).setOnes();
  x /= x.norm();
  double lam = 0;
  Eigen::MatrixXcd y(m, static_cast<Eigen::Index>(n)), z(m, static_cast<Eigen::Index>(n));
  for (int it = 1; it <= cfg.max_iterations; ++it) {
    y.setZero();
    for (const auto& e : ent) y.col(static_cast<Eigen::Index>(e.row)) += e.w * x.col(static_cast<Eigen::Index>(e.col));
    z.setZero();
    for (const auto& e : ent)
      z.col(static_cast<Eigen::Index>(e.col)) += e.w.adjoint() * y.col(static_cast<Eigen::Index>(e.row));
    double nz = z.norm();
    out.iterations = it;
    if (nz == 0) {
      lam = 0;
      out.converged = true;
      break;
    }
    double prev = lam;
    lam = nz;
    x = z / nz;
    if (it > 1 && std::fabs(lam - prev) <= cfg.tolerance * lam) {
      out.converged = true;
      break;
    }
  }
  out.norm = std::sqrt(lam);
  return out;
}

double CommutatorGrowth::tail_variation() const {
  if (points.size() < 2) return 0;
  double a = points[points.size() - 2].norm, b = points.back().norm;
  return std::fabs(b - a) / std::max(std::fabs(b), 1e-300);
}

double CommutatorGrowth::growth_ratio() const {
  if (points.empty() || points.front().norm == 0) return 0;
  return points.back().norm / points.front().norm;
}

CommutatorGrowth commutator_growth(const std::function<DiracSpec(Domain)>& make_D,
                                   const std::function<SparseOperator(std::shared_ptr<const BasisSpec>)>& make_A,
                                   int ell, Space space, const std::vector<int>& schedule, int margin,
                                   PowerIterationConfig cfg) {
  CommutatorGrowth g;
  for (int N : schedule) {
    auto basis = space == Space::group ? BasisSpec::group(ell, N) : BasisSpec::sphere(ell, N);
    DiracSpec D = make_D(Domain{ell, space, N});
    g.points.push_back(commutator_norm(D, make_A(basis), margin, cfg));
  }
  return g;
}

std::vector<GTTableau> domain_vertices(const Domain& dom) {
  if (dom.space == Space::group) return enumerate_truncation(dom.ell, dom.cutoff);
  std::vector<GTTableau> out;
  for (int n = 0; n <= dom.cutoff; ++n)
    for (int k = 0; n + k <= dom.cutoff; ++k) out.push_back(sphere_tableau(n, k, dom.ell));
  return out;
}

std::map<double, long long> spectrum(const DiracSpec& D, double Lambda) {
  if (Lambda > D.domain.cutoff) throw std::invalid_argument("Lambda exceeds the truncation of " + D.name);
  std::map<double, long long> out;
  auto add = [&](double v, long long mult) {
    if (std::fabs(v) > Lambda + 1e-9) return;
    double key = std::round(v * 1e9) / 1e9;
    out[key] += mult;
  };
  const int ell = D.domain.ell;
  if (D.domain.space == Space::sphere) {
    for (int n = 0; n <= D.domain.cutoff; ++n)
      for (int k = 0; n + k <= D.domain.cutoff; ++k) {
        long long dim = weyl_dimension(sphere_top_row(n, k, ell));
        GTTableau r = sphere_tableau(n, k, ell);
        if (D.is_matrix()) {
          Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(D.matrix(r), Eigen::EigenvaluesOnly);
          for (int t = 0; t < es.eigenvalues().size(); ++t) add(es.eigenvalues()(t), dim);
        } else {
          add(D.scalar(r), dim);
        }
      }
    return out;
  }
  for (const auto& lam : young_diagrams(ell, D.domain.cutoff)) {
    long long dim = weyl_dimension(lam);
    for (const auto& r : enumerate_tableaux(lam)) {
      if (D.is_matrix()) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(D.matrix(r), Eigen::EigenvaluesOnly);
        for (int t = 0; t < es.eigenvalues().size(); ++t) add(es.eigenvalues()(t), dim);
      } else {
        add(D.scalar(r), dim);
      }
    }
  }
  return out;
}

long long counting_function(const DiracSpec& D, double Lambda) {
  long long total = 0;
  for (const auto& [v, mult] : spectrum(D, Lambda)) total += mult;
  return total;
}

SummabilityFit summability_exponent(const DiracSpec& D, const std::vector<double>& schedule) {
  if (schedule.size() < 2) throw std::invalid_argument("summability needs at least two Lambda values");
  SummabilityFit fit;
  fit.lambdas = schedule;
  double top = *std::max_element(schedule.begin(), schedule.end());
  auto spec = spectrum(D, top);
  for (double L : schedule) {
    long long c = 0;
    for (const auto& [v, mult] : spec)
      if (std::fabs(v) <= L + 1e-9) c += mult;
    if (c <= 0) throw std::invalid_argument("empty spectrum below Lambda");
    fit.counts.push_back(c);
  }
  const Eigen::Index n = static_cast<Eigen::Index>(schedule.size());
  Eigen::VectorXd y(n);
  Eigen::MatrixXd X2(n, 2), X3(n, 3);
  for (Eigen::Index t = 0; t < n; ++t) {
    double L = schedule[static_cast<std::size_t>(t)];
    y(t) = std::log(static_cast<double>(fit.counts[static_cast<std::size_t>(t)]));
    X2(t, 0) = X3(t, 0) = std::log(L);
    X2(t, 1) = X3(t, 1) = 1.0;
    X3(t, 2) = 1.0 / L;
  }
  fit.plain_exponent = X2.colPivHouseholderQr().solve(y)(0);
  fit.exponent = n >= 3 ? X3.colPivHouseholderQr().solve(y)(0) : fit.plain_exponent;
  return fit;
}

std::string plane_key(const GTTableau& r, Space space) {
  if (space == Space::sphere) return "n=" + std::to_string(sphere_sector_of(r).first);
  DiffCoords d = free_plane_key(r);
  std::string s = "V=";
  for (int v : d.V) s += std::to_string(v) + ",";
  s += "H=";
  for (const auto& row : d.H) {
    for (int h : row) s += std::to_string(h) + ",";
    s += ";";
  }
  return s;
}

int sign_of(double d) { return d < 0 ? -1 : 1; }

SignReport sign_decomposition(const DiracSpec& D) {
  if (D.is_matrix()) throw std::invalid_argument("sign decomposition needs a scalar operator");
  SignReport rep;
  std::map<std::string, PlaneInfo> planes;
  std::vector<std::pair<GTTableau, std::string>> labelled;
  for (const auto& r : domain_vertices(D.domain)) {
    double d = D.scalar(r);
    if (d == 0) rep.zero_modes.push_back(r);
    int s = sign_of(d);
    (s > 0 ? rep.positive : rep.negative) += 1;
    std::string key = plane_key(r, D.domain.space);
    PlaneInfo& p = planes[key];
    p.key = key;
    p.size += 1;
    (s > 0 ? p.positive : p.negative) += 1;
    labelled.emplace_back(r, key);
  }
  for (auto& [k, p] : planes) {
    p.sign = p.negative > p.positive ? -1 : 1;
    if (p.sign < 0) rep.negative_planes.push_back(k);
    rep.planes.push_back(p);
  }
  for (const auto& [r, key] : labelled)
    if (sign_of(D.scalar(r)) != planes[key].sign) rep.exceptional.push_back(r);
  return rep;
}

CanonicalFormCheck canonical_form(const DiracSpec& small, const DiracSpec& large) {
  if (small.domain.cutoff >= large.domain.cutoff) throw std::invalid_argument("need two increasing truncations");
  CanonicalFormCheck out;
  SignReport a = sign_decomposition(small), b = sign_decomposition(large);
  out.exceptional_small = a.exceptional.size();
  out.exceptional_large = b.exceptional.size();
  out.negative_planes = b.negative_planes;
  std::set<GTTableau> ea(a.exceptional.begin(), a.exceptional.end());
  std::set<GTTableau> eb(b.exceptional.begin(), b.exceptional.end());
  for (const auto& r : eb)
    if (!ea.count(r)) ++out.new_exceptional;
  // generating planes of the small window must persist
  std::set<std::string> nb(b.negative_planes.begin(), b.negative_planes.end());
  bool planes_persist = true;
  for (const auto& k : a.negative_planes) planes_persist = planes_persist && nb.count(k) > 0;
  out.canonical = out.new_exceptional == 0 && ea == eb && planes_persist;
  return out;
}

}  // namespace qsp
