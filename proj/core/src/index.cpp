#include "qsp/index.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace qsp {

SparseOperator build_omega(QParam q, std::shared_ptr<const BasisSpec> basis) {
  const int ell = basis->ell();
  return build_pi_u1_sphere(ell + 1, q, std::move(basis)).scaled(q_pow(-ell, q));
}

GTTableau s_k(int k, int ell) {
  GTTableau s = GTTableau::zero(ell);
  for (int i = 1; i <= ell + 1; ++i)
    for (int j = 1; j <= ell + 2 - i; ++j) s.at(i, j) = (i == ell + 2 - j) ? 0 : k;
  return s;
}

namespace {

/// Image of e_{r^{0,k}, s} under the q = 0 limit, or nullopt for the zero vector.
std::optional<std::pair<std::pair<int, int>, GTTableau>> omega_zero_image(int k, const GTTableau& s) {
  const int ell = s.ell;
  if (k == 0) {
    auto t = apply_move(Move::N(1, 0, ell), s);
    if (!t) throw std::logic_error("N10 image invalid on sector (0,0)");
    return std::make_pair(std::make_pair(1, 0), *t);
  }
  if (s(ell + 1, 1) != 0) return std::nullopt;
  auto t = apply_move(Move::M(ell + 1, ell + 1), s);
  if (!t) throw std::logic_error("M_{l+1,l+1} image invalid for s with vanishing bottom entry");
  return std::make_pair(std::make_pair(0, k - 1), *t);
}

}  // namespace

SparseOperator omega_zero(std::shared_ptr<const BasisSpec> basis) {
  if (basis->space() != Space::sphere) throw std::invalid_argument("omega_zero needs a sphere basis");
  const BasisSpec& B = *basis;
  std::vector<Triplet> trip;
  std::vector<bool> boundary(B.size(), false);
  for (std::size_t col = 0; col < B.size(); ++col) {
    auto [n, k] = B.sector(col);
    if (n != 0) continue;
    auto img = omega_zero_image(k, B.col_tableau(col));
    if (!img) continue;
    auto [nk, t] = *img;
    auto row = B.index_of(sphere_tableau(nk.first, nk.second, B.ell()), t);
    if (!row) {
      boundary[col] = true;
      continue;
    }
    trip.push_back({*row, col, Scalar::one()});
  }
  return SparseOperator(std::move(basis), std::move(trip), std::move(boundary));
}

namespace {

using SM = Eigen::SparseMatrix<double>;

std::vector<std::vector<int>> interior_components(const SM& WW, const std::vector<char>& inner) {
  const int n = static_cast<int>(WW.cols());
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  for (int c = 0; c < n; ++c) {
    if (!inner[static_cast<std::size_t>(c)]) continue;
    for (SM::InnerIterator it(WW, c); it; ++it) {
      int r = static_cast<int>(it.row());
      if (!inner[static_cast<std::size_t>(r)] || it.value() == 0) continue;
      int a = find(r), b = find(c);
      if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
  }
  std::map<int, std::vector<int>> comp;
  for (int c = 0; c < n; ++c)
    if (inner[static_cast<std::size_t>(c)]) comp[find(c)].push_back(c);
  std::vector<std::vector<int>> out;
  for (auto& [k, v] : comp) out.push_back(std::move(v));
  return out;
}

std::vector<char> interior_mask(const BasisSpec& B, int margin) {
  std::vector<char> inner(B.size(), 0);
  for (std::size_t c : B.interior_indices(margin)) inner[c] = 1;
  return inner;
}

Eigen::MatrixXd dense_block(const SM& WW, const std::vector<int>& comp) {
  const int m = static_cast<int>(comp.size());
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m, m);
  std::unordered_map<int, int> pos;
  for (int t = 0; t < m; ++t) pos[comp[static_cast<std::size_t>(t)]] = t;
  for (int t = 0; t < m; ++t)
    for (SM::InnerIterator it(WW, comp[static_cast<std::size_t>(t)]); it; ++it) {
      auto p = pos.find(static_cast<int>(it.row()));
      if (p != pos.end()) A(p->second, t) = it.value();
    }
  return A;
}

}  // namespace

GammaResult build_gamma(const SparseOperator& omega, double q, int margin, bool zero_limit) {
  const BasisSpec& B = omega.basis();
  const int n = static_cast<int>(B.size());
  SM W = omega.to_eigen();
  SM WW = SM(W.transpose()) * W;
  std::vector<char> inner = interior_mask(B, margin);
  GammaResult res;
  const double thr = (1 + q * q) / 2;
  const double band = 0.1 * (1 - q * q);
  res.gap_low = thr - band;
  res.gap_high = thr + band;
  std::vector<Eigen::Triplet<double>> pt;
  if (zero_limit) {
    for (int c = 0; c < n; ++c) {
      if (!inner[static_cast<std::size_t>(c)]) continue;
      double v = WW.coeff(c, c);
      ++res.eigenvalues;
      if (v != 0 && v != 1) throw std::logic_error("omega_zero is not a partial isometry");
      if (v == 1) {
        pt.emplace_back(c, c, 1.0);
        ++res.selected;
      }
    }
  } else {
    for (const auto& comp : interior_components(WW, inner)) {
      Eigen::MatrixXd A = dense_block(WW, comp);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
      const auto& ev = es.eigenvalues();
      res.eigenvalues += static_cast<std::size_t>(ev.size());
      std::vector<int> sel;
      for (int t = 0; t < ev.size(); ++t) {
        if (ev(t) > res.gap_low && ev(t) < res.gap_high)
          throw GapViolation("eigenvalue " + std::to_string(ev(t)) + " of omega^* omega inside the spectral gap at N=" +
                             std::to_string(B.cutoff()));
        if (ev(t) > thr) sel.push_back(t);
      }
      if (sel.empty()) continue;
      res.selected += sel.size();
      Eigen::MatrixXd V(A.rows(), static_cast<Eigen::Index>(sel.size()));
      for (std::size_t t = 0; t < sel.size(); ++t) V.col(static_cast<Eigen::Index>(t)) = es.eigenvectors().col(sel[t]);
      Eigen::MatrixXd P = V * V.transpose();
      for (int a = 0; a < P.rows(); ++a)
        for (int b = 0; b < P.cols(); ++b)
          if (std::fabs(P(a, b)) > 1e-15)
            pt.emplace_back(comp[static_cast<std::size_t>(a)], comp[static_cast<std::size_t>(b)], P(a, b));
    }
  }
  SM P(n, n);
  P.setFromTriplets(pt.begin(), pt.end());
  SM I(n, n);
  I.setIdentity();
  res.gamma = SM(P * SM(W - I)) + I;
  res.gamma.prune(0.0);
  return res;
}

OmegaSpectrum omega_spectrum(const SparseOperator& omega, double q, int margin, double resolve_tol) {
  const BasisSpec& B = omega.basis();
  SM W = omega.to_eigen();
  SM WW = SM(W.transpose()) * W;
  std::vector<char> inner = interior_mask(B, margin);
  OmegaSpectrum out;
  auto dist = [&](double x) {
    double d = std::fabs(x);
    for (double p = 1; p > 1e-300; p *= q * q) {
      d = std::min(d, std::fabs(x - p));
      if (p < x * 1e-3) break;
    }
    return d;
  };
  for (const auto& comp : interior_components(WW, inner)) {
    Eigen::MatrixXd A = dense_block(WW, comp);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
    for (int t = 0; t < es.eigenvalues().size(); ++t) {
      ++out.eigenvalues;
      double lam = es.eigenvalues()(t);
      out.max_value = std::max(out.max_value, lam);
      // residual against the uncompressed operator
      Eigen::VectorXd full = Eigen::VectorXd::Zero(WW.rows());
      for (std::size_t a = 0; a < comp.size(); ++a) {
        double va = es.eigenvectors()(static_cast<Eigen::Index>(a), t);
        for (SM::InnerIterator it(WW, comp[a]); it; ++it) full(it.row()) += it.value() * va;
        full(comp[a]) -= lam * va;
      }
      if (full.norm() > resolve_tol) continue;
      ++out.resolved;
      out.max_distance = std::max(out.max_distance, dist(lam));
    }
  }
  return out;
}

TrailEntry fredholm_index(const SM& gamma, const BasisSpec& B, int margin) {
  TrailEntry e;
  e.cutoff = B.cutoff();
  e.margin = margin;
  std::vector<char> inQ(B.size(), 0);
  std::vector<int> sector_k(B.size(), -1);
  for (std::size_t c = 0; c < B.size(); ++c) {
    auto [n, k] = B.sector(c);
    if (n != 0) continue;
    inQ[c] = 1;
    sector_k[c] = k;
  }
  SM gt = gamma.transpose();
  const int top = B.cutoff() - 2 * margin;
  e.by_k.assign(static_cast<std::size_t>(std::max(top + 1, 0)), 0.0);
  for (std::size_t c = 0; c < B.size(); ++c) {
    if (!inQ[c]) continue;
    if (B.degree(c) > top) {
      ++e.excluded;
      continue;
    }
    ++e.traced;
    double col = 0, row = 0;
    for (SM::InnerIterator it(gamma, static_cast<int>(c)); it; ++it)
      if (inQ[static_cast<std::size_t>(it.row())]) col += it.value() * it.value();
    for (SM::InnerIterator it(gt, static_cast<int>(c)); it; ++it)
      if (inQ[static_cast<std::size_t>(it.row())]) row += it.value() * it.value();
    e.trace_kernel += 1 - col;
    e.trace_cokernel += 1 - row;
    e.by_k[static_cast<std::size_t>(sector_k[c])] += 1 - col;
  }
  e.estimate = e.trace_kernel - e.trace_cokernel;
  return e;
}

TrailEntry fredholm_index_zero(const BasisSpec& B, int margin) {
  // gamma_0 on Q: chi = omega_0^* omega_0 is a 0/1 diagonal, so Q gamma_0 Q sends each n = 0 vector to
  // either its omega_0 image (kept only if it lies in Q), or to itself
  auto basis_ptr = std::shared_ptr<const BasisSpec>(&B, [](const BasisSpec*) {});
  SparseOperator w0 = omega_zero(basis_ptr);
  std::vector<long long> target(B.size(), -2);  // -2: fixed, -1: zero, else row index
  std::vector<char> isometric(B.size(), 0);
  for (const auto& t : w0.triplets()) {
    target[t.col] = static_cast<long long>(t.row);
    isometric[t.col] = 1;
  }
  TrailEntry e;
  e.cutoff = B.cutoff();
  e.margin = margin;
  std::vector<char> inQ(B.size(), 0), eig_inner(B.size(), 0);
  std::vector<int> sector_k(B.size(), -1);
  for (std::size_t c = 0; c < B.size(); ++c) {
    auto [n, k] = B.sector(c);
    if (n != 0) continue;
    inQ[c] = 1;
    sector_k[c] = k;
  }
  for (std::size_t c : B.interior_indices(margin)) eig_inner[c] = 1;
  // column images of T
  std::vector<long long> img(B.size(), -1);
  std::vector<long long> preimages(B.size(), 0);
  for (std::size_t c = 0; c < B.size(); ++c) {
    if (!inQ[c]) continue;
    long long t;
    if (eig_inner[c] && isometric[c]) t = target[c];
    else t = static_cast<long long>(c);
    if (t >= 0 && !inQ[static_cast<std::size_t>(t)]) t = -1;
    img[c] = t;
    if (t >= 0) ++preimages[static_cast<std::size_t>(t)];
  }
  const int top = B.cutoff() - 2 * margin;
  long long ker = 0, coker = 0;
  e.by_k.assign(static_cast<std::size_t>(std::max(top + 1, 0)), 0.0);
  for (std::size_t c = 0; c < B.size(); ++c) {
    if (!inQ[c]) continue;
    if (B.degree(c) > top) {
      ++e.excluded;
      continue;
    }
    ++e.traced;
    long long kc = img[c] < 0 ? 1 : 0;
    long long cc = preimages[c] == 0 ? 1 : 0;
    if (preimages[c] > 1) throw std::logic_error("Q gamma_0 Q is not a partial isometry");
    ker += kc;
    coker += cc;
    e.by_k[static_cast<std::size_t>(sector_k[c])] += static_cast<double>(kc);
  }
  e.trace_kernel = static_cast<double>(ker);
  e.trace_cokernel = static_cast<double>(coker);
  e.estimate = static_cast<double>(ker - coker);
  return e;
}

IndexReport sphere_index(int ell, double q, const std::vector<int>& schedule, int margin) {
  if (schedule.empty()) throw std::invalid_argument("empty schedule");
  if (margin < 1) throw std::invalid_argument("margin must be >= 1");
  for (std::size_t i = 1; i < schedule.size(); ++i)
    if (schedule[i] <= schedule[i - 1]) throw std::invalid_argument("schedule must be strictly increasing");
  IndexReport rep;
  rep.q = q;
  rep.zero_limit = q == 0;
  rep.ell = ell;
  for (int N : schedule) {
    if (N - 2 * margin < 0) throw std::invalid_argument("cutoff too small for the margin");
    auto basis = BasisSpec::sphere(ell, N);
    if (rep.zero_limit) {
      rep.trail.push_back(fredholm_index_zero(*basis, margin));
    } else {
      QParam qp(q);
      GammaResult g = build_gamma(build_omega(qp, basis), q, margin);
      rep.trail.push_back(fredholm_index(g.gamma, *basis, margin));
    }
  }
  if (rep.trail.size() >= 2) {
    double a = rep.trail[rep.trail.size() - 2].estimate, b = rep.trail.back().estimate;
    double ra = std::round(a), rb = std::round(b);
    rep.stable = ra == rb && std::fabs(a - ra) <= 0.05 && std::fabs(b - rb) <= 0.05;
  }
  if (rep.stable) rep.index = static_cast<long long>(std::llround(rep.trail.back().estimate));
  return rep;
}

std::vector<GTTableau> symbolic_kernel(int ell, int k_max) {
  std::vector<GTTableau> kernel;
  std::map<std::pair<int, GTTableau>, int> hits;
  for (int k = 0; k <= k_max; ++k)
    for (const auto& s : sphere_sector(0, k, ell)) {
      auto img = omega_zero_image(k, s);
      if (img && img->first.first == 0) {
        if (++hits[{img->first.second, img->second}] > 1) throw std::logic_error("two vectors share an image");
      } else if (img) {
        kernel.push_back(s);  // leaves the n = 0 plane
      } else {
        if (++hits[{k, s}] > 1) throw std::logic_error("two vectors share an image");
      }
    }
  return kernel;
}

}  // namespace qsp
