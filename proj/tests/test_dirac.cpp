#include <doctest.h>

#include <cmath>

#include "qsp/dirac.hpp"

using namespace qsp;

namespace {
DiffCoords make_coords(int ell, std::vector<int> V, std::vector<std::vector<int>> H) {
  DiffCoords d;
  d.ell = ell;
  d.V = std::move(V);
  d.H = std::move(H);
  return d;
}
const Domain g2{2, Space::group, 5};
}  // namespace

TEST_CASE("D tilde") {
  DiracSpec D = build_d_tilde(g2);
  CHECK(D.eigenvalue(GTTableau::zero(2)) == 0);
  for (const auto& r : enumerate_tableaux(YoungDiagram({2, 1, 0}))) CHECK(D.eigenvalue(r) == 2);
  for (int ell = 1; ell <= 3; ++ell)
    for (const auto& t : enumerate_truncation(ell, 4))
      for (int i = 1; i <= ell + 1; ++i)
        for (const Move& M : moves_of_length(i, ell))
          if (auto s = apply_move(M, t)) CHECK(std::fabs(double(t.r11()) - s->r11()) <= 1);
}

TEST_CASE("N_i operators") {
  CHECK(build_Ni(1, g2).eigenvalue(GTTableau::zero(2)) == 0);
  CHECK(f_value(1, from_coords(make_coords(2, {0, 1}, {{2, 0}, {1}}))) == 1);
  for (const auto& t : enumerate_truncation(2, 4))
    if (on_complementary_axis(t))
      for (int i = 1; i <= 2; ++i) CHECK(f_value(i, t) == 0);
}

TEST_CASE("spin matrices") {
  for (int ell = 1; ell <= 5; ++ell) {
    SpinSet s = spin_matrices(ell);
    CHECK(s.gammas.size() == static_cast<std::size_t>(ell + 1));
    CHECK(s.m == (1 << ((ell + 2) / 2)));
    CHECK(anticommutation_exact(s));
    CHECK(self_adjoint_exact(s));
    for (const auto& g : s.gammas) CHECK(g * g == GaussMatrix::identity(s.m));
    for (std::size_t i = 0; i < s.gammas.size(); ++i)
      for (std::size_t j = 0; j < i; ++j) {
        GaussMatrix p = s.gammas[i] * s.gammas[j];
        std::complex<int> tr = 0;
        for (int a = 0; a < s.m; ++a) tr += p(a, a);
        CHECK(tr == std::complex<int>(0, 0));
      }
  }
}

TEST_CASE("full D singular values") {
  for (int ell = 1; ell <= 3; ++ell) {
    DiracSpec D = build_full_D(Domain{ell, Space::group, 5});
    for (const auto& t : enumerate_truncation(ell, 5)) {
      double s2 = double(t.r11()) * t.r11();
      for (int i = 1; i <= ell; ++i) s2 += double(f_value(i, t)) * f_value(i, t);
      for (double s : D.singular_values(t)) {
        CHECK(s == doctest::Approx(std::sqrt(s2)));
        CHECK(s >= t.r11() - 1e-12);
        CHECK(s <= std::sqrt(ell + 1.0) * t.r11() + 1e-12);
      }
    }
    CHECK(D.block(GTTableau::zero(ell)).norm() == 0);
  }
}

TEST_CASE("coordinate D") {
  DiracSpec D = build_coordinate_D(Domain{1, Space::group, 4}, coordinate_names(1));
  for (const auto& t : enumerate_truncation(1, 4)) {
    DiffCoords d = coords(t);
    for (double s : D.singular_values(t))
      CHECK(s == doctest::Approx(std::hypot(double(d.v(1)), double(d.h(1, 1)))));
  }
  auto names = coordinate_names(3);
  CHECK(names.size() == 9);
  std::reverse(names.begin(), names.end());
  DiracSpec R = build_coordinate_D(Domain{3, Space::group, 3}, names);
  CHECK(R.block(GTTableau::zero(3)).norm() == 0);
  CHECK_THROWS(build_coordinate_D(Domain{1, Space::group, 3}, {"V11", "V11"}));
}

TEST_CASE("sphere D") {
  DiracSpec D = build_sphere_D(Domain{2, Space::sphere, 6});
  CHECK(D.eigenvalue(sphere_tableau(0, 3, 2)) == -3);
  CHECK(D.eigenvalue(sphere_tableau(2, 1, 2)) == 3);
  CHECK(D.eigenvalue(sphere_tableau(0, 0, 2)) == 0);
}

TEST_CASE("counting function matches the truncated basis") {
  CHECK(counting_function(build_d_tilde(Domain{1, Space::group, 10}), 3) == 30);
  CHECK(counting_function(build_d_tilde(Domain{2, Space::group, 10}), 4) == 3136);
  auto sb = BasisSpec::sphere(2, 6);
  DiracSpec S = build_sphere_D(Domain{2, Space::sphere, 10});
  long long brute = 0;
  for (std::size_t idx = 0; idx < sb->size(); ++idx)
    if (std::fabs(S.eigenvalue(sb->row_tableau(idx))) <= 6) ++brute;
  CHECK(counting_function(S, 6) == brute);
  CHECK_THROWS_AS(counting_function(S, 11), std::invalid_argument);
  auto spec = spectrum(build_d_tilde(Domain{1, Space::group, 10}), 5);
  for (int n = 0; n <= 5; ++n) CHECK(spec.at(n) == (n + 1) * (n + 1));
}

TEST_CASE("summability exponents") {
  auto g1 = summability_exponent(build_d_tilde(Domain{1, Space::group, 40}), {10, 20, 40});
  CHECK(g1.exponent == doctest::Approx(3).epsilon(0.07));
  std::vector<double> grid;
  for (int x = 10; x <= 30; ++x) grid.push_back(x);
  auto g2 = summability_exponent(build_d_tilde(Domain{2, Space::group, 30}), grid);
  CHECK(g2.exponent == doctest::Approx(8).epsilon(0.0625));
  auto s2 = summability_exponent(build_sphere_D(Domain{2, Space::sphere, 30}), grid);
  CHECK(s2.exponent == doctest::Approx(5).epsilon(0.06));
}

TEST_CASE("commutators with D tilde stay bounded") {
  QParam q(0.5);
  CommutatorGrowth g = commutator_growth([](Domain d) { return build_d_tilde(d); },
                                         [&](std::shared_ptr<const BasisSpec> b) { return build_pi_u(1, 2, q, b); }, 1,
                                         Space::group, {4, 5, 6, 7, 8}, 1);
  CHECK(g.tail_variation() < 0.05);
  for (const auto& p : g.points) {
    CHECK(p.converged);
    CHECK(p.norm <= p.entry_bound * 4 + 1e-12);
  }
}

TEST_CASE("quadratic spectrum gives unbounded commutators") {
  QParam q(0.5);
  CommutatorGrowth g = commutator_growth(
      [](Domain d) { return make_scalar_dirac(d, "r11^2", [](const GTTableau& t) { return double(t.r11()) * t.r11(); }); },
      [&](std::shared_ptr<const BasisSpec> b) { return build_pi_u(1, 1, q, b); }, 1, Space::group, {4, 6, 8}, 1);
  CHECK(g.growth_ratio() >= 2);
}

TEST_CASE("sphere D commutator entries") {
  QParam q(0.5);
  auto b = BasisSpec::sphere(2, 10);
  DiracSpec D = build_sphere_D(Domain{2, Space::sphere, 10});
  for (int j = 1; j <= 3; ++j) CHECK(commutator_norm(D, build_pi_u1_sphere(j, q, b), 1).entry_bound <= 1.5);
}

TEST_CASE("growth along paths to zero") {
  DiracSpec D = build_d_tilde(Domain{3, Space::group, 5});
  for (const auto& t : enumerate_truncation(3, 5)) {
    Path p = path_to_zero(t);
    for (const auto& x : p) CHECK(std::fabs(D.eigenvalue(x)) <= D.eigenvalue(GTTableau::zero(3)) + 3.0 * t.r11());
  }
}

TEST_CASE("sign decompositions") {
  SignReport dt = sign_decomposition(build_d_tilde(Domain{1, Space::group, 6}));
  CHECK(dt.negative == 0);
  CHECK(dt.negative_planes.empty());
  SignReport sph = sign_decomposition(build_sphere_D(Domain{2, Space::sphere, 8}));
  CHECK(sph.negative_planes == std::vector<std::string>{"n=0"});
  CHECK(sph.exceptional.size() == 1);
  CHECK(sign_of(0.0) == 1);
  auto parity = [](Domain d) {
    return make_scalar_dirac(d, "parity", [](const GTTableau& t) {
      return ((t(2, 1) - t(1, 2)) % 2 == 0 ? 1.0 : -1.0) * t.r11();
    });
  };
  CHECK_FALSE(canonical_form(parity(Domain{1, Space::group, 4}), parity(Domain{1, Space::group, 8})).canonical);
  CHECK(canonical_form(build_sphere_D(Domain{2, Space::sphere, 6}), build_sphere_D(Domain{2, Space::sphere, 10}))
            .canonical);
}
