#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "qsp/repn.hpp"

using namespace qsp;

TEST_CASE("group basis sizes") {
  CHECK(BasisSpec::group(1, 3)->size() == 30);
  CHECK(BasisSpec::group(2, 4)->size() == 3136);
  auto b = BasisSpec::group(2, 3);
  for (std::size_t idx = 0; idx < b->size(); idx += 7) {
    auto at = b->index_of(b->row_tableau(idx), b->col_tableau(idx));
    REQUIRE(at);
    CHECK(*at == idx);
  }
}

TEST_CASE("sphere basis realizes each sector once") {
  for (int ell = 1; ell <= 3; ++ell) {
    auto b = BasisSpec::sphere(ell, 5);
    std::set<std::pair<int, int>> sectors;
    std::size_t total = 0;
    for (int n = 0; n <= 5; ++n)
      for (int k = 0; n + k <= 5; ++k) {
        total += static_cast<std::size_t>(weyl_dimension(sphere_top_row(n, k, ell)));
        auto at = b->index_of(sphere_tableau(n, k, ell), sphere_sector(n, k, ell).front());
        REQUIRE(at);
        CHECK(b->sector(*at) == std::make_pair(n, k));
        sectors.insert(b->sector(*at));
      }
    CHECK(b->size() == total);
    CHECK(sectors.size() == 21);
  }
}

TEST_CASE("columns of the trivial vector") {
  QParam q(0.5);
  for (int ell = 1; ell <= 2; ++ell) {
    auto b = BasisSpec::group(ell, 3);
    GTTableau z = GTTableau::zero(ell);
    std::size_t c0 = *b->index_of(z, z);
    double dim = static_cast<double>(weyl_q_dimension(sphere_top_row(1, 0, ell), q).value());
    for (int i = 1; i <= ell + 1; ++i)
      for (int j = 1; j <= ell + 1; ++j) {
        SparseOperator U = build_pi_u(i, j, q, b);
        int hits = 0;
        for (const auto& t : U.triplets())
          if (t.col == c0) {
            ++hits;
            GTTableau m = b->row_tableau(t.row);
            double expect = std::pow(dim, -0.5) * std::pow(0.5, -psi(m));
            CHECK(std::fabs(static_cast<double>(t.value.value())) == doctest::Approx(expect).epsilon(1e-10));
          }
        CHECK(hits == 1);
      }
  }
}

TEST_CASE("rank one columns have at most four entries") {
  QParam q(0.5);
  auto b = BasisSpec::group(1, 6);
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j) {
      std::map<std::size_t, int> per;
      SparseOperator U = build_pi_u(i, j, q, b);
      for (const auto& t : U.triplets()) ++per[t.col];
      for (auto [c, n] : per) CHECK(n <= 4);
    }
}

TEST_CASE("entry magnitudes track the CG exponent") {
  QParam q(0.5);
  auto b = BasisSpec::group(2, 4);
  for (int i = 1; i <= 3; ++i) {
    SparseOperator U = build_pi_u(i, i, q, b);
    for (const auto& t : U.triplets()) {
      double v = std::fabs(static_cast<double>(t.value.value()));
      CHECK(v > 0);
      CHECK(v <= 1.0 + 1e-9);
    }
  }
}

TEST_CASE("builders check the basis kind") {
  QParam q(0.5);
  CHECK_THROWS_AS(build_pi_u(1, 1, q, BasisSpec::sphere(1, 3)), std::invalid_argument);
  CHECK_THROWS_AS(build_pi_z(1, q, BasisSpec::group(1, 3)), std::invalid_argument);
  CHECK_THROWS_AS(build_pi_u(0, 1, q, BasisSpec::group(1, 3)), std::invalid_argument);
}

TEST_CASE("sector selection rule on the sphere") {
  QParam q(0.5);
  for (int ell = 1; ell <= 2; ++ell) {
    auto b = BasisSpec::sphere(ell, 8);
    for (int j = 1; j <= ell + 1; ++j) {
      SparseOperator U = build_pi_u1_sphere(j, q, b);
      for (const auto& t : U.triplets()) {
        auto [n, k] = b->sector(t.col);
        auto to = b->sector(t.row);
        bool ok = to == std::make_pair(n + 1, k) || to == std::make_pair(n, k - 1);
        CHECK(ok);
      }
    }
  }
}

TEST_CASE("sphere generators q-commute for j < i") {
  QParam q(0.5);
  auto b = BasisSpec::sphere(1, 12);
  auto z1 = build_pi_z(1, q, b).to_eigen();
  auto z2 = build_pi_z(2, q, b).to_eigen();
  Eigen::SparseMatrix<double> R = z2 * z1 - 0.5 * (z1 * z2);
  CHECK(max_interior_column_norm(R, *b, 2) < 1e-8);
}

TEST_CASE("relation residuals") {
  QParam q(0.5);
  auto s1 = relation_residuals(q, BasisSpec::sphere(1, 12), 2);
  CHECK(s1.max_residual() < 1e-7);
  auto s2 = relation_residuals(q, BasisSpec::sphere(2, 8), 2);
  CHECK(s2.max_residual() < 1e-7);
  auto g1 = relation_residuals(q, BasisSpec::group(1, 8), 2);
  CHECK(g1.max_residual() < 1e-7);
  auto far = relation_residuals(QParam(0.9), BasisSpec::sphere(1, 14), 2);
  CHECK(far.max_residual() < 1e-7);
  CHECK_THROWS_AS(relation_residuals(q, BasisSpec::sphere(1, 1), 2), std::invalid_argument);
}

TEST_CASE("residuals do not grow with the cutoff") {
  QParam q(0.5);
  double prev = relation_residuals(q, BasisSpec::group(1, 6), 2).max_residual();
  for (int N : {8, 10}) {
    double cur = relation_residuals(q, BasisSpec::group(1, N), 2).max_residual();
    CHECK(cur <= std::max(prev * 1.1, 1e-13));
    prev = cur;
  }
}

TEST_CASE("serialization") {
  auto b = BasisSpec::group(1, 2);
  SparseOperator U = build_pi_u(1, 1, QParam(0.5), b);
  std::ostringstream os;
  U.write_csv(os);
  CHECK(os.str().rfind("row,col,sign,log_magnitude\n", 0) == 0);
  CHECK(U.header_json("u11").find("\"schema\": \"qsp.sparse_operator/1\"") != std::string::npos);
  CHECK(U.transpose().transpose().triplets().size() == U.nnz());
}
