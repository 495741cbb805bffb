#include <doctest.h>

#include <Eigen/Dense>
#include <map>

#include "qsp/cgc.hpp"

using namespace qsp;

namespace {
Eigen::MatrixXd cg_matrix(const YoungDiagram& lam, QParam q) {
  const int ell = lam.ell();
  std::map<GTTableau, int> rows;
  std::vector<std::tuple<int, int, double>> ent;
  int col = 0;
  for (int i = 1; i <= ell + 1; ++i)
    for (const auto& t : enumerate_tableaux(lam)) {
      for (const Move& M : moves_of_length(i, ell))
        if (auto raw = apply_move_raw(M, t)) {
          auto it = rows.emplace(*raw, static_cast<int>(rows.size())).first;
          ent.emplace_back(it->second, col, static_cast<double>(cg_coefficient(i, t, M, q).value().value()));
        }
      ++col;
    }
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows.size()), col);
  for (auto [a, b, v] : ent) A(a, b) = v;
  return A;
}
}  // namespace

TEST_CASE("CG exponents") {
  for (int ell = 1; ell <= 3; ++ell) {
    for (int n = 0; n < 3; ++n)
      for (int k = 0; k < 4; ++k) {
        CHECK(cg_exponent(1, sphere_tableau(n, k, ell), Move::M(1, 1)) == k);
        if (k > 0) CHECK(cg_exponent(1, sphere_tableau(n, k, ell), Move{{ell + 1}}) == 0);
      }
    for (const auto& t : enumerate_truncation(ell, 3))
      if (apply_move_raw(Move::N(1, 0, ell), t)) CHECK(cg_exponent(ell + 1, t, Move::N(1, 0, ell)) == 0);
  }
  CHECK_THROWS_AS(cg_exponent(1, GTTableau::zero(1), Move::M(2, 1)), std::invalid_argument);
  CHECK_THROWS_AS(cg_exponent(2, GTTableau::zero(1), Move::M(1, 1)), std::invalid_argument);
}

TEST_CASE("trivial representation coefficients have magnitude one") {
  QParam q(0.5);
  for (int ell = 1; ell <= 3; ++ell)
    for (int i = 1; i <= ell + 1; ++i)
      for (const Move& M : moves_of_length(i, ell))
        if (apply_move_raw(M, GTTableau::zero(ell)))
          CHECK(std::fabs(cg_coefficient(i, GTTableau::zero(ell), M, q).value().value()) == doctest::Approx(1.0));
}

TEST_CASE("brackets reject non-interlacing rows") {
  QParam q(0.5);
  std::vector<int> a{1, 1}, b{1};
  CHECK_THROWS_AS(bracket_square(BracketKind::linking, a, b, 1, 2, q), std::invalid_argument);
}

TEST_CASE("normalization per target vector") {
  for (double qv : {0.3, 0.5, 0.8}) {
    QParam q(qv);
    for (int ell = 1; ell <= 2; ++ell)
      for (const auto& lam : young_diagrams(ell, 3)) {
        Eigen::MatrixXd A = cg_matrix(lam, q);
        for (Eigen::Index r = 0; r < A.rows(); ++r) CHECK(A.row(r).squaredNorm() == doctest::Approx(1.0).epsilon(1e-8));
      }
  }
}

TEST_CASE("rank one CG matrices are orthogonal") {
  for (double qv : {0.3, 0.5, 0.8})
    for (int n = 0; n <= 4; ++n) {
      Eigen::MatrixXd A = cg_matrix(YoungDiagram({n, 0}), QParam(qv));
      REQUIRE(A.rows() == A.cols());
      Eigen::MatrixXd I = Eigen::MatrixXd::Identity(A.rows(), A.cols());
      CHECK((A * A.transpose() - I).cwiseAbs().maxCoeff() < 1e-8);
      CHECK((A.transpose() * A - I).cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("rank one decomposition of the fundamental") {
  QParam q(0.5);
  Eigen::MatrixXd A = cg_matrix(YoungDiagram({1, 0}), q);
  CHECK(A.rows() == 4);
  CHECK(A.squaredNorm() == doctest::Approx(4.0));
}

TEST_CASE("kappa") {
  QParam q(0.5);
  GTTableau z = GTTableau::zero(1);
  GTTableau m = *apply_move_raw(Move::M(1, 1), z);
  CHECK(kappa(z, m, q).value() == doctest::Approx(0.447214).epsilon(1e-5));
  for (double qv : {0.3, 0.5, 0.8})
    for (int ell = 1; ell <= 3; ++ell)
      for (const auto& t : enumerate_truncation(ell, 4))
        for (int i = 1; i <= ell + 1; ++i)
          for (const Move& M : moves_of_length(i, ell))
            if (auto raw = apply_move_raw(M, t)) {
              double k = static_cast<double>(kappa(t, *raw, QParam(qv)).value());
              CHECK(k >= 1e-3);
              CHECK(k <= 1e3);
            }
}

TEST_CASE("q-dimension sums") {
  QParam q(0.5);
  CHECK(q_dim_sum(YoungDiagram({0, 0}), q).value() == doctest::Approx(1.0));
  CHECK(q_dim_sum(YoungDiagram({1, 0}), q).value() == doctest::Approx(2.5));
  CHECK(q_dim_sum(YoungDiagram({2, 1, 0}), q).value() ==
        doctest::Approx(weyl_q_dimension(YoungDiagram({2, 1, 0}), q).value()).epsilon(1e-10));
}
