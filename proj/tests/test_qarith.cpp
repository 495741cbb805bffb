#include <doctest.h>

#include <cmath>

#include "qsp/qarith.hpp"
#include "qsp/young.hpp"

using namespace qsp;

TEST_CASE("QParam rejects the closed endpoints") {
  CHECK_THROWS_AS(QParam(0.0), std::domain_error);
  CHECK_THROWS_AS(QParam(1.0), std::domain_error);
  CHECK_THROWS_AS(QParam(-0.2), std::domain_error);
  CHECK_NOTHROW(QParam(0.5));
}

TEST_CASE("Scalar arithmetic in log form") {
  Scalar a = Scalar::from_value(-3.0), b = Scalar::from_value(2.0);
  CHECK((a * b).value() == doctest::Approx(-6.0));
  CHECK((a / b).value() == doctest::Approx(-1.5));
  CHECK((a + b).value() == doctest::Approx(-1.0));
  CHECK((a - b).value() == doctest::Approx(-5.0));
  CHECK((b - b).is_zero());
  CHECK(Scalar::from_value(9.0).sqrt_abs().value() == doctest::Approx(3.0));
  CHECK(Scalar::from_value(2.0).pow(10).value() == doctest::Approx(1024.0));
  CHECK(Scalar::zero().value() == 0.0);
}

TEST_CASE("Scalar survives magnitudes beyond double range") {
  QParam q(0.01);
  Scalar big = q_pow(-400, q);
  Scalar small = q_pow(400, q);
  CHECK(std::isinf(static_cast<double>(big.value())));
  CHECK(static_cast<double>((big * small).value()) == doctest::Approx(1.0));
}

TEST_CASE("q-integers") {
  QParam q(0.5);
  CHECK(q_int(0, q).is_zero());
  CHECK(q_int(1, q).value() == doctest::Approx(1.0));
  CHECK(q_int(3, q).value() == doctest::Approx(5.25));
  CHECK(q_int(-3, q).value() == doctest::Approx(-5.25));
  for (double qv : {0.1, 0.3, 0.7, 0.95})
    for (int n = 1; n < 30; ++n) {
      QParam p(qv);
      double direct = (std::pow(qv, n) - std::pow(qv, -n)) / (qv - 1 / qv);
      CHECK(q_int(n, p).value() == doctest::Approx(direct).epsilon(1e-12));
    }
}

TEST_CASE("q-binomials") {
  QParam q(0.5);
  CHECK(q_binom(4, 2, q).value() == doctest::Approx(22.3125));
  CHECK(q_binom(2, 1, q).value() == doctest::Approx(q_int(2, q).value()));
  for (int n = 0; n < 8; ++n) CHECK(q_binom(n, 0, q).value() == doctest::Approx(1.0));
  CHECK_THROWS_AS(q_binom(3, 4, q), std::invalid_argument);
  CHECK_THROWS_AS(q_binom(3, -1, q), std::invalid_argument);
}

TEST_CASE("q-binomial Pascal identity") {
  QParam q(0.37);
  const double qv = 0.37;
  for (int n = 1; n < 12; ++n)
    for (int r = 1; r < n; ++r) {
      double lhs = static_cast<double>(q_binom(n, r, q).value());
      double rhs = std::pow(qv, -r) * static_cast<double>(q_binom(n - 1, r, q).value()) +
                   std::pow(qv, n - r) * static_cast<double>(q_binom(n - 1, r - 1, q).value());
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("log_sum matches a plain sum") {
  std::vector<Scalar> xs{Scalar::from_value(1e-3), Scalar::from_value(2.5), Scalar::from_value(-0.5)};
  CHECK(log_sum(xs).value() == doctest::Approx(2.001));
  CHECK(log_sum({}).is_zero());
}

TEST_CASE("Weyl dimensions") {
  QParam q(0.5);
  CHECK(weyl_dimension(YoungDiagram({0, 0})) == 1);
  CHECK(weyl_dimension(YoungDiagram({2, 1, 0})) == 8);
  CHECK(weyl_dimension(YoungDiagram({3, 0, 0})) == 10);
  CHECK(weyl_q_dimension(YoungDiagram({0, 0, 0}), q).value() == doctest::Approx(1.0));
  CHECK(weyl_q_dimension(YoungDiagram({1, 0}), q).value() == doctest::Approx(2.5));
  CHECK(weyl_q_dimension(YoungDiagram({1, 0, 0}), q).value() == doctest::Approx(5.25));
  CHECK_THROWS(YoungDiagram({0, 1}));
}

TEST_CASE("q-dimension tends to the classical dimension") {
  for (const auto& lam : young_diagrams(2, 4)) {
    double d = static_cast<double>(weyl_q_dimension(lam, QParam(0.999999)).value());
    CHECK(d == doctest::Approx(static_cast<double>(weyl_dimension(lam))).epsilon(1e-6));
  }
}
