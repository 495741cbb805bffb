#include "qsp/qarith.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qsp {

QParam::QParam(real q) : q_(q) {
  if (!(q > 0 && q < 1)) {
    throw std::domain_error("q must lie in (0,1), got " + std::to_string(static_cast<double>(q)));
  }
  log_q_ = std::log(q);
}

Scalar Scalar::from_value(real x) {
  if (x == 0) return {};
  return from_log(x > 0 ? 1 : -1, std::log(std::fabs(x)));
}

Scalar Scalar::from_log(int sign, real log_abs) {
  Scalar s;
  if (sign != 0) {
    s.sign_ = sign > 0 ? 1 : -1;
    s.log_abs_ = log_abs;
  }
  return s;
}

real Scalar::value() const {
  if (sign_ == 0) return 0;
  return sign_ * std::exp(log_abs_);
}

Scalar Scalar::operator*(const Scalar& o) const {
  if (sign_ == 0 || o.sign_ == 0) return {};
  return from_log(sign_ * o.sign_, log_abs_ + o.log_abs_);
}

Scalar Scalar::operator/(const Scalar& o) const {
  if (o.sign_ == 0) throw std::domain_error("Scalar division by zero");
  if (sign_ == 0) return {};
  return from_log(sign_ * o.sign_, log_abs_ - o.log_abs_);
}

Scalar Scalar::operator+(const Scalar& o) const {
  if (sign_ == 0) return o;
  if (o.sign_ == 0) return *this;
  const Scalar& big = log_abs_ >= o.log_abs_ ? *this : o;
  const Scalar& small = log_abs_ >= o.log_abs_ ? o : *this;
  real ratio = std::exp(small.log_abs_ - big.log_abs_);
  real f = big.sign_ == small.sign_ ? 1 + ratio : 1 - ratio;
  if (f <= 0) return {};
  return from_log(big.sign_, big.log_abs_ + std::log(f));
}

Scalar Scalar::sqrt_abs() const {
  if (sign_ == 0) return {};
  return from_log(1, log_abs_ / 2);
}

Scalar Scalar::pow(real e) const {
  if (sign_ == 0) {
    if (e == 0) return one();
    return {};
  }
  if (sign_ < 0) {
    real r = std::round(e);
    if (r != e) throw std::domain_error("non-integer power of a negative Scalar");
    int s = (static_cast<long long>(r) % 2 == 0) ? 1 : -1;
    return from_log(s, log_abs_ * e);
  }
  return from_log(1, log_abs_ * e);
}

Scalar q_pow(real e, QParam q) { return Scalar::from_log(1, e * q.log()); }

Scalar q_int(std::int64_t n, QParam q) {
  if (n == 0) return {};
  if (n < 0) return -q_int(-n, q);
  // [n] = q^{-(n-1)} (1 - q^{2n}) / (1 - q^2)
  real lq = q.log();
  real nn = static_cast<real>(n);
  real l = -(nn - 1) * lq + std::log1p(-std::exp(2 * nn * lq)) - std::log1p(-std::exp(2 * lq));
  return Scalar::from_log(1, l);
}

Scalar q_binom(std::int64_t n, std::int64_t r, QParam q) {
  if (r < 0 || r > n) {
    throw std::invalid_argument("q_binom: need 0 <= r <= n");
  }
  Scalar v = Scalar::one();
  for (std::int64_t k = 0; k < r; ++k) v = v * q_int(n - k, q) / q_int(k + 1, q);
  return v;
}

Scalar log_sum(const std::vector<Scalar>& xs) {
  real top = -std::numeric_limits<real>::infinity();
  for (const auto& x : xs)
    if (!x.is_zero()) top = std::max(top, x.log_abs());
  if (!std::isfinite(top)) return {};
  real acc = 0;
  for (const auto& x : xs)
    if (!x.is_zero()) acc += x.sign() * std::exp(x.log_abs() - top);
  if (acc == 0) return {};
  return Scalar::from_log(acc > 0 ? 1 : -1, top + std::log(std::fabs(acc)));
}

}  // namespace qsp
