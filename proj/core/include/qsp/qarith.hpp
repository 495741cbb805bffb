#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qsp {

#ifdef QSP_EXTENDED_PRECISION
using real = long double;
#else
using real = double;
#endif

/// Deformation parameter, 0 < q < 1.
class QParam {
 public:
  explicit QParam(real q);
  real value() const { return q_; }
  real log() const { return log_q_; }

 private:
  real q_;
  real log_q_;
};

/// Real number stored as sign and log|x|.
class Scalar {
 public:
  Scalar() = default;

  static Scalar zero() { return {}; }
  static Scalar one() { return from_log(1, 0); }
  static Scalar from_value(real x);
  static Scalar from_log(int sign, real log_abs);

  int sign() const { return sign_; }
  real log_abs() const { return log_abs_; }
  bool is_zero() const { return sign_ == 0; }
  real value() const;

  Scalar operator-() const { return from_log(-sign_, log_abs_); }
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const { return *this + (-o); }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }

  Scalar abs() const { return from_log(sign_ == 0 ? 0 : 1, log_abs_); }
  /// Square root of |x|, sign dropped.
  Scalar sqrt_abs() const;
  Scalar pow(real e) const;

 private:
  int sign_ = 0;
  real log_abs_ = 0;
};

/// q^e.
Scalar q_pow(real e, QParam q);

/// [n]_q = (q^n - q^{-n}) / (q - q^{-1}).
Scalar q_int(std::int64_t n, QParam q);

/// Gaussian binomial via the ratio product [n-k]/[k+1].
Scalar q_binom(std::int64_t n, std::int64_t r, QParam q);

/// Sum of scalars with the largest exponent factored out.
Scalar log_sum(const std::vector<Scalar>& xs);

}  // namespace qsp
