#include "qsp/cgc.hpp"

#include <stdexcept>

namespace qsp {

namespace {

int v_entry(const GTTableau& r, int a, int b) { return r(a, b) - r(a + 1, b); }
int h_entry(const GTTableau& r, int a, int b) { return r(a + 1, b) - r(a, b + 1); }

void require_valid(int i, const GTTableau& r, const Move& M) {
  if (M.size() != i || i < 1 || i > r.ell + 1) throw std::invalid_argument("move length must equal i, 1 <= i <= l+1");
  if (!apply_move_raw(M, r)) throw std::invalid_argument("move does not produce a valid tableau");
}

}  // namespace

int cg_exponent(int i, const GTTableau& r, const Move& M) {
  require_valid(i, r, M);
  const int ell = r.ell;
  int c = 0;
  for (int a = 1; a < i; ++a) {
    int ma = M[a], mb = M[a + 1];
    for (int b = std::min(ma, mb); b < std::max(ma, mb); ++b) c += h_entry(r, a, b);
    for (int b = mb + 1; b < ma; ++b) c += 2 * v_entry(r, a, b);
  }
  for (int b = M[i]; b < ell + 2 - i; ++b) c += h_entry(r, i, b);
  return c;
}

Scalar bracket_square(BracketKind kind, std::span<const int> ra, std::span<const int> rb, int j, int k, QParam q) {
  const int L = static_cast<int>(ra.size());
  if (static_cast<int>(rb.size()) != L - 1) throw std::invalid_argument("bracket rows must have lengths L and L-1");
  auto A = [&](int i) { return ra[static_cast<std::size_t>(i - 1)]; };
  auto B = [&](int i) { return rb[static_cast<std::size_t>(i - 1)]; };
  auto ratio = [&](Scalar& v, int num, int den) {
    if (den == 0) throw std::invalid_argument("bracket denominator [0]_q: rows do not interlace");
    v = v * q_int(num, q) / q_int(den, q);
  };
  if (j < 1 || j > L) throw std::invalid_argument("bracket index j out of range");
  if (kind == BracketKind::linking) {
    if (k < 1 || k > L - 1) throw std::invalid_argument("bracket index k out of range");
    Scalar v = q_pow(-A(j) + B(k) - k + j, q);
    for (int i = 1; i <= L; ++i)
      if (i != j) ratio(v, A(i) - B(k) - i + k, A(i) - A(j) - i + j);
    for (int i = 1; i <= L - 1; ++i)
      if (i != k) ratio(v, B(i) - A(j) - i + j - 1, B(i) - B(k) - i + k - 1);
    return v;
  }
  long long e = 1 - j;
  for (int i = 1; i <= L - 1; ++i) e += B(i);
  for (int i = 1; i <= L; ++i)
    if (i != j) e -= A(i);
  Scalar v = q_pow(static_cast<real>(e), q);
  for (int i = 1; i <= L - 1; ++i) v = v * q_int(B(i) - A(j) - i + j - 1, q);
  for (int i = 1; i <= L; ++i) {
    if (i == j) continue;
    int den = A(i) - A(j) - i + j;
    if (den == 0) throw std::invalid_argument("bracket denominator [0]_q: rows do not interlace");
    v = v / q_int(den, q);
  }
  return v;
}

int bracket_sign(BracketKind kind, int j, int k) {
  if (kind == BracketKind::terminal) return 1;
  return j > k ? -1 : 1;
}

CGValue cg_coefficient(int i, const GTTableau& r, const Move& M, QParam q) {
  CGValue out;
  out.exponent = cg_exponent(i, r, M);
  Scalar mag = Scalar::one();
  int sign = 1;
  for (int a = 1; a < i; ++a) {
    Scalar s = bracket_square(BracketKind::linking, r.row(a), r.row(a + 1), M[a], M[a + 1], q);
    mag = mag * s.sqrt_abs();
    sign *= bracket_sign(BracketKind::linking, M[a], M[a + 1]);
  }
  std::span<const int> below;
  if (i <= r.ell) below = r.row(i + 1);
  Scalar s = bracket_square(BracketKind::terminal, r.row(i), below, M[i], 0, q);
  mag = mag * s.sqrt_abs();
  out.magnitude = mag;
  out.sign = mag.is_zero() ? 1 : sign;
  out.prefactor = mag.is_zero() ? Scalar::zero() : mag / q_pow(out.exponent, q);
  return out;
}

Scalar kappa(const GTTableau& r, const GTTableau& m, QParam q) {
  Scalar dl = weyl_q_dimension(r.top(), q);
  Scalar dm = weyl_q_dimension(m.top().canonical(), q);
  real dpsi = static_cast<real>(psi_twice(r) - psi_twice(m)) / 2;
  return (dl / dm).sqrt_abs() * q_pow(dpsi, q);
}

Scalar q_dim_sum(const YoungDiagram& lambda, QParam q) {
  std::vector<Scalar> terms;
  for (const auto& t : enumerate_tableaux(lambda)) terms.push_back(q_pow(static_cast<real>(psi_twice(t)), q));
  return log_sum(terms);
}

}  // namespace qsp
