#pragma once

#include <span>

#include "qsp/qarith.hpp"
#include "qsp/tableaux.hpp"

namespace qsp {

/// |C| = prefactor * q^exponent, C = sign * |C|.
struct CGValue {
  Scalar magnitude;
  int exponent = 0;
  Scalar prefactor;
  int sign = 1;

  Scalar value() const { return sign < 0 ? -magnitude : magnitude; }
};

/// Exponent C(i, r, M); throws std::invalid_argument when M(r) is invalid or |M| != i.
int cg_exponent(int i, const GTTableau& r, const Move& M);

enum class BracketKind { linking, terminal };

/// Squared bracket between row a (length L) and row a+1 (length L-1), j and k 1-based.
/// For the terminal kind k is ignored.
Scalar bracket_square(BracketKind kind, std::span<const int> row_a, std::span<const int> row_a1, int j, int k,
                      QParam q);

/// Sign of a bracket factor under the calibrated convention.
int bracket_sign(BracketKind kind, int j, int k);

CGValue cg_coefficient(int i, const GTTableau& r, const Move& M, QParam q);

/// kappa(r, m) = sqrt(d_lambda / d_mu) q^{psi(r) - psi(m)}.
Scalar kappa(const GTTableau& r, const GTTableau& m, QParam q);

/// sum over tableaux with top row lambda of q^{2 psi}.
Scalar q_dim_sum(const YoungDiagram& lambda, QParam q);

}  // namespace qsp
