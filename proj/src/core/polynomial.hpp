// Integer polynomials (ascending coefficients) and square-free factorization.
#pragma once

#include <utility>
#include <vector>

#include "numeric.hpp"

namespace monodyn {

// Polynomial with arbitrary-precision integer coefficients, c[k] is the
// coefficient of t^k. Normalized so the leading coefficient is nonzero
// (the zero polynomial is the empty vector).
struct IntPolynomial {
  std::vector<Int> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  bool monic() const { return !coeffs.empty() && coeffs.back() == 1; }

  template <typename T>
  T eval(const T& x) const {
    T acc(0);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + T(*it);
    return acc;
  }

  IntPolynomial derivative() const {
    IntPolynomial d;
    for (size_t k = 1; k < coeffs.size(); ++k) d.coeffs.push_back(coeffs[k] * Int(k));
    return d;
  }

  bool operator==(const IntPolynomial& o) const { return coeffs == o.coeffs; }
};

// Yun square-free decomposition of a monic integer polynomial:
// p = prod factor^multiplicity with each factor monic, square-free and
// with integer coefficients, pairwise coprime. Factors of degree 0 are
// dropped. Requires p monic.
std::vector<std::pair<IntPolynomial, int>> squarefree_factors(const IntPolynomial& p);

}  // namespace monodyn
