#include "rootfinding.hpp"

#include <boost/math/constants/constants.hpp>

#include <algorithm>

namespace monodyn {

namespace {

constexpr int kMaxIterations = 600;

struct RealPoly {
  std::vector<Real> c;  // ascending

  ComplexReal eval(const ComplexReal& x) const {
    ComplexReal acc;
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
      acc = acc * x;
      acc.re += *it;
    }
    return acc;
  }

  // Sum of |c_i| * r^i, used to bound evaluation noise.
  Real mag(const Real& r) const {
    Real acc(0);
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * r + boost::multiprecision::abs(*it);
    return acc;
  }
};

// Aberth-Ehrlich iteration on a square-free monic polynomial. Returns the
// approximations and a radius such that every root lies in the union of
// the disks D(w_j, radius) (Weierstrass correction disks, inflated by the
// floating-point evaluation noise).
std::vector<PolynomialRoot> aberth(const IntPolynomial& poly, unsigned bits) {
  const int n = poly.degree();
  RealPoly p, dp;
  p.c.reserve(poly.coeffs.size());
  for (const auto& c : poly.coeffs) p.c.push_back(Real(c));
  {
    IntPolynomial d = poly.derivative();
    for (const auto& c : d.coeffs) dp.c.push_back(Real(c));
  }

  // Cauchy bound: all roots have modulus < 1 + max |c_i| (monic).
  Real cauchy(1);
  for (int i = 0; i < n; ++i) cauchy = std::max(cauchy, Real(abs(p.c[i])));
  cauchy += 1;

  const Real scale = std::max(Real(1), cauchy);
  const Real target = pow2(-(static_cast<long>(bits) - 12)) * scale;
  const Real eval_noise_unit = pow2(-static_cast<long>(bits)) * Real(2 * n + 4);

  // Deterministic start: the Cauchy circle with an angular offset so real
  // axis symmetry cannot lock the iteration.
  std::vector<ComplexReal> w(n);
  const Real two_pi = 2 * boost::math::constants::pi<Real>();
  for (int j = 0; j < n; ++j) {
    Real theta = two_pi * Real(j) / Real(n) + Real(2) / Real(5);
    w[j] = ComplexReal(cauchy * cos(theta), cauchy * sin(theta));
  }

  std::vector<ComplexReal> pw(n);
  std::vector<Real> wradius(n);
  for (int iter = 0; iter < kMaxIterations; ++iter) {
    bool done = true;
    for (int j = 0; j < n; ++j) {
      pw[j] = p.eval(w[j]);
      // prod over k != j of (w_j - w_k), and the Aberth sum of inverses
      ComplexReal prod(Real(1), Real(0));
      ComplexReal sum_inv;
      for (int k = 0; k < n; ++k) {
        if (k == j) continue;
        ComplexReal diff = w[j] - w[k];
        if (diff.is_zero()) diff.re = target;  // collision guard
        prod = prod * diff;
        sum_inv = sum_inv + ComplexReal(Real(1), Real(0)) / diff;
      }
      ComplexReal weier = pw[j] / prod;
      Real noise = eval_noise_unit * p.mag(w[j].abs()) / prod.abs();
      wradius[j] = Real(n) * (weier.abs() + noise);
      if (wradius[j] > target) done = false;
    }
    if (done) break;
    if (iter + 1 == kMaxIterations)
      fail(ErrorKind::Precision,
           "root refinement did not reach the residual target; raise the precision");
    for (int j = 0; j < n; ++j) {
      ComplexReal dpw = dp.eval(w[j]);
      ComplexReal newton = dpw.is_zero() ? ComplexReal(target, Real(0)) : pw[j] / dpw;
      ComplexReal sum_inv;
      for (int k = 0; k < n; ++k) {
        if (k == j) continue;
        ComplexReal diff = w[j] - w[k];
        if (diff.is_zero()) diff.re = target;
        sum_inv = sum_inv + ComplexReal(Real(1), Real(0)) / diff;
      }
      ComplexReal denom = ComplexReal(Real(1), Real(0)) - newton * sum_inv;
      ComplexReal correction = denom.is_zero() ? newton : newton / denom;
      w[j] = w[j] - correction;
    }
  }

  Real radius(0);
  for (int j = 0; j < n; ++j) radius = std::max(radius, wradius[j]);
  std::vector<PolynomialRoot> roots(n);
  for (int j = 0; j < n; ++j) roots[j] = PolynomialRoot{w[j], 1, radius};
  return roots;
}

}  // namespace

std::vector<PolynomialRoot> polynomial_roots(const IntPolynomial& p, unsigned bits) {
  if (!p.monic()) fail(ErrorKind::Invalid, "polynomial_roots requires a monic polynomial");
  PrecisionGuard guard(bits);
  const Real ulp = pow2(-(static_cast<long>(bits) - 3));

  std::vector<PolynomialRoot> out;

  // Split off roots at the origin exactly.
  IntPolynomial q = p;
  int zero_mult = 0;
  while (!q.coeffs.empty() && q.coeffs.front() == 0) {
    q.coeffs.erase(q.coeffs.begin());
    ++zero_mult;
  }
  if (zero_mult > 0) out.push_back(PolynomialRoot{ComplexReal(), zero_mult, Real(0)});
  if (q.degree() < 1) return out;

  for (const auto& [factor, mult] : squarefree_factors(q)) {
    if (factor.degree() == 1) {
      // t + c0: the root is an exact integer; only its Real image rounds.
      Real root = -Real(factor.coeffs[0]);
      Real radius = ulp * (1 + boost::multiprecision::abs(root));
      out.push_back(PolynomialRoot{ComplexReal(root, Real(0)), mult, radius});
      continue;
    }
    for (auto root : aberth(factor, bits)) {
      root.multiplicity = mult;
      root.radius += ulp * (1 + root.value.abs());
      out.push_back(root);
    }
  }
  return out;
}

EigenModuli eigen_moduli(const IntMatrix& a, unsigned bits) {
  if (bits < 53) fail(ErrorKind::Invalid, "precision must be at least 53 bits");
  PrecisionGuard guard(bits);
  EigenModuli em;
  em.source_poly = char_poly(a);
  em.error_radius = Real(0);
  for (const auto& root : polynomial_roots(em.source_poly, bits)) {
    Real m = root.value.abs();
    for (int i = 0; i < root.multiplicity; ++i) em.moduli.push_back(m);
    em.error_radius = std::max(em.error_radius, root.radius);
  }
  std::sort(em.moduli.begin(), em.moduli.end(), std::greater<Real>());
  return em;
}

}  // namespace monodyn
