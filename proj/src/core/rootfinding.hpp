// Eigenvalue moduli of integer matrices via simultaneous (Aberth-Ehrlich)
// refinement of the roots of the characteristic polynomial.
#pragma once

#include <vector>

#include "intmatrix.hpp"
#include "numeric.hpp"
#include "polynomial.hpp"

namespace monodyn {

struct ComplexReal {
  Real re, im;

  ComplexReal() : re(0), im(0) {}
  ComplexReal(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

  ComplexReal operator+(const ComplexReal& o) const { return {re + o.re, im + o.im}; }
  ComplexReal operator-(const ComplexReal& o) const { return {re - o.re, im - o.im}; }
  ComplexReal operator*(const ComplexReal& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  ComplexReal operator/(const ComplexReal& o) const {
    Real d = o.re * o.re + o.im * o.im;
    return {(re * o.re + im * o.im) / d, (im * o.re - re * o.im) / d};
  }
  Real abs2() const { return re * re + im * im; }
  Real abs() const { return sqrt(abs2()); }
  bool is_zero() const { return re == 0 && im == 0; }
};

struct PolynomialRoot {
  ComplexReal value;
  int multiplicity;
  Real radius;  // every true root of the square-free factor lies within
                // `radius` of some approximation (Weierstrass disks)
};

// All complex roots of a monic integer polynomial, with multiplicities,
// computed at `bits` working precision. Multiple roots are split off
// exactly by square-free factorization first, so the iteration only ever
// sees simple roots. Throws an Error of kind Precision if refinement does
// not reach the residual target within the iteration cap.
std::vector<PolynomialRoot> polynomial_roots(const IntPolynomial& p, unsigned bits);

struct EigenModuli {
  std::vector<Real> moduli;  // length n, sorted non-increasing
  Real error_radius;         // every modulus is within this of the truth
  IntPolynomial source_poly;
};

EigenModuli eigen_moduli(const IntMatrix& a, unsigned bits);

}  // namespace monodyn
