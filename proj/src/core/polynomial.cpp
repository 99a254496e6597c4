#include "polynomial.hpp"

namespace monodyn {

namespace {

// Dense rational polynomial, ascending coefficients, used only for the
// gcd ladder in Yun's algorithm. Degrees here are tiny (matrix dimension).
using RatPoly = std::vector<Rat>;

void trim(RatPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int deg(const RatPoly& p) { return static_cast<int>(p.size()) - 1; }

RatPoly from_int(const IntPolynomial& p) {
  RatPoly r(p.coeffs.size());
  for (size_t i = 0; i < p.coeffs.size(); ++i) r[i] = Rat(p.coeffs[i]);
  return r;
}

RatPoly derivative(const RatPoly& p) {
  RatPoly d;
  for (size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * Rat(Int(k)));
  return d;
}

void make_monic(RatPoly& p) {
  trim(p);
  if (p.empty()) return;
  Rat lead = p.back();
  for (auto& c : p) c /= lead;
}

// Euclidean remainder of a by b, b nonzero.
RatPoly rem(RatPoly a, const RatPoly& b) {
  trim(a);
  while (deg(a) >= deg(b)) {
    Rat q = a.back() / b.back();
    int shift = deg(a) - deg(b);
    for (int i = 0; i <= deg(b); ++i) a[i + shift] -= q * b[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

// Exact quotient; remainder must vanish.
RatPoly quotient_exact(RatPoly a, const RatPoly& b) {
  trim(a);
  RatPoly q(std::max(0, deg(a) - deg(b) + 1));
  while (deg(a) >= deg(b)) {
    Rat c = a.back() / b.back();
    int shift = deg(a) - deg(b);
    q[shift] = c;
    for (int i = 0; i <= deg(b); ++i) a[i + shift] -= c * b[i];
    a.pop_back();
    trim(a);
  }
  if (!a.empty()) fail(ErrorKind::Internal, "polynomial division left a remainder");
  return q;
}

RatPoly sub(const RatPoly& a, const RatPoly& b) {
  RatPoly r = a;
  if (b.size() > r.size()) r.resize(b.size());
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

// Monic gcd by the Euclidean algorithm.
RatPoly gcd(RatPoly a, RatPoly b) {
  make_monic(a);
  make_monic(b);
  while (!b.empty()) {
    RatPoly r = rem(a, b);
    make_monic(r);
    a = std::move(b);
    b = std::move(r);
  }
  if (a.empty()) a = {Rat(1)};
  return a;
}

// Monic rational factors of a monic integer polynomial have integer
// coefficients (Gauss), so denominators must clear.
IntPolynomial to_int(const RatPoly& p) {
  IntPolynomial r;
  r.coeffs.resize(p.size());
  for (size_t i = 0; i < p.size(); ++i) {
    if (denominator(p[i]) != 1) fail(ErrorKind::Internal, "square-free factor is not integral");
    r.coeffs[i] = numerator(p[i]);
  }
  return r;
}

}  // namespace

std::vector<std::pair<IntPolynomial, int>> squarefree_factors(const IntPolynomial& p) {
  if (!p.monic()) fail(ErrorKind::Invalid, "squarefree_factors requires a monic polynomial");
  std::vector<std::pair<IntPolynomial, int>> out;
  if (p.degree() < 1) return out;

  RatPoly f = from_int(p);
  RatPoly df = derivative(f);
  RatPoly g = gcd(f, df);
  if (deg(g) == 0) {
    out.emplace_back(p, 1);
    return out;
  }
  // Yun's algorithm.
  RatPoly v = quotient_exact(f, g);
  RatPoly w = quotient_exact(df, g);
  int mult = 1;
  while (deg(v) > 0) {
    RatPoly z = sub(w, derivative(v));
    RatPoly h = gcd(v, z);
    if (deg(h) > 0) out.emplace_back(to_int(h), mult);
    v = quotient_exact(v, h);
    w = quotient_exact(z, h);
    ++mult;
  }
  return out;
}

}  // namespace monodyn
