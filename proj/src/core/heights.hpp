// Weil heights of Kummer-torsion torus points, 0-cycles, preimage
// enumeration through the Smith normal form, and orbit height growth of
// monomial correspondences (Weil heights over Q with radical extensions).
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "degrees.hpp"
#include "intmatrix.hpp"
#include "spectral.hpp"

namespace monodyn {

// Torus point with coordinates x_i = e^{2*pi*i*t_i} * prod_q q^{e_iq}:
// a finite list of distinct primes, an n x #primes matrix of rational
// exponents (fractional exponents denote the positive real root), and a
// torsion vector t in [0,1)^n (t_i = 1/2 encodes a sign). No coordinate
// is ever 0, so the point lies in the torus.
struct MonomialPoint {
  std::vector<Int> primes;                  // sorted, distinct
  std::vector<std::vector<Rat>> exponents;  // n rows, one column per prime
  std::vector<Rat> torsion;                 // n entries in [0, 1)

  int dim() const { return static_cast<int>(torsion.size()); }
  bool is_torsion() const;  // all exponents zero (all coordinates roots of unity)

  // Drops all-zero prime columns, sorts primes, reduces torsion mod 1.
  void canonicalize();

  bool operator==(const MonomialPoint& o) const = default;
  auto operator<=>(const MonomialPoint& o) const = default;
};

struct ZeroCycle {
  std::vector<std::pair<Int, MonomialPoint>> terms;  // (multiplicity, point), points sorted

  Int total_multiplicity() const;
};

// Exact factored representation of a rational point of the torus.
// Factoring is trial division then Pollard rho; `rho_rounds` bounds the
// splitting effort, and a stuck split raises a Limit error suggesting
// smaller inputs.
MonomialPoint factor_point(const std::vector<Rat>& coords, unsigned rho_rounds = 64);

// Place-sum Weil height for the embedding x -> [1 : x_1 : ... : x_n]:
// h = sum_q log(q) * max(0, max_i(-e_iq)) + max(0, max_i sum_q e_iq log q).
// Torsion never contributes. Exponent arithmetic is exact; only the final
// logarithms are evaluated, at `bits` precision.
Real weil_height(const MonomialPoint& x, unsigned bits);

// For rational points (integer exponents, torsion in {0, 1/2}): the
// maximum absolute value of the coprime integer homogeneous coordinates,
// so that the height is exactly log of this integer. nullopt otherwise.
std::optional<Int> weil_height_exact(const MonomialPoint& x);

// phi(B): exponent matrix -> B * exponents, torsion -> B * torsion mod 1.
MonomialPoint monomial_image(const IntMatrix& b, const MonomialPoint& x);

// All |det M| preimages of x under phi(M), each with multiplicity 1.
// Exponents solve M * F = E exactly; the torsion sheets are enumerated
// through U*M*V = D, taking d_i-th roots on the diagonal (positive real
// root convention, torsion separate).
ZeroCycle preimage_cycle(const IntMatrix& m, const MonomialPoint& x);

// Pushforward by phi(N) of preimage_cycle(M, x); equal image points merge
// by summing multiplicities. Total multiplicity is |det M|.
ZeroCycle corr_image_cycle(const MonomialCorrespondence& f, const MonomialPoint& x);

Real cycle_height(const ZeroCycle& c, unsigned bits);

struct HeightSeries {
  std::vector<Real> values;  // h_1 .. h_pmax
  Real alpha;
  std::optional<Real> matched_candidate;
  bool torsion_orbit = false;
  std::vector<Real> candidates;
  unsigned bits_used = 0;
};

// h_p = h(phi(P^p)(x)) through the reduction matrix; cheap for large p.
HeightSeries orbit_heights_fast(const MonomialCorrespondence& f, const MonomialPoint& x,
                                unsigned p_max, unsigned bits);

// h_p by p-fold cycle composition (every point of the previous cycle is
// pushed through the correspondence). Must match orbit_heights_fast up to
// log rounding. Cycle size grows as |det M|^p; guarded by `cycle_cap`.
HeightSeries orbit_heights_bruteforce(const MonomialCorrespondence& f, const MonomialPoint& x,
                                      unsigned p_max, unsigned bits, size_t cycle_cap = 4096);

// Point input: JSON array of rational strings, or text with entries
// separated by whitespace/commas; each entry is "a" or "a/b".
std::vector<Rat> parse_point(const std::string& text);

}  // namespace monodyn
