// Projective degrees of monomial maps via Newton-polytope mixed volumes,
// degree tables of monomial correspondences through the reduction matrix
// P = N * adjugate(M), and the degree-growth asymptotics estimator.
#pragma once

#include <vector>

#include "intmatrix.hpp"
#include "polytope.hpp"
#include "spectral.hpp"

namespace monodyn {

// Dominant monomial self-map of the n-torus; row i of the matrix is the
// exponent vector of output coordinate i.
struct MonomialMap {
  IntMatrix a;

  explicit MonomialMap(IntMatrix matrix) : a(std::move(matrix)) {
    if (det(a) == 0) fail(ErrorKind::Singular, "monomial map matrix must be nonsingular");
  }
};

struct MonomialCorrespondence {
  IntMatrix m, n;

  MonomialCorrespondence(IntMatrix m_in, IntMatrix n_in) : m(std::move(m_in)), n(std::move(n_in)) {
    if (m.dim() != n.dim()) fail(ErrorKind::Dimension, "M and N must have equal dimension");
    if (det(m) == 0) fail(ErrorKind::Singular, "M is singular");
    if (det(n) == 0) fail(ErrorKind::Singular, "N is singular");
  }

  int dim() const { return m.dim(); }
};

// Hull of the origin and the rows of the matrix.
LatticePolytope newton_polytope(const IntMatrix& a);

// deg_k of the monomial map on projective n-space with the hyperplane
// class: n! * MV(Delta x (n-k), Q_A x k). Requires det != 0 and n <= 5.
Int map_degree(const IntMatrix& a, int k);

// Independent deg_1 cross-check by homogenization: translate columns to
// make all exponents nonnegative, then take the maximal translated
// exponent-row sum over {0} union rows(A).
Int map_degree_oracle_deg1(const IntMatrix& a);

// P = sign(det M) * N * adjugate(M); satisfies P*M == |det M|*N. The sign
// keeps the companion scalar map a coordinatewise power by a positive
// exponent; the eigenvalue moduli of P are unaffected by it.
IntMatrix reduction_matrix(const MonomialCorrespondence& f);

// deg_k(f^p) = map_degree(P^p, k) / |det M|^{p(k-1)}, always an integer.
// A non-integral quotient is an internal-consistency failure.
Int corr_degree(const MonomialCorrespondence& f, int k, unsigned p);

struct DegreeTable {
  int n = 0;
  unsigned p_max = 0;
  Int det_m, det_n;
  std::vector<std::vector<Int>> entries;  // entries[k][p-1] = deg_k(f^p)

  const Int& deg(int k, unsigned p) const { return entries[k][p - 1]; }
};

DegreeTable degree_table(const MonomialCorrespondence& f, unsigned p_max);

enum class AsymptoticsVerdict { Converged, NotStrict, InsufficientP };

struct AsymptoticsReport {
  int l = 0;
  Real lambda_l;
  std::vector<Real> c_estimates;  // C_p = deg_l(f^p) / lambda_l^p
  Real c_final;
  Real q_theory;    // lambda_{l-1} * lambda_{l+1} / lambda_l^2
  Real q_measured;  // fitted decay rate of |C_p - C_{p-1}| (0 when exact)
  int r_fit = 0;    // polynomial factor p^r chosen by the fit
  unsigned burn_in = 1;  // |C_p - C_final| is non-increasing for p >= burn_in
  AsymptoticsVerdict verdict = AsymptoticsVerdict::InsufficientP;
  unsigned bits_used = 0;
};

// Fits deg_l(f^p) = C * lambda_l^p + O(p^r q^p). Precision is escalated
// (doubling to 1024 bits) while the strict log-concavity test at l is
// indeterminate; a genuine tie reports NotStrict.
AsymptoticsReport asymptotics_report(const MonomialCorrespondence& f, int l, unsigned p_max,
                                     unsigned bits);

// dynamical_degrees with the same precision ladder, retrying when root
// refinement signals ill-conditioning. Reports the precision that held.
DynDegReport dynamical_degrees_auto(const IntMatrix& m, const IntMatrix& n, unsigned bits,
                                    unsigned* bits_used = nullptr);

}  // namespace monodyn
