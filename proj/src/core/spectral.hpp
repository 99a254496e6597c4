// Dynamical degrees and arithmetic-degree candidates of a monomial
// correspondence (M, N), computed from the eigenvalue moduli of the single
// integer matrix P = N * adjugate(M).
#pragma once

#include <vector>

#include "intmatrix.hpp"
#include "rootfinding.hpp"

namespace monodyn {

struct DynDegReport {
  int n = 0;
  std::vector<Real> lambda;  // lambda[0..n]; lambda[0] == |det M| exactly
  Real error_radius;         // uniform bound for the computed entries
  Int det_m, det_n;
  EigenModuli p_moduli;  // moduli of P = N * adjugate(M)
};

// lambda_k = |det M| * |rho_1| * ... * |rho_k| with rho_i the eigenvalues of
// N * M^{-1}; computed as the product of the k largest moduli of P divided
// by |det M|^{k-1}. Rejects singular M or N.
DynDegReport dynamical_degrees(const IntMatrix& m, const IntMatrix& n, unsigned bits);

struct CandidateSet {
  std::vector<Real> values;  // ascending, deduplicated; always contains 1
  Real merge_radius;
};

// {1} union {|det(M) * rho_i|} = {1} union {moduli of P}.
CandidateSet arithmetic_degree_candidates(const IntMatrix& m, const IntMatrix& n, unsigned bits);

enum class Strictness { Strict, NotStrict, Indeterminate };

struct LogConcavityResult {
  Strictness verdict = Strictness::Indeterminate;
  Real ratio;   // lambda_{l-1} * lambda_{l+1} / lambda_l^2 (< 1 when strict)
  Real margin;  // gap minus the accumulated error bound
};

// Tests lambda_l^2 > lambda_{l-1} * lambda_{l+1} with margin beyond the
// numerical error. Indeterminate means the gap is inside the error band
// (callers typically retry at doubled precision). Requires 1 <= l <= n-1.
LogConcavityResult log_concavity_strict(const DynDegReport& report, int l);

// Precision ladder for resolving Indeterminate results: doubles up to 1024.
inline unsigned next_precision(unsigned bits) { return bits >= 1024 ? 0 : std::min(bits * 2, 1024u); }

}  // namespace monodyn
