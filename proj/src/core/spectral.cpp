#include "spectral.hpp"

#include <algorithm>

namespace monodyn {

DynDegReport dynamical_degrees(const IntMatrix& m, const IntMatrix& n, unsigned bits) {
  if (m.dim() != n.dim()) fail(ErrorKind::Dimension, "M and N must have equal dimension");
  Int det_m = det(m), det_n = det(n);
  if (det_m == 0) fail(ErrorKind::Singular, "M is singular");
  if (det_n == 0) fail(ErrorKind::Singular, "N is singular");

  PrecisionGuard guard(bits);
  DynDegReport report;
  report.n = m.dim();
  report.det_m = det_m;
  report.det_n = det_n;
  report.p_moduli = eigen_moduli(n * adjugate(m), bits);

  const Real abs_det_m = Real(Int(abs(det_m)));
  const Real err = report.p_moduli.error_radius;
  Real prod(1), prod_hi(1), divisor(1);
  report.lambda.push_back(abs_det_m);  // lambda_0, exact
  report.error_radius = Real(0);
  for (int k = 1; k <= report.n; ++k) {
    prod *= report.p_moduli.moduli[k - 1];
    prod_hi *= report.p_moduli.moduli[k - 1] + err;
    if (k > 1) divisor *= abs_det_m;
    report.lambda.push_back(prod / divisor);
    report.error_radius = std::max(report.error_radius, Real((prod_hi - prod) / divisor));
  }
  Real lambda_max(0);
  for (const auto& l : report.lambda) lambda_max = std::max(lambda_max, l);
  report.error_radius += pow2(-(static_cast<long>(bits) - 4)) * (1 + lambda_max);
  return report;
}

CandidateSet arithmetic_degree_candidates(const IntMatrix& m, const IntMatrix& n, unsigned bits) {
  DynDegReport report = dynamical_degrees(m, n, bits);
  PrecisionGuard guard(bits);

  CandidateSet set;
  set.merge_radius = 2 * report.p_moduli.error_radius + pow2(-(static_cast<long>(bits) / 2));

  std::vector<Real> values = report.p_moduli.moduli;
  values.push_back(Real(1));
  std::sort(values.begin(), values.end());
  for (const auto& v : values) {
    if (!set.values.empty() && v - set.values.back() <= set.merge_radius) continue;
    set.values.push_back(v);
  }
  return set;
}

LogConcavityResult log_concavity_strict(const DynDegReport& report, int l) {
  if (l < 1 || l > report.n - 1)
    fail(ErrorKind::Invalid, "log-concavity index l must satisfy 1 <= l <= n-1");
  const Real& lo = report.lambda[l - 1];
  const Real& mid = report.lambda[l];
  const Real& hi = report.lambda[l + 1];
  const Real e = report.error_radius;

  Real gap = mid * mid - lo * hi;
  Real err_bound = 2 * mid * e + (lo + hi) * e + 2 * e * e;

  LogConcavityResult res;
  res.ratio = lo * hi / (mid * mid);
  res.margin = gap - err_bound;
  if (gap > err_bound)
    res.verdict = Strictness::Strict;
  else if (gap < -err_bound)
    res.verdict = Strictness::NotStrict;
  else
    res.verdict = Strictness::Indeterminate;
  return res;
}

}  // namespace monodyn
