#include "degrees.hpp"

#include <algorithm>
#include <map>

namespace monodyn {

namespace {

constexpr int kMaxDegreeDim = 5;

// Degrees of one monomial map for all k, sharing the volumes of the
// Minkowski sums a*Delta + b*Q across k (the polarization only ever needs
// the pair (a, b), so each distinct sum is hulled once).
class ProjectiveDegrees {
 public:
  explicit ProjectiveDegrees(const IntMatrix& a)
      : n_(a.dim()), abs_det_(abs(det(a))), delta_(LatticePolytope::simplex(a.dim())) {
    if (abs_det_ == 0) fail(ErrorKind::Singular, "map degree requires a nonsingular matrix");
    q_ = newton_polytope(a);
    binom_.assign(n_ + 1, std::vector<Int>(n_ + 1, Int(0)));
    for (int i = 0; i <= n_; ++i) {
      binom_[i][0] = 1;
      for (int j = 1; j <= i; ++j)
        binom_[i][j] = binom_[i - 1][j - 1] + (j <= i - 1 ? binom_[i - 1][j] : Int(0));
    }
  }

  Int degree(int k) {
    if (k < 0 || k > n_) fail(ErrorKind::Invalid, "degree index k must satisfy 0 <= k <= n");
    if (k == 0) return 1;
    if (k == n_) return abs_det_;
    // n! * MV(Delta x (n-k), Q x k), with the polarization collapsed over
    // the two repeated bodies. The n! cancels against the 1/n! of the MV.
    Rat total(0);
    for (int a = 0; a <= n_ - k; ++a)
      for (int b = 0; b <= k; ++b) {
        if (a + b == 0) continue;
        Rat term = Rat(binom_[n_ - k][a] * binom_[k][b]) * vol(a, b);
        if ((n_ - a - b) & 1) term = -term;
        total += term;
      }
    if (denominator(total) != 1)
      fail(ErrorKind::Internal, "projective degree is not an integer");
    return numerator(total);
  }

 private:
  Rat vol(int a, int b) {
    auto key = std::make_pair(a, b);
    auto it = vols_.find(key);
    if (it != vols_.end()) return it->second;
    LatticePolytope body;
    if (a == 0)
      body = b == 1 ? q_ : q_.dilate(Int(b));
    else if (b == 0)
      body = a == 1 ? delta_ : delta_.dilate(Int(a));
    else
      body = minkowski_sum(a == 1 ? delta_ : delta_.dilate(Int(a)), b == 1 ? q_ : q_.dilate(Int(b)));
    Rat v = volume(body);
    vols_.emplace(key, v);
    return v;
  }

  int n_;
  Int abs_det_;
  LatticePolytope delta_, q_;
  std::vector<std::vector<Int>> binom_;
  std::map<std::pair<int, int>, Rat> vols_;
};

void check_degree_dim(const IntMatrix& a) {
  if (a.dim() > kMaxDegreeDim)
    fail(ErrorKind::Dimension, "degree computations are capped at dimension " +
                                   std::to_string(kMaxDegreeDim));
}

}  // namespace

LatticePolytope newton_polytope(const IntMatrix& a) {
  std::vector<LatticePoint> pts;
  pts.emplace_back(a.dim(), Int(0));
  for (int i = 0; i < a.dim(); ++i) {
    LatticePoint row(a.dim());
    for (int j = 0; j < a.dim(); ++j) row[j] = a.at(i, j);
    pts.push_back(std::move(row));
  }
  return LatticePolytope::hull(pts);
}

Int map_degree(const IntMatrix& a, int k) {
  check_degree_dim(a);
  ProjectiveDegrees degs(a);
  return degs.degree(k);
}

Int map_degree_oracle_deg1(const IntMatrix& a) {
  if (det(a) == 0) fail(ErrorKind::Singular, "oracle requires a nonsingular matrix");
  int n = a.dim();
  std::vector<Int> shift(n, Int(0));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) shift[j] = std::max(shift[j], Int(-a.at(i, j)));
  Int best = 0;
  for (const auto& s : shift) best += s;  // the q = 0 row
  for (int i = 0; i < n; ++i) {
    Int sum = 0;
    for (int j = 0; j < n; ++j) sum += a.at(i, j) + shift[j];
    best = std::max(best, sum);
  }
  return best;
}

IntMatrix reduction_matrix(const MonomialCorrespondence& f) {
  IntMatrix p = f.n * adjugate(f.m);
  if (det(f.m) < 0) {
    // Flip so that P * M = |det M| * N. The positive scalar matters: the
    // coordinatewise power map by a negative exponent is not a morphism of
    // projective space (it hides an inversion), and both the degree and
    // height identities need the genuine power map.
    for (int i = 0; i < p.dim(); ++i)
      for (int j = 0; j < p.dim(); ++j) p.at(i, j) = -p.at(i, j);
  }
  return p;
}

Int corr_degree(const MonomialCorrespondence& f, int k, unsigned p) {
  check_degree_dim(f.m);
  if (p < 1) fail(ErrorKind::Invalid, "iterate index p must be >= 1");
  int n = f.dim();
  if (k < 0 || k > n) fail(ErrorKind::Invalid, "degree index k must satisfy 0 <= k <= n");
  if (k == 0) return pow(abs(det(f.m)), p);
  if (k == n) return pow(abs(det(f.n)), p);

  Int num = map_degree(mat_pow(reduction_matrix(f), p), k);
  Int div = pow(abs(det(f.m)), p * static_cast<unsigned>(k - 1));
  if (num % div != 0)
    fail(ErrorKind::Integrality, "correspondence degree quotient is not integral (internal bug)");
  return num / div;
}

DegreeTable degree_table(const MonomialCorrespondence& f, unsigned p_max) {
  check_degree_dim(f.m);
  if (p_max < 1) fail(ErrorKind::Invalid, "p_max must be >= 1");
  const int n = f.dim();
  DegreeTable table;
  table.n = n;
  table.p_max = p_max;
  table.det_m = det(f.m);
  table.det_n = det(f.n);
  table.entries.assign(n + 1, std::vector<Int>(p_max));

  const Int abs_det_m = abs(table.det_m);
  const Int abs_det_n = abs(table.det_n);
  const IntMatrix p_matrix = reduction_matrix(f);
  IntMatrix p_power = p_matrix;
  Int det_m_pow = 1;  // |det M|^p
  Int det_n_pow = 1;
  for (unsigned p = 1; p <= p_max; ++p) {
    det_m_pow *= abs_det_m;
    det_n_pow *= abs_det_n;
    table.entries[0][p - 1] = det_m_pow;
    table.entries[n][p - 1] = det_n_pow;
    if (n > 1) {
      ProjectiveDegrees degs(p_power);
      Int divisor = 1;
      for (int k = 1; k < n; ++k) {
        if (k > 1) divisor *= det_m_pow;
        Int num = degs.degree(k);
        if (num % divisor != 0)
          fail(ErrorKind::Integrality,
               "correspondence degree quotient is not integral (internal bug)");
        Int value = num / divisor;
        if (value <= 0) fail(ErrorKind::Internal, "degree table entry is not positive");
        table.entries[k][p - 1] = value;
      }
    }
    if (p < p_max) p_power = p_power * p_matrix;
  }
  return table;
}

DynDegReport dynamical_degrees_auto(const IntMatrix& m, const IntMatrix& n, unsigned bits,
                                    unsigned* bits_used) {
  for (;;) {
    try {
      DynDegReport report = dynamical_degrees(m, n, bits);
      if (bits_used) *bits_used = bits;
      return report;
    } catch (const Error& e) {
      unsigned next = next_precision(bits);
      if (e.kind() != ErrorKind::Precision || next == 0) throw;
      bits = next;
    }
  }
}

AsymptoticsReport asymptotics_report(const MonomialCorrespondence& f, int l, unsigned p_max,
                                     unsigned bits) {
  const int n = f.dim();
  if (l < 1 || l > n - 1) fail(ErrorKind::Invalid, "asymptotics index l must satisfy 1 <= l <= n-1");
  if (p_max < 1) fail(ErrorKind::Invalid, "p_max must be >= 1");

  AsymptoticsReport report;
  report.l = l;

  // Resolve strictness, raising precision through the ladder while the
  // log-concavity gap sits inside the error band.
  DynDegReport dyn = dynamical_degrees_auto(f.m, f.n, bits, &report.bits_used);
  LogConcavityResult lc = log_concavity_strict(dyn, l);
  while (lc.verdict == Strictness::Indeterminate) {
    unsigned next = next_precision(report.bits_used);
    if (next == 0) break;
    dyn = dynamical_degrees_auto(f.m, f.n, next, &report.bits_used);
    lc = log_concavity_strict(dyn, l);
  }

  PrecisionGuard guard(report.bits_used);
  report.lambda_l = dyn.lambda[l];
  report.q_theory = lc.ratio;
  report.q_measured = Real(0);
  report.c_final = Real(0);
  if (lc.verdict != Strictness::Strict) {
    // Either proven non-strict or an exact tie that no precision resolves.
    report.verdict = AsymptoticsVerdict::NotStrict;
    return report;
  }

  DegreeTable table = degree_table(f, p_max);
  Real lambda_pow(1);
  for (unsigned p = 1; p <= p_max; ++p) {
    lambda_pow *= report.lambda_l;
    report.c_estimates.push_back(Real(table.deg(l, p)) / lambda_pow);
  }
  report.c_final = report.c_estimates.back();

  report.burn_in = 1;
  for (size_t i = report.c_estimates.size() - 1; i-- > 0;) {
    Real here = abs(report.c_estimates[i] - report.c_final);
    Real next = abs(report.c_estimates[i + 1] - report.c_final);
    if (here < next) {
      report.burn_in = static_cast<unsigned>(i + 2);  // first p with monotone tail
      break;
    }
  }

  std::vector<Real> deltas;  // |C_p - C_{p-1}| for p = 2..p_max
  for (size_t i = 1; i < report.c_estimates.size(); ++i)
    deltas.push_back(abs(report.c_estimates[i] - report.c_estimates[i - 1]));
  size_t tail = std::max<size_t>(3, p_max / 2);
  if (deltas.size() < 3) {
    report.verdict = AsymptoticsVerdict::InsufficientP;
    return report;
  }
  tail = std::min(tail, deltas.size());
  size_t start = deltas.size() - tail;  // delta index i corresponds to p = i + 2

  const Real floor = pow2(-40) * std::max(Real(abs(report.c_final)), Real(1));
  std::vector<std::pair<unsigned, Real>> points;  // (p, log delta)
  for (size_t i = start; i < deltas.size(); ++i)
    if (deltas[i] > floor) points.emplace_back(static_cast<unsigned>(i + 2), log(deltas[i]));

  if (points.size() < 3) {
    // The estimates reached the arithmetic floor: exact convergence.
    report.verdict = AsymptoticsVerdict::Converged;
    report.q_measured = Real(0);
    return report;
  }

  // Least squares of log|dC_p| = a + r log p + p log q over integer r <= n.
  Real best_residual(-1);
  for (int r = 0; r <= std::min(n, 4); ++r) {
    Real sx(0), sy(0), sxx(0), sxy(0);
    const Real count = Real(static_cast<unsigned>(points.size()));
    for (const auto& [p, logd] : points) {
      Real x = Real(p);
      Real y = logd - Real(r) * log(Real(p));
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    Real slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
    Real intercept = (sy - slope * sx) / count;
    Real residual(0);
    for (const auto& [p, logd] : points) {
      Real e = logd - Real(r) * log(Real(p)) - intercept - slope * Real(p);
      residual += e * e;
    }
    if (best_residual < 0 || residual < best_residual) {
      best_residual = residual;
      report.r_fit = r;
      report.q_measured = exp(slope);
    }
  }

  bool decaying = report.q_measured < Real(99) / Real(100);
  bool shrinking = deltas.back() <= deltas[start] * (Real(1) + pow2(-20));
  report.verdict = (decaying && shrinking) ? AsymptoticsVerdict::Converged
                                           : AsymptoticsVerdict::InsufficientP;
  return report;
}

}  // namespace monodyn
