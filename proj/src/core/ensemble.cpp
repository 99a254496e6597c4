#include "ensemble.hpp"

#include <algorithm>
#include <sstream>

namespace monodyn {

namespace {

std::string fmt_real(const Real& r) {
  std::ostringstream os;
  os.precision(6);
  os << r;
  return os.str();
}

// Relative deviation against max(|b|, 1).
Real rel_dev(const Real& a, const Real& b) { return abs(a - b) / std::max(Real(abs(b)), Real(1)); }

std::vector<Rat> default_point(int dim) {
  static const long primes[] = {2, 3, 5, 7, 11};
  std::vector<Rat> coords;
  for (int i = 0; i < dim; ++i) coords.emplace_back(primes[i % 5]);
  return coords;
}

CheckOutcome check_duality_degrees(const DegreeTable& fwd, const DegreeTable& rev) {
  CheckOutcome out{"duality-degrees", true, ""};
  for (int l = 0; l <= fwd.n; ++l)
    for (unsigned p = 1; p <= fwd.p_max; ++p)
      if (fwd.deg(l, p) != rev.deg(fwd.n - l, p)) {
        out.pass = false;
        out.detail = "deg_" + std::to_string(l) + "(f^" + std::to_string(p) +
                     ") != transposed deg_" + std::to_string(fwd.n - l);
        return out;
      }
  return out;
}

CheckOutcome check_oracle(const IntMatrix& p_matrix, unsigned upto) {
  CheckOutcome out{"oracle-deg1", true, ""};
  IntMatrix power = p_matrix;
  for (unsigned p = 1; p <= upto; ++p) {
    if (map_degree(power, 1) != map_degree_oracle_deg1(power)) {
      out.pass = false;
      out.detail = "mixed-volume deg_1 disagrees with homogenization at p=" + std::to_string(p);
      return out;
    }
    if (p < upto) power = power * p_matrix;
  }
  return out;
}

}  // namespace

unsigned long long MatrixSampler::next() {
  // splitmix64
  state_ += 0x9E3779B97F4A7C15ULL;
  unsigned long long z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

IntMatrix MatrixSampler::any(int dim, long bound) {
  IntMatrix m(dim);
  const unsigned long long span = 2 * static_cast<unsigned long long>(bound) + 1;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      m.at(i, j) = static_cast<long>(next() % span) - bound;
  return m;
}

IntMatrix MatrixSampler::nonsingular(int dim, long bound) {
  for (;;) {
    IntMatrix m = any(dim, bound);
    if (det(m) != 0) return m;
  }
}

EnsembleReport run_ensemble(const EnsembleConfig& config) {
  if (config.dim < 1) fail(ErrorKind::Invalid, "ensemble dimension must be >= 1");
  if (config.count < 0) fail(ErrorKind::Invalid, "ensemble count must be >= 0");
  if (config.bound < 1) fail(ErrorKind::Invalid, "entry bound must be >= 1");
  if (config.p_max < 1) fail(ErrorKind::Invalid, "p_max must be >= 1");

  EnsembleReport report;
  report.config = config;
  MatrixSampler sampler(config.seed);

  for (int s = 0; s < config.count; ++s) {
    SampleResult sample;
    sample.index = s;
    IntMatrix m = sampler.nonsingular(config.dim, config.bound);
    IntMatrix n = sampler.nonsingular(config.dim, config.bound);
    sample.m_text = m.to_text();
    sample.n_text = n.to_text();
    const int dim = config.dim;

    try {
      MonomialCorrespondence f(m, n);
      MonomialCorrespondence f_rev(n, m);

      DegreeTable table = degree_table(f, config.p_max);
      sample.checks.push_back({"integrality", true, ""});

      DegreeTable table_rev = degree_table(f_rev, config.p_max);
      sample.checks.push_back(check_duality_degrees(table, table_rev));

      unsigned bits_fwd = config.bits, bits_rev = config.bits;
      DynDegReport dyn = dynamical_degrees_auto(m, n, config.bits, &bits_fwd);
      DynDegReport dyn_rev = dynamical_degrees_auto(n, m, config.bits, &bits_rev);

      {
        CheckOutcome out{"duality-lambda", true, ""};
        PrecisionGuard guard(std::max(bits_fwd, bits_rev));
        Real budget = dyn.error_radius + dyn_rev.error_radius;
        for (int l = 0; l <= dim; ++l) {
          Real diff = abs(dyn.lambda[l] - dyn_rev.lambda[dim - l]);
          if (diff > budget) {
            out.pass = false;
            out.detail = "lambda_" + std::to_string(l) + " mismatch " + fmt_real(diff);
            break;
          }
        }
        sample.checks.push_back(out);
      }

      if (config.p_max >= 2) {
        CheckOutcome out{"degree-growth-rate", true, ""};
        PrecisionGuard guard(bits_fwd);
        for (int l = 1; l <= dim - 1; ++l) {
          LogConcavityResult lc = log_concavity_strict(dyn, l);
          unsigned bits = bits_fwd;
          while (lc.verdict == Strictness::Indeterminate) {
            unsigned nb = next_precision(bits);
            if (nb == 0) break;
            bits = nb;
            lc = log_concavity_strict(dynamical_degrees_auto(m, n, bits, &bits), l);
          }
          if (lc.verdict != Strictness::Strict) continue;
          Real ratio = Real(table.deg(l, config.p_max)) / Real(table.deg(l, config.p_max - 1));
          Real dev = abs(ratio - dyn.lambda[l]) / dyn.lambda[l];
          if (dev > Real(1) / Real(20)) {
            out.pass = false;
            out.detail = "l=" + std::to_string(l) + " ratio " + fmt_real(ratio) + " vs lambda " +
                         fmt_real(dyn.lambda[l]);
            break;
          }
        }
        sample.checks.push_back(out);
      }

      sample.checks.push_back(check_oracle(reduction_matrix(f), std::min(config.p_max, 2u)));

      if (config.orbit_p_max >= 1) {
        CheckOutcome out{"arithmetic-degree-membership", true, ""};
        HeightSeries series =
            orbit_heights_fast(f, factor_point(default_point(dim)), config.orbit_p_max, config.bits);
        PrecisionGuard guard(config.bits);
        Real best(-1);
        for (const auto& c : series.candidates) {
          Real dev = abs(series.alpha - c) / std::max(c, Real(1));
          if (best < 0 || dev < best) best = dev;
        }
        if (!series.torsion_orbit && (best < 0 || best > Real(1) / Real(50))) {
          out.pass = false;
          out.detail = "alpha " + fmt_real(series.alpha) + " off candidates by " + fmt_real(best);
        }
        sample.checks.push_back(out);
      }

      // Submultiplicativity observations are findings, not failures.
      for (int k = 0; k <= dim; ++k)
        for (unsigned p = 1; p <= config.p_max; ++p)
          for (unsigned q = p; p + q <= config.p_max; ++q)
            if (table.deg(k, p + q) > table.deg(k, p) * table.deg(k, q))
              sample.findings.push_back("submultiplicativity violated at k=" + std::to_string(k) +
                                        " p=" + std::to_string(p) + " q=" + std::to_string(q));
    } catch (const Error& e) {
      sample.checks.push_back({"pipeline", false, e.what()});
    }

    if (!sample.pass()) ++report.failed;
    report.samples.push_back(std::move(sample));
  }
  report.all_pass = report.failed == 0;
  return report;
}

CheckReport run_check(const MonomialCorrespondence& f, const std::vector<Rat>* point,
                      unsigned p_max, unsigned bits) {
  CheckReport report;
  const int dim = f.dim();

  {
    CheckOutcome out{"reduction-identity", true, ""};
    IntMatrix lhs = reduction_matrix(f) * f.m;
    Int d = abs(det(f.m));
    IntMatrix rhs(dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) rhs.at(i, j) = d * f.n.at(i, j);
    out.pass = lhs == rhs;
    if (!out.pass) out.detail = "P*M != |det M|*N";
    report.checks.push_back(out);
  }

  unsigned table_p = std::min(p_max, 6u);
  try {
    DegreeTable table = degree_table(f, table_p);
    report.checks.push_back({"integrality", true, ""});
    DegreeTable table_rev = degree_table(MonomialCorrespondence(f.n, f.m), table_p);
    report.checks.push_back(check_duality_degrees(table, table_rev));
  } catch (const Error& e) {
    report.checks.push_back({"integrality", false, e.what()});
  }

  report.checks.push_back(check_oracle(reduction_matrix(f), std::min(table_p, 3u)));

  {
    CheckOutcome out{"lambda-endpoints", true, ""};
    unsigned bits_used = bits;
    DynDegReport dyn = dynamical_degrees_auto(f.m, f.n, bits, &bits_used);
    PrecisionGuard guard(bits_used);
    if (abs(dyn.lambda[0] - Real(Int(abs(dyn.det_m)))) > 0 ||
        abs(dyn.lambda[dim] - Real(Int(abs(dyn.det_n)))) > dyn.error_radius) {
      out.pass = false;
      out.detail = "lambda endpoints deviate from |det M|, |det N|";
    }
    report.checks.push_back(out);
  }

  if (point) {
    MonomialPoint x = factor_point(*point);
    Int growth = abs(det(f.m));
    unsigned cap_p = 0;
    Int cycle_size = 1;
    while (cap_p < std::min(p_max, 6u) && cycle_size * growth <= 4096) {
      cycle_size *= growth;
      ++cap_p;
    }
    CheckOutcome out{"orbit-height-identity", true, ""};
    if (cap_p == 0) {
      out.detail = "skipped: |det M|^p exceeds the cycle budget at p=1";
    } else {
      HeightSeries fast = orbit_heights_fast(f, x, cap_p, bits);
      HeightSeries brute = orbit_heights_bruteforce(f, x, cap_p, bits);
      PrecisionGuard guard(bits);
      Real worst(0);
      for (unsigned p = 0; p < cap_p; ++p)
        worst = std::max(worst, rel_dev(fast.values[p], brute.values[p]));
      out.pass = worst <= Real(1) / Real(1000000000);
      out.detail = "max relative deviation " + fmt_real(worst) + " over p <= " + std::to_string(cap_p);
    }
    report.checks.push_back(out);
  }

  for (const auto& c : report.checks) report.all_pass = report.all_pass && c.pass;
  return report;
}

}  // namespace monodyn
