// Acceptance suite: every criterion prints one PASS/FAIL line; the binary
// exits nonzero if any criterion fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "core/degrees.hpp"
#include "core/ensemble.hpp"
#include "core/heights.hpp"
#include "core/serialize.hpp"

using namespace monodyn;

namespace {

int g_failures = 0;

void report(int id, const std::string& title, bool pass, const std::string& detail = "") {
  std::printf("C%d %s - %s%s%s\n", id, pass ? "PASS" : "FAIL", title.c_str(),
              detail.empty() ? "" : ": ", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

IntMatrix mat(const std::vector<std::vector<long>>& rows) {
  std::vector<std::vector<Int>> r;
  for (const auto& row : rows) r.emplace_back(row.begin(), row.end());
  return IntMatrix::from_rows(r);
}

double dbl(const Real& r) { return r.convert_to<double>(); }

const IntMatrix kShearM = mat({{2, 0}, {0, 1}});
const IntMatrix kShearN = mat({{1, 1}, {0, 1}});

struct Sample {
  IntMatrix m, n;
  DegreeTable table;
  DegreeTable table_rev;
  DynDegReport dyn;
  DynDegReport dyn_rev;
};

std::vector<Sample> draw_samples(unsigned long long seed, int count, int dim, long bound,
                                 unsigned p_max, int* integrality_violations) {
  MatrixSampler sampler(seed);
  std::vector<Sample> samples;
  for (int i = 0; i < count; ++i) {
    IntMatrix m = sampler.nonsingular(dim, bound);
    IntMatrix n = sampler.nonsingular(dim, bound);
    try {
      MonomialCorrespondence f(m, n);
      MonomialCorrespondence rev(n, m);
      Sample s{m, n, degree_table(f, p_max), degree_table(rev, p_max),
               dynamical_degrees_auto(m, n, 128), dynamical_degrees_auto(n, m, 128)};
      samples.push_back(std::move(s));
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::Integrality) {
        ++*integrality_violations;
      } else {
        throw;
      }
    }
  }
  return samples;
}

// --- Criterion 1 (+4, +5 share the ensembles) -------------------------------

void criteria_1_4_5() {
  auto start = std::chrono::steady_clock::now();
  int integrality_violations = 0;

  std::vector<std::vector<Sample>> ensembles;
  ensembles.push_back(draw_samples(1, 50, 2, 3, 10, &integrality_violations));
  ensembles.push_back(draw_samples(2, 20, 3, 3, 6, &integrality_violations));

  struct SlowIndex {
    const Sample* sample;
    int l;
    Real q, dev;
  };
  std::vector<SlowIndex> slow;
  int ratio_failures = 0, strict_indices = 0;
  int duality_deg_failures = 0, duality_lambda_failures = 0;
  for (const auto& ensemble : ensembles) {
    for (const auto& s : ensemble) {
      const int n = s.m.dim();
      const unsigned p_max = s.table.p_max;
      PrecisionGuard guard(128);
      for (int l = 1; l <= n - 1; ++l) {
        LogConcavityResult lc = log_concavity_strict(s.dyn, l);
        unsigned bits = 128;
        while (lc.verdict == Strictness::Indeterminate) {
          unsigned nb = next_precision(bits);
          if (nb == 0) break;
          bits = nb;
          lc = log_concavity_strict(dynamical_degrees_auto(s.m, s.n, bits), l);
        }
        if (lc.verdict != Strictness::Strict) continue;
        ++strict_indices;
        Real ratio = Real(s.table.deg(l, p_max)) / Real(s.table.deg(l, p_max - 1));
        Real dev = abs(ratio - s.dyn.lambda[l]) / s.dyn.lambda[l];
        if (dev > Real(1) / Real(20)) {
          ++ratio_failures;
          slow.push_back({&s, l, lc.ratio, dev});
        }
      }
      for (int l = 0; l <= n; ++l) {
        for (unsigned p = 1; p <= p_max; ++p)
          if (s.table.deg(l, p) != s.table_rev.deg(n - l, p)) ++duality_deg_failures;
        if (abs(s.dyn.lambda[l] - s.dyn_rev.lambda[n - l]) >
            2 * std::max(s.dyn.error_radius, s.dyn_rev.error_radius))
          ++duality_lambda_failures;
      }
    }
  }

  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report(1, "degree growth matches the dynamical degrees (50 pairs n=2 @ p=10, 20 pairs n=3 @ p=6, 5%)",
         ratio_failures == 0 && seconds <= 300.0,
         std::to_string(strict_indices) + " strict indices, " + std::to_string(ratio_failures) +
             " failures, " + std::to_string(seconds).substr(0, 5) + "s");

  // Every observed failure is finite-p truncation, not a wrong limit: the
  // deviation must shrink by about q^2 two iterates later.
  if (!slow.empty()) {
    int inconsistent = 0;
    for (const auto& f : slow) {
      const unsigned p2 = f.sample->table.p_max + 2;
      MonomialCorrespondence g(f.sample->m, f.sample->n);
      DegreeTable deeper = degree_table(g, p2);
      PrecisionGuard guard(128);
      Real ratio = Real(deeper.deg(f.l, p2)) / Real(deeper.deg(f.l, p2 - 1));
      Real dev2 = abs(ratio - f.sample->dyn.lambda[f.l]) / f.sample->dyn.lambda[f.l];
      if (dev2 > f.dev * f.q * f.q * 2) ++inconsistent;
    }
    std::printf("C1 note: every failing index has q = lambda_{l-1}lambda_{l+1}/lambda_l^2 in "
                "[%s, %s]; deviations at p_max+2 decay at the predicted q^p rate "
                "(%d of %zu inconsistent)\n",
                real_to_string(std::min_element(slow.begin(), slow.end(),
                                                [](const SlowIndex& a, const SlowIndex& b) {
                                                  return a.q < b.q;
                                                })
                                   ->q)
                    .c_str(),
                real_to_string(std::max_element(slow.begin(), slow.end(),
                                                [](const SlowIndex& a, const SlowIndex& b) {
                                                  return a.q < b.q;
                                                })
                                   ->q)
                    .c_str(),
                inconsistent, slow.size());
  }
  report(4, "integrality of every correspondence degree in the ensemble",
         integrality_violations == 0, std::to_string(integrality_violations) + " violations");
  report(5, "duality deg_l(M,N)=deg_{n-l}(N,M) exactly and lambda duality within 2*error",
         duality_deg_failures == 0 && duality_lambda_failures == 0,
         std::to_string(duality_deg_failures) + " degree, " +
             std::to_string(duality_lambda_failures) + " lambda mismatches");
}

// --- Criterion 2 -------------------------------------------------------------

void criterion_2() {
  bool pass = true;
  MonomialCorrespondence doubling(mat({{2}}), mat({{2}}));
  for (unsigned p = 1; p <= 12 && pass; ++p)
    pass = corr_degree(doubling, 0, p) == pow(Int(2), p) &&
           corr_degree(doubling, 1, p) == pow(Int(2), p);
  MonomialCorrespondence shear(kShearM, kShearN);
  for (unsigned p = 1; p <= 12 && pass; ++p)
    pass = corr_degree(shear, 1, p) == pow(Int(2), p + 1) - 1;
  report(2, "exact fixtures: deg(z^2 pair) = 2^p and shear deg_1 = 2^{p+1}-1 for p <= 12", pass);
}

// --- Criterion 3 -------------------------------------------------------------

void criterion_3() {
  MatrixSampler sampler(42);
  int failures = 0;
  int count = 0;
  const int plan[3][2] = {{2, 80}, {3, 80}, {4, 40}};
  for (const auto& [dim, how_many] : plan) {
    for (int i = 0; i < how_many; ++i) {
      IntMatrix a = sampler.nonsingular(dim, 3);
      ++count;
      if (map_degree(a, 1) != map_degree_oracle_deg1(a)) ++failures;
      if (map_degree(a, 0) != 1) ++failures;
      if (map_degree(a, dim) != abs(det(a))) ++failures;
    }
  }
  report(3, "map_degree(A,1) equals the homogenization oracle on 200 matrices (n<=4), endpoints forced",
         failures == 0, std::to_string(count) + " matrices, " + std::to_string(failures) + " failures");
}

// --- Criterion 6 -------------------------------------------------------------

void criterion_6() {
  AsymptoticsReport shear = asymptotics_report(MonomialCorrespondence(kShearM, kShearN), 1, 10, 128);
  bool shear_ok = shear.verdict == AsymptoticsVerdict::Converged &&
                  std::abs(dbl(shear.c_final) - 2.0) <= 0.01 * 2.0 &&
                  std::abs(dbl(shear.q_measured) - 0.5) <= 0.10 * 0.5;

  MonomialCorrespondence fib(IntMatrix::identity(2), mat({{2, 1}, {1, 1}}));
  AsymptoticsReport fr = asymptotics_report(fib, 1, 10, 128);
  bool fib_ok = fr.verdict == AsymptoticsVerdict::Converged && fr.c_estimates.size() >= 10;
  if (fib_ok) {
    double delta10 = std::abs(dbl(fr.c_estimates[9]) - dbl(fr.c_estimates[8]));
    fib_ok = delta10 < 1e-3 * dbl(fr.c_final);
  }
  report(6, "asymptotics: shear C=2 within 1%, decay rate 1/2 within 10%; Fibonacci-type C_p stable",
         shear_ok && fib_ok,
         "shear C=" + real_to_string(shear.c_final) + " q=" + real_to_string(shear.q_measured));
}

// --- Criterion 7 -------------------------------------------------------------

void criterion_7() {
  struct Fixture {
    IntMatrix m, n;
    std::vector<Rat> x;
  };
  std::vector<Fixture> fixtures = {
      {mat({{2}}), mat({{1}}), {Rat(2)}},
      {mat({{2}}), mat({{3}}), {Rat(2)}},
      {mat({{2}}), mat({{-3}}), {Rat(-2, 3)}},
      {mat({{-2}}), mat({{5}}), {Rat(2)}},
      {mat({{2}}), mat({{2}}), {Rat(4)}},
      {mat({{1, 1}, {0, 1}}), mat({{2, 1}, {1, 1}}), {Rat(2), Rat(3)}},
      {mat({{1, 0}, {1, 1}}), mat({{0, 1}, {1, 0}}), {Rat(2), Rat(-3, 5)}},
      {mat({{2, 1}, {1, 1}}), mat({{1, 2}, {0, 2}}), {Rat(2), Rat(3)}},  // unimodular M
  };
  int failures = 0;
  for (const auto& fx : fixtures) {
    MonomialCorrespondence f(fx.m, fx.n);
    MonomialPoint x = factor_point(fx.x);
    HeightSeries fast = orbit_heights_fast(f, x, 6, 128);
    HeightSeries brute = orbit_heights_bruteforce(f, x, 6, 128);
    PrecisionGuard guard(128);
    for (unsigned p = 0; p < 6; ++p) {
      Real dev = abs(fast.values[p] - brute.values[p]) / std::max(Real(abs(fast.values[p])), Real(1));
      if (dbl(dev) > 1e-9) ++failures;
    }
  }
  report(7, "orbit-height identity: fast path equals brute-force cycles to 1e-9 (p <= 6)",
         failures == 0, std::to_string(failures) + " deviations");
}

// --- Criterion 8 -------------------------------------------------------------

void criterion_8() {
  MatrixSampler sampler(3);
  int failures = 0;
  std::vector<Rat> base = {Rat(2), Rat(3)};
  for (int i = 0; i < 50; ++i) {
    IntMatrix m = sampler.nonsingular(2, 3);
    IntMatrix n = sampler.nonsingular(2, 3);
    MonomialCorrespondence f(m, n);
    HeightSeries series = orbit_heights_fast(f, factor_point(base), 25, 128);
    if (series.torsion_orbit) continue;
    PrecisionGuard guard(128);
    Real best(-1);
    for (const auto& c : series.candidates) {
      Real dev = abs(series.alpha - c) / std::max(c, Real(1));
      if (best < 0 || dev < best) best = dev;
    }
    if (best < 0 || best > Real(1) / Real(50)) ++failures;
  }

  MonomialCorrespondence square_root(mat({{2}}), mat({{1}}));
  HeightSeries torsion = orbit_heights_fast(square_root, factor_point({Rat(1)}), 12, 128);
  bool torsion_ok = torsion.torsion_orbit && dbl(torsion.alpha) == 1.0;
  for (const auto& v : torsion.values) torsion_ok = torsion_ok && dbl(v) == 0.0;

  report(8, "arithmetic-degree membership: alpha within 2% of a candidate on 50 pairs; torsion flagged",
         failures == 0 && torsion_ok, std::to_string(failures) + " membership failures");
}

// --- Criterion 9 -------------------------------------------------------------

void criterion_9() {
  bool pass = true;
  std::string detail;
  MatrixSampler sampler(9);

  // adjugate identity
  for (int i = 0; i < 30 && pass; ++i) {
    int n = 1 + static_cast<int>(i % 4);
    IntMatrix a = sampler.nonsingular(n, 4);
    IntMatrix prod = a * adjugate(a);
    Int d = det(a);
    for (int r = 0; r < n && pass; ++r)
      for (int c = 0; c < n && pass; ++c)
        pass = prod.at(r, c) == (r == c ? d : Int(0));
    if (!pass) detail = "adjugate identity";
  }

  // Smith contract
  for (int i = 0; i < 30 && pass; ++i) {
    int n = 1 + static_cast<int>(i % 4);
    IntMatrix a = sampler.nonsingular(n, 5);
    SmithForm s = smith_normal_form(a);
    pass = s.u * a * s.v == s.d && abs(det(s.u)) == 1 && abs(det(s.v)) == 1;
    Int prod = 1;
    for (int t = 0; t < n && pass; ++t) {
      pass = s.d.at(t, t) > 0;
      if (t + 1 < n) pass = pass && s.d.at(t + 1, t + 1) % s.d.at(t, t) == 0;
      prod *= s.d.at(t, t);
    }
    pass = pass && prod == abs(det(a));
    if (!pass) detail = "smith form contract";
  }

  // Cayley-Hamilton residue for n <= 4
  for (int i = 0; i < 20 && pass; ++i) {
    int n = 1 + static_cast<int>(i % 4);
    IntMatrix a = sampler.any(n, 4);
    IntPolynomial p = char_poly(a);
    IntMatrix acc(n);
    for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) {
      acc = acc * a;
      for (int r = 0; r < n; ++r) acc.at(r, r) += *it;
    }
    pass = acc == IntMatrix(n);
    if (!pass) detail = "Cayley-Hamilton";
  }

  // mixed-volume battery
  if (pass) {
    LatticePolytope delta = LatticePolytope::simplex(2);
    LatticePolytope q = LatticePolytope::hull(
        {{Int(0), Int(0)}, {Int(2), Int(1)}, {Int(1), Int(1)}});
    pass = mixed_volume({delta, q}) == Rat(3, 2) && mixed_volume({q, delta}) == Rat(3, 2);
    LatticePolytope square =
        LatticePolytope::hull({{Int(0), Int(0)}, {Int(1), Int(0)}, {Int(0), Int(1)}, {Int(1), Int(1)}});
    pass = pass && mixed_volume({minkowski_sum(delta, square), q}) ==
                       mixed_volume({delta, q}) + mixed_volume({square, q});
    Int factorial = 1;
    for (int n = 1; n <= 4 && pass; ++n) {
      factorial *= n;
      std::vector<LatticePolytope> bodies(n, LatticePolytope::simplex(n));
      pass = mixed_volume(bodies) == Rat(Int(1), factorial);
    }
    if (!pass) detail = "mixed volume";
  }

  // height scaling and the sqrt(2) oracle. Negative scalars are checked on
  // the 1-torus, where heights are inversion-invariant; in dimension >= 2
  // h(x^{-1}) != h(x) in general, so only positive scalars scale there.
  if (pass) {
    MonomialPoint x = factor_point({Rat(-6, 5), Rat(14, 3)});
    MonomialPoint x1 = factor_point({Rat(-6, 5)});
    PrecisionGuard guard(128);
    Real h = weil_height(x, 128);
    Real h1 = weil_height(x1, 128);
    for (long a : {-1L, 1L, -2L, 2L, 3L}) {
      if (a > 0) {
        IntMatrix scalar(2);
        scalar.at(0, 0) = scalar.at(1, 1) = a;
        Real image = weil_height(monomial_image(scalar, x), 128);
        pass = pass && abs(image - Real(std::abs(a)) * h) <= pow2(-100) * (1 + h);
      }
      IntMatrix scalar1(1);
      scalar1.at(0, 0) = a;
      Real image1 = weil_height(monomial_image(scalar1, x1), 128);
      pass = pass && abs(image1 - Real(std::abs(a)) * h1) <= pow2(-100) * (1 + h1);
    }
    MonomialPoint sqrt2;
    sqrt2.primes = {Int(2)};
    sqrt2.exponents = {{Rat(1, 2)}};
    sqrt2.torsion = {Rat(0)};
    pass = pass && std::abs(dbl(weil_height(sqrt2, 128)) - 0.5 * std::log(2.0)) < 1e-15;
    if (!pass) detail = "height scaling / sqrt(2) oracle";
  }

  report(9, "structural suites: adjugate, Smith, Cayley-Hamilton, mixed volumes, height scaling",
         pass, detail);
}

}  // namespace

int main() {
  criteria_1_4_5();
  criterion_2();
  criterion_3();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  if (g_failures == 0)
    std::printf("acceptance: all criteria passed\n");
  else
    std::printf("acceptance: %d criteria FAILED\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
