#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "core/degrees.hpp"

using namespace monodyn;

namespace {

IntMatrix mat(const std::vector<std::vector<long>>& rows) {
  std::vector<std::vector<Int>> r;
  for (const auto& row : rows) r.emplace_back(row.begin(), row.end());
  return IntMatrix::from_rows(r);
}

double dbl(const Real& r) { return r.convert_to<double>(); }

IntMatrix random_nonsingular(std::mt19937_64& rng, int n, long bound) {
  for (;;) {
    IntMatrix m(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m.at(i, j) = static_cast<long>(rng() % (2 * bound + 1)) - bound;
    if (det(m) != 0) return m;
  }
}

const IntMatrix kShearM = mat({{2, 0}, {0, 1}});
const IntMatrix kShearN = mat({{1, 1}, {0, 1}});

}  // namespace

TEST_CASE("newton polytope") {
  CHECK(newton_polytope(IntMatrix::identity(2)) == LatticePolytope::simplex(2));
  CHECK(newton_polytope(mat({{2, 1}, {1, 1}})).vertices().size() == 3);
  LatticePolytope reflected = newton_polytope(mat({{-1, 0}, {0, -1}}));
  CHECK(reflected.vertices() ==
        std::vector<LatticePoint>{{Int(-1), Int(0)}, {Int(0), Int(-1)}, {Int(0), Int(0)}});
}

TEST_CASE("map degree fixtures") {
  for (int k = 0; k <= 3; ++k) CHECK(map_degree(IntMatrix::identity(3), k) == 1);
  CHECK(map_degree(mat({{2, 1}, {1, 1}}), 1) == 3);
  CHECK(map_degree(mat({{-1, 0}, {0, -1}}), 1) == 2);  // the plane inversion
  CHECK(map_degree(mat({{1, 2}, {0, 2}}), 1) == 3);
  CHECK(map_degree(mat({{2, 1}, {1, 1}}), 2) == 1);
  CHECK(map_degree(mat({{3}}), 1) == 3);

  CHECK_THROWS_AS(map_degree(mat({{1, 2}, {2, 4}}), 1), Error);
  CHECK_THROWS_AS(map_degree(IntMatrix::identity(2), 3), Error);
}

TEST_CASE("map degree equals the generic mixed-volume route") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 10; ++trial) {
    int n = 2 + static_cast<int>(rng() % 2);
    IntMatrix a = random_nonsingular(rng, n, 3);
    LatticePolytope q = newton_polytope(a);
    Int nfact = 1;
    for (int i = 2; i <= n; ++i) nfact *= i;
    for (int k = 0; k <= n; ++k) {
      std::vector<LatticePolytope> bodies;
      for (int i = 0; i < n - k; ++i) bodies.push_back(LatticePolytope::simplex(n));
      for (int i = 0; i < k; ++i) bodies.push_back(q);
      Rat mv = mixed_volume(bodies);
      CHECK(Rat(map_degree(a, k)) == Rat(nfact) * mv);
    }
  }
}

TEST_CASE("deg_1 homogenization oracle") {
  CHECK(map_degree_oracle_deg1(mat({{2, 1}, {1, 1}})) == 3);
  CHECK(map_degree_oracle_deg1(mat({{-1, 0}, {0, -1}})) == 2);
  CHECK(map_degree_oracle_deg1(IntMatrix::identity(3)) == 1);

  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 120; ++trial) {
    int n = 1 + static_cast<int>(rng() % 4);
    IntMatrix a = random_nonsingular(rng, n, 3);
    CHECK(map_degree(a, 1) == map_degree_oracle_deg1(a));
  }
}

TEST_CASE("map degree endpoints") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 1 + static_cast<int>(rng() % 3);
    IntMatrix a = random_nonsingular(rng, n, 3);
    CHECK(map_degree(a, 0) == 1);
    CHECK(map_degree(a, n) == abs(det(a)));
  }
}

TEST_CASE("reduction matrix") {
  CHECK(reduction_matrix(MonomialCorrespondence(mat({{2}}), mat({{2}}))) == mat({{2}}));
  CHECK(reduction_matrix(MonomialCorrespondence(mat({{2}}), mat({{1}}))) == mat({{1}}));
  CHECK(reduction_matrix(MonomialCorrespondence(kShearM, kShearN)) == mat({{1, 2}, {0, 2}}));

  // negative det(M): the sign flips so the companion scalar stays positive
  CHECK(reduction_matrix(MonomialCorrespondence(mat({{-2}}), mat({{3}}))) == mat({{-3}}));

  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 1 + static_cast<int>(rng() % 4);
    IntMatrix m = random_nonsingular(rng, n, 3);
    IntMatrix nn = random_nonsingular(rng, n, 3);
    MonomialCorrespondence f(m, nn);
    IntMatrix p = reduction_matrix(f);
    // P * M == |det M| * N
    IntMatrix lhs = p * m;
    Int d = abs(det(m));
    bool equal = true;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) equal = equal && lhs.at(i, j) == d * nn.at(i, j);
    CHECK(equal);
  }
}

TEST_CASE("correspondence degrees: closed forms") {
  MonomialCorrespondence doubling(mat({{2}}), mat({{2}}));
  for (unsigned p = 1; p <= 12; ++p) {
    CHECK(corr_degree(doubling, 0, p) == pow(Int(2), p));
    CHECK(corr_degree(doubling, 1, p) == pow(Int(2), p));
  }

  MonomialCorrespondence shear(kShearM, kShearN);
  for (unsigned p = 1; p <= 12; ++p)
    CHECK(corr_degree(shear, 1, p) == pow(Int(2), p + 1) - 1);

  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 15; ++trial) {
    int n = 1 + static_cast<int>(rng() % 3);
    MonomialCorrespondence f(random_nonsingular(rng, n, 3), random_nonsingular(rng, n, 3));
    unsigned p = 1 + static_cast<unsigned>(rng() % 4);
    CHECK(corr_degree(f, n, p) == pow(abs(det(f.n)), p));
    CHECK(corr_degree(f, 0, p) == pow(abs(det(f.m)), p));
  }
}

TEST_CASE("degree table fixtures and duality") {
  DegreeTable t = degree_table(MonomialCorrespondence(mat({{2}}), mat({{2}})), 3);
  CHECK(t.entries[0] == std::vector<Int>{2, 4, 8});
  CHECK(t.entries[1] == std::vector<Int>{2, 4, 8});

  t = degree_table(MonomialCorrespondence(kShearM, kShearN), 3);
  CHECK(t.entries[1] == std::vector<Int>{3, 7, 15});

  t = degree_table(MonomialCorrespondence(IntMatrix::identity(2), IntMatrix::identity(2)), 4);
  for (const auto& row : t.entries)
    for (const auto& v : row) CHECK(v == 1);

  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 12; ++trial) {
    int n = 2 + static_cast<int>(rng() % 2);
    IntMatrix m = random_nonsingular(rng, n, 3);
    IntMatrix nn = random_nonsingular(rng, n, 3);
    unsigned p_max = n == 2 ? 6 : 4;
    DegreeTable fwd = degree_table(MonomialCorrespondence(m, nn), p_max);
    DegreeTable rev = degree_table(MonomialCorrespondence(nn, m), p_max);
    for (int l = 0; l <= n; ++l)
      for (unsigned p = 1; p <= p_max; ++p) CHECK(fwd.deg(l, p) == rev.deg(n - l, p));
  }
}

TEST_CASE("asymptotics on the shear fixture") {
  AsymptoticsReport r = asymptotics_report(MonomialCorrespondence(kShearM, kShearN), 1, 10, 128);
  CHECK(r.verdict == AsymptoticsVerdict::Converged);
  CHECK(dbl(r.q_theory) == doctest::Approx(0.5).epsilon(1e-12));
  // C_p = 2 - 2^-p exactly, so the fitted rate is exactly 1/2
  CHECK(dbl(r.q_measured) == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(dbl(r.c_final) == doctest::Approx(2.0).epsilon(1e-3));
  CHECK(r.burn_in == 1);  // |C_p - C_final| shrinks monotonically from the start
}

TEST_CASE("asymptotics on the Fibonacci-type fixture") {
  MonomialCorrespondence f(IntMatrix::identity(2), mat({{2, 1}, {1, 1}}));
  AsymptoticsReport r = asymptotics_report(f, 1, 12, 128);
  CHECK(r.verdict == AsymptoticsVerdict::Converged);
  // q = 1 / phi'^2 with phi' = (3+sqrt 5)/2
  CHECK(dbl(r.q_theory) == doctest::Approx(0.145898).epsilon(1e-4));
  REQUIRE(r.c_estimates.size() == 12);
  double c10 = dbl(r.c_estimates[9]), c9 = dbl(r.c_estimates[8]);
  CHECK(std::abs(c10 - c9) < 1e-3 * dbl(r.c_final));
}

TEST_CASE("asymptotics detects non-strict indices") {
  IntMatrix two_id(2);
  two_id.at(0, 0) = two_id.at(1, 1) = 2;
  AsymptoticsReport r = asymptotics_report(MonomialCorrespondence(IntMatrix::identity(2), two_id),
                                           1, 8, 128);
  CHECK(r.verdict == AsymptoticsVerdict::NotStrict);

  CHECK_THROWS_AS(
      asymptotics_report(MonomialCorrespondence(mat({{2}}), mat({{2}})), 1, 8, 128), Error);
}

TEST_CASE("positive diagonal maps: deg_k is the maximal k-subset product") {
  std::vector<std::vector<long>> diags = {{2, 3}, {2, 3, 5}, {1, 2, 6}, {2, 3, 4, 5}, {5, 2, 2, 3}};
  for (const auto& d : diags) {
    int n = static_cast<int>(d.size());
    IntMatrix a(n);
    for (int i = 0; i < n; ++i) a.at(i, i) = d[i];
    for (int k = 1; k <= n; ++k) {
      Int best = 0;
      for (unsigned mask = 0; mask < (1u << n); ++mask) {
        if (__builtin_popcount(mask) != k) continue;
        Int prod = 1;
        for (int i = 0; i < n; ++i)
          if (mask & (1u << i)) prod *= d[i];
        best = std::max(best, prod);
      }
      CHECK(map_degree(a, k) == best);
    }
  }
}

TEST_CASE("torus inversion has the classical binomial degree sequence") {
  // x -> x^{-1} extends to the standard Cremona involution of P^n, with
  // deg_k = C(n, k); in particular the self-dual middle index at n = 4.
  for (int n = 2; n <= 4; ++n) {
    IntMatrix inv(n);
    for (int i = 0; i < n; ++i) inv.at(i, i) = -1;
    Int binom = 1;
    for (int k = 0; k <= n; ++k) {
      CHECK(map_degree(inv, k) == binom);
      binom = binom * (n - k) / (k + 1);
    }
  }
}

TEST_CASE("map degree at the dimension cap") {
  // one dense 5x5 exercise of the full polytope pipeline in R^5
  std::mt19937_64 rng(89);
  IntMatrix a = random_nonsingular(rng, 5, 3);
  CHECK(map_degree(a, 1) == map_degree_oracle_deg1(a));
  CHECK(map_degree(a, 0) == 1);
  CHECK(map_degree(a, 5) == abs(det(a)));
  CHECK_THROWS_AS(map_degree(random_nonsingular(rng, 6, 2), 1), Error);
}

TEST_CASE("degree table rejects bad input") {
  CHECK_THROWS_AS(degree_table(MonomialCorrespondence(kShearM, kShearN), 0), Error);
  CHECK_THROWS_AS(MonomialCorrespondence(mat({{1, 2}, {2, 4}}), IntMatrix::identity(2)), Error);
  CHECK_THROWS_AS(MonomialCorrespondence(mat({{2}}), IntMatrix::identity(2)), Error);
}
