#include "heights.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <sstream>

namespace monodyn {

namespace {

// ---------------------------------------------------------------------------
// Integer factorization: trial division, then Miller-Rabin + Pollard rho.
// ---------------------------------------------------------------------------
constexpr unsigned long kTrialBound = 100000;

bool is_probable_prime(const Int& v) {
  return mpz_probab_prime_p(v.backend().data(), 32) != 0;
}

Int pollard_rho(const Int& v, unsigned rho_rounds) {
  // Floyd cycle detection over a deterministic schedule of additive constants.
  for (Int c = 1; c <= rho_rounds; ++c) {
    Int x = 2, y = 2, d = 1;
    long limit = 1L << 20;
    while (d == 1 && limit-- > 0) {
      x = (x * x + c) % v;
      y = (y * y + c) % v;
      y = (y * y + c) % v;
      d = gcd(abs(x - y), v);
    }
    if (d != 1 && d != v) return d;
  }
  fail(ErrorKind::Limit, "factorization stalled; use smaller point coordinates");
}

void factor_into(Int v, std::map<Int, Rat>& powers, const Rat& weight, unsigned rho_rounds) {
  if (v < 0) v = -v;
  if (v <= 1) return;
  for (Int p : {Int(2), Int(3), Int(5)}) {
    while (v % p == 0) {
      powers[p] += weight;
      v /= p;
    }
  }
  Int d = 7;
  static const int wheel[8] = {4, 2, 4, 2, 4, 6, 2, 6};
  int w = 0;
  while (d <= kTrialBound && d * d <= v) {
    while (v % d == 0) {
      powers[d] += weight;
      v /= d;
    }
    d += wheel[w];
    w = (w + 1) & 7;
  }
  if (v == 1) return;
  if (is_probable_prime(v)) {
    powers[v] += weight;
    return;
  }
  Int split = pollard_rho(v, rho_rounds);
  factor_into(split, powers, weight, rho_rounds);
  factor_into(v / split, powers, weight, rho_rounds);
}

Real log_prime(const Int& p) { return log(Real(p)); }

}  // namespace

bool MonomialPoint::is_torsion() const {
  for (const auto& row : exponents)
    for (const auto& e : row)
      if (e != 0) return false;
  return true;
}

void MonomialPoint::canonicalize() {
  for (auto& t : torsion) t = frac_mod1(t);
  const int n = dim();
  std::vector<size_t> keep;
  for (size_t c = 0; c < primes.size(); ++c) {
    bool nonzero = false;
    for (int i = 0; i < n && !nonzero; ++i) nonzero = exponents[i][c] != 0;
    if (nonzero) keep.push_back(c);
  }
  std::vector<size_t> order = keep;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return primes[a] < primes[b]; });

  std::vector<Int> new_primes;
  std::vector<std::vector<Rat>> new_exp(n);
  for (size_t c : order) {
    new_primes.push_back(primes[c]);
    for (int i = 0; i < n; ++i) new_exp[i].push_back(exponents[i][c]);
  }
  primes = std::move(new_primes);
  exponents = std::move(new_exp);
}

Int ZeroCycle::total_multiplicity() const {
  Int total = 0;
  for (const auto& [mult, point] : terms) total += mult;
  return total;
}

MonomialPoint factor_point(const std::vector<Rat>& coords, unsigned rho_rounds) {
  if (coords.empty()) fail(ErrorKind::Invalid, "empty point");
  const int n = static_cast<int>(coords.size());

  // Collect prime powers per coordinate.
  std::vector<std::map<Int, Rat>> per_coord(n);
  MonomialPoint x;
  x.torsion.assign(n, Rat(0));
  for (int i = 0; i < n; ++i) {
    if (coords[i] == 0) fail(ErrorKind::Invalid, "point coordinates must be nonzero");
    if (coords[i] < 0) x.torsion[i] = Rat(1, 2);
    factor_into(numerator(coords[i]), per_coord[i], Rat(1), rho_rounds);
    factor_into(denominator(coords[i]), per_coord[i], Rat(-1), rho_rounds);
  }

  std::map<Int, size_t> column;
  for (const auto& m : per_coord)
    for (const auto& [p, e] : m) column.emplace(p, 0);
  size_t idx = 0;
  for (auto& [p, c] : column) {
    c = idx++;
    x.primes.push_back(p);
  }
  x.exponents.assign(n, std::vector<Rat>(x.primes.size(), Rat(0)));
  for (int i = 0; i < n; ++i)
    for (const auto& [p, e] : per_coord[i]) x.exponents[i][column[p]] = e;
  x.canonicalize();
  return x;
}

Real weil_height(const MonomialPoint& x, unsigned bits) {
  PrecisionGuard guard(bits);
  const int n = x.dim();
  Real h(0);
  for (size_t c = 0; c < x.primes.size(); ++c) {
    Rat worst(0);  // max(0, max_i(-e_iq)) exactly
    for (int i = 0; i < n; ++i) worst = std::max(worst, Rat(-x.exponents[i][c]));
    if (worst > 0) h += Real(worst) * log_prime(x.primes[c]);
  }
  Real arch(0);
  for (int i = 0; i < n; ++i) {
    Real row(0);
    for (size_t c = 0; c < x.primes.size(); ++c)
      if (x.exponents[i][c] != 0) row += Real(x.exponents[i][c]) * log_prime(x.primes[c]);
    arch = std::max(arch, row);
  }
  return h + arch;
}

std::optional<Int> weil_height_exact(const MonomialPoint& x) {
  const int n = x.dim();
  for (int i = 0; i < n; ++i) {
    if (x.torsion[i] != 0 && x.torsion[i] != Rat(1, 2)) return std::nullopt;
    for (const auto& e : x.exponents[i])
      if (denominator(e) != 1) return std::nullopt;
  }
  // Common denominator L = prod q^{max(0, max_i -e_iq)}; the homogeneous
  // coordinates [L : L*x_1 : ... : L*x_n] are then coprime integers.
  Int l = 1;
  std::vector<Int> worst(x.primes.size(), Int(0));
  for (size_t c = 0; c < x.primes.size(); ++c) {
    for (int i = 0; i < n; ++i) worst[c] = std::max(worst[c], Int(numerator(Rat(-x.exponents[i][c]))));
    l *= pow(x.primes[c], worst[c].convert_to<unsigned>());
  }
  Int best = l;
  for (int i = 0; i < n; ++i) {
    Int coord = 1;
    for (size_t c = 0; c < x.primes.size(); ++c) {
      Int e = numerator(x.exponents[i][c]) + worst[c];
      coord *= pow(x.primes[c], e.convert_to<unsigned>());
    }
    best = std::max(best, coord);
  }
  return best;
}

MonomialPoint monomial_image(const IntMatrix& b, const MonomialPoint& x) {
  const int n = x.dim();
  if (b.dim() != n) fail(ErrorKind::Dimension, "matrix/point dimension mismatch");
  MonomialPoint y;
  y.primes = x.primes;
  y.exponents.assign(n, std::vector<Rat>(x.primes.size(), Rat(0)));
  y.torsion.assign(n, Rat(0));
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      if (b.at(i, k) == 0) continue;
      Rat factor(b.at(i, k));
      for (size_t c = 0; c < x.primes.size(); ++c)
        y.exponents[i][c] += factor * x.exponents[k][c];
      y.torsion[i] += factor * x.torsion[k];
    }
  }
  y.canonicalize();
  return y;
}

ZeroCycle preimage_cycle(const IntMatrix& m, const MonomialPoint& x) {
  const int n = x.dim();
  if (m.dim() != n) fail(ErrorKind::Dimension, "matrix/point dimension mismatch");
  Int d = det(m);
  if (d == 0) fail(ErrorKind::Singular, "preimage requires a nonsingular matrix");

  // Exponents: the unique rational solution of M * F = E.
  IntMatrix adj = adjugate(m);
  std::vector<std::vector<Rat>> f(n, std::vector<Rat>(x.primes.size(), Rat(0)));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      if (adj.at(i, k) == 0) continue;
      Rat factor(adj.at(i, k));
      for (size_t c = 0; c < x.primes.size(); ++c) f[i][c] += factor * x.exponents[k][c];
    }
  for (auto& row : f)
    for (auto& e : row) e /= Rat(d);

  // Torsion sheets: with U*M*V = D, the solutions of M t = tau (mod 1) are
  // t = V * s, s_i = (frac((U tau)_i) + j_i) / d_i for j_i in [0, d_i).
  SmithForm smith = smith_normal_form(m);
  std::vector<Rat> u_tau(n, Rat(0));
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k)
      if (smith.u.at(i, k) != 0) u_tau[i] += Rat(smith.u.at(i, k)) * x.torsion[k];
    u_tau[i] = frac_mod1(u_tau[i]);
  }

  ZeroCycle cycle;
  std::vector<Int> sheet(n, Int(0));
  for (;;) {
    MonomialPoint y;
    y.primes = x.primes;
    y.exponents = f;
    y.torsion.assign(n, Rat(0));
    for (int k = 0; k < n; ++k) {
      Rat s = (u_tau[k] + Rat(sheet[k])) / Rat(smith.d.at(k, k));
      for (int i = 0; i < n; ++i)
        if (smith.v.at(i, k) != 0) y.torsion[i] += Rat(smith.v.at(i, k)) * s;
    }
    y.canonicalize();
    cycle.terms.emplace_back(Int(1), std::move(y));

    int pos = 0;
    while (pos < n && sheet[pos] == smith.d.at(pos, pos) - 1) sheet[pos++] = 0;
    if (pos == n) break;
    ++sheet[pos];
  }
  std::sort(cycle.terms.begin(), cycle.terms.end(),
            [](const auto& a, const auto& b) { return a.second < b.second; });
  if (cycle.total_multiplicity() != abs(d))
    fail(ErrorKind::Internal, "preimage count does not match |det M|");
  return cycle;
}

ZeroCycle corr_image_cycle(const MonomialCorrespondence& f, const MonomialPoint& x) {
  std::map<MonomialPoint, Int> merged;
  for (const auto& [mult, y] : preimage_cycle(f.m, x).terms) merged[monomial_image(f.n, y)] += mult;
  ZeroCycle cycle;
  for (auto& [point, mult] : merged)
    if (mult != 0) cycle.terms.emplace_back(mult, point);
  return cycle;
}

Real cycle_height(const ZeroCycle& c, unsigned bits) {
  PrecisionGuard guard(bits);
  Real h(0);
  for (const auto& [mult, point] : c.terms) h += Real(mult) * weil_height(point, bits);
  return h;
}

namespace {

// limsup h_p^{1/p} estimator. Stable height ratios converge geometrically;
// a negative leading eigenvalue alternates the heights with period 2, so
// the lag-2 ratio is tried next; under complex eigenvalue rotation both
// oscillate and the growth rate is read off peak-to-peak instead.
Real estimate_alpha(const std::vector<Real>& h) {
  const size_t n = h.size();
  if (n == 1) return h[0];

  Real best_band(-1), best_estimate(0);
  for (size_t lag = 1; lag <= 2 && n >= 2 * lag + 1; ++lag) {
    size_t window = std::min<size_t>(5, n - lag);
    Real lo(0), hi(0);
    bool first = true;
    for (size_t i = n - window; i < n; ++i) {
      Real ratio = h[i] / h[i - lag];
      if (first || ratio < lo) lo = ratio;
      if (first || ratio > hi) hi = ratio;
      first = false;
    }
    if (lo <= 0) continue;
    Real band = hi / lo - 1;
    Real estimate = pow(h[n - 1] / h[n - 1 - lag], Real(1) / Real(static_cast<unsigned>(lag)));
    if (band <= Real(1) / Real(200)) return estimate;
    if (best_band < 0 || band < best_band) {
      best_band = band;
      best_estimate = estimate;
    }
  }
  // Polynomially modulated growth h_p ~ C p^r alpha^p (defective leading
  // eigenvalue) biases plain ratios by (1 + r/p); a least-squares fit of
  // log h_p = a + r log p + p log alpha with small integer r removes it.
  if (n >= 6) {
    size_t start = n > 12 ? n - 12 : 0;
    Real best_rms(-1), best_slope(0);
    for (int r = 0; r <= 4; ++r) {
      Real sx(0), sy(0), sxx(0), sxy(0);
      const Real count = Real(static_cast<unsigned>(n - start));
      for (size_t i = start; i < n; ++i) {
        Real x = Real(static_cast<unsigned>(i + 1));
        Real y = log(h[i]) - Real(r) * log(x);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
      }
      Real slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
      Real intercept = (sy - slope * sx) / count;
      Real rss(0);
      for (size_t i = start; i < n; ++i) {
        Real x = Real(static_cast<unsigned>(i + 1));
        Real e = log(h[i]) - Real(r) * log(x) - intercept - slope * x;
        rss += e * e;
      }
      Real rms = sqrt(rss / count);
      if (best_rms < 0 || rms < best_rms) {
        best_rms = rms;
        best_slope = slope;
      }
    }
    if (best_rms >= 0 && best_rms <= Real(1) / Real(100)) return exp(best_slope);
  }

  // A still-decaying oscillation beats the peak-to-peak read; keep the
  // best ratio estimate when its spread is moderate.
  if (best_band >= 0 && best_band <= Real(1) / Real(20)) return best_estimate;

  // Rough rate, then anchor both ends at local peaks of h_p / rate^p.
  Real rough = pow(h[n - 1] / h[0], Real(1) / Real(static_cast<unsigned>(n - 1)));
  if (rough <= 0) return pow(h[n - 1], Real(1) / Real(static_cast<unsigned>(n)));
  Real log_rough = log(rough);
  auto peak = [&](size_t begin, size_t end) {
    size_t best = begin;
    Real best_score = log(h[begin]) - Real(static_cast<unsigned>(begin + 1)) * log_rough;
    for (size_t i = begin + 1; i < end; ++i) {
      Real score = log(h[i]) - Real(static_cast<unsigned>(i + 1)) * log_rough;
      if (score > best_score) {
        best = i;
        best_score = score;
      }
    }
    return best;
  };
  size_t head = peak(0, std::min<size_t>(8, n));
  size_t tail = peak(n > 8 ? n - 8 : 0, n);
  if (tail <= head) return pow(h[n - 1], Real(1) / Real(static_cast<unsigned>(n)));
  return pow(h[tail] / h[head], Real(1) / Real(static_cast<unsigned>(tail - head)));
}

void finish_series(HeightSeries& series, const MonomialCorrespondence& f, unsigned bits) {
  PrecisionGuard guard(bits);
  series.bits_used = bits;
  bool all_zero = true;
  for (const auto& v : series.values) all_zero = all_zero && v == 0;
  unsigned candidate_bits = bits;
  for (;;) {
    try {
      series.candidates = arithmetic_degree_candidates(f.m, f.n, candidate_bits).values;
      break;
    } catch (const Error& e) {
      unsigned next = next_precision(candidate_bits);
      if (e.kind() != ErrorKind::Precision || next == 0) throw;
      candidate_bits = next;
    }
  }
  if (all_zero) {
    series.torsion_orbit = true;
    series.alpha = Real(1);
  } else {
    series.alpha = estimate_alpha(series.values);
  }
  // Nearest candidate, reported only when within 5% relative tolerance.
  Real best_dist(-1);
  Real best_candidate(0);
  for (const auto& c : series.candidates) {
    Real dist = abs(series.alpha - c);
    if (best_dist < 0 || dist < best_dist) {
      best_dist = dist;
      best_candidate = c;
    }
  }
  if (best_dist >= 0 && best_dist <= std::max(best_candidate, Real(1)) / Real(20))
    series.matched_candidate = best_candidate;
}

}  // namespace

HeightSeries orbit_heights_fast(const MonomialCorrespondence& f, const MonomialPoint& x,
                                unsigned p_max, unsigned bits) {
  if (p_max < 1) fail(ErrorKind::Invalid, "p_max must be >= 1");
  if (x.dim() != f.dim()) fail(ErrorKind::Dimension, "point/correspondence dimension mismatch");
  PrecisionGuard guard(bits);
  HeightSeries series;
  const IntMatrix p_matrix = reduction_matrix(f);
  MonomialPoint y = x;
  y.canonicalize();
  for (unsigned p = 1; p <= p_max; ++p) {
    y = monomial_image(p_matrix, y);
    series.values.push_back(weil_height(y, bits));
  }
  finish_series(series, f, bits);
  return series;
}

HeightSeries orbit_heights_bruteforce(const MonomialCorrespondence& f, const MonomialPoint& x,
                                      unsigned p_max, unsigned bits, size_t cycle_cap) {
  if (p_max < 1) fail(ErrorKind::Invalid, "p_max must be >= 1");
  if (x.dim() != f.dim()) fail(ErrorKind::Dimension, "point/correspondence dimension mismatch");
  PrecisionGuard guard(bits);
  HeightSeries series;
  ZeroCycle cycle;
  {
    MonomialPoint y = x;
    y.canonicalize();
    cycle.terms.emplace_back(Int(1), std::move(y));
  }
  for (unsigned p = 1; p <= p_max; ++p) {
    std::map<MonomialPoint, Int> merged;
    size_t expansion = 0;
    for (const auto& [mult, point] : cycle.terms) {
      for (const auto& [m2, image] : corr_image_cycle(f, point).terms) {
        merged[image] += mult * m2;
        if (++expansion > cycle_cap)
          fail(ErrorKind::Limit, "brute-force cycle exceeded the size cap");
      }
    }
    ZeroCycle next;
    for (auto& [point, mult] : merged)
      if (mult != 0) next.terms.emplace_back(mult, point);
    cycle = std::move(next);
    series.values.push_back(cycle_height(cycle, bits));
  }
  finish_series(series, f, bits);
  return series;
}

std::vector<Rat> parse_point(const std::string& text) {
  auto parse_rat = [](std::string tok) -> Rat {
    try {
      return Rat(tok);
    } catch (const std::exception&) {
      fail(ErrorKind::Parse, "invalid rational entry '" + tok + "'");
    }
  };

  std::vector<Rat> coords;
  size_t first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) fail(ErrorKind::Parse, "empty point input");
  if (text[first] == '[') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
      fail(ErrorKind::Parse, std::string("invalid point JSON: ") + e.what());
    }
    if (!j.is_array() || j.empty()) fail(ErrorKind::Parse, "point JSON must be a nonempty array");
    for (const auto& e : j) {
      if (e.is_number_integer())
        coords.emplace_back(e.get<long long>());
      else if (e.is_string())
        coords.push_back(parse_rat(e.get<std::string>()));
      else
        fail(ErrorKind::Parse, "point entries must be integers or rational strings");
    }
  } else {
    std::string cleaned = text;
    for (auto& ch : cleaned)
      if (ch == ',') ch = ' ';
    std::istringstream stream(cleaned);
    std::string tok;
    while (stream >> tok) coords.push_back(parse_rat(tok));
    if (coords.empty()) fail(ErrorKind::Parse, "empty point input");
  }
  return coords;
}

}  // namespace monodyn
