// Shared arbitrary-precision number types and error taxonomy.
#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <stdexcept>
#include <string>

namespace monodyn {

using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;
// Variable-precision float; precision is set per computation via PrecisionGuard.
using Real = boost::multiprecision::mpfr_float;

enum class ErrorKind {
  Parse,
  Singular,
  Dimension,
  Integrality,
  Precision,
  Limit,
  Invalid,
  Internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

// Sets the mpfr default precision (in bits) for the current thread and
// restores the previous value on scope exit. All Reals constructed inside
// the scope carry the requested precision.
class PrecisionGuard {
 public:
  explicit PrecisionGuard(unsigned bits)
      : saved_digits10_(Real::default_precision()) {
    if (bits < 24) bits = 24;
    // digits10 = ceil(bits * log10(2)) plus slack so round-trips do not chop.
    unsigned digits10 = static_cast<unsigned>((static_cast<unsigned long long>(bits) * 30103ULL) / 100000ULL) + 3;
    Real::default_precision(digits10);
  }
  ~PrecisionGuard() { Real::default_precision(saved_digits10_); }
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

 private:
  unsigned saved_digits10_;
};

inline Real to_real(const Int& v) { return Real(v); }
inline Real to_real(const Rat& v) { return Real(v); }

// Fractional part in [0, 1).
inline Rat frac_mod1(const Rat& q) {
  Int num = numerator(q), den = denominator(q);
  Int r = num % den;  // truncated division; sign of num
  if (r < 0) r += den;
  return Rat(r, den);
}

// 2^-e at the current working precision.
inline Real pow2(long e) {
  Real r(1);
  return ldexp(r, static_cast<long>(e));
}

}  // namespace monodyn
