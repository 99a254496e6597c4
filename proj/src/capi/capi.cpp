// extern-C surface of the shared library: opaque handles over the core
// types, exceptions mapped to status codes, thread-local error text.
#include "monodyn/monodyn.h"

#include <cstring>
#include <new>
#include <string>

#include "core/degrees.hpp"
#include "core/ensemble.hpp"
#include "core/heights.hpp"
#include "core/intmatrix.hpp"
#include "core/serialize.hpp"

using namespace monodyn;

struct monodyn_matrix {
  IntMatrix value;
};

namespace {

thread_local std::string g_last_error;

monodyn_status status_of(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return MONODYN_ERR_PARSE;
    case ErrorKind::Singular: return MONODYN_ERR_SINGULAR;
    case ErrorKind::Dimension: return MONODYN_ERR_DIMENSION;
    case ErrorKind::Integrality: return MONODYN_ERR_INTEGRALITY;
    case ErrorKind::Precision: return MONODYN_ERR_PRECISION;
    case ErrorKind::Limit: return MONODYN_ERR_LIMIT;
    case ErrorKind::Invalid: return MONODYN_ERR_INVALID;
    case ErrorKind::Internal: return MONODYN_ERR_INTERNAL;
  }
  return MONODYN_ERR_INTERNAL;
}

template <typename F>
monodyn_status guarded(F&& f) {
  try {
    g_last_error.clear();
    f();
    return MONODYN_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return MONODYN_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return MONODYN_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

const IntMatrix& deref(const monodyn_matrix* m, const char* name) {
  if (!m) fail(ErrorKind::Invalid, std::string(name) + " is null");
  return m->value;
}

void require_out(const void* p) {
  if (!p) fail(ErrorKind::Invalid, "output pointer is null");
}

unsigned effective_bits(unsigned bits) { return bits == 0 ? 128 : bits; }

}  // namespace

extern "C" {

const char* monodyn_version(void) { return "0.1.0"; }

const char* monodyn_last_error(void) { return g_last_error.c_str(); }

void monodyn_free_string(char* s) { delete[] s; }

monodyn_status monodyn_matrix_parse(const char* text, monodyn_matrix** out) {
  return guarded([&] {
    require_out(out);
    if (!text) fail(ErrorKind::Invalid, "matrix text is null");
    *out = new monodyn_matrix{parse_matrix(text)};
  });
}

void monodyn_matrix_free(monodyn_matrix* m) { delete m; }

int monodyn_matrix_dim(const monodyn_matrix* m) { return m ? m->value.dim() : 0; }

monodyn_status monodyn_matrix_to_json(const monodyn_matrix* m, char** out) {
  return guarded([&] {
    require_out(out);
    *out = dup_string(matrix_to_json(deref(m, "matrix")));
  });
}

monodyn_status monodyn_matrix_det(const monodyn_matrix* m, char** decimal_out) {
  return guarded([&] {
    require_out(decimal_out);
    *decimal_out = dup_string(det(deref(m, "matrix")).str());
  });
}

monodyn_status monodyn_matrix_adjugate(const monodyn_matrix* m, monodyn_matrix** out) {
  return guarded([&] {
    require_out(out);
    *out = new monodyn_matrix{adjugate(deref(m, "matrix"))};
  });
}

monodyn_status monodyn_matrix_pow(const monodyn_matrix* m, unsigned p, monodyn_matrix** out) {
  return guarded([&] {
    require_out(out);
    *out = new monodyn_matrix{mat_pow(deref(m, "matrix"), p)};
  });
}

monodyn_status monodyn_matrix_smith(const monodyn_matrix* m, monodyn_matrix** u, monodyn_matrix** d,
                                    monodyn_matrix** v) {
  return guarded([&] {
    require_out(u);
    require_out(d);
    require_out(v);
    SmithForm s = smith_normal_form(deref(m, "matrix"));
    *u = new monodyn_matrix{std::move(s.u)};
    *d = new monodyn_matrix{std::move(s.d)};
    *v = new monodyn_matrix{std::move(s.v)};
  });
}

monodyn_status monodyn_matrix_char_poly(const monodyn_matrix* m, char** json_out) {
  return guarded([&] {
    require_out(json_out);
    *json_out = dup_string(char_poly_to_json(char_poly(deref(m, "matrix"))));
  });
}

monodyn_status monodyn_reduction_matrix(const monodyn_matrix* m, const monodyn_matrix* n,
                                        monodyn_matrix** out) {
  return guarded([&] {
    require_out(out);
    MonomialCorrespondence f(deref(m, "M"), deref(n, "N"));
    *out = new monodyn_matrix{reduction_matrix(f)};
  });
}

monodyn_status monodyn_eigen_moduli(const monodyn_matrix* m, unsigned precision_bits,
                                    char** json_out) {
  return guarded([&] {
    require_out(json_out);
    *json_out =
        dup_string(eigen_moduli_to_json(eigen_moduli(deref(m, "matrix"), effective_bits(precision_bits))));
  });
}

monodyn_status monodyn_dynamical_degrees(const monodyn_matrix* m, const monodyn_matrix* n,
                                         unsigned precision_bits, char** json_out) {
  return guarded([&] {
    require_out(json_out);
    DynDegReport report =
        dynamical_degrees_auto(deref(m, "M"), deref(n, "N"), effective_bits(precision_bits));
    *json_out = dup_string(dyndeg_to_json(report));
  });
}

monodyn_status monodyn_degree_candidates(const monodyn_matrix* m, const monodyn_matrix* n,
                                         unsigned precision_bits, char** json_out) {
  return guarded([&] {
    require_out(json_out);
    CandidateSet set =
        arithmetic_degree_candidates(deref(m, "M"), deref(n, "N"), effective_bits(precision_bits));
    *json_out = dup_string(candidates_to_json(set));
  });
}

monodyn_status monodyn_map_degree(const monodyn_matrix* a, int k, char** decimal_out) {
  return guarded([&] {
    require_out(decimal_out);
    *decimal_out = dup_string(map_degree(deref(a, "matrix"), k).str());
  });
}

monodyn_status monodyn_corr_degree(const monodyn_matrix* m, const monodyn_matrix* n, int k,
                                   unsigned p, char** decimal_out) {
  return guarded([&] {
    require_out(decimal_out);
    MonomialCorrespondence f(deref(m, "M"), deref(n, "N"));
    *decimal_out = dup_string(corr_degree(f, k, p).str());
  });
}

monodyn_status monodyn_degree_table(const monodyn_matrix* m, const monodyn_matrix* n,
                                    unsigned p_max, int k, monodyn_format format, char** out) {
  return guarded([&] {
    require_out(out);
    MonomialCorrespondence f(deref(m, "M"), deref(n, "N"));
    if (k < -1 || k > f.dim()) fail(ErrorKind::Invalid, "k must be -1 (all) or in [0, n]");
    DegreeTable table = degree_table(f, p_max);
    *out = dup_string(format == MONODYN_FORMAT_CSV ? degree_table_to_csv(table, k)
                                                   : degree_table_to_json(table, k));
  });
}

monodyn_status monodyn_asymptotics(const monodyn_matrix* m, const monodyn_matrix* n, int l,
                                   unsigned p_max, unsigned precision_bits, char** json_out) {
  return guarded([&] {
    require_out(json_out);
    MonomialCorrespondence f(deref(m, "M"), deref(n, "N"));
    AsymptoticsReport report = asymptotics_report(f, l, p_max, effective_bits(precision_bits));
    *json_out = dup_string(asymptotics_to_json(report));
  });
}

monodyn_status monodyn_orbit_heights(const monodyn_matrix* m, const monodyn_matrix* n,
                                     const char* point, unsigned p_max, unsigned precision_bits,
                                     monodyn_orbit_mode mode, monodyn_format format, char** out) {
  return guarded([&] {
    require_out(out);
    if (!point) fail(ErrorKind::Invalid, "point is null");
    MonomialCorrespondence f(deref(m, "M"), deref(n, "N"));
    MonomialPoint x = factor_point(parse_point(point));
    unsigned bits = effective_bits(precision_bits);
    switch (mode) {
      case MONODYN_ORBIT_FAST: {
        HeightSeries series = orbit_heights_fast(f, x, p_max, bits);
        *out = dup_string(format == MONODYN_FORMAT_CSV ? height_series_to_csv(series)
                                                       : height_series_to_json(series));
        return;
      }
      case MONODYN_ORBIT_BRUTEFORCE: {
        HeightSeries series = orbit_heights_bruteforce(f, x, p_max, bits);
        *out = dup_string(format == MONODYN_FORMAT_CSV ? height_series_to_csv(series)
                                                       : height_series_to_json(series));
        return;
      }
      case MONODYN_ORBIT_CHECK: {
        if (format == MONODYN_FORMAT_CSV)
          fail(ErrorKind::Invalid, "check mode reports JSON only");
        HeightSeries fast = orbit_heights_fast(f, x, p_max, bits);
        HeightSeries brute = orbit_heights_bruteforce(f, x, p_max, bits);
        *out = dup_string(orbit_check_to_json(fast, brute, bits));
        return;
      }
    }
    fail(ErrorKind::Invalid, "unknown orbit mode");
  });
}

monodyn_status monodyn_check(const monodyn_matrix* m, const monodyn_matrix* n, const char* point,
                             unsigned p_max, unsigned precision_bits, int* all_pass,
                             char** json_out) {
  return guarded([&] {
    require_out(json_out);
    MonomialCorrespondence f(deref(m, "M"), deref(n, "N"));
    std::vector<Rat> coords;
    if (point) coords = parse_point(point);
    CheckReport report =
        run_check(f, point ? &coords : nullptr, p_max, effective_bits(precision_bits));
    if (all_pass) *all_pass = report.all_pass ? 1 : 0;
    *json_out = dup_string(check_to_json(report));
  });
}

monodyn_status monodyn_ensemble(unsigned dim, unsigned count, unsigned bound,
                                unsigned long long seed, unsigned p_max, unsigned orbit_p_max,
                                unsigned precision_bits, int* all_pass, char** json_out) {
  return guarded([&] {
    require_out(json_out);
    EnsembleConfig config;
    config.dim = static_cast<int>(dim);
    config.count = static_cast<int>(count);
    config.bound = static_cast<long>(bound);
    config.seed = seed;
    config.p_max = p_max;
    config.orbit_p_max = orbit_p_max;
    config.bits = effective_bits(precision_bits);
    EnsembleReport report = run_ensemble(config);
    if (all_pass) *all_pass = report.all_pass ? 1 : 0;
    *json_out = dup_string(ensemble_to_json(report));
  });
}

}  // extern "C"
