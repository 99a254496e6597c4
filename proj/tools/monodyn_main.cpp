// Batch CLI over the shared-library C API. Subcommands:
//   dyndeg | degrees | orbit | ensemble | check
// Machine-readable output (JSON/CSV) on stdout or atomically to a file.
#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <string>

#include "monodyn/monodyn.h"

namespace {

// Exit codes: 0 ok; 1 a check/ensemble reported failures; otherwise the
// error class below. 64 is reserved for command-line usage errors.
int exit_code(monodyn_status status) {
  switch (status) {
    case MONODYN_OK: return 0;
    case MONODYN_ERR_SINGULAR: return 2;
    case MONODYN_ERR_PARSE: return 3;
    case MONODYN_ERR_INTEGRALITY: return 4;
    case MONODYN_ERR_PRECISION: return 5;
    case MONODYN_ERR_LIMIT: return 6;
    case MONODYN_ERR_DIMENSION: return 7;
    case MONODYN_ERR_INVALID: return 8;
    case MONODYN_ERR_INTERNAL: return 9;
  }
  return 9;
}

struct MatrixHandle {
  monodyn_matrix* m = nullptr;
  ~MatrixHandle() { monodyn_matrix_free(m); }
};

struct StringHandle {
  char* s = nullptr;
  ~StringHandle() { monodyn_free_string(s); }
};

[[noreturn]] void die(monodyn_status status) {
  std::cerr << "monodyn: " << monodyn_last_error() << "\n";
  std::exit(exit_code(status));
}

void parse_matrix_or_die(const std::string& text, MatrixHandle& handle) {
  monodyn_status status = monodyn_matrix_parse(text.c_str(), &handle.m);
  if (status != MONODYN_OK) die(status);
}

// Write-to-temp-then-rename so failures never leave partial output files.
void emit(const std::string& payload, const std::string& path) {
  if (path.empty()) {
    std::fwrite(payload.data(), 1, payload.size(), stdout);
    if (!payload.empty() && payload.back() != '\n') std::fputc('\n', stdout);
    return;
  }
  std::string tmp = path + ".tmp";
  std::FILE* f = std::fopen(tmp.c_str(), "wb");
  if (!f) {
    std::cerr << "monodyn: cannot open " << tmp << "\n";
    std::exit(9);
  }
  bool ok = std::fwrite(payload.data(), 1, payload.size(), f) == payload.size();
  if (ok && !payload.empty() && payload.back() != '\n') ok = std::fputc('\n', f) != EOF;
  ok = std::fclose(f) == 0 && ok;
  if (!ok || std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    std::cerr << "monodyn: failed to write " << path << "\n";
    std::exit(9);
  }
}

unsigned default_precision() {
  if (const char* env = std::getenv("MONODYN_PRECISION")) {
    long v = std::atol(env);
    if (v >= 53 && v <= 65536) return static_cast<unsigned>(v);
  }
  return 128;
}

monodyn_format to_format(const std::string& name) {
  return name == "csv" ? MONODYN_FORMAT_CSV : MONODYN_FORMAT_JSON;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dynamical invariants of monomial maps and correspondences"};
  app.set_version_flag("--version", monodyn_version());
  app.require_subcommand(1);

  std::string m_text, n_text, point_text, output, format = "json";
  unsigned p_max = 10, orbit_p_max = 25;
  unsigned precision = default_precision();
  int k = -1, l = -1;
  unsigned dim = 2, count = 50, bound = 3;
  unsigned long long seed = 1;
  bool brute = false, check_orbit = false;

  auto add_common = [&](CLI::App* cmd, bool needs_matrices) {
    if (needs_matrices) {
      cmd->add_option("-M", m_text, "matrix M (rows 'a b; c d' or JSON)")->required();
      cmd->add_option("-N", n_text, "matrix N")->required();
    }
    cmd->add_option("--precision", precision, "working precision in bits (env MONODYN_PRECISION)");
    cmd->add_option("--format", format, "output format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("-o,--output", output, "output path (written atomically)");
  };

  CLI::App* dyndeg = app.add_subcommand("dyndeg", "dynamical degrees lambda_0..lambda_n");
  add_common(dyndeg, true);

  CLI::App* degrees = app.add_subcommand("degrees", "exact degree table deg_k(f^p)");
  add_common(degrees, true);
  degrees->add_option("--pmax", p_max, "largest iterate");
  degrees->add_option("-k", k, "only this degree index (default: all)");
  degrees->add_option("-l", l, "emit the degree-growth asymptotics report at index l instead");

  CLI::App* orbit = app.add_subcommand("orbit", "orbit height series and arithmetic degree");
  add_common(orbit, true);
  orbit->add_option("-x", point_text, "torus point (rationals, e.g. \"2, -2/3\" or JSON)")
      ->required();
  orbit->add_option("--pmax", p_max, "largest iterate");
  orbit->add_flag("--bruteforce", brute, "iterate by cycle composition instead of phi(P^p)");
  orbit->add_flag("--check", check_orbit, "run both paths and report the identity diagnostic");

  CLI::App* ensemble = app.add_subcommand("ensemble", "seeded random-pair property checks");
  ensemble->add_option("--dim", dim, "matrix dimension");
  ensemble->add_option("--count", count, "number of sampled pairs");
  ensemble->add_option("--bound", bound, "entry bound (uniform in [-bound, bound])");
  ensemble->add_option("--seed", seed, "RNG seed");
  ensemble->add_option("--pmax", p_max, "degree-table depth");
  ensemble->add_option("--orbit-pmax", orbit_p_max, "orbit length for membership checks");
  add_common(ensemble, false);

  CLI::App* check = app.add_subcommand("check", "consistency battery for one correspondence");
  add_common(check, true);
  check->add_option("-x", point_text, "optional torus point for the orbit-height identity");
  check->add_option("--pmax", p_max, "iterate depth for the checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help/--version exit 0 through CLI11; real usage errors map to 64
    return app.exit(e) == 0 ? 0 : 64;
  }

  if (dyndeg->parsed()) {
    MatrixHandle m, n;
    parse_matrix_or_die(m_text, m);
    parse_matrix_or_die(n_text, n);
    if (format == "csv") {
      std::cerr << "monodyn: dyndeg reports JSON only\n";
      return 8;
    }
    StringHandle out;
    monodyn_status status = monodyn_dynamical_degrees(m.m, n.m, precision, &out.s);
    if (status != MONODYN_OK) die(status);
    emit(out.s, output);
    return 0;
  }

  if (degrees->parsed()) {
    MatrixHandle m, n;
    parse_matrix_or_die(m_text, m);
    parse_matrix_or_die(n_text, n);
    StringHandle out;
    if (l >= 0) {
      if (format == "csv") {
        std::cerr << "monodyn: the asymptotics report is JSON only\n";
        return 8;
      }
      monodyn_status status = monodyn_asymptotics(m.m, n.m, l, p_max, precision, &out.s);
      if (status != MONODYN_OK) die(status);
    } else {
      monodyn_status status = monodyn_degree_table(m.m, n.m, p_max, k, to_format(format), &out.s);
      if (status != MONODYN_OK) die(status);
    }
    emit(out.s, output);
    return 0;
  }

  if (orbit->parsed()) {
    MatrixHandle m, n;
    parse_matrix_or_die(m_text, m);
    parse_matrix_or_die(n_text, n);
    monodyn_orbit_mode mode = check_orbit ? MONODYN_ORBIT_CHECK
                              : brute     ? MONODYN_ORBIT_BRUTEFORCE
                                          : MONODYN_ORBIT_FAST;
    StringHandle out;
    monodyn_status status = monodyn_orbit_heights(m.m, n.m, point_text.c_str(), p_max, precision,
                                                  mode, to_format(format), &out.s);
    if (status != MONODYN_OK) die(status);
    emit(out.s, output);
    return 0;
  }

  if (ensemble->parsed()) {
    if (format == "csv") {
      std::cerr << "monodyn: ensemble reports JSON only\n";
      return 8;
    }
    StringHandle out;
    int all_pass = 0;
    monodyn_status status = monodyn_ensemble(dim, count, bound, seed, p_max, orbit_p_max,
                                             precision, &all_pass, &out.s);
    if (status != MONODYN_OK) die(status);
    emit(out.s, output);
    return all_pass ? 0 : 1;
  }

  if (check->parsed()) {
    MatrixHandle m, n;
    parse_matrix_or_die(m_text, m);
    parse_matrix_or_die(n_text, n);
    if (format == "csv") {
      std::cerr << "monodyn: check reports JSON only\n";
      return 8;
    }
    StringHandle out;
    int all_pass = 0;
    monodyn_status status = monodyn_check(m.m, n.m, point_text.empty() ? nullptr : point_text.c_str(),
                                          p_max, precision, &all_pass, &out.s);
    if (status != MONODYN_OK) die(status);
    emit(out.s, output);
    return all_pass ? 0 : 1;
  }

  return 64;
}
