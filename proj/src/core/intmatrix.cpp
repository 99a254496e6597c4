#include "intmatrix.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <sstream>

namespace monodyn {

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Int>>& rows) {
  if (rows.empty()) fail(ErrorKind::Dimension, "matrix must have at least one row");
  int n = static_cast<int>(rows.size());
  IntMatrix m(n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n)
      fail(ErrorKind::Dimension, "matrix must be square; row " + std::to_string(i) +
                                     " has " + std::to_string(rows[i].size()) + " entries, expected " +
                                     std::to_string(n));
    for (int j = 0; j < n; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
  if (n_ != rhs.n_) fail(ErrorKind::Dimension, "matrix product dimension mismatch");
  IntMatrix out(n_);
  for (int i = 0; i < n_; ++i)
    for (int k = 0; k < n_; ++k) {
      const Int& aik = at(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < n_; ++j) out.at(i, j) += aik * rhs.at(k, j);
    }
  return out;
}

void IntMatrix::swap_rows(int a, int b) {
  if (a == b) return;
  for (int j = 0; j < n_; ++j) std::swap(at(a, j), at(b, j));
}

void IntMatrix::swap_cols(int a, int b) {
  if (a == b) return;
  for (int i = 0; i < n_; ++i) std::swap(at(i, a), at(i, b));
}

void IntMatrix::add_row(int a, int b, const Int& c) {
  for (int j = 0; j < n_; ++j) at(a, j) += c * at(b, j);
}

void IntMatrix::add_col(int a, int b, const Int& c) {
  for (int i = 0; i < n_; ++i) at(i, a) += c * at(i, b);
}

void IntMatrix::negate_row(int a) {
  for (int j = 0; j < n_; ++j) at(a, j) = -at(a, j);
}

std::string IntMatrix::to_text() const {
  std::ostringstream os;
  for (int i = 0; i < n_; ++i) {
    if (i) os << "; ";
    for (int j = 0; j < n_; ++j) {
      if (j) os << ' ';
      os << at(i, j);
    }
  }
  return os.str();
}

Int det(const IntMatrix& a) {
  int n = a.dim();
  IntMatrix w = a;
  Int sign = 1;
  Int prev = 1;
  for (int k = 0; k + 1 < n; ++k) {
    if (w.at(k, k) == 0) {
      int pivot = -1;
      for (int i = k + 1; i < n; ++i)
        if (w.at(i, k) != 0) {
          pivot = i;
          break;
        }
      if (pivot < 0) return 0;
      w.swap_rows(k, pivot);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j)
        w.at(i, j) = (w.at(i, j) * w.at(k, k) - w.at(i, k) * w.at(k, j)) / prev;
      w.at(i, k) = 0;
    }
    prev = w.at(k, k);
  }
  return sign * w.at(n - 1, n - 1);
}

namespace {

Int minor_det(const IntMatrix& a, int skip_row, int skip_col) {
  int n = a.dim();
  if (n == 1) return 1;  // empty minor
  IntMatrix m(n - 1);
  int mi = 0;
  for (int i = 0; i < n; ++i) {
    if (i == skip_row) continue;
    int mj = 0;
    for (int j = 0; j < n; ++j) {
      if (j == skip_col) continue;
      m.at(mi, mj) = a.at(i, j);
      ++mj;
    }
    ++mi;
  }
  return det(m);
}

}  // namespace

IntMatrix adjugate(const IntMatrix& a) {
  int n = a.dim();
  IntMatrix adj(n);
  if (n == 1) {
    adj.at(0, 0) = 1;
    return adj;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Int c = minor_det(a, i, j);
      if ((i + j) & 1) c = -c;
      adj.at(j, i) = c;  // transpose of the cofactor matrix
    }
  return adj;
}

IntMatrix mat_pow(const IntMatrix& a, unsigned p) {
  IntMatrix result = IntMatrix::identity(a.dim());
  IntMatrix base = a;
  while (p > 0) {
    if (p & 1u) result = result * base;
    p >>= 1u;
    if (p) base = base * base;
  }
  return result;
}

SmithForm smith_normal_form(const IntMatrix& a) {
  int n = a.dim();
  if (det(a) == 0) fail(ErrorKind::Singular, "smith_normal_form requires a nonsingular matrix");

  SmithForm s{IntMatrix::identity(n), a, IntMatrix::identity(n)};
  IntMatrix& d = s.d;

  for (int t = 0; t < n; ++t) {
    for (;;) {
      // Pivot on the smallest-magnitude nonzero entry of the trailing block.
      int pi = -1, pj = -1;
      for (int i = t; i < n; ++i)
        for (int j = t; j < n; ++j) {
          if (d.at(i, j) == 0) continue;
          if (pi < 0 || abs(d.at(i, j)) < abs(d.at(pi, pj))) {
            pi = i;
            pj = j;
          }
        }
      if (pi < 0) fail(ErrorKind::Internal, "rank deficiency in smith_normal_form");
      if (pi != t) {
        d.swap_rows(t, pi);
        s.u.swap_rows(t, pi);
      }
      if (pj != t) {
        d.swap_cols(t, pj);
        s.v.swap_cols(t, pj);
      }

      const Int& pivot = d.at(t, t);
      bool reduced = true;
      for (int i = t + 1; i < n; ++i) {
        if (d.at(i, t) == 0) continue;
        Int q = d.at(i, t) / pivot;  // truncated; remainder strictly smaller than pivot
        if (q != 0) {
          d.add_row(i, t, -q);
          s.u.add_row(i, t, -q);
        }
        if (d.at(i, t) != 0) reduced = false;
      }
      for (int j = t + 1; j < n; ++j) {
        if (d.at(t, j) == 0) continue;
        Int q = d.at(t, j) / pivot;
        if (q != 0) {
          d.add_col(j, t, -q);
          s.v.add_col(j, t, -q);
        }
        if (d.at(t, j) != 0) reduced = false;
      }
      if (!reduced) continue;  // a smaller pivot appeared; repeat

      // Pivot must divide every entry of the remaining block for the
      // divisibility chain; if not, fold the offending row in and retry.
      bool divides = true;
      for (int i = t + 1; i < n && divides; ++i)
        for (int j = t + 1; j < n && divides; ++j)
          if (d.at(i, j) % pivot != 0) {
            d.add_row(t, i, 1);
            s.u.add_row(t, i, 1);
            divides = false;
          }
      if (divides) break;
    }
    if (d.at(t, t) < 0) {
      d.negate_row(t);
      s.u.negate_row(t);
    }
  }
  return s;
}

IntPolynomial char_poly(const IntMatrix& a) {
  int n = a.dim();
  // Faddeev-LeVerrier: c[n] = 1, M_1 = A, c[n-k] = -tr(A*M_k)/k with
  // M_{k+1} = A*M_k + c[n-k]*I. Divisions are exact for integer input.
  std::vector<Rat> c(static_cast<size_t>(n) + 1);
  c[n] = 1;
  std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n));  // running M_k
  for (int i = 0; i < n; ++i) m[i][i] = 1;                  // M_0 = I
  for (int k = 1; k <= n; ++k) {
    std::vector<std::vector<Rat>> am(n, std::vector<Rat>(n));
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < n; ++l) {
        if (a.at(i, l) == 0) continue;
        Rat ail(a.at(i, l));
        for (int j = 0; j < n; ++j) am[i][j] += ail * m[l][j];
      }
    Rat tr(0);
    for (int i = 0; i < n; ++i) tr += am[i][i];
    Rat ck = -tr / Rat(Int(k));
    c[n - k] = ck;
    for (int i = 0; i < n; ++i) am[i][i] += ck;
    m = std::move(am);
  }
  IntPolynomial p;
  p.coeffs.resize(static_cast<size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    if (denominator(c[k]) != 1) fail(ErrorKind::Internal, "char_poly produced a non-integer coefficient");
    p.coeffs[k] = numerator(c[k]);
  }
  return p;
}

namespace {

Int parse_int_entry(const std::string& tok) {
  try {
    return Int(tok);
  } catch (const std::exception&) {
    fail(ErrorKind::Parse, "invalid integer entry '" + tok + "'");
  }
}

IntMatrix parse_matrix_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    fail(ErrorKind::Parse, std::string("invalid matrix JSON: ") + e.what());
  }
  if (!j.is_array() || j.empty()) fail(ErrorKind::Parse, "matrix JSON must be a nonempty array of rows");
  std::vector<std::vector<Int>> rows;
  for (const auto& row : j) {
    if (!row.is_array()) fail(ErrorKind::Parse, "matrix JSON rows must be arrays");
    std::vector<Int> r;
    for (const auto& e : row) {
      if (e.is_number_integer())
        r.emplace_back(e.get<long long>());
      else if (e.is_string())
        r.push_back(parse_int_entry(e.get<std::string>()));
      else
        fail(ErrorKind::Parse, "matrix JSON entries must be integers or decimal strings");
    }
    rows.push_back(std::move(r));
  }
  return IntMatrix::from_rows(rows);
}

}  // namespace

IntMatrix parse_matrix(const std::string& text) {
  size_t first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) fail(ErrorKind::Parse, "empty matrix input");
  if (text[first] == '[') return parse_matrix_json(text);

  std::vector<std::vector<Int>> rows;
  std::string row_text;
  std::istringstream stream(text);
  while (std::getline(stream, row_text, ';')) {
    for (auto& ch : row_text)
      if (ch == ',') ch = ' ';
    std::istringstream row_stream(row_text);
    std::vector<Int> row;
    std::string tok;
    while (row_stream >> tok) row.push_back(parse_int_entry(tok));
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.empty()) fail(ErrorKind::Parse, "empty matrix input");
  return IntMatrix::from_rows(rows);
}

std::string matrix_to_json(const IntMatrix& a) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < a.dim(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < a.dim(); ++j) row.push_back(a.at(i, j).str());
    rows.push_back(std::move(row));
  }
  return rows.dump();
}

}  // namespace monodyn
