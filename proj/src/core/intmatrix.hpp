// Exact square integer matrices and the integer linear algebra used by the
// dynamics pipeline: determinants, adjugates, powers, Smith normal form,
// characteristic polynomials.
#pragma once

#include <string>
#include <vector>

#include "numeric.hpp"
#include "polynomial.hpp"

namespace monodyn {

class IntMatrix {
 public:
  IntMatrix() = default;
  explicit IntMatrix(int n) : n_(n), entries_(static_cast<size_t>(n) * n) {
    if (n < 1) fail(ErrorKind::Dimension, "matrix dimension must be >= 1");
  }

  static IntMatrix identity(int n) {
    IntMatrix m(n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  static IntMatrix from_rows(const std::vector<std::vector<Int>>& rows);

  int dim() const { return n_; }

  Int& at(int i, int j) { return entries_[static_cast<size_t>(i) * n_ + j]; }
  const Int& at(int i, int j) const { return entries_[static_cast<size_t>(i) * n_ + j]; }

  IntMatrix operator*(const IntMatrix& rhs) const;
  bool operator==(const IntMatrix& rhs) const = default;

  void swap_rows(int a, int b);
  void swap_cols(int a, int b);
  // row[a] += c * row[b]; col[a] += c * col[b]
  void add_row(int a, int b, const Int& c);
  void add_col(int a, int b, const Int& c);
  void negate_row(int a);

  std::string to_text() const;  // "a b; c d"

 private:
  int n_ = 0;
  std::vector<Int> entries_;
};

// Exact determinant by fraction-free Bareiss elimination.
Int det(const IntMatrix& a);

// Transposed cofactor matrix: a * adjugate(a) == det(a) * identity. The 1x1
// adjugate is [1] (the empty minor has determinant 1).
IntMatrix adjugate(const IntMatrix& a);

// a^p by repeated squaring; a^0 is the identity.
IntMatrix mat_pow(const IntMatrix& a, unsigned p);

struct SmithForm {
  IntMatrix u, d, v;  // u*a*v == d
};

// Smith normal form of a nonsingular matrix: u, v unimodular, d diagonal
// with positive entries d1 | d2 | ... | dn. Rejects singular input.
SmithForm smith_normal_form(const IntMatrix& a);

// Monic characteristic polynomial det(tI - a), ascending coefficients,
// by the Faddeev-LeVerrier recurrence over exact rationals.
IntPolynomial char_poly(const IntMatrix& a);

// Accepts the row text format ("2 1; 1 1", entries split on whitespace or
// ',') or a JSON array of arrays (entries as integers or decimal strings).
IntMatrix parse_matrix(const std::string& text);

std::string matrix_to_json(const IntMatrix& a);

}  // namespace monodyn
