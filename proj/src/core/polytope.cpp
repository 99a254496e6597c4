#include "polytope.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace monodyn {

namespace {

constexpr int kMaxDim = 5;

// ---------------------------------------------------------------------------
// Exact phase-1 simplex (Bland's rule) deciding c in conv(points).
// Feasibility of: sum lambda_i * p_i = c, sum lambda_i = 1, lambda >= 0.
// ---------------------------------------------------------------------------
bool in_convex_hull(const LatticePoint& c, const std::vector<const LatticePoint*>& points) {
  if (points.empty()) return false;
  const int rows = static_cast<int>(c.size()) + 1;
  const int m = static_cast<int>(points.size());
  const int cols = m + rows + 1;  // lambdas, artificials, rhs

  std::vector<std::vector<Rat>> t(rows + 1, std::vector<Rat>(cols));
  for (int i = 0; i < rows - 1; ++i) {
    for (int j = 0; j < m; ++j) t[i][j] = Rat((*points[j])[i]);
    t[i][cols - 1] = Rat(c[i]);
  }
  for (int j = 0; j < m; ++j) t[rows - 1][j] = 1;
  t[rows - 1][cols - 1] = 1;

  // Make the rhs nonnegative, install artificial basis, build the cost row.
  std::vector<int> basis(rows);
  for (int i = 0; i < rows; ++i) {
    if (t[i][cols - 1] < 0)
      for (int j = 0; j < cols; ++j) t[i][j] = -t[i][j];
    t[i][m + i] = 1;
    basis[i] = m + i;
    for (int j = 0; j < cols; ++j)
      if (j < m || j == cols - 1) t[rows][j] -= t[i][j];
  }

  for (;;) {
    int enter = -1;
    for (int j = 0; j < cols - 1; ++j)
      if (t[rows][j] < 0) {
        enter = j;
        break;  // Bland: smallest entering index
      }
    if (enter < 0) break;
    int leave = -1;
    Rat best;
    for (int i = 0; i < rows; ++i) {
      if (t[i][enter] <= 0) continue;
      Rat ratio = t[i][cols - 1] / t[i][enter];
      if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave < 0) fail(ErrorKind::Internal, "unbounded phase-1 simplex");
    Rat pivot = t[leave][enter];
    for (int j = 0; j < cols; ++j) t[leave][j] /= pivot;
    for (int i = 0; i <= rows; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      Rat f = t[i][enter];
      for (int j = 0; j < cols; ++j) t[i][j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }
  return t[rows][cols - 1] == 0;  // objective reached zero
}

std::vector<LatticePoint> extreme_points(std::vector<LatticePoint> points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  if (points.size() <= 2) return points;  // distinct points, pairwise extreme

  std::vector<LatticePoint> out;
  std::vector<const LatticePoint*> others;
  for (size_t i = 0; i < points.size(); ++i) {
    others.clear();
    for (size_t j = 0; j < points.size(); ++j)
      if (j != i) others.push_back(&points[j]);
    if (!in_convex_hull(points[i], others)) out.push_back(points[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Facet enumeration over a small extreme-point set.
// ---------------------------------------------------------------------------
struct Facet {
  std::vector<Int> normal;  // outward: <normal, p> <= offset for all points
  Int offset;
  std::vector<int> incident;  // indices into the vertex list
};

// Scratch space for the facet scan; the inner loop runs over C(m, n)
// subsets and per-call allocation of mpz matrices dominates otherwise.
struct NormalScratch {
  std::vector<std::vector<Int>> w;
  explicit NormalScratch(int n) : w(std::max(n - 1, 1), std::vector<Int>(std::max(n - 1, 1))) {}
};

// Integer normal orthogonal to the n-1 row vectors (generalized cross
// product via cofactors); zero when the rows are dependent.
void orthogonal_vector(const std::vector<std::vector<Int>>& rows, int n, NormalScratch& scratch,
                       std::vector<Int>& u) {
  for (int drop = 0; drop < n; ++drop) {
    auto& w = scratch.w;
    for (int i = 0; i < n - 1; ++i) {
      int cj = 0;
      for (int j = 0; j < n; ++j) {
        if (j == drop) continue;
        w[i][cj++] = rows[i][j];
      }
    }
    // Bareiss determinant of the (n-1)x(n-1) minor
    Int sign = 1, prev = 1;
    int mdim = n - 1;
    Int d = 0;
    if (mdim == 0) {
      d = 1;
    } else {
      bool singular = false;
      for (int k = 0; k + 1 < mdim && !singular; ++k) {
        if (w[k][k] == 0) {
          int pivot = -1;
          for (int i = k + 1; i < mdim; ++i)
            if (w[i][k] != 0) {
              pivot = i;
              break;
            }
          if (pivot < 0) {
            singular = true;
            break;
          }
          std::swap(w[k], w[pivot]);
          sign = -sign;
        }
        for (int i = k + 1; i < mdim; ++i) {
          for (int j = k + 1; j < mdim; ++j) w[i][j] = (w[i][j] * w[k][k] - w[i][k] * w[k][j]) / prev;
          w[i][k] = 0;
        }
        prev = w[k][k];
      }
      d = singular ? Int(0) : sign * w[mdim - 1][mdim - 1];
    }
    u[drop] = (drop & 1) ? -d : d;
  }
}

std::vector<Facet> enumerate_facets(const std::vector<LatticePoint>& verts, int n) {
  const int m = static_cast<int>(verts.size());
  std::map<std::pair<std::vector<Int>, Int>, std::vector<int>> seen;
  std::vector<unsigned long long> facet_masks;  // incident sets of found facets

  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<std::vector<Int>> rows(n - 1, std::vector<Int>(n));
  NormalScratch scratch(n);
  std::vector<Int> u(n);
  const bool use_masks = m <= 64;
  for (;;) {
    bool covered = false;
    if (use_masks) {
      unsigned long long subset_mask = 0;
      for (int i = 0; i < n; ++i) subset_mask |= 1ULL << idx[i];
      for (unsigned long long fm : facet_masks)
        if ((subset_mask & fm) == subset_mask) {
          covered = true;
          break;
        }
    }
    if (covered) {
      int pos = n - 1;
      while (pos >= 0 && idx[pos] == m - n + pos) --pos;
      if (pos < 0) break;
      ++idx[pos];
      for (int i = pos + 1; i < n; ++i) idx[i] = idx[i - 1] + 1;
      continue;
    }
    for (int i = 1; i < n; ++i)
      for (int j = 0; j < n; ++j) rows[i - 1][j] = verts[idx[i]][j] - verts[idx[0]][j];
    orthogonal_vector(rows, n, scratch, u);
    bool zero = std::all_of(u.begin(), u.end(), [](const Int& v) { return v == 0; });
    if (!zero) {
      Int c = 0;
      for (int j = 0; j < n; ++j) c += u[j] * verts[idx[0]][j];
      // Orient and test the supporting condition with early exit.
      int side = 0;  // -1 means some point below, +1 above
      bool supporting = true;
      for (int i = 0; i < m && supporting; ++i) {
        Int s = -c;
        for (int j = 0; j < n; ++j) s += u[j] * verts[i][j];
        if (s == 0) continue;
        int sg = s > 0 ? 1 : -1;
        if (side == 0)
          side = sg;
        else if (side != sg)
          supporting = false;
      }
      if (supporting) {
        if (side > 0) {
          for (auto& v : u) v = -v;
          c = -c;
        }
        Int g = c;
        for (const auto& v : u) g = gcd(g, v);
        if (g < 0) g = -g;
        if (g > 1) {
          for (auto& v : u) v /= g;
          c /= g;
        }
        auto key = std::make_pair(u, c);
        if (!seen.count(key)) {
          std::vector<int> incident;
          unsigned long long mask = 0;
          for (int i = 0; i < m; ++i) {
            Int s = -c;
            for (int j = 0; j < n; ++j) s += u[j] * verts[i][j];
            if (s == 0) {
              incident.push_back(i);
              if (use_masks) mask |= 1ULL << i;
            }
          }
          if (use_masks) facet_masks.push_back(mask);
          seen.emplace(std::move(key), std::move(incident));
        }
      }
    }
    // next combination
    int pos = n - 1;
    while (pos >= 0 && idx[pos] == m - n + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int i = pos + 1; i < n; ++i) idx[i] = idx[i - 1] + 1;
  }

  std::vector<Facet> facets;
  facets.reserve(seen.size());
  for (auto& [key, incident] : seen)
    facets.push_back(Facet{key.first, key.second, std::move(incident)});
  return facets;
}

// Affine rank of the point set (dimension of its affine hull).
int affine_rank(const std::vector<LatticePoint>& verts, int n) {
  if (verts.size() <= 1) return 0;
  std::vector<std::vector<Rat>> rows;
  for (size_t i = 1; i < verts.size(); ++i) {
    std::vector<Rat> r(n);
    for (int j = 0; j < n; ++j) r[j] = Rat(verts[i][j] - verts[0][j]);
    rows.push_back(std::move(r));
  }
  int rank = 0;
  for (int col = 0; col < n && rank < static_cast<int>(rows.size()); ++col) {
    int pivot = -1;
    for (int i = rank; i < static_cast<int>(rows.size()); ++i)
      if (rows[i][col] != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    std::swap(rows[rank], rows[pivot]);
    for (int i = rank + 1; i < static_cast<int>(rows.size()); ++i) {
      if (rows[i][col] == 0) continue;
      Rat f = rows[i][col] / rows[rank][col];
      for (int j = col; j < n; ++j) rows[i][j] -= f * rows[rank][j];
    }
    ++rank;
  }
  return rank;
}

// Star decomposition from verts[base]: sum over facets missing the base of
// (1/n) * |<u, base> - c| / |u_j| * vol_{n-1}(facet projected along j).
Rat volume_rec(const std::vector<LatticePoint>& verts, int n, bool base_last) {
  if (verts.size() <= static_cast<size_t>(n)) return 0;  // too few points for full dim
  if (n == 1) {
    Int lo = verts[0][0], hi = verts[0][0];
    for (const auto& v : verts) {
      lo = std::min(lo, v[0]);
      hi = std::max(hi, v[0]);
    }
    return Rat(hi - lo);
  }
  if (affine_rank(verts, n) < n) return 0;

  const int base = base_last ? static_cast<int>(verts.size()) - 1 : 0;
  Rat total(0);
  for (const auto& facet : enumerate_facets(verts, n)) {
    Int height = -facet.offset;
    for (int j = 0; j < n; ++j) height += facet.normal[j] * verts[base][j];
    if (height == 0) continue;  // base lies on this facet
    int drop = 0;
    while (facet.normal[drop] == 0) ++drop;

    std::vector<LatticePoint> proj;
    proj.reserve(facet.incident.size());
    for (int idx : facet.incident) {
      LatticePoint q;
      q.reserve(n - 1);
      for (int j = 0; j < n; ++j)
        if (j != drop) q.push_back(verts[idx][j]);
      proj.push_back(std::move(q));
    }
    Rat slab = Rat(abs(height)) / Rat(abs(facet.normal[drop]));
    total += slab * volume_rec(proj, n - 1, base_last);
  }
  return total / Rat(Int(n));
}

void check_points(const std::vector<LatticePoint>& points) {
  if (points.empty()) fail(ErrorKind::Invalid, "empty point set");
  size_t dim = points[0].size();
  if (dim < 1 || dim > kMaxDim)
    fail(ErrorKind::Dimension, "ambient dimension must be between 1 and " + std::to_string(kMaxDim));
  for (const auto& p : points)
    if (p.size() != dim) fail(ErrorKind::Dimension, "mixed ambient dimensions in point set");
}

}  // namespace

LatticePolytope LatticePolytope::hull(const std::vector<LatticePoint>& points) {
  check_points(points);
  LatticePolytope p;
  p.dim_ = static_cast<int>(points[0].size());
  p.vertices_ = extreme_points(points);
  return p;
}

LatticePolytope LatticePolytope::simplex(int n) {
  std::vector<LatticePoint> pts(static_cast<size_t>(n) + 1, LatticePoint(n, Int(0)));
  for (int i = 0; i < n; ++i) pts[i + 1][i] = 1;
  return hull(pts);
}

LatticePolytope LatticePolytope::dilate(const Int& factor) const {
  if (factor <= 0) fail(ErrorKind::Invalid, "dilation factor must be positive");
  LatticePolytope p;
  p.dim_ = dim_;
  p.vertices_ = vertices_;
  for (auto& v : p.vertices_)
    for (auto& x : v) x *= factor;
  std::sort(p.vertices_.begin(), p.vertices_.end());
  return p;
}

LatticePolytope minkowski_sum(const LatticePolytope& p, const LatticePolytope& q) {
  if (p.ambient_dim() != q.ambient_dim())
    fail(ErrorKind::Dimension, "Minkowski sum requires equal ambient dimension");
  std::vector<LatticePoint> sums;
  sums.reserve(p.vertices().size() * q.vertices().size());
  for (const auto& a : p.vertices())
    for (const auto& b : q.vertices()) {
      LatticePoint s(a.size());
      for (size_t j = 0; j < a.size(); ++j) s[j] = a[j] + b[j];
      sums.push_back(std::move(s));
    }
  return LatticePolytope::hull(sums);
}

Rat volume(const LatticePolytope& p) { return volume_rec(p.vertices(), p.ambient_dim(), false); }

Rat volume_alt(const LatticePolytope& p) { return volume_rec(p.vertices(), p.ambient_dim(), true); }

Rat mixed_volume(const std::vector<LatticePolytope>& bodies) {
  if (bodies.empty()) fail(ErrorKind::Invalid, "mixed volume of an empty list");
  const int n = bodies[0].ambient_dim();
  if (static_cast<int>(bodies.size()) != n)
    fail(ErrorKind::Dimension, "mixed volume requires exactly n bodies in R^n");
  for (const auto& b : bodies)
    if (b.ambient_dim() != n) fail(ErrorKind::Dimension, "mixed bodies of unequal dimension");

  // Collapse repeated bodies; the polarization then runs over multisets.
  std::vector<LatticePolytope> distinct;
  std::vector<int> count;
  for (const auto& b : bodies) {
    auto it = std::find(distinct.begin(), distinct.end(), b);
    if (it == distinct.end()) {
      distinct.push_back(b);
      count.push_back(1);
    } else {
      ++count[it - distinct.begin()];
    }
  }
  const int k = static_cast<int>(distinct.size());

  std::vector<std::vector<Int>> binom(n + 1, std::vector<Int>(n + 1, Int(0)));
  for (int i = 0; i <= n; ++i) {
    binom[i][0] = 1;
    for (int j = 1; j <= i; ++j)
      binom[i][j] = binom[i - 1][j - 1] + (j <= i - 1 ? binom[i - 1][j] : Int(0));
  }

  Rat total(0);
  std::vector<int> take(k, 0);
  for (;;) {
    // advance the multi-index (skip the all-zero multiset)
    int pos = 0;
    while (pos < k && take[pos] == count[pos]) take[pos++] = 0;
    if (pos == k) break;
    ++take[pos];

    int size = std::accumulate(take.begin(), take.end(), 0);
    LatticePolytope sum;
    bool first = true;
    for (int i = 0; i < k; ++i) {
      if (take[i] == 0) continue;
      LatticePolytope part = take[i] == 1 ? distinct[i] : distinct[i].dilate(Int(take[i]));
      sum = first ? part : minkowski_sum(sum, part);
      first = false;
    }
    Int weight = 1;
    for (int i = 0; i < k; ++i) weight *= binom[count[i]][take[i]];
    Rat term = Rat(weight) * volume(sum);
    if ((n - size) & 1) term = -term;
    total += term;
  }

  Int nfact = 1;
  for (int i = 2; i <= n; ++i) nfact *= i;
  return total / Rat(nfact);
}

}  // namespace monodyn
