// Exact lattice-polytope geometry: convex hulls, Minkowski sums, volumes
// and mixed volumes, all in rational arithmetic. Desk-scale: ambient
// dimension is capped at 5.
#pragma once

#include <vector>

#include "numeric.hpp"

namespace monodyn {

using LatticePoint = std::vector<Int>;

class LatticePolytope {
 public:
  // Convex hull: keeps exactly the extreme points. Rejects empty input,
  // mixed dimensions and ambient dimension outside [1, 5].
  static LatticePolytope hull(const std::vector<LatticePoint>& points);

  // Standard simplex conv{0, e_1, ..., e_n}.
  static LatticePolytope simplex(int n);

  int ambient_dim() const { return dim_; }
  const std::vector<LatticePoint>& vertices() const { return vertices_; }

  LatticePolytope dilate(const Int& factor) const;

  bool operator==(const LatticePolytope& o) const = default;

 private:
  int dim_ = 0;
  std::vector<LatticePoint> vertices_;  // extreme points, lexicographically sorted
};

LatticePolytope minkowski_sum(const LatticePolytope& p, const LatticePolytope& q);

// Euclidean volume as an exact rational; 0 for lower-dimensional polytopes.
Rat volume(const LatticePolytope& p);

// Same value by an independent star decomposition (different base vertex);
// used as a cross-check.
Rat volume_alt(const LatticePolytope& p);

// Mixed volume of exactly n bodies in R^n, normalized so that
// MV(P, ..., P) = volume(P), by inclusion-exclusion polarization. Repeated
// bodies are collapsed through binomial weights, and the volumes of the
// partial Minkowski sums are memoized per call.
Rat mixed_volume(const std::vector<LatticePolytope>& bodies);

}  // namespace monodyn
