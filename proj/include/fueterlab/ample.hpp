#pragma once

#include <random>
#include <utility>

#include <Eigen/Dense>

namespace fueterlab {

/// Data of the fiberwise ampleness test: a skew bilinear map
/// S(u,v) = sum_{i<j} u_i v_j S_ij with S_ji = -S_ij, and a linear map
/// L(u)v = sum_{ij} u_i v_j L_ij, constrained on the plane E = {x1 = 0}
/// (rows 2 and 3 of L are the constraint data).
struct AmpleData {
  // S23, S31, S12
  std::array<Eigen::Vector3d, 3> S;
  // L[i][j] = L_{(i+1)(j+1)}
  std::array<std::array<Eigen::Vector3d, 3>, 3> L;

  /// The three values tau(e_j, e_k) = S_jk + L_jk - L_kj determining the
  /// induced skew form.
  std::array<Eigen::Vector3d, 3> tau() const;

  static AmpleData random(std::mt19937_64& rng);
};

/// Sign of det(tau_1, tau_2, tau_3): +-1 identifies the component of the
/// nondegeneracy locus, 0 means degenerate.
int is_nondegenerate(const AmpleData& d);

/// Brute-force route: w perpendicular to every S(u,v) + L(u)v - L(v)u forces
/// w = 0 iff the three tau vectors span R^3 (rank test by SVD).
bool nondegenerate_oracle(const AmpleData& d);

/// Convex decomposition: L', L'' in the constraint slice with
/// L = (L' + L'')/2 and both carrying the requested determinant sign, t
/// doubled until both determinants clear margin 1.  Throws when
/// S23 + L23 - L32 = 0 (the slice misses the nondegeneracy locus entirely).
std::pair<AmpleData, AmpleData> convex_decompose(const AmpleData& d, int target_sign);

/// Reduce data posed over an arbitrary plane with unit normal n to the
/// normalized plane {x1 = 0} by an orthogonal change of basis.
AmpleData normalize_to_plane(const AmpleData& d, const Eigen::Vector3d& normal);

}  // namespace fueterlab
