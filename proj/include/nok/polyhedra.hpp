#pragma once

#include "nok/rational.hpp"

#include <optional>
#include <string>
#include <vector>

// Exact rational polyhedral cones and polytopes.
//
// Cones are kept in both representations: the H-representation they were
// built from (each row u means <u, x> >= 0) and a canonical V-representation
// (primitive integer rays, lexicographically sorted, taken orthogonal to the
// lineality space; lineality as a primitive reduced echelon basis). Two cones
// over the same lattice describe the same point set iff their canonical
// V-representations coincide.

namespace nok {

struct Lattice {
  std::string name;
  std::size_t rank = 0;
  bool operator==(const Lattice&) const = default;
};

struct LatticeVector {
  std::string lattice;
  Vec coords;
};

class LinearMap {
 public:
  LinearMap() = default;
  LinearMap(Mat matrix, Lattice domain, Lattice codomain);

  const Mat& matrix() const { return matrix_; }
  const Lattice& domain() const { return domain_; }
  const Lattice& codomain() const { return codomain_; }
  bool is_integral() const { return integral_; }
  /// Surjective as a map of lattices Z^n -> Z^k.
  bool is_surjective() const;
  Vec operator()(const Vec& x) const;

 private:
  Mat matrix_;
  Lattice domain_;
  Lattice codomain_;
  bool integral_ = true;
};

class RationalCone {
 public:
  RationalCone() = default;

  const Lattice& lattice() const { return lattice_; }
  const Mat& inequalities() const { return inequalities_; }
  const Mat& rays() const { return rays_; }
  const Mat& lineality() const { return lineality_; }
  /// Irredundant facet normals (canonical, sorted).
  const Mat& facets() const { return facets_; }
  /// Basis of the linear equations holding on the whole cone.
  const Mat& equations() const { return equations_; }

  std::size_t dim() const;
  bool contains(const Vec& x) const;
  /// Point-set equality.
  bool operator==(const RationalCone& other) const;

  friend RationalCone cone_from_inequalities(const Lattice& lattice, const Mat& inequalities);
  friend RationalCone cone_from_generators(const Lattice& lattice, const Mat& rays,
                                           const Mat& lineality);

 private:
  Lattice lattice_;
  Mat inequalities_;
  Mat rays_;
  Mat lineality_;
  Mat facets_;
  Mat equations_;
};

/// Double description from an H-representation {x : <u, x> >= 0}.
RationalCone cone_from_inequalities(const Lattice& lattice, const Mat& inequalities);
/// Same, with lattice-tagged vectors; rejects vectors from different lattices.
RationalCone cone_from_inequalities(const Lattice& lattice,
                                    const std::vector<LatticeVector>& inequalities);
/// cone(rays) + span(lineality).
RationalCone cone_from_generators(const Lattice& lattice, const Mat& rays,
                                  const Mat& lineality = {});

/// Intersection of two cones over the same lattice.
RationalCone intersect(const RationalCone& a, const RationalCone& b);
/// Image of a cone under a linear map.
RationalCone image(const RationalCone& cone, const LinearMap& map);
/// Preimage map^{-1}(target) intersected with cone.
RationalCone restrict_to_preimage(const RationalCone& cone, const LinearMap& map,
                                  const RationalCone& target);

/// True iff the lineality space is zero.
bool is_strongly_convex(const RationalCone& cone);

struct Face {
  RationalCone cone;
  std::size_t codim = 0;
  std::vector<std::size_t> ray_indices;  // into the parent cone's rays()
};

class FaceLattice {
 public:
  explicit FaceLattice(std::vector<Face> faces) : faces_(std::move(faces)) {}
  const std::vector<Face>& faces() const { return faces_; }
  std::size_t size() const { return faces_.size(); }
  /// faces[a] is a proper face of faces[b].
  bool precedes(std::size_t a, std::size_t b) const;
  std::optional<std::size_t> find(const RationalCone& cone) const;

 private:
  std::vector<Face> faces_;
};

/// Complete face lattice of a strongly convex cone, ordered by dimension and
/// then by ray index set.
FaceLattice faces(const RationalCone& cone);

struct HalfSpace {
  Vec normal;
  Rational offset;  // <normal, x> >= offset
};

/// base_point + Z-span(basis); basis rows are linearly independent.
struct AffineLattice {
  Vec base_point;
  Mat basis;
};

class RationalPolytope {
 public:
  RationalPolytope() = default;
  /// Polytope {x in space : all inequalities}. Throws ValidationError when
  /// the set is nonempty and unbounded.
  RationalPolytope(Lattice ambient, std::vector<HalfSpace> inequalities, AffineLattice space);
  /// Polytope in the full ambient lattice.
  static RationalPolytope full(Lattice ambient, std::vector<HalfSpace> inequalities);

  const Lattice& ambient_lattice() const { return ambient_; }
  const std::vector<HalfSpace>& inequalities() const { return inequalities_; }
  const AffineLattice& space() const { return space_; }

  /// Dimension of the polytope itself (its affine hull); -1 when empty.
  int dim() const { return dim_; }
  bool is_empty() const { return dim_ < 0; }
  /// Vertices in ambient coordinates, lexicographically sorted.
  Mat vertices() const;
  bool contains(const Vec& ambient_point) const;
  RationalPolytope dilate(const Integer& k) const;

  /// Local coordinates y with x = base_point + sum_i y_i basis_i.
  const Mat& local_normals() const { return local_normals_; }
  const Vec& local_offsets() const { return local_offsets_; }
  const Mat& local_vertices() const { return local_vertices_; }
  Vec to_ambient(const Vec& local) const;

 private:
  Lattice ambient_;
  std::vector<HalfSpace> inequalities_;
  AffineLattice space_;
  Mat local_normals_;
  Vec local_offsets_;
  Mat local_vertices_;
  int dim_ = -1;
};

/// Fiber map^{-1}(value) ∩ cone as a polytope over the direction lattice
/// ker(map) ∩ Z^n. Throws on non-integral or non-surjective maps and on
/// unbounded fibers.
RationalPolytope slice(const RationalCone& cone, const LinearMap& map, const Vec& value);

/// Points of the direction-lattice translate lying in p, ambient
/// coordinates, lexicographically sorted.
std::vector<LatticeVector> lattice_points(const RationalPolytope& p);
std::size_t count_lattice_points(const RationalPolytope& p);

/// Exact volume of p in its affine hull, normalized so that a fundamental
/// cell of (hull direction) ∩ (direction lattice) has volume 1. A point has
/// volume 1, the empty polytope volume 0.
Rational volume(const RationalPolytope& p);

/// Affine hull of p as a lattice: a lattice point of the hull is not
/// guaranteed, so the base point is the first vertex (local coordinates).
struct HullCoordinates {
  Vec origin;              // local coordinates of the origin of w-space
  Mat basis;               // local coordinates, lattice basis of hull directions
  Mat vertices;            // vertices in w-coordinates
};
HullCoordinates hull_coordinates(const RationalPolytope& p);

}  // namespace nok
