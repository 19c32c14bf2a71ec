#pragma once

#include <optional>
#include <vector>

#include "pap/geom2d.hpp"
#include "pap/scalar.hpp"

namespace pap {

inline constexpr size_t kDefaultCellBudget2d = 100'000;

/// Finite union of interior-disjoint convex polygons.
using PolySet = std::vector<ConvexPoly>;

mpq_class polyset_area(const PolySet& s);

/// Piecewise rotation: convex atoms with pairwise disjoint interiors, one
/// exact rotation per atom, inside an ambient rational rectangle Omega. The
/// extension to Omega fixes Omega \ X pointwise (X = union of atoms).
class PwRotation {
public:
  /// Validates: counts match, atoms pairwise interior-disjoint, every image
  /// atom inside the ambient.
  PwRotation(std::vector<ConvexPoly> atoms, std::vector<RotMap> maps, ConvexPoly ambient);

  const std::vector<ConvexPoly>& atoms() const { return atoms_; }
  const std::vector<RotMap>& maps() const { return maps_; }
  const ConvexPoly& ambient() const { return ambient_; }
  size_t atom_count() const { return atoms_.size(); }

  /// Exact m-a.e. invertibility: image atoms pairwise interior-disjoint and
  /// each image covered by X (area of image-within-X equals image area).
  bool is_invertible() const;

private:
  std::vector<ConvexPoly> atoms_;
  std::vector<RotMap> maps_;
  ConvexPoly ambient_;
};

/// Piecewise-constant density on convex cells with disjoint interiors;
/// implicit value 0 outside the listed cells. Zero-valued cells are dropped
/// on construction, so the empty cell list is the zero density.
class PolyDensity {
public:
  struct Cell {
    ConvexPoly poly;
    Scalar value;
  };

  PolyDensity() = default;
  /// check_disjoint verifies pairwise interior-disjointness exactly (full
  /// pairwise check; quadratic in the cell count).
  explicit PolyDensity(std::vector<Cell> cells, bool check_disjoint = true);

  static PolyDensity indicator(const ConvexPoly& support, const Scalar& height = Scalar(1));

  const std::vector<Cell>& cells() const { return cells_; }
  size_t cell_count() const { return cells_.size(); }
  bool is_zero() const { return cells_.empty(); }

  /// Integral over the plane: sum of value * area, exact.
  Scalar mass() const;
  Scalar mass_abs() const;

  PolyDensity scale(const Scalar& alpha) const;

  void validate_disjoint() const;

private:
  std::vector<Cell> cells_;
};

/// alpha*a + beta*b as a single interior-disjoint arrangement, exact.
PolyDensity overlay_add(const PolyDensity& a, const PolyDensity& b, const Scalar& alpha = Scalar(1),
                        const Scalar& beta = Scalar(1), size_t cell_budget = kDefaultCellBudget2d);

/// Integral of |a - b|, exact.
Scalar l1_distance2d(const PolyDensity& a, const PolyDensity& b);

/// Transfer operator on densities for the extension of F to its ambient:
/// cell parts inside an atom are pushed through the atom's rotation, parts
/// outside X pass unchanged, and overlapping pushforward branches add.
/// Serial reference implementation.
PolyDensity transfer2d_serial(const PwRotation& f, const PolyDensity& density,
                              size_t cell_budget = kDefaultCellBudget2d);

/// Same contract as transfer2d_serial; the per-atom/per-cell pushforward is
/// data-parallel (OpenMP) with a deterministic reduction order, so results
/// are exactly identical to the serial reference.
PolyDensity transfer2d(const PwRotation& f, const PolyDensity& density,
                       size_t cell_budget = kDefaultCellBudget2d);

/// Birkhoff average (1/n) sum_{i<n} L^i density, exact.
PolyDensity birkhoff2d(const PwRotation& f, const PolyDensity& density, size_t n,
                       size_t cell_budget = kDefaultCellBudget2d);

/// One maximal straight piece of the jump set: |jump| with the exact squared
/// Euclidean length of the supporting segment (lengths themselves are
/// generally irrational).
struct JumpSegment {
  Scalar jump;          // |v_left - v_right| > 0
  mpq_class sq_length;  // squared length of the segment
};

/// Total variation of a piecewise-constant density: the jump-sum over the
/// exact edge arrangement (boundary against the implicit 0 included). The
/// exact decomposition is kept; the total is a float because edge lengths
/// can be irrational. exact_total() is available when every length is
/// rational (e.g. axis-aligned arrangements).
struct Variation2d {
  std::vector<JumpSegment> segments;

  double total() const;
  std::optional<Scalar> exact_total() const;
};

/// Throws DegenerateArrangement when two cells overlap with positive area.
Variation2d variation2d(const PolyDensity& density);

struct Attractor2dResult {
  PolySet set;
  std::optional<size_t> stabilized_depth;
  std::vector<mpq_class> area_trail;  // exact area at each depth, index 0 = area(X)

  bool stabilized() const { return stabilized_depth.has_value(); }
};

/// Iterated image of X clipped against the running set (so the sequence is
/// nested by construction); stabilization is exact area equality of
/// consecutive steps together with that containment.
Attractor2dResult attractor2d(const PwRotation& f, size_t max_depth,
                              size_t cell_budget = kDefaultCellBudget2d);

}  // namespace pap
