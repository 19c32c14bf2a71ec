#pragma once

#include <optional>
#include <vector>

#include "pap/iet.hpp"
#include "pap/interval_set.hpp"

namespace pap {

inline constexpr size_t kDefaultComponentBudget = 100'000;

/// Interval translation map of [0, 1): like an Iet but without the tiling
/// requirement — each image atom must stay inside [0, 1), images may overlap
/// or leave gaps, so the map is generally non-surjective.
class Itm {
public:
  Itm(std::vector<Scalar> breakpoints, std::vector<Scalar> translations);

  static Itm from_iet(const Iet& f) { return Itm(f.breakpoints(), f.translations()); }

  const std::vector<Scalar>& breakpoints() const { return cuts_; }
  const std::vector<Scalar>& translations() const { return shifts_; }
  size_t atom_count() const { return shifts_.size(); }

  Scalar evaluate(const Scalar& x) const;

  /// Image of a set: union over atoms of (S intersect atom) + gamma.
  IntervalSet image(const IntervalSet& s, size_t component_budget = kDefaultComponentBudget) const;

private:
  std::vector<Scalar> cuts_;
  std::vector<Scalar> shifts_;
};

/// f^n([0, 1)), exact.
IntervalSet image_iterate(const Itm& t, size_t n,
                          size_t component_budget = kDefaultComponentBudget);

struct AttractorResult {
  IntervalSet set;
  /// Depth N with f^{N+1}(X) == f^N(X) when stabilized.
  std::optional<size_t> stabilized_depth;
  /// The full (depth, set) length/component series, index = depth.
  std::vector<IntervalSet> trail;

  bool stabilized() const { return stabilized_depth.has_value(); }
};

/// Iterates f^n(X) until two consecutive images are exactly equal as sets or
/// max_depth is exhausted (then `set` is the deepest image, truncated).
AttractorResult attractor(const Itm& t, size_t max_depth,
                          size_t component_budget = kDefaultComponentBudget);

/// The induced map on the stabilized attractor, renormalized affinely onto
/// [0, 1) and returned as a validated Iet. Throws NotStabilized when the
/// attractor does not stabilize within max_depth and the deepest image is
/// longer than `resolution`; throws NullAttractor when it does not stabilize
/// and the deepest image's total length is <= resolution (the
/// measure-zero-attractor diagnostic; no invariant density can exist).
Iet reduce_to_fplus(const Itm& t, size_t max_depth, const Scalar& resolution = Scalar(0),
                    size_t component_budget = kDefaultComponentBudget);

/// Number of 2^-k grid boxes meeting the set, exact.
size_t box_count(const IntervalSet& s, unsigned k);

/// Least-squares slope of log(box count) vs log(2^k) over the given grid
/// exponents, covering f^depth(X). Diagnostic float only. Throws
/// StabilizedAttractor when the attractor stabilizes within depth (the set
/// is then a finite interval union of dimension 1).
double box_dim_estimate(const Itm& t, size_t depth, const std::vector<unsigned>& grid_exponents,
                        size_t component_budget = kDefaultComponentBudget);

}  // namespace pap
