#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pap/interval_set.hpp"
#include "pap/stepfn.hpp"

namespace pap {

/// Interval exchange transformation of [0, 1): atom [beta_i, beta_{i+1})
/// translates by gamma_i. Construction verifies that the translated atoms
/// tile [0, 1) exactly, so the map is a bijection; all operations below rely
/// on that invariant.
class Iet {
public:
  /// Validates the tiling invariant. Throws BadPartition for a malformed
  /// breakpoint chain and NotBijective (with a witness interval in the
  /// message) when the image atoms overlap or leave a gap.
  Iet(std::vector<Scalar> breakpoints, std::vector<Scalar> translations);

  static Iet identity();
  /// Rotation x -> x + angle (mod 1).
  static Iet rotation(const Scalar& angle);
  /// Atom lengths in domain order plus the permutation sending domain slot i
  /// to image slot perm[i].
  static Iet from_lengths(const std::vector<Scalar>& lengths, const std::vector<size_t>& perm);

  const std::vector<Scalar>& breakpoints() const { return cuts_; }
  const std::vector<Scalar>& translations() const { return shifts_; }
  size_t atom_count() const { return shifts_.size(); }

  /// Index of the atom containing x in [0, 1).
  size_t atom_of(const Scalar& x) const;
  Scalar evaluate(const Scalar& x) const;

  Iet inverse() const;
  /// g(f(x)): breakpoints refine to f's cuts plus f-preimages of g's cuts.
  static Iet compose(const Iet& g, const Iet& f);
  /// f^n, any integer n (negative via the inverse), square-and-multiply.
  static Iet power(const Iet& f, std::int64_t n);

  bool operator==(const Iet& o) const { return cuts_ == o.cuts_ && shifts_ == o.shifts_; }

private:
  std::vector<Scalar> cuts_;    // r+1 breakpoints, 0 .. 1
  std::vector<Scalar> shifts_;  // r translations

  struct Unchecked {};
  Iet(Unchecked, std::vector<Scalar> cuts, std::vector<Scalar> shifts)
      : cuts_(std::move(cuts)), shifts_(std::move(shifts)) {}
};

/// Pushforward of a density: (L_f phi) = phi o f^{-1}, computed exactly by
/// slicing phi at the atom boundaries, translating each slice, and
/// reassembling. Preserves the integral exactly.
StepFn transfer(const Iet& f, const StepFn& phi);

inline constexpr size_t kDefaultCellBudget = 1'000'000;

/// Birkhoff average (1/n) sum_{i<n} L_f^i phi, exact, with incremental
/// normalization. Throws ResourceCap when the normalized running sum exceeds
/// cell_budget cells.
StepFn birkhoff(const Iet& f, const StepFn& phi, size_t n,
                size_t cell_budget = kDefaultCellBudget);

/// Union over 0 <= n <= depth of f^{-n}(breakpoints), deduplicated, sorted.
std::vector<Scalar> boundary_orbit(const Iet& f, size_t depth);

/// Union of (p - delta, p + delta) over the given points, clipped to [0, 1)
/// and merged (open ends realized half-open with exact endpoints).
IntervalSet neighborhood(const std::vector<Scalar>& points, const Scalar& delta);

struct KeaneWitness {
  size_t breakpoint_index;  // i: the interior breakpoint whose orbit collides
  std::int64_t steps;       // n >= 1 with f^n(beta_i) == beta_j
  size_t hit_index;         // j
};

struct KeaneResult {
  bool pass;
  std::optional<KeaneWitness> witness;
};

/// Keane infinite-distinct-orbit probe: Fail with a witness when a forward
/// orbit of an interior breakpoint hits an interior breakpoint within depth
/// steps. Pass is finite-depth evidence for minimality, never a proof.
KeaneResult keane_check(const Iet& f, std::int64_t depth);

/// A closed refinement: [0, 1) splits into intervals permuted by f; cycles
/// are the orbits of that permutation. Indicators of cycle unions span the
/// invariant step densities.
struct CyclePartition {
  std::vector<Scalar> cuts;                     // refinement breakpoints, 0 .. 1
  std::vector<std::vector<size_t>> cycles;      // cell indices, one orbit per entry
  IntervalSet cycle_union(size_t cycle) const;  // the support of one cycle
};

/// Iterates the seed cut set (map breakpoints + extra_cuts) under f until
/// closed or depth exhausted; nullopt = NoClosureAtDepth (typical for
/// minimal irrational maps).
std::optional<CyclePartition> invariant_cycles(const Iet& f, size_t depth,
                                               const std::vector<Scalar>& extra_cuts = {});

/// Normalized indicator densities chi_A / m(A), one per cycle union; each is
/// an exact fixed point of the transfer operator.
std::vector<StepFn> cycle_densities(const CyclePartition& partition);

/// Conditional expectation of phi on the cycle sigma-field: constant
/// (integral / measure) on each cycle union. Exact transfer fixed point.
/// Throws NoFinitePartition when the refinement does not close within depth.
StepFn project_invariant(const Iet& f, const StepFn& phi, size_t depth,
                         const std::vector<Scalar>& extra_cuts = {});

/// The Keynes-Newton family: the normalized map
///   T(x) = (1/(1+beta)) * That(x (1+beta)),
/// where That adds 1 on [0, beta) and gamma (mod 1) on [beta, 1 + beta).
/// Requires 0 < beta < 1 and 0 < gamma < 1.
Iet keynes_newton(const Scalar& beta, const Scalar& gamma);

/// Maximal circular gap of the two-sided orbit {f^i(x) : |i| <= n} on [0, 1);
/// 1 for a single point. Small gaps are evidence of nomadicity.
Scalar nomadic_gap(const Iet& f, const Scalar& x, size_t n);

}  // namespace pap
