#include "pap/iet.hpp"

#include <algorithm>
#include <numeric>

namespace pap {

namespace {

void check_breakpoints(const std::vector<Scalar>& cuts, size_t shift_count) {
  if (cuts.size() < 2 || shift_count + 1 != cuts.size()) {
    raise(Errc::BadPartition, "breakpoint/translation size mismatch");
  }
  if (!(cuts.front() == Scalar(0)) || !(cuts.back() == Scalar(1))) {
    raise(Errc::BadPartition, "breakpoints must run from 0 to 1");
  }
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (!(cuts[i] < cuts[i + 1])) {
      raise(Errc::BadPartition, "breakpoints not strictly increasing at index " + std::to_string(i));
    }
  }
}

std::vector<Scalar> sorted_unique(std::vector<Scalar> xs) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

}  // namespace

Iet::Iet(std::vector<Scalar> breakpoints, std::vector<Scalar> translations)
    : cuts_(std::move(breakpoints)), shifts_(std::move(translations)) {
  check_breakpoints(cuts_, shifts_.size());
  // The translated atoms must tile [0, 1) exactly.
  struct Image {
    Scalar lo, hi;
    size_t atom;
  };
  std::vector<Image> images;
  images.reserve(shifts_.size());
  for (size_t i = 0; i < shifts_.size(); ++i) {
    images.push_back({cuts_[i] + shifts_[i], cuts_[i + 1] + shifts_[i], i});
  }
  std::sort(images.begin(), images.end(), [](const Image& x, const Image& y) { return x.lo < y.lo; });
  Scalar cursor(0);
  for (const auto& img : images) {
    if (img.lo < cursor) {
      raise(Errc::NotBijective, "image atoms overlap on [" + img.lo.str() + ", " +
                                    min(cursor, img.hi).str() + ")");
    }
    if (cursor < img.lo) {
      raise(Errc::NotBijective,
            "image atoms leave a gap [" + cursor.str() + ", " + img.lo.str() + ")");
    }
    cursor = img.hi;
  }
  if (!(cursor == Scalar(1))) {
    raise(Errc::NotBijective, "image atoms leave a gap [" + cursor.str() + ", 1)");
  }
}

Iet Iet::identity() { return Iet(Unchecked{}, {Scalar(0), Scalar(1)}, {Scalar(0)}); }

Iet Iet::rotation(const Scalar& angle) {
  Scalar a = angle.mod_one();
  if (a.sign() == 0) return identity();
  Scalar cut = Scalar(1) - a;
  return Iet(Unchecked{}, {Scalar(0), cut, Scalar(1)}, {a, a - Scalar(1)});
}

Iet Iet::from_lengths(const std::vector<Scalar>& lengths, const std::vector<size_t>& perm) {
  if (lengths.empty() || perm.size() != lengths.size()) {
    raise(Errc::BadPartition, "lengths/permutation size mismatch");
  }
  std::vector<size_t> seen(perm.size(), 0);
  for (size_t p : perm) {
    if (p >= perm.size() || seen[p]++) raise(Errc::BadPartition, "not a permutation");
  }
  // Domain prefix sums.
  std::vector<Scalar> cuts{Scalar(0)};
  for (const auto& len : lengths) {
    if (!(len.sign() > 0)) raise(Errc::BadPartition, "atom lengths must be positive");
    cuts.push_back(cuts.back() + len);
  }
  // Image prefix sums in image order: slot j holds the atom with perm[i] == j.
  std::vector<size_t> atom_at_slot(perm.size());
  for (size_t i = 0; i < perm.size(); ++i) atom_at_slot[perm[i]] = i;
  std::vector<Scalar> image_start(perm.size());
  Scalar acc(0);
  for (size_t j = 0; j < perm.size(); ++j) {
    image_start[atom_at_slot[j]] = acc;
    acc += lengths[atom_at_slot[j]];
  }
  std::vector<Scalar> shifts;
  shifts.reserve(perm.size());
  for (size_t i = 0; i < perm.size(); ++i) shifts.push_back(image_start[i] - cuts[i]);
  return Iet(std::move(cuts), std::move(shifts));
}

size_t Iet::atom_of(const Scalar& x) const {
  if (x.sign() < 0 || !(x < Scalar(1))) raise(Errc::OutOfDomain, "point outside [0,1)");
  auto it = std::upper_bound(cuts_.begin(), cuts_.end(), x);
  return static_cast<size_t>(it - cuts_.begin()) - 1;
}

Scalar Iet::evaluate(const Scalar& x) const { return x + shifts_[atom_of(x)]; }

Iet Iet::inverse() const {
  struct Image {
    Scalar lo;
    size_t atom;
  };
  std::vector<Image> images;
  images.reserve(shifts_.size());
  for (size_t i = 0; i < shifts_.size(); ++i) images.push_back({cuts_[i] + shifts_[i], i});
  std::sort(images.begin(), images.end(), [](const Image& x, const Image& y) { return x.lo < y.lo; });
  std::vector<Scalar> cuts{Scalar(0)};
  std::vector<Scalar> shifts;
  for (const auto& img : images) {
    shifts.push_back(-shifts_[img.atom]);
    cuts.push_back(cuts_[img.atom + 1] + shifts_[img.atom]);
  }
  return Iet(Unchecked{}, std::move(cuts), std::move(shifts));
}

Iet Iet::compose(const Iet& g, const Iet& f) {
  Iet finv = f.inverse();
  std::vector<Scalar> cuts = f.cuts_;
  for (size_t j = 1; j + 1 < g.cuts_.size(); ++j) cuts.push_back(finv.evaluate(g.cuts_[j]));
  cuts = sorted_unique(std::move(cuts));
  std::vector<Scalar> shifts;
  shifts.reserve(cuts.size() - 1);
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    const Scalar& x = cuts[i];
    Scalar mid = f.evaluate(x);
    shifts.push_back(f.shifts_[f.atom_of(x)] + g.shifts_[g.atom_of(mid)]);
  }
  // Merge adjacent atoms with equal translation.
  std::vector<Scalar> mcuts{cuts.front()};
  std::vector<Scalar> mshifts;
  for (size_t i = 0; i < shifts.size(); ++i) {
    if (!mshifts.empty() && mshifts.back() == shifts[i]) {
      mcuts.back() = cuts[i + 1];
      continue;
    }
    mshifts.push_back(std::move(shifts[i]));
    mcuts.push_back(cuts[i + 1]);
  }
  return Iet(Unchecked{}, std::move(mcuts), std::move(mshifts));
}

Iet Iet::power(const Iet& f, std::int64_t n) {
  if (n < 0) return power(f.inverse(), -n);
  Iet result = identity();
  Iet base = f;
  std::uint64_t k = static_cast<std::uint64_t>(n);
  while (k > 0) {
    if (k & 1) result = compose(base, result);
    base = (k >>= 1) ? compose(base, base) : std::move(base);
  }
  return result;
}

StepFn transfer(const Iet& f, const StepFn& phi) {
  // Refine phi's cells at the atom boundaries, translate each slice, then
  // reassemble; bijectivity makes the translated slices tile [0, 1).
  struct Piece {
    Scalar lo, hi;
    const Scalar* value;
  };
  std::vector<Piece> pieces;
  const auto& cuts = phi.breakpoints();
  const auto& vals = phi.values();
  const auto& beta = f.breakpoints();
  size_t cell = 0;
  for (size_t atom = 0; atom + 1 < beta.size(); ++atom) {
    const Scalar& alo = beta[atom];
    const Scalar& ahi = beta[atom + 1];
    const Scalar& shift = f.translations()[atom];
    while (cell < vals.size() && cuts[cell + 1] <= alo) ++cell;
    for (size_t c = cell; c < vals.size() && cuts[c] < ahi; ++c) {
      Scalar lo = max(cuts[c], alo) + shift;
      Scalar hi = min(cuts[c + 1], ahi) + shift;
      pieces.push_back({std::move(lo), std::move(hi), &vals[c]});
    }
  }
  std::sort(pieces.begin(), pieces.end(),
            [](const Piece& x, const Piece& y) { return x.lo < y.lo; });
  std::vector<Scalar> rcuts;
  std::vector<Scalar> rvals;
  rcuts.reserve(pieces.size() + 1);
  rvals.reserve(pieces.size());
  rcuts.push_back(Scalar(0));
  for (auto& p : pieces) {
    rvals.push_back(*p.value);
    rcuts.push_back(std::move(p.hi));
  }
  return StepFn(std::move(rcuts), std::move(rvals));
}

StepFn birkhoff(const Iet& f, const StepFn& phi, size_t n, size_t cell_budget) {
  if (n == 0) raise(Errc::BadPartition, "birkhoff average needs n >= 1");
  StepFn sum = phi;
  StepFn current = phi;
  for (size_t i = 1; i < n; ++i) {
    current = transfer(f, current);
    sum = sum + current;
    if (sum.cell_count() > cell_budget) {
      raise(Errc::ResourceCap, "birkhoff sum exceeded " + std::to_string(cell_budget) +
                                   " cells at step " + std::to_string(i));
    }
  }
  return sum.scale(Scalar(1, static_cast<long>(n)));
}

std::vector<Scalar> boundary_orbit(const Iet& f, size_t depth) {
  Iet finv = f.inverse();
  std::vector<Scalar> all(f.breakpoints().begin(), f.breakpoints().end());
  std::vector<Scalar> level(f.breakpoints().begin(), f.breakpoints().end() - 1);
  for (size_t n = 0; n < depth; ++n) {
    for (auto& p : level) p = finv.evaluate(p);
    level = sorted_unique(std::move(level));
    all.insert(all.end(), level.begin(), level.end());
  }
  return sorted_unique(std::move(all));
}

IntervalSet neighborhood(const std::vector<Scalar>& points, const Scalar& delta) {
  if (!(delta.sign() > 0)) raise(Errc::BadPartition, "neighborhood radius must be positive");
  std::vector<Interval> parts;
  parts.reserve(points.size());
  for (const auto& p : points) {
    Scalar lo = max(p - delta, Scalar(0));
    Scalar hi = min(p + delta, Scalar(1));
    if (lo < hi) parts.push_back({std::move(lo), std::move(hi)});
  }
  return IntervalSet::from_intervals(std::move(parts));
}

KeaneResult keane_check(const Iet& f, std::int64_t depth) {
  if (depth < 1) raise(Errc::BadPartition, "depth must be >= 1");
  const auto& beta = f.breakpoints();
  size_t interior = beta.size() - 2;
  if (interior == 0) {
    // A single-atom IET is the identity: every breakpoint is fixed.
    return {false, KeaneWitness{0, 1, 0}};
  }
  for (size_t i = 1; i + 1 < beta.size(); ++i) {
    Scalar x = beta[i];
    for (std::int64_t n = 1; n <= depth; ++n) {
      x = f.evaluate(x);
      for (size_t j = 1; j + 1 < beta.size(); ++j) {
        if (x == beta[j]) return {false, KeaneWitness{i, n, j}};
      }
    }
  }
  return {true, std::nullopt};
}

IntervalSet CyclePartition::cycle_union(size_t cycle) const {
  std::vector<Interval> parts;
  for (size_t cell : cycles.at(cycle)) parts.push_back({cuts[cell], cuts[cell + 1]});
  return IntervalSet::from_intervals(std::move(parts));
}

std::optional<CyclePartition> invariant_cycles(const Iet& f, size_t depth,
                                               const std::vector<Scalar>& extra_cuts) {
  std::vector<Scalar> cuts(f.breakpoints().begin(), f.breakpoints().end());
  for (const auto& c : extra_cuts) {
    if (c.sign() < 0 || Scalar(1) < c) raise(Errc::BadPartition, "extra cut outside [0,1]");
    cuts.push_back(c);
  }
  cuts = sorted_unique(std::move(cuts));
  // Close the cut set under images of cell endpoints: the image of a cell
  // [c_i, c_{i+1}) is [c_i + g, c_{i+1} + g) for the translation g of the
  // atom containing it; both endpoints must be cuts for f to permute cells.
  bool closed = false;
  for (size_t round = 0; round < depth && !closed; ++round) {
    std::vector<Scalar> fresh;
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
      const Scalar& g = f.translations()[f.atom_of(cuts[i])];
      for (const Scalar* e : {&cuts[i], &cuts[i + 1]}) {
        Scalar image = *e + g;
        if (!std::binary_search(cuts.begin(), cuts.end(), image)) fresh.push_back(std::move(image));
      }
    }
    if (fresh.empty()) {
      closed = true;
      break;
    }
    cuts.insert(cuts.end(), fresh.begin(), fresh.end());
    cuts = sorted_unique(std::move(cuts));
  }
  if (!closed) {
    // One more scan: the last insertion round may itself be closed.
    closed = true;
    for (size_t i = 0; i + 1 < cuts.size() && closed; ++i) {
      const Scalar& g = f.translations()[f.atom_of(cuts[i])];
      closed = std::binary_search(cuts.begin(), cuts.end(), cuts[i] + g) &&
               std::binary_search(cuts.begin(), cuts.end(), cuts[i + 1] + g);
    }
    if (!closed) return std::nullopt;
  }

  size_t cells = cuts.size() - 1;
  std::vector<size_t> target(cells);
  for (size_t i = 0; i < cells; ++i) {
    Scalar image = cuts[i] + f.translations()[f.atom_of(cuts[i])];
    auto it = std::lower_bound(cuts.begin(), cuts.end(), image);
    target[i] = static_cast<size_t>(it - cuts.begin());
  }
  std::vector<char> visited(cells, 0);
  CyclePartition part;
  part.cuts = std::move(cuts);
  for (size_t start = 0; start < cells; ++start) {
    if (visited[start]) continue;
    std::vector<size_t> cycle;
    size_t cur = start;
    while (!visited[cur]) {
      visited[cur] = 1;
      cycle.push_back(cur);
      cur = target[cur];
    }
    part.cycles.push_back(std::move(cycle));
  }
  return part;
}

std::vector<StepFn> cycle_densities(const CyclePartition& partition) {
  std::vector<StepFn> out;
  out.reserve(partition.cycles.size());
  for (size_t k = 0; k < partition.cycles.size(); ++k) {
    IntervalSet support = partition.cycle_union(k);
    Scalar inv_measure = Scalar(1) / support.total_length();
    StepFn density;
    for (const auto& iv : support.parts()) {
      density = density + StepFn::indicator(iv.a, iv.b, inv_measure);
    }
    out.push_back(std::move(density));
  }
  return out;
}

StepFn project_invariant(const Iet& f, const StepFn& phi, size_t depth,
                         const std::vector<Scalar>& extra_cuts) {
  auto part = invariant_cycles(f, depth, extra_cuts);
  if (!part) {
    raise(Errc::NoFinitePartition, "cut refinement did not close within depth " + std::to_string(depth));
  }
  StepFn result;
  for (size_t k = 0; k < part->cycles.size(); ++k) {
    IntervalSet support = part->cycle_union(k);
    Scalar mass;
    for (const auto& iv : support.parts()) {
      // integral of phi over [iv.a, iv.b)
      StepFn masked = phi.vanish_on(IntervalSet::from_intervals({{iv.a, iv.b}}).complement());
      mass += masked.integrate();
    }
    Scalar level = mass / support.total_length();
    if (level.sign() == 0) continue;
    for (const auto& iv : support.parts()) {
      result = result + StepFn::indicator(iv.a, iv.b, level);
    }
  }
  return result;
}

Iet keynes_newton(const Scalar& beta, const Scalar& gamma) {
  if (!(Scalar(0) < beta) || !(beta < Scalar(1)) || !(Scalar(0) < gamma) || !(gamma < Scalar(1))) {
    raise(Errc::BadPartition, "keynes_newton needs 0 < beta < 1 and 0 < gamma < 1");
  }
  Scalar top = Scalar(1) + beta;  // That acts on [0, 1 + beta)
  // Cuts of That: 0, beta, the wrap points k - gamma inside (beta, 1 + beta), top.
  std::vector<Scalar> hat_cuts{Scalar(0), beta, top};
  for (long k = 1; k <= 2; ++k) {
    Scalar w = Scalar(k) - gamma;
    if (beta < w && w < top) hat_cuts.push_back(std::move(w));
  }
  hat_cuts = sorted_unique(std::move(hat_cuts));
  // Translation on each cell: +1 on [0, beta); gamma - floor(x + gamma) after.
  std::vector<Scalar> hat_shifts;
  for (size_t i = 0; i + 1 < hat_cuts.size(); ++i) {
    const Scalar& lo = hat_cuts[i];
    if (lo < beta) {
      hat_shifts.push_back(Scalar(1));
    } else {
      hat_shifts.push_back(gamma - Scalar(mpq_class((lo + gamma).floor())));
    }
  }
  // Normalize to [0, 1): x -> x / (1 + beta).
  std::vector<Scalar> cuts;
  cuts.reserve(hat_cuts.size());
  for (const auto& c : hat_cuts) cuts.push_back(c / top);
  std::vector<Scalar> shifts;
  shifts.reserve(hat_shifts.size());
  for (const auto& s : hat_shifts) shifts.push_back(s / top);
  return Iet(std::move(cuts), std::move(shifts));
}

Scalar nomadic_gap(const Iet& f, const Scalar& x, size_t n) {
  if (x.sign() < 0 || !(x < Scalar(1))) raise(Errc::OutOfDomain, "point outside [0,1)");
  Iet finv = f.inverse();
  std::vector<Scalar> orbit{x};
  Scalar fwd = x, bwd = x;
  for (size_t i = 0; i < n; ++i) {
    fwd = f.evaluate(fwd);
    bwd = finv.evaluate(bwd);
    orbit.push_back(fwd);
    orbit.push_back(bwd);
  }
  orbit = sorted_unique(std::move(orbit));
  if (orbit.size() == 1) return Scalar(1);
  Scalar best = orbit.front() + (Scalar(1) - orbit.back());  // wrap-around gap
  for (size_t i = 0; i + 1 < orbit.size(); ++i) {
    best = max(best, orbit[i + 1] - orbit[i]);
  }
  return best;
}

}  // namespace pap
