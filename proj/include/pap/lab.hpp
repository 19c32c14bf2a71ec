#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "pap/json_io.hpp"

namespace pap {

/// Parsed experiment description. Every field is exact-syntax in the JSON
/// config; missing optional fields fall back to documented defaults.
struct ExperimentConfig {
  Json raw;  // the config document as parsed (echoed into reports)

  std::optional<Iet> iet;
  std::optional<Itm> itm;
  std::optional<PwRotation> pwi;

  std::vector<StepFn> seeds;
  std::vector<PolyDensity> seeds2d;

  size_t iters = 1000;
  std::vector<size_t> checkpoints;  // derived from iters when absent
  size_t depth = 30;
  std::int64_t keane_depth = 1000;
  size_t gap_orbit_n = 1000;
  std::vector<Scalar> sample_points;
  std::vector<Scalar> extra_cuts;
  Scalar delta = Scalar(1, 64);
  Scalar resolution = Scalar(0);
  double l1_tolerance = 0.02;
  size_t cell_budget = kDefaultCellBudget;
  size_t cell_budget_2d = kDefaultCellBudget2d;
  size_t component_budget = kDefaultComponentBudget;
  std::vector<unsigned> grid_exponents;
  int svg_width = 640;

  static ExperimentConfig parse(const Json& doc);
  static ExperimentConfig load(const std::filesystem::path& file);
};

/// A finished experiment: the JSON report document plus any files written.
/// Identical configs produce byte-identical JSON.
struct Report {
  Json doc;
  std::vector<std::string> artifacts;

  std::string json_bytes() const { return doc.dump(2) + "\n"; }
};

/// Birkhoff averages from every seed with pairwise L1 distances over the
/// checkpoints, nomadic-gap statistics, a Keane probe, and a uniqueness
/// verdict (never stronger than finite-depth evidence).
Report run_uniqueness_probe(const ExperimentConfig& cfg,
                            const std::optional<std::filesystem::path>& out_dir);

/// Variation series of transfer iterates and Birkhoff averages, with the
/// variation-contraction flag for seeds vanishing near the depth-1 boundary
/// orbit and a bounded-BV (Helly) diagnostic.
Report run_variation_growth(const ExperimentConfig& cfg,
                            const std::optional<std::filesystem::path>& out_dir);

/// Attractor depth series for an Itm or PwRotation: exact measures,
/// component counts, stabilization verdict, induced-map reduction when
/// stabilized (1-D), box-dimension estimate on request, SVG output (2-D).
Report run_attractor_study(const ExperimentConfig& cfg,
                           const std::optional<std::filesystem::path>& out_dir);

}  // namespace pap
