#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bellcomm/classical.hpp"
#include "bellcomm/ns_lp.hpp"
#include "bellcomm/quantum.hpp"

namespace bellcomm {

/// One line of the exact-bounds table for the truncated game family.
struct BoundsRow {
    int d;
    long long s_local;
    long long s_onebit;
    long long s_ns;
    double s_quantum_lower;
};

/// One optimization run of the noise-robustness sweep.
struct SweepRow {
    double sigma;
    std::uint64_t seed;
    double fidelity;
    double best_score;
};

/// Structural summary of an optimized model against its game.
struct StructureReport {
    double score;
    double mub_deviation;
    double neighbor_overlap_spread;
    DecompositionFit fit;
    double ns_violation;
    double normalization_violation;
};

/// Exact local / one-bit / no-signaling bounds plus a seesaw lower bound for
/// every d in [d_min, d_max]. Refuses d_max > 8.
std::vector<BoundsRow> bounds_table(int d_min, int d_max, const SeesawConfig& config);

/// For each (sigma, trial): perturb the maximally entangled state, record its
/// fidelity, and re-optimize the measurements on the noisy state. Rows are
/// ordered by (grid position, trial) and depend only on config.rng_seed.
std::vector<SweepRow> noise_sweep(int d, const std::vector<double>& sigma_grid,
                                  int trials_per_sigma, const SeesawConfig& config);

StructureReport structure_report(const QuantumModel& model, const BellFunctional& b);

/// 12 log-spaced noise widths in [1e-5, 5e-2].
std::vector<double> default_sigma_grid();

std::string sweep_csv(const std::vector<SweepRow>& rows);
std::string bounds_csv(const std::vector<BoundsRow>& rows);

struct ViolationThreshold {
    bool any_violating = false;
    double min_violating_fidelity = 0.0;
    bool any_nonviolating = false;
    double max_nonviolating_fidelity = 0.0;
};

/// Coarse threshold readout: the smallest fidelity that still violates the
/// given bound and the largest that does not.
ViolationThreshold extract_threshold(const std::vector<SweepRow>& rows, double bound);

}  // namespace bellcomm
