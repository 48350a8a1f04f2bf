#pragma once

#include <cstdint>
#include <vector>

#include "bellcomm/linalg.hpp"
#include "bellcomm/scenario.hpp"

namespace bellcomm {

/// Bipartite state of two local_dim-level systems as a density matrix.
struct QuantumState {
    int local_dim;
    ComplexMatrix density;  ///< local_dim^2 x local_dim^2

    QuantumState(int local_dim_, ComplexMatrix density_);
};

/// Rank-1 projective measurements, one orthonormal basis per input; the
/// projector for output j is the dyad of column j.
struct MeasurementSet {
    std::vector<ComplexMatrix> bases;

    explicit MeasurementSet(std::vector<ComplexMatrix> bases_);

    int inputs() const { return static_cast<int>(bases.size()); }
    int dim() const { return static_cast<int>(bases.front().rows()); }
    ComplexVector vector(int input, int output) const { return bases[input].col(output); }
    ComplexMatrix projector(int input, int output) const;
};

struct QuantumModel {
    QuantumState state;
    MeasurementSet alice;
    MeasurementSet bob;
};

struct SeesawConfig {
    int restarts = 50;
    int sweeps_max = 500;
    double improvement_tol = 1e-9;
    std::uint64_t rng_seed = 1;
    int threads = 1;
};

struct SeesawResult {
    double score;
    QuantumModel model;
    int best_restart;
    /// Post-sweep scores of the winning restart; nondecreasing up to the
    /// improvement tolerance.
    std::vector<double> sweep_scores;
};

struct DecompositionFit {
    double w;
    double residual_l2;
};

/// |Psi> = sum_i |ii> / sqrt(d) as a density matrix.
QuantumState maximally_entangled_state(int d);

/// The same state as a d^2 vector.
ComplexVector maximally_entangled_vector(int d);

/// Born-rule behavior p(a,b|x,y) = <a x, b y| rho |a x, b y>.
Behavior behavior_of_model(const QuantumModel& model);

/// Coordinate ascent over the measurement bases with the state held fixed.
/// Each restart starts from independent Haar-random bases and sweeps
/// two-level rotations (angle, then relative phase, each by golden-section
/// search), accepting only improvements; bases are re-orthonormalized and the
/// score recomputed exactly after every sweep. Deterministic for a given
/// seed, independent of thread count.
SeesawResult seesaw_optimize(const BellFunctional& b, const QuantumState& state,
                             const SeesawConfig& config);

/// Worst relative deviation of the two-input overlap grid from 1/d:
/// max |  |<b_i^0 | b_j^1>|^2 - 1/d | * d.
double mub_deviation(const MeasurementSet& bob);

/// For each output pair (j,k), the spread of |<a_j^i | a_k^{i+1 mod d}>|^2
/// across neighboring input pairs i; returns the largest spread.
double neighbor_overlap_spread(const MeasurementSet& alice);

/// Least-squares weight of the maximal no-signaling behavior against white
/// noise: w* = <P-U, Pns-U> / |Pns-U|^2 clamped to [0,1], plus the l2
/// residual of the two-point fit.
DecompositionFit fit_decomposition(const Behavior& p, const BellFunctional& b);

/// Overlap <Psi| rho |Psi> with the maximally entangled state of dimension d.
double fidelity(const QuantumState& rho, int d);

/// Entrywise complex Gaussian noise (std sigma per real component), followed
/// by Hermitization, eigenvalue clipping to the PSD cone, and trace
/// renormalization. sigma = 0 returns the input unchanged.
QuantumState perturb_state(const QuantumState& rho, double sigma, std::uint64_t seed);

}  // namespace bellcomm
