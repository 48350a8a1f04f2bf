#include "bellcomm/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bellcomm {

namespace {

constexpr double kHermTol = 1e-12;
constexpr double kEigTol = 1e-10;
constexpr double kTraceTol = 1e-10;
constexpr double kBasisTol = 1e-9;
constexpr int kLineSearchIters = 64;

}  // namespace

QuantumState::QuantumState(int local_dim_, ComplexMatrix density_)
    : local_dim(local_dim_), density(std::move(density_)) {
    if (local_dim < 2) throw std::invalid_argument("state needs local dimension >= 2");
    const int dd = local_dim * local_dim;
    if (density.rows() != dd || density.cols() != dd) {
        throw std::invalid_argument("density matrix must be local_dim^2 x local_dim^2");
    }
    if (max_abs(density - density.adjoint()) > kHermTol) {
        throw std::invalid_argument("density matrix must be Hermitian");
    }
    const HermitianEig eig = hermitian_eig(density);
    if (eig.eigenvalues.minCoeff() < -kEigTol) {
        throw std::invalid_argument("density matrix must be positive semidefinite");
    }
    if (std::abs(density.trace().real() - 1.0) > kTraceTol ||
        std::abs(density.trace().imag()) > kTraceTol) {
        throw std::invalid_argument("density matrix must have unit trace");
    }
}

MeasurementSet::MeasurementSet(std::vector<ComplexMatrix> bases_) : bases(std::move(bases_)) {
    if (bases.empty()) throw std::invalid_argument("measurement set needs at least one input");
    const auto d = bases.front().rows();
    for (const ComplexMatrix& u : bases) {
        if (u.rows() != d || u.cols() != d) {
            throw std::invalid_argument("measurement bases must be square and same-dimensional");
        }
        const ComplexMatrix gram = u.adjoint() * u;
        if (max_abs(gram - ComplexMatrix::Identity(d, d)) > kBasisTol) {
            throw std::invalid_argument("measurement basis must be unitary");
        }
    }
}

ComplexMatrix MeasurementSet::projector(int input, int output) const {
    const ComplexVector v = vector(input, output);
    return v * v.adjoint();
}

ComplexVector maximally_entangled_vector(int d) {
    if (d < 2) throw std::invalid_argument("maximally entangled state needs d >= 2");
    ComplexVector psi = ComplexVector::Zero(d * d);
    const double amp = 1.0 / std::sqrt(static_cast<double>(d));
    for (int i = 0; i < d; ++i) psi(i * d + i) = amp;
    return psi;
}

QuantumState maximally_entangled_state(int d) {
    const ComplexVector psi = maximally_entangled_vector(d);
    return QuantumState(d, psi * psi.adjoint());
}

namespace {

/// |alpha x beta> as a d^2 vector.
ComplexVector kron_vector(const ComplexVector& alpha, const ComplexVector& beta) {
    const int d = static_cast<int>(alpha.size());
    ComplexVector out(d * static_cast<int>(beta.size()));
    for (int i = 0; i < d; ++i) out.segment(i * static_cast<int>(beta.size()), beta.size()) = alpha(i) * beta;
    return out;
}

double born_probability(const ComplexMatrix& rho, const ComplexVector& alpha,
                        const ComplexVector& beta) {
    const ComplexVector v = kron_vector(alpha, beta);
    return v.dot(rho * v).real();
}

}  // namespace

Behavior behavior_of_model(const QuantumModel& model) {
    const int d = model.state.local_dim;
    if (model.alice.dim() != d || model.bob.dim() != d) {
        throw std::invalid_argument("measurement dimension must match the state");
    }
    const Scenario sc(model.alice.inputs(), model.bob.inputs(), d, d);
    std::vector<double> probs(sc.probability_dimension());
    for (int x = 0; x < sc.m_a; ++x) {
        for (int y = 0; y < sc.m_b; ++y) {
            for (int a = 0; a < sc.o_a; ++a) {
                for (int b = 0; b < sc.o_b; ++b) {
                    double p = born_probability(model.state.density, model.alice.vector(x, a),
                                                model.bob.vector(y, b));
                    probs[flat_index(sc, x, y, a, b)] = std::clamp(p, 0.0, 1.0);
                }
            }
        }
    }
    return Behavior(sc, std::move(probs));
}

// ============================================================================
// Seesaw optimization
// ============================================================================

namespace {

struct SeesawProblem {
    int d;
    int m_a;
    int m_b;
    const ComplexMatrix& rho;
    std::vector<double> coef;  // flat (x,y,a,b) row-major, double precision

    double weight(int x, int y, int a, int b, const Scenario& sc) const {
        return coef[((static_cast<std::size_t>(x) * sc.m_b + y) * sc.o_a + a) * sc.o_b + b];
    }
};

/// Conditional d x d operator seen by Alice when Bob's vector is fixed:
/// Q(i,k) = beta^dag rho[(i,:),(k,:)] beta.
ComplexMatrix reduce_over_bob(const ComplexMatrix& rho, const ComplexVector& beta) {
    const int d = static_cast<int>(beta.size());
    ComplexMatrix q(d, d);
    for (int i = 0; i < d; ++i) {
        for (int k = 0; k < d; ++k) {
            q(i, k) = beta.dot(rho.block(i * d, k * d, d, d) * beta);
        }
    }
    return q;
}

/// Conditional operator seen by Bob for a fixed Alice vector:
/// Q(j,l) = sum_{i,k} conj(alpha_i) rho(i*d+j, k*d+l) alpha_k.
ComplexMatrix reduce_over_alice(const ComplexMatrix& rho, const ComplexVector& alpha) {
    const int d = static_cast<int>(alpha.size());
    ComplexMatrix q = ComplexMatrix::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        for (int k = 0; k < d; ++k) {
            const Complex w = std::conj(alpha(i)) * alpha(k);
            if (w == Complex(0, 0)) continue;
            for (int j = 0; j < d; ++j) {
                for (int l = 0; l < d; ++l) {
                    q(j, l) += w * rho(i * d + j, k * d + l);
                }
            }
        }
    }
    return q;
}

struct RestartState {
    std::vector<ComplexMatrix> alice;
    std::vector<ComplexMatrix> bob;
    double score = 0.0;
};

double full_score(const SeesawProblem& prob, const Scenario& sc,
                  const std::vector<ComplexMatrix>& alice,
                  const std::vector<ComplexMatrix>& bob) {
    double total = 0.0;
    for (int x = 0; x < sc.m_a; ++x) {
        for (int y = 0; y < sc.m_b; ++y) {
            for (int a = 0; a < sc.o_a; ++a) {
                for (int b = 0; b < sc.o_b; ++b) {
                    const double w = prob.weight(x, y, a, b, sc);
                    if (w == 0.0) continue;
                    total += w * born_probability(prob.rho, alice[x].col(a), bob[y].col(b));
                }
            }
        }
    }
    return total;
}

/// One two-level update of the active party's basis column pair (i, j).
/// `q_grid[u][o]` are the conditional operators over the passive party's
/// (input, output) pairs and `weights(o_active, u, o)` the matching
/// functional coefficients. The rotation is applied only when the searched
/// angle and phase improve the score.
template <typename WeightFn>
void pair_update(ComplexMatrix& basis, int i, int j,
                 const std::vector<std::vector<ComplexMatrix>>& q_grid,
                 const WeightFn& weights) {
    double p0 = 0.0;   // contribution at the identity rotation
    double p90 = 0.0;  // contribution with i and j exchanged
    Complex cross(0.0, 0.0);
    for (std::size_t u = 0; u < q_grid.size(); ++u) {
        for (std::size_t o = 0; o < q_grid[u].size(); ++o) {
            const double wi = weights(i, static_cast<int>(u), static_cast<int>(o));
            const double wj = weights(j, static_cast<int>(u), static_cast<int>(o));
            if (wi == 0.0 && wj == 0.0) continue;
            const ComplexMatrix& q = q_grid[u][o];
            const ComplexVector qi = q * basis.col(i);
            const ComplexVector qj = q * basis.col(j);
            const double q1 = basis.col(i).dot(qi).real();
            const double q2 = basis.col(j).dot(qj).real();
            const Complex qc = basis.col(i).dot(qj);
            p0 += wi * q1 + wj * q2;
            p90 += wi * q2 + wj * q1;
            cross += (wi - wj) * qc;
        }
    }

    const double re = cross.real();
    const double im = cross.imag();
    auto value = [&](double theta, double phi) {
        const double c = std::cos(theta), s = std::sin(theta);
        return c * c * p0 + s * s * p90 +
               2.0 * c * s * (std::cos(phi) * re - std::sin(phi) * im);
    };

    const LineSearchResult angle = golden_section_maximize(
        [&](double th) { return value(th, 0.0); }, -M_PI / 2.0, M_PI / 2.0, kLineSearchIters);
    const LineSearchResult phase = golden_section_maximize(
        [&](double ph) { return value(angle.x, ph); }, -M_PI, M_PI, kLineSearchIters);

    double theta = angle.x, phi = 0.0, best = angle.value;
    if (phase.value > best) {
        best = phase.value;
        phi = phase.x;
    }
    if (!(best > p0)) return;

    const double c = std::cos(theta), s = std::sin(theta);
    const Complex eip(std::cos(phi), std::sin(phi));
    const ComplexVector vi = basis.col(i);
    const ComplexVector vj = basis.col(j);
    basis.col(i) = c * vi + s * eip * vj;
    basis.col(j) = -s * std::conj(eip) * vi + c * vj;
}

void run_restart(const SeesawProblem& prob, const Scenario& sc, const SeesawConfig& config,
                 std::uint64_t seed, RestartState& state, std::vector<double>& sweep_scores) {
    Rng rng(seed);
    state.alice.clear();
    state.bob.clear();
    for (int x = 0; x < sc.m_a; ++x) state.alice.push_back(random_unitary(prob.d, rng));
    for (int y = 0; y < sc.m_b; ++y) state.bob.push_back(random_unitary(prob.d, rng));

    state.score = full_score(prob, sc, state.alice, state.bob);
    sweep_scores.clear();

    for (int sweep = 0; sweep < config.sweeps_max; ++sweep) {
        const double before = state.score;

        // Alice's pass: conditional operators depend only on Bob's vectors.
        std::vector<std::vector<ComplexMatrix>> q_bob(sc.m_b);
        for (int y = 0; y < sc.m_b; ++y) {
            q_bob[y].reserve(sc.o_b);
            for (int b = 0; b < sc.o_b; ++b) {
                q_bob[y].push_back(reduce_over_bob(prob.rho, state.bob[y].col(b)));
            }
        }
        for (int x = 0; x < sc.m_a; ++x) {
            for (int i = 0; i < prob.d; ++i) {
                for (int j = 0; j < prob.d; ++j) {
                    if (i == j) continue;
                    pair_update(state.alice[x], i, j, q_bob, [&](int out, int y, int b) {
                        return prob.weight(x, y, out, b, sc);
                    });
                }
            }
        }

        // Bob's pass against Alice's updated bases.
        std::vector<std::vector<ComplexMatrix>> q_alice(sc.m_a);
        for (int x = 0; x < sc.m_a; ++x) {
            q_alice[x].reserve(sc.o_a);
            for (int a = 0; a < sc.o_a; ++a) {
                q_alice[x].push_back(reduce_over_alice(prob.rho, state.alice[x].col(a)));
            }
        }
        for (int y = 0; y < sc.m_b; ++y) {
            for (int i = 0; i < prob.d; ++i) {
                for (int j = 0; j < prob.d; ++j) {
                    if (i == j) continue;
                    pair_update(state.bob[y], i, j, q_alice, [&](int out, int x, int a) {
                        return prob.weight(x, y, a, out, sc);
                    });
                }
            }
        }

        // Projector repair, then an exact rescore to absorb drift.
        for (ComplexMatrix& u : state.alice) orthonormalize_columns(u);
        for (ComplexMatrix& u : state.bob) orthonormalize_columns(u);
        state.score = full_score(prob, sc, state.alice, state.bob);
        sweep_scores.push_back(state.score);

        if (state.score - before < config.improvement_tol) break;
    }
}

}  // namespace

SeesawResult seesaw_optimize(const BellFunctional& b, const QuantumState& state,
                             const SeesawConfig& config) {
    if (config.restarts < 1 || config.sweeps_max < 1 || !(config.improvement_tol > 0.0)) {
        throw std::invalid_argument("seesaw config invalid");
    }
    const Scenario& sc = b.scenario;
    if (sc.o_a != state.local_dim || sc.o_b != state.local_dim) {
        throw std::invalid_argument("seesaw requires output counts equal to the state dimension");
    }

    SeesawProblem prob{state.local_dim, sc.m_a, sc.m_b, state.density, {}};
    prob.coef.resize(b.coefficients.size());
    for (std::size_t i = 0; i < prob.coef.size(); ++i) prob.coef[i] = b.coefficients[i].get_d();

    struct Outcome {
        RestartState state;
        std::vector<double> sweeps;
    };
    std::vector<Outcome> outcomes(config.restarts);
    parallel_for(static_cast<std::size_t>(config.restarts), config.threads, [&](std::size_t k) {
        run_restart(prob, sc, config, split_seed(config.rng_seed, k), outcomes[k].state,
                    outcomes[k].sweeps);
    });

    std::size_t best = 0;
    for (std::size_t k = 1; k < outcomes.size(); ++k) {
        if (outcomes[k].state.score > outcomes[best].state.score) best = k;
    }

    SeesawResult result{
        outcomes[best].state.score,
        QuantumModel{state, MeasurementSet(outcomes[best].state.alice),
                     MeasurementSet(outcomes[best].state.bob)},
        static_cast<int>(best),
        std::move(outcomes[best].sweeps),
    };
    return result;
}

// ============================================================================
// Structural checks
// ============================================================================

double mub_deviation(const MeasurementSet& bob) {
    if (bob.inputs() != 2) {
        throw std::invalid_argument("unbiasedness check needs exactly two inputs");
    }
    const int d = bob.dim();
    const double target = 1.0 / d;
    double worst = 0.0;
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            const double overlap = std::norm(bob.bases[0].col(i).dot(bob.bases[1].col(j)));
            worst = std::max(worst, std::abs(overlap - target) * d);
        }
    }
    return worst;
}

double neighbor_overlap_spread(const MeasurementSet& alice) {
    const int d = alice.dim();
    if (alice.inputs() != d) {
        throw std::invalid_argument("neighbor check expects one input per dimension");
    }
    double worst = 0.0;
    for (int j = 0; j < d; ++j) {
        for (int k = 0; k < d; ++k) {
            double lo = 2.0, hi = -1.0;
            for (int i = 0; i < d; ++i) {
                const int next = (i + 1) % d;
                const double overlap =
                    std::norm(alice.bases[i].col(j).dot(alice.bases[next].col(k)));
                lo = std::min(lo, overlap);
                hi = std::max(hi, overlap);
            }
            worst = std::max(worst, hi - lo);
        }
    }
    return worst;
}

DecompositionFit fit_decomposition(const Behavior& p, const BellFunctional& b) {
    if (!(p.scenario == b.scenario)) {
        throw std::invalid_argument("behavior and functional shapes differ");
    }
    const Behavior target = ns_behavior_from_functional(b);
    const Behavior noise = white_noise_behavior(b.scenario);
    const std::size_t n = p.probabilities.size();

    double dot = 0.0, norm2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dp = p.probabilities[i] - noise.probabilities[i];
        const double dt = target.probabilities[i] - noise.probabilities[i];
        dot += dp * dt;
        norm2 += dt * dt;
    }
    double w = norm2 > 0.0 ? dot / norm2 : 0.0;
    w = std::clamp(w, 0.0, 1.0);

    double residual2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double fitted =
            w * target.probabilities[i] + (1.0 - w) * noise.probabilities[i];
        const double diff = p.probabilities[i] - fitted;
        residual2 += diff * diff;
    }
    return DecompositionFit{w, std::sqrt(residual2)};
}

double fidelity(const QuantumState& rho, int d) {
    if (rho.local_dim != d) throw std::invalid_argument("fidelity dimension mismatch");
    const ComplexVector psi = maximally_entangled_vector(d);
    return psi.dot(rho.density * psi).real();
}

QuantumState perturb_state(const QuantumState& rho, double sigma, std::uint64_t seed) {
    if (sigma < 0.0) throw std::invalid_argument("noise width must be nonnegative");
    if (sigma == 0.0) return rho;

    const int dd = rho.local_dim * rho.local_dim;
    Rng rng(seed);
    ComplexMatrix noisy = rho.density;
    for (int r = 0; r < dd; ++r) {
        for (int c = 0; c < dd; ++c) {
            noisy(r, c) += Complex(sigma * rng.next_gaussian(), sigma * rng.next_gaussian());
        }
    }
    noisy = (noisy + noisy.adjoint()).eval() / 2.0;

    const HermitianEig eig = hermitian_eig(noisy);
    Eigen::VectorXd lambda = eig.eigenvalues.cwiseMax(0.0);
    const double total = lambda.sum();
    if (total <= 1e-12) throw std::runtime_error("perturbed state collapsed to zero");
    lambda /= total;

    ComplexMatrix rebuilt =
        eig.eigenvectors * lambda.asDiagonal() * eig.eigenvectors.adjoint();
    rebuilt = (rebuilt + rebuilt.adjoint()).eval() / 2.0;
    return QuantumState(rho.local_dim, std::move(rebuilt));
}

}  // namespace bellcomm
