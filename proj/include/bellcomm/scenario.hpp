#pragma once

#include <cstddef>
#include <vector>

#include "bellcomm/exact.hpp"

namespace bellcomm {

/// Shape of a bipartite Bell game: input counts m_a/m_b and output counts
/// o_a/o_b for the two parties.
struct Scenario {
    int m_a = 1;
    int m_b = 1;
    int o_a = 1;
    int o_b = 1;

    Scenario() = default;
    Scenario(int m_a_, int m_b_, int o_a_, int o_b_);

    /// Size of the full probability space, m_a * m_b * o_a * o_b.
    std::size_t probability_dimension() const;

    bool operator==(const Scenario&) const = default;
};

/// Row-major position of p(a,b|x,y) in the canonical (x, y, a, b) order.
std::size_t flat_index(const Scenario& sc, int x, int y, int a, int b);

struct JointIndex {
    int x, y, a, b;
};

/// Inverse of flat_index.
JointIndex unflatten(const Scenario& sc, std::size_t index);

/// Bell functional: one exact integer coefficient per point of the
/// probability space, canonical (x, y, a, b) row-major order.
struct BellFunctional {
    Scenario scenario;
    std::vector<Int> coefficients;

    BellFunctional(Scenario sc, std::vector<Int> coeffs);

    const Int& at(int x, int y, int a, int b) const {
        return coefficients[flat_index(scenario, x, y, a, b)];
    }
};

/// Conditional distribution p(a,b|x,y) over the full probability space.
/// Entries must lie in [0,1] (tol 1e-12) and each (x,y) block must sum to 1
/// (tol 1e-9); possibly signaling.
struct Behavior {
    Scenario scenario;
    std::vector<double> probabilities;

    Behavior(Scenario sc, std::vector<double> probs);

    double at(int x, int y, int a, int b) const {
        return probabilities[flat_index(scenario, x, y, a, b)];
    }
};

/// Two-set partition of Alice's inputs {0, ..., ground_size-1}. Canonical
/// form: the trivial partition is the full set; any proper subset contains
/// input 0, which fixes the subset/complement symmetry.
struct Bipartition {
    int ground_size;
    std::vector<int> members;

    Bipartition(int ground_size_, std::vector<int> members_);

    bool is_trivial() const { return members.size() == static_cast<std::size_t>(ground_size); }
    std::vector<int> complement() const;

    static Bipartition trivial(int ground_size);
};

// ============================================================================
// Game generators and scoring
// ============================================================================

/// Game in scenario (d, 2, d, d) with V(a,b|x,y) = 1 iff (b - a) mod d = x*y.
/// One unit coefficient per output row in each of the 2d input blocks.
BellFunctional make_truncated_xor_game(int d);

/// Functional value B . p over the full probability space.
double score(const BellFunctional& b, const Behavior& p);

/// Sub-functional on the given ascending subset of Alice's inputs, scenario
/// (|inputs|, m_b, o_a, o_b). The subset and its complement partition the
/// coefficients exactly.
BellFunctional restrict_inputs(const BellFunctional& b, const std::vector<int>& inputs);
BellFunctional restrict_inputs(const BellFunctional& b, const Bipartition& j);

/// Same row slice applied to a behavior.
Behavior restrict_inputs(const Behavior& p, const std::vector<int>& inputs);

/// Reinterprets a game with constant block sum s as the behavior V/s. Every
/// (x,y) block of coefficients must sum to o_a; for the truncated games this
/// is the maximal no-signaling behavior.
Behavior ns_behavior_from_functional(const BellFunctional& b);

/// Uniform behavior, 1/(o_a*o_b) everywhere.
Behavior white_noise_behavior(const Scenario& sc);

/// Entrywise convex combination w*p1 + (1-w)*p2.
Behavior mix(const Behavior& p1, const Behavior& p2, double w);

struct NoSignalingCheck {
    bool ok;
    double max_violation;
};

/// Largest spread of either party's marginals over the other party's input;
/// ok iff the spread is within tol.
NoSignalingCheck is_no_signaling(const Behavior& p, double tol);

}  // namespace bellcomm
