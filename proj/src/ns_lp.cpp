#include "bellcomm/ns_lp.hpp"

#include <stdexcept>

namespace bellcomm {

StandardFormLP build_ns_lp(const BellFunctional& b) {
    const Scenario& sc = b.scenario;
    const std::size_t n = sc.probability_dimension();

    StandardFormLP lp;
    lp.variable_count = n;
    lp.objective.resize(n);
    for (std::size_t i = 0; i < n; ++i) lp.objective[i] = Rational(b.coefficients[i]);

    const std::size_t rows = static_cast<std::size_t>(sc.m_a) * sc.m_b +
                             static_cast<std::size_t>(sc.m_a) * sc.o_a * (sc.m_b - 1) +
                             static_cast<std::size_t>(sc.m_b) * sc.o_b * (sc.m_a - 1);
    lp.equality_matrix.reserve(rows);
    lp.equality_rhs.reserve(rows);

    auto new_row = [&]() -> std::vector<Rational>& {
        lp.equality_matrix.emplace_back(n, Rational(0));
        return lp.equality_matrix.back();
    };

    // Normalization of every (x, y) block.
    for (int x = 0; x < sc.m_a; ++x) {
        for (int y = 0; y < sc.m_b; ++y) {
            auto& row = new_row();
            for (int a = 0; a < sc.o_a; ++a)
                for (int bb = 0; bb < sc.o_b; ++bb) row[flat_index(sc, x, y, a, bb)] = 1;
            lp.equality_rhs.emplace_back(1);
        }
    }

    // Alice's marginals must not depend on y: compare each y >= 1 to y = 0.
    for (int x = 0; x < sc.m_a; ++x) {
        for (int a = 0; a < sc.o_a; ++a) {
            for (int y = 1; y < sc.m_b; ++y) {
                auto& row = new_row();
                for (int bb = 0; bb < sc.o_b; ++bb) {
                    row[flat_index(sc, x, y, a, bb)] = 1;
                    row[flat_index(sc, x, 0, a, bb)] -= 1;
                }
                lp.equality_rhs.emplace_back(0);
            }
        }
    }

    // Bob's marginals must not depend on x: compare each x >= 1 to x = 0.
    for (int y = 0; y < sc.m_b; ++y) {
        for (int bb = 0; bb < sc.o_b; ++bb) {
            for (int x = 1; x < sc.m_a; ++x) {
                auto& row = new_row();
                for (int a = 0; a < sc.o_a; ++a) {
                    row[flat_index(sc, x, y, a, bb)] = 1;
                    row[flat_index(sc, 0, y, a, bb)] -= 1;
                }
                lp.equality_rhs.emplace_back(0);
            }
        }
    }

    return lp;
}

Rational ns_bound(const BellFunctional& b) {
    const LPResult result = simplex_maximize(build_ns_lp(b));
    if (result.status != LPStatus::Optimal) {
        throw std::logic_error("no-signaling polytope LP must have an optimum");
    }
    return result.value;
}

Int trivial_upper_bound(const BellFunctional& b) {
    const Scenario& sc = b.scenario;
    Int total(0);
    for (int x = 0; x < sc.m_a; ++x) {
        for (int y = 0; y < sc.m_b; ++y) {
            Int best = b.at(x, y, 0, 0);
            for (int a = 0; a < sc.o_a; ++a)
                for (int bb = 0; bb < sc.o_b; ++bb) best = std::max(best, b.at(x, y, a, bb));
            total += best;
        }
    }
    return total;
}

}  // namespace bellcomm
