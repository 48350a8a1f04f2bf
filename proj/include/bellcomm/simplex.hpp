#pragma once

#include <vector>

#include "bellcomm/exact.hpp"

namespace bellcomm {

/// max objective . x  subject to  equality_matrix x = equality_rhs, x >= 0,
/// all data exact rationals.
struct StandardFormLP {
    std::size_t variable_count = 0;
    std::vector<Rational> objective;
    std::vector<std::vector<Rational>> equality_matrix;
    std::vector<Rational> equality_rhs;
};

enum class LPStatus { Optimal, Unbounded, Infeasible };

struct LPResult {
    LPStatus status;
    Rational value;
    std::vector<Rational> solution;
    /// Basic structural column per retained row, and which original rows were
    /// retained after redundant equalities were dropped in phase one. Enough
    /// to reconstruct an optimality certificate independently.
    std::vector<std::size_t> basis;
    std::vector<std::size_t> kept_rows;
};

/// Two-phase primal simplex with Bland's pivot rule on exact rationals.
/// Terminates on every input; rank-deficient equality systems are handled by
/// dropping redundant rows at the end of phase one.
LPResult simplex_maximize(const StandardFormLP& lp);

/// Recomputes the optimality certificate from scratch: primal feasibility of
/// the solution, basic-system consistency, dual feasibility of y = c_B B^-1,
/// and strong duality y.b = value. Returns false on any failed check.
bool verify_simplex_certificate(const StandardFormLP& lp, const LPResult& result);

}  // namespace bellcomm
