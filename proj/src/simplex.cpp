#include "bellcomm/simplex.hpp"

#include <stdexcept>
#include <utility>

namespace bellcomm {

namespace {

void validate(const StandardFormLP& lp) {
    if (lp.objective.size() != lp.variable_count) {
        throw std::invalid_argument("objective length must equal variable_count");
    }
    if (lp.equality_matrix.size() != lp.equality_rhs.size()) {
        throw std::invalid_argument("equality matrix and rhs row counts differ");
    }
    for (const auto& row : lp.equality_matrix) {
        if (row.size() != lp.variable_count) {
            throw std::invalid_argument("equality matrix column count must equal variable_count");
        }
    }
}

/// Dense tableau over exact rationals. Column layout: structural variables
/// first, then one artificial per row; rhs kept separately.
struct Tableau {
    std::size_t n_struct;
    std::size_t cols;
    std::vector<std::vector<Rational>> t;
    std::vector<Rational> rhs;
    std::vector<Rational> obj;  // reduced profits c_j - z_j
    Rational objval;            // current objective value
    std::vector<std::size_t> basis;
    std::vector<std::size_t> kept_rows;

    std::size_t rows() const { return t.size(); }

    void pivot(std::size_t r, std::size_t s) {
        const Rational piv = t[r][s];
        if (piv != 1) {
            for (std::size_t j = 0; j < cols; ++j) {
                if (t[r][j] != 0) t[r][j] /= piv;
            }
            rhs[r] /= piv;
        }
        for (std::size_t i = 0; i < rows(); ++i) {
            if (i == r || t[i][s] == 0) continue;
            const Rational f = t[i][s];
            for (std::size_t j = 0; j < cols; ++j) {
                if (t[r][j] != 0) t[i][j] -= f * t[r][j];
            }
            if (rhs[r] != 0) rhs[i] -= f * rhs[r];
            t[i][s] = 0;
        }
        const Rational f = obj[s];
        if (f != 0) {
            for (std::size_t j = 0; j < cols; ++j) {
                if (t[r][j] != 0) obj[j] -= f * t[r][j];
            }
            obj[s] = 0;
            objval += f * rhs[r];
        }
        basis[r] = s;
    }

    /// Bland's rule: enter the lowest-index improving column; leave by the
    /// minimum ratio, ties broken by the lowest basic variable index.
    /// Returns Optimal or Unbounded.
    LPStatus run() {
        for (;;) {
            std::size_t enter = cols;
            for (std::size_t j = 0; j < cols; ++j) {
                if (obj[j] > 0) {
                    enter = j;
                    break;
                }
            }
            if (enter == cols) return LPStatus::Optimal;

            std::size_t leave = rows();
            Rational best_ratio;
            for (std::size_t i = 0; i < rows(); ++i) {
                if (t[i][enter] <= 0) continue;
                Rational ratio = rhs[i] / t[i][enter];
                if (leave == rows() || ratio < best_ratio ||
                    (ratio == best_ratio && basis[i] < basis[leave])) {
                    leave = i;
                    best_ratio = std::move(ratio);
                }
            }
            if (leave == rows()) return LPStatus::Unbounded;
            pivot(leave, enter);
        }
    }
};

}  // namespace

LPResult simplex_maximize(const StandardFormLP& lp) {
    validate(lp);
    const std::size_t n = lp.variable_count;
    const std::size_t m = lp.equality_matrix.size();

    Tableau tab;
    tab.n_struct = n;
    tab.cols = n + m;
    tab.t.assign(m, std::vector<Rational>(tab.cols, Rational(0)));
    tab.rhs.resize(m);
    tab.basis.resize(m);
    tab.kept_rows.resize(m);

    for (std::size_t i = 0; i < m; ++i) {
        const bool flip = lp.equality_rhs[i] < 0;
        for (std::size_t j = 0; j < n; ++j) {
            tab.t[i][j] = flip ? Rational(-lp.equality_matrix[i][j]) : lp.equality_matrix[i][j];
        }
        tab.rhs[i] = flip ? Rational(-lp.equality_rhs[i]) : lp.equality_rhs[i];
        tab.t[i][n + i] = 1;
        tab.basis[i] = n + i;
        tab.kept_rows[i] = i;
    }

    // Phase one: maximize minus the sum of artificials.
    tab.obj.assign(tab.cols, Rational(0));
    tab.objval = 0;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) tab.obj[j] += tab.t[i][j];
        tab.objval -= tab.rhs[i];
    }

    if (tab.run() == LPStatus::Unbounded) {
        throw std::logic_error("phase-one objective cannot be unbounded");
    }
    if (tab.objval != 0) {
        return LPResult{LPStatus::Infeasible, Rational(0), {}, {}, {}};
    }

    // Pivot leftover artificials out of the basis; a row whose structural
    // part is all zero is redundant and gets dropped.
    std::vector<std::size_t> drop;
    for (std::size_t i = 0; i < tab.rows(); ++i) {
        if (tab.basis[i] < n) continue;
        std::size_t enter = n;
        for (std::size_t j = 0; j < n; ++j) {
            if (tab.t[i][j] != 0) {
                enter = j;
                break;
            }
        }
        if (enter == n) {
            drop.push_back(i);
        } else {
            tab.pivot(i, enter);  // degenerate: rhs is zero here
        }
    }
    for (auto it = drop.rbegin(); it != drop.rend(); ++it) {
        tab.t.erase(tab.t.begin() + static_cast<std::ptrdiff_t>(*it));
        tab.rhs.erase(tab.rhs.begin() + static_cast<std::ptrdiff_t>(*it));
        tab.basis.erase(tab.basis.begin() + static_cast<std::ptrdiff_t>(*it));
        tab.kept_rows.erase(tab.kept_rows.begin() + static_cast<std::ptrdiff_t>(*it));
    }

    // Phase two on structural columns only.
    tab.cols = n;
    for (auto& row : tab.t) row.resize(n);
    tab.obj.assign(n, Rational(0));
    tab.objval = 0;
    for (std::size_t j = 0; j < n; ++j) tab.obj[j] = lp.objective[j];
    for (std::size_t i = 0; i < tab.rows(); ++i) {
        const Rational& cb = lp.objective[tab.basis[i]];
        if (cb == 0) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (tab.t[i][j] != 0) tab.obj[j] -= cb * tab.t[i][j];
        }
        tab.objval += cb * tab.rhs[i];
    }

    const LPStatus status = tab.run();
    if (status == LPStatus::Unbounded) {
        return LPResult{LPStatus::Unbounded, Rational(0), {}, {}, {}};
    }

    LPResult result;
    result.status = LPStatus::Optimal;
    result.value = tab.objval;
    result.solution.assign(n, Rational(0));
    for (std::size_t i = 0; i < tab.rows(); ++i) {
        result.solution[tab.basis[i]] = tab.rhs[i];
    }
    result.basis = tab.basis;
    result.kept_rows = tab.kept_rows;
    return result;
}

namespace {

/// Exact solve of square system M z = v by Gaussian elimination.
/// Returns false if M is singular.
bool solve_exact(std::vector<std::vector<Rational>> m, std::vector<Rational> v,
                 std::vector<Rational>& out) {
    const std::size_t k = m.size();
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t pivot = k;
        for (std::size_t row = col; row < k; ++row) {
            if (m[row][col] != 0) {
                pivot = row;
                break;
            }
        }
        if (pivot == k) return false;
        std::swap(m[col], m[pivot]);
        std::swap(v[col], v[pivot]);
        for (std::size_t row = col + 1; row < k; ++row) {
            if (m[row][col] == 0) continue;
            const Rational f = m[row][col] / m[col][col];
            for (std::size_t j = col; j < k; ++j) m[row][j] -= f * m[col][j];
            v[row] -= f * v[col];
        }
    }
    out.assign(k, Rational(0));
    for (std::size_t row = k; row-- > 0;) {
        Rational acc = v[row];
        for (std::size_t j = row + 1; j < k; ++j) acc -= m[row][j] * out[j];
        out[row] = acc / m[row][row];
    }
    return true;
}

}  // namespace

bool verify_simplex_certificate(const StandardFormLP& lp, const LPResult& result) {
    if (result.status != LPStatus::Optimal) return false;
    const std::size_t n = lp.variable_count;
    if (result.solution.size() != n) return false;

    // Primal feasibility and the claimed value.
    for (const Rational& x : result.solution) {
        if (x < 0) return false;
    }
    for (std::size_t i = 0; i < lp.equality_matrix.size(); ++i) {
        Rational acc(0);
        for (std::size_t j = 0; j < n; ++j) {
            if (lp.equality_matrix[i][j] != 0 && result.solution[j] != 0) {
                acc += lp.equality_matrix[i][j] * result.solution[j];
            }
        }
        if (acc != lp.equality_rhs[i]) return false;
    }
    Rational primal(0);
    for (std::size_t j = 0; j < n; ++j) {
        if (lp.objective[j] != 0 && result.solution[j] != 0) {
            primal += lp.objective[j] * result.solution[j];
        }
    }
    if (primal != result.value) return false;

    // Dual multipliers from the final basis: solve B^T y = c_B, zero on
    // dropped rows.
    const std::size_t k = result.basis.size();
    if (result.kept_rows.size() != k) return false;
    std::vector<std::vector<Rational>> bt(k, std::vector<Rational>(k));
    std::vector<Rational> cb(k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t r = 0; r < k; ++r) {
            bt[i][r] = lp.equality_matrix[result.kept_rows[r]][result.basis[i]];
        }
        cb[i] = lp.objective[result.basis[i]];
    }
    std::vector<Rational> y;
    if (!solve_exact(std::move(bt), std::move(cb), y)) return false;

    // Dual feasibility: y . A_j >= c_j for every column.
    for (std::size_t j = 0; j < n; ++j) {
        Rational lhs(0);
        for (std::size_t r = 0; r < k; ++r) {
            const Rational& a = lp.equality_matrix[result.kept_rows[r]][j];
            if (a != 0 && y[r] != 0) lhs += y[r] * a;
        }
        if (lhs < lp.objective[j]) return false;
    }

    // Strong duality.
    Rational dual(0);
    for (std::size_t r = 0; r < k; ++r) {
        if (y[r] != 0) dual += y[r] * lp.equality_rhs[result.kept_rows[r]];
    }
    return dual == result.value;
}

}  // namespace bellcomm
