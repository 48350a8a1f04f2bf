// Test-only reference implementations. These deliberately avoid the library's
// algorithmic shortcuts so they can serve as independent cross-checks.
#pragma once

#include <vector>

#include "bellcomm/classical.hpp"
#include "bellcomm/exact.hpp"
#include "bellcomm/scenario.hpp"
#include "bellcomm/util.hpp"

namespace bellcomm::testing {

/// Exhaustive local bound: enumerates both parties' assignments outright.
inline Int local_bound_exhaustive(const BellFunctional& b) {
    const Scenario& sc = b.scenario;
    auto advance = [](std::vector<int>& digits, int radix) {
        for (int pos = static_cast<int>(digits.size()) - 1; pos >= 0; --pos) {
            if (++digits[pos] < radix) return true;
            digits[pos] = 0;
        }
        return false;
    };

    Int best;
    bool have = false;
    std::vector<int> f(sc.m_a, 0);
    do {
        std::vector<int> g(sc.m_b, 0);
        do {
            const Int s = score_of_strategy(b, LocalStrategy{f, g});
            if (!have || s > best) {
                have = true;
                best = s;
            }
        } while (advance(g, sc.o_b));
    } while (advance(f, sc.o_a));
    return best;
}

/// Uniform random integer functional with coefficients in [lo, hi].
inline BellFunctional random_functional(const Scenario& sc, Rng& rng, int lo, int hi) {
    std::vector<Int> coeffs(sc.probability_dimension());
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo + 1);
    for (Int& c : coeffs) c = Int(lo + static_cast<int>(rng.next_u64() % span));
    return BellFunctional(sc, std::move(coeffs));
}

/// The 24 extremum points of the (2,2,2,2) no-signaling polytope: 16 local
/// deterministic behaviors and the 8 two-output nonlocal boxes
/// p(a,b|x,y) = 1/2 [a xor b = xy xor ax xor by xor g].
inline std::vector<std::vector<Rational>> ns_vertices_2222() {
    const Scenario sc(2, 2, 2, 2);
    std::vector<std::vector<Rational>> vertices;
    for (int f0 = 0; f0 < 2; ++f0)
        for (int f1 = 0; f1 < 2; ++f1)
            for (int g0 = 0; g0 < 2; ++g0)
                for (int g1 = 0; g1 < 2; ++g1) {
                    std::vector<Rational> v(16, Rational(0));
                    const int f[2] = {f0, f1}, g[2] = {g0, g1};
                    for (int x = 0; x < 2; ++x)
                        for (int y = 0; y < 2; ++y) v[flat_index(sc, x, y, f[x], g[y])] = 1;
                    vertices.push_back(std::move(v));
                }
    for (int alpha = 0; alpha < 2; ++alpha)
        for (int beta = 0; beta < 2; ++beta)
            for (int gamma = 0; gamma < 2; ++gamma) {
                std::vector<Rational> v(16, Rational(0));
                for (int x = 0; x < 2; ++x)
                    for (int y = 0; y < 2; ++y)
                        for (int a = 0; a < 2; ++a)
                            for (int b = 0; b < 2; ++b) {
                                if ((a ^ b) == ((x & y) ^ (alpha & x) ^ (beta & y) ^ gamma)) {
                                    v[flat_index(sc, x, y, a, b)] = make_rational(Int(1), Int(2));
                                }
                            }
                vertices.push_back(std::move(v));
            }
    return vertices;
}

/// Exact functional value on a rational behavior vector.
inline Rational rational_score(const BellFunctional& b, const std::vector<Rational>& p) {
    Rational total(0);
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (b.coefficients[i] != 0 && p[i] != 0) total += Rational(b.coefficients[i]) * p[i];
    }
    return total;
}

}  // namespace bellcomm::testing
