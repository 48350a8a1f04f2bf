#include "bellcomm/classical.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <type_traits>

#include "bellcomm/util.hpp"

namespace bellcomm {

namespace {

constexpr double kBruteForceTripleCap = 1e8;

/// Advances a fixed-length odometer in lexicographic tuple order (last digit
/// fastest). Returns false after the last tuple.
bool next_tuple(std::vector<int>& digits, int radix) {
    for (int pos = static_cast<int>(digits.size()) - 1; pos >= 0; --pos) {
        if (++digits[pos] < radix) return true;
        digits[pos] = 0;
    }
    return false;
}

void check_strategy_shape(const LocalStrategy& s, const Scenario& sc) {
    if (s.alice_outputs.size() != static_cast<std::size_t>(sc.m_a) ||
        s.bob_outputs.size() != static_cast<std::size_t>(sc.m_b)) {
        throw std::invalid_argument("strategy maps do not match the scenario");
    }
    for (int a : s.alice_outputs)
        if (a < 0 || a >= sc.o_a) throw std::invalid_argument("alice output out of range");
    for (int b : s.bob_outputs)
        if (b < 0 || b >= sc.o_b) throw std::invalid_argument("bob output out of range");
}

void check_strategy_shape(const OneBitStrategy& s, const Scenario& sc) {
    if (s.alice_outputs.size() != static_cast<std::size_t>(sc.m_a) ||
        s.comm.size() != static_cast<std::size_t>(sc.m_a) ||
        s.bob_outputs.size() != static_cast<std::size_t>(sc.m_b)) {
        throw std::invalid_argument("strategy maps do not match the scenario");
    }
    for (int a : s.alice_outputs)
        if (a < 0 || a >= sc.o_a) throw std::invalid_argument("alice output out of range");
    for (int c : s.comm)
        if (c != 0 && c != 1) throw std::invalid_argument("communication bit must be 0 or 1");
    for (const auto& g : s.bob_outputs)
        for (int b : g)
            if (b < 0 || b >= sc.o_b) throw std::invalid_argument("bob output out of range");
}

double triple_count(const Scenario& sc) {
    return std::pow(static_cast<double>(sc.o_a), sc.m_a) * std::pow(2.0, sc.m_a) *
           std::pow(static_cast<double>(sc.o_b), 2 * sc.m_b);
}

}  // namespace

BoundResult local_bound(const BellFunctional& b) {
    const Scenario& sc = b.scenario;
    std::vector<int> bob(sc.m_b, 0);
    Int best_value(-1);
    bool have_best = false;
    LocalStrategy best;

    std::vector<Int> column(sc.o_a);
    do {
        Int total(0);
        std::vector<int> alice(sc.m_a, 0);
        for (int x = 0; x < sc.m_a; ++x) {
            for (int a = 0; a < sc.o_a; ++a) {
                column[a] = 0;
                for (int y = 0; y < sc.m_b; ++y) column[a] += b.at(x, y, a, bob[y]);
            }
            int best_a = 0;
            for (int a = 1; a < sc.o_a; ++a) {
                if (column[a] > column[best_a]) best_a = a;
            }
            alice[x] = best_a;
            total += column[best_a];
        }
        if (!have_best || total > best_value) {
            have_best = true;
            best_value = total;
            best = LocalStrategy{std::move(alice), bob};
        }
    } while (next_tuple(bob, sc.o_b));

    BoundResult result;
    result.value = best_value;
    result.witness_local = std::move(best);
    return result;
}

Int partition_score(const BellFunctional& b, const Bipartition& j) {
    if (j.ground_size != b.scenario.m_a) {
        throw std::invalid_argument("bipartition ground set must match Alice's inputs");
    }
    Int total = local_bound(restrict_inputs(b, j.members)).value;
    const std::vector<int> rest = j.complement();
    if (!rest.empty()) total += local_bound(restrict_inputs(b, rest)).value;
    return total;
}

std::vector<Bipartition> enumerate_bipartitions(int m_a) {
    if (m_a < 1) throw std::invalid_argument("need at least one input");
    if (m_a > 25) throw std::length_error("bipartition sweep too large");
    std::vector<Bipartition> out;
    out.reserve(std::size_t{1} << (m_a - 1));
    out.push_back(Bipartition::trivial(m_a));
    const std::uint32_t full = (m_a == 1) ? 0 : ((std::uint32_t{1} << (m_a - 1)) - 1);
    for (std::uint32_t mask = 0; mask < full; ++mask) {
        std::vector<int> members{0};
        for (int x = 1; x < m_a; ++x) {
            if (mask & (std::uint32_t{1} << (x - 1))) members.push_back(x);
        }
        out.emplace_back(m_a, std::move(members));
    }
    return out;
}

BoundResult one_bit_bound(const BellFunctional& b, int threads) {
    const Scenario& sc = b.scenario;
    const std::vector<Bipartition> partitions = enumerate_bipartitions(sc.m_a);

    struct PartitionOutcome {
        Int value;
        LocalStrategy left;
        std::optional<LocalStrategy> right;
    };
    std::vector<PartitionOutcome> outcomes(partitions.size());

    parallel_for(partitions.size(), threads, [&](std::size_t i) {
        const Bipartition& j = partitions[i];
        BoundResult left = local_bound(restrict_inputs(b, j.members));
        PartitionOutcome out{left.value, std::move(*left.witness_local), std::nullopt};
        const std::vector<int> rest = j.complement();
        if (!rest.empty()) {
            BoundResult right = local_bound(restrict_inputs(b, rest));
            out.value += right.value;
            out.right = std::move(*right.witness_local);
        }
        outcomes[i] = std::move(out);
    });

    std::size_t best = 0;
    for (std::size_t i = 1; i < outcomes.size(); ++i) {
        if (outcomes[i].value > outcomes[best].value) best = i;
    }

    const Bipartition& j = partitions[best];
    const PartitionOutcome& win = outcomes[best];
    OneBitStrategy strategy;
    strategy.alice_outputs.assign(sc.m_a, 0);
    strategy.comm.assign(sc.m_a, 0);
    strategy.bob_outputs.assign(sc.m_b, {0, 0});
    for (std::size_t pos = 0; pos < j.members.size(); ++pos) {
        strategy.alice_outputs[j.members[pos]] = win.left.alice_outputs[pos];
        strategy.comm[j.members[pos]] = 0;
    }
    const std::vector<int> rest = j.complement();
    for (std::size_t pos = 0; pos < rest.size(); ++pos) {
        strategy.alice_outputs[rest[pos]] = win.right->alice_outputs[pos];
        strategy.comm[rest[pos]] = 1;
    }
    for (int y = 0; y < sc.m_b; ++y) {
        const int g0 = win.left.bob_outputs[y];
        strategy.bob_outputs[y] = {g0, win.right ? win.right->bob_outputs[y] : g0};
    }

    BoundResult result;
    result.value = win.value;
    result.witness_onebit = std::move(strategy);
    result.witness_partition = j;
    return result;
}

Int one_bit_bound_bruteforce(const BellFunctional& b) {
    const Scenario& sc = b.scenario;
    if (triple_count(sc) > kBruteForceTripleCap) {
        throw std::length_error("brute-force enumeration exceeds the candidate-triple cap");
    }

    // Hot loop runs on int64 when the coefficients allow it.
    const bool small = std::all_of(b.coefficients.begin(), b.coefficients.end(), [](const Int& c) {
        return fits_int64(c) && mpz_sizeinbase(c.get_mpz_t(), 2) <= 40;
    });

    auto sweep = [&](auto zero) {
        using Acc = decltype(zero);
        std::vector<Acc> v(b.coefficients.size());
        for (std::size_t i = 0; i < v.size(); ++i) {
            if constexpr (std::is_same_v<Acc, std::int64_t>) {
                v[i] = to_int64(b.coefficients[i]);
            } else {
                v[i] = b.coefficients[i];
            }
        }
        const int m_a = sc.m_a, m_b = sc.m_b, o_a = sc.o_a, o_b = sc.o_b;
        const std::size_t block = static_cast<std::size_t>(o_a) * o_b;

        std::vector<int> f(m_a, 0);
        std::vector<int> g(2 * m_b, 0);  // g[y*2 + c]
        Acc best{};
        bool have_best = false;
        do {
            for (std::uint32_t h = 0; h < (std::uint32_t{1} << m_a); ++h) {
                std::fill(g.begin(), g.end(), 0);
                do {
                    Acc total{};
                    for (int x = 0; x < m_a; ++x) {
                        const int c = (h >> x) & 1;
                        const std::size_t base =
                            (static_cast<std::size_t>(x) * m_b) * block +
                            static_cast<std::size_t>(f[x]) * o_b;
                        for (int y = 0; y < m_b; ++y) {
                            total += v[base + static_cast<std::size_t>(y) * block + g[y * 2 + c]];
                        }
                    }
                    if (!have_best || total > best) {
                        have_best = true;
                        best = total;
                    }
                } while (next_tuple(g, o_b));
            }
        } while (next_tuple(f, o_a));
        return best;
    };

    if (small) return Int(sweep(std::int64_t{0}));
    return sweep(Int(0));
}

Behavior behavior_of_strategy(const LocalStrategy& s, const Scenario& sc) {
    check_strategy_shape(s, sc);
    std::vector<double> probs(sc.probability_dimension(), 0.0);
    for (int x = 0; x < sc.m_a; ++x)
        for (int y = 0; y < sc.m_b; ++y)
            probs[flat_index(sc, x, y, s.alice_outputs[x], s.bob_outputs[y])] = 1.0;
    return Behavior(sc, std::move(probs));
}

Behavior behavior_of_strategy(const OneBitStrategy& s, const Scenario& sc) {
    check_strategy_shape(s, sc);
    std::vector<double> probs(sc.probability_dimension(), 0.0);
    for (int x = 0; x < sc.m_a; ++x)
        for (int y = 0; y < sc.m_b; ++y)
            probs[flat_index(sc, x, y, s.alice_outputs[x], s.bob_outputs[y][s.comm[x]])] = 1.0;
    return Behavior(sc, std::move(probs));
}

Int score_of_strategy(const BellFunctional& b, const LocalStrategy& s) {
    check_strategy_shape(s, b.scenario);
    Int total(0);
    for (int x = 0; x < b.scenario.m_a; ++x)
        for (int y = 0; y < b.scenario.m_b; ++y)
            total += b.at(x, y, s.alice_outputs[x], s.bob_outputs[y]);
    return total;
}

Int score_of_strategy(const BellFunctional& b, const OneBitStrategy& s) {
    check_strategy_shape(s, b.scenario);
    Int total(0);
    for (int x = 0; x < b.scenario.m_a; ++x)
        for (int y = 0; y < b.scenario.m_b; ++y)
            total += b.at(x, y, s.alice_outputs[x], s.bob_outputs[y][s.comm[x]]);
    return total;
}

Int count_onebit_vertices(const Scenario& sc) {
    const Int alice = int_pow(Int(sc.o_a), sc.m_a);
    const Int bob_single = int_pow(Int(sc.o_b), sc.m_b);
    const Int bob_double = int_pow(Int(sc.o_b), 2 * static_cast<unsigned long>(sc.m_b));
    const Int partitions = int_pow(Int(2), sc.m_a - 1) - 1;
    return alice * (bob_single + partitions * (bob_double - bob_single));
}

std::vector<std::vector<std::uint8_t>> enumerate_distinct_onebit_behaviors(const Scenario& sc) {
    if (triple_count(sc) > kBruteForceTripleCap) {
        throw std::length_error("behavior enumeration exceeds the candidate-triple cap");
    }
    std::set<std::vector<std::uint8_t>> seen;
    std::vector<int> f(sc.m_a, 0);
    do {
        for (std::uint32_t h = 0; h < (std::uint32_t{1} << sc.m_a); ++h) {
            std::vector<int> g(2 * sc.m_b, 0);
            do {
                std::vector<std::uint8_t> pattern(sc.probability_dimension(), 0);
                for (int x = 0; x < sc.m_a; ++x) {
                    const int c = (h >> x) & 1;
                    for (int y = 0; y < sc.m_b; ++y) {
                        pattern[flat_index(sc, x, y, f[x], g[y * 2 + c])] = 1;
                    }
                }
                seen.insert(std::move(pattern));
            } while (next_tuple(g, sc.o_b));
        }
    } while (next_tuple(f, sc.o_a));
    return std::vector<std::vector<std::uint8_t>>(seen.begin(), seen.end());
}

}  // namespace bellcomm
