#include <doctest.h>

#include <algorithm>
#include <set>

#include "bellcomm/classical.hpp"
#include "bellcomm/ns_lp.hpp"
#include "oracles.hpp"

using namespace bellcomm;

namespace {

BellFunctional zero_functional(const Scenario& sc) {
    return BellFunctional(sc, std::vector<Int>(sc.probability_dimension(), Int(0)));
}

/// Relabels outputs by permutations and inputs by permutations.
BellFunctional relabel(const BellFunctional& b, const std::vector<int>& x_perm,
                       const std::vector<int>& y_perm, const std::vector<int>& a_perm,
                       const std::vector<int>& b_perm) {
    const Scenario& sc = b.scenario;
    std::vector<Int> coeffs(sc.probability_dimension());
    for (int x = 0; x < sc.m_a; ++x)
        for (int y = 0; y < sc.m_b; ++y)
            for (int a = 0; a < sc.o_a; ++a)
                for (int bb = 0; bb < sc.o_b; ++bb) {
                    coeffs[flat_index(sc, x_perm[x], y_perm[y], a_perm[a], b_perm[bb])] =
                        b.at(x, y, a, bb);
                }
    return BellFunctional(sc, std::move(coeffs));
}

std::vector<int> random_permutation(int n, Rng& rng) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    for (int i = n - 1; i > 0; --i) {
        std::swap(p[i], p[rng.next_u64() % (i + 1)]);
    }
    return p;
}

}  // namespace

TEST_CASE("local bound of the game family") {
    CHECK(local_bound(make_truncated_xor_game(5)).value == 6);
    CHECK(local_bound(make_truncated_xor_game(6)).value == 7);
    CHECK(local_bound(make_truncated_xor_game(2)).value == 3);
    CHECK(local_bound(zero_functional(Scenario(3, 2, 2, 2))).value == 0);
}

TEST_CASE("local bound witness replays to the exact value") {
    for (int d : {2, 3, 5}) {
        const BellFunctional game = make_truncated_xor_game(d);
        const BoundResult r = local_bound(game);
        REQUIRE(r.witness_local.has_value());
        CHECK(score_of_strategy(game, *r.witness_local) == r.value);
        // And through the behavior path.
        const Behavior p = behavior_of_strategy(*r.witness_local, game.scenario);
        CHECK(score(game, p) == doctest::Approx(r.value.get_d()).epsilon(1e-12));
    }
}

TEST_CASE("local bound agrees with exhaustive enumeration") {
    CHECK(testing::local_bound_exhaustive(make_truncated_xor_game(2)) == 3);

    Rng rng(11);
    for (const Scenario& sc : {Scenario(3, 2, 2, 2), Scenario(2, 3, 3, 2)}) {
        for (int trial = 0; trial < 50; ++trial) {
            const BellFunctional b = testing::random_functional(sc, rng, -5, 5);
            CHECK(local_bound(b).value == testing::local_bound_exhaustive(b));
        }
    }
}

TEST_CASE("bipartition enumeration is canonical and complete") {
    const auto parts5 = enumerate_bipartitions(5);
    CHECK(parts5.size() == 16);  // trivial + 2^4 - 1
    CHECK(parts5.front().is_trivial());
    std::set<std::vector<int>> seen;
    for (const Bipartition& j : parts5) {
        CHECK(j.ground_size == 5);
        if (!j.is_trivial()) {
            CHECK(j.members.front() == 0);  // canonical side
            CHECK(!j.complement().empty());
        }
        CHECK(seen.insert(j.members).second);
    }

    CHECK(enumerate_bipartitions(2).size() == 2);
    CHECK(enumerate_bipartitions(1).size() == 1);
    CHECK(enumerate_bipartitions(1).front().is_trivial());
}

TEST_CASE("partition score of the d=5 game") {
    const BellFunctional game = make_truncated_xor_game(5);
    CHECK(partition_score(game, Bipartition::trivial(5)) == 6);

    Int best(0);
    for (const Bipartition& j : enumerate_bipartitions(5)) {
        const Int s = partition_score(game, j);
        CHECK(s >= local_bound(game).value);  // a free bit never hurts
        best = std::max(best, s);
    }
    CHECK(best == 7);

    CHECK(partition_score(zero_functional(Scenario(4, 2, 2, 2)),
                          Bipartition(4, {0, 2})) == 0);
}

TEST_CASE("one-bit bound of the game family") {
    CHECK(one_bit_bound(make_truncated_xor_game(5)).value == 7);
    CHECK(one_bit_bound(make_truncated_xor_game(6)).value == 8);
    CHECK(one_bit_bound(make_truncated_xor_game(2)).value == 4);
    CHECK(one_bit_bound(zero_functional(Scenario(3, 2, 2, 2))).value == 0);
}

TEST_CASE("one-bit witness replays exactly and matches its partition") {
    for (int d : {2, 3, 5}) {
        const BellFunctional game = make_truncated_xor_game(d);
        const BoundResult r = one_bit_bound(game);
        REQUIRE(r.witness_onebit.has_value());
        REQUIRE(r.witness_partition.has_value());
        CHECK(score_of_strategy(game, *r.witness_onebit) == r.value);
        const Behavior p = behavior_of_strategy(*r.witness_onebit, game.scenario);
        CHECK(score(game, p) == doctest::Approx(r.value.get_d()).epsilon(1e-12));
        // h realizes the winning bipartition.
        for (int x = 0; x < game.scenario.m_a; ++x) {
            const bool in_members =
                std::find(r.witness_partition->members.begin(),
                          r.witness_partition->members.end(), x) !=
                r.witness_partition->members.end();
            CHECK(r.witness_onebit->comm[x] == (in_members ? 0 : 1));
        }
    }
}

TEST_CASE("one-bit sweep is thread-count independent") {
    const BellFunctional game = make_truncated_xor_game(5);
    const BoundResult serial = one_bit_bound(game, 1);
    const BoundResult parallel = one_bit_bound(game, 4);
    CHECK(serial.value == parallel.value);
    CHECK(serial.witness_partition->members == parallel.witness_partition->members);
    CHECK(serial.witness_onebit->alice_outputs == parallel.witness_onebit->alice_outputs);
    CHECK(serial.witness_onebit->comm == parallel.witness_onebit->comm);
    CHECK(serial.witness_onebit->bob_outputs == parallel.witness_onebit->bob_outputs);
}

TEST_CASE("decomposition equals brute force on random functionals") {
    Rng rng(23);
    for (const Scenario& sc :
         {Scenario(3, 2, 2, 2), Scenario(3, 3, 2, 2), Scenario(4, 2, 3, 3)}) {
        for (int trial = 0; trial < 40; ++trial) {
            const BellFunctional b = testing::random_functional(sc, rng, -5, 5);
            const BoundResult fast = one_bit_bound(b);
            CHECK(fast.value == one_bit_bound_bruteforce(b));
            CHECK(score_of_strategy(b, *fast.witness_onebit) == fast.value);
        }
    }
}

TEST_CASE("brute force handles the CHSH-pattern game and the capacity gate") {
    CHECK(one_bit_bound_bruteforce(make_truncated_xor_game(2)) == 4);
    CHECK(one_bit_bound_bruteforce(zero_functional(Scenario(3, 2, 2, 2))) == 0);
    CHECK_THROWS_AS(one_bit_bound_bruteforce(zero_functional(Scenario(5, 3, 4, 4))),
                    std::length_error);
}

TEST_CASE("brute force falls back to exact arithmetic for huge coefficients") {
    const Scenario sc(2, 2, 2, 2);
    const Int big = int_pow(Int(2), 80);
    std::vector<Int> coeffs(sc.probability_dimension(), Int(0));
    coeffs[flat_index(sc, 0, 0, 0, 0)] = big;
    coeffs[flat_index(sc, 1, 1, 1, 1)] = big;
    const BellFunctional b(sc, std::move(coeffs));
    CHECK(one_bit_bound_bruteforce(b) == 2 * big);
    CHECK(one_bit_bound(b).value == 2 * big);
}

TEST_CASE("sandwich between local bound and per-block relaxation") {
    Rng rng(31);
    for (int trial = 0; trial < 30; ++trial) {
        const BellFunctional b =
            testing::random_functional(Scenario(3, 2, 3, 3), rng, -5, 5);
        const Int local = local_bound(b).value;
        const Int onebit = one_bit_bound(b).value;
        CHECK(local <= onebit);
        CHECK(onebit <= trivial_upper_bound(b));
    }
}

TEST_CASE("one-bit bound is invariant under relabelings") {
    Rng rng(41);
    const Scenario sc(3, 2, 3, 3);
    for (int trial = 0; trial < 15; ++trial) {
        const BellFunctional b = testing::random_functional(sc, rng, -5, 5);
        const BellFunctional shuffled =
            relabel(b, random_permutation(sc.m_a, rng), random_permutation(sc.m_b, rng),
                    random_permutation(sc.o_a, rng), random_permutation(sc.o_b, rng));
        CHECK(one_bit_bound(b).value == one_bit_bound(shuffled).value);
    }
}

TEST_CASE("deterministic behaviors") {
    const Scenario sc(2, 2, 2, 2);
    const LocalStrategy quiet{{0, 1}, {1, 0}};
    CHECK(is_no_signaling(behavior_of_strategy(quiet, sc), 0.0).max_violation == 0.0);

    const OneBitStrategy allzero{{0, 0}, {0, 0}, {{{0, 0}}, {{0, 0}}}};
    const Behavior p = behavior_of_strategy(allzero, sc);
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) CHECK(p.at(x, y, 0, 0) == 1.0);

    CHECK_THROWS_AS(behavior_of_strategy(LocalStrategy{{0, 2}, {0, 0}}, sc),
                    std::invalid_argument);
    CHECK_THROWS_AS(behavior_of_strategy(LocalStrategy{{0}, {0, 0}}, sc),
                    std::invalid_argument);
}

TEST_CASE("vertex count formula") {
    CHECK(count_onebit_vertices(Scenario(5, 2, 5, 5)) == 28203125);
    CHECK(count_onebit_vertices(Scenario(2, 2, 2, 2)) == 64);
    CHECK(count_onebit_vertices(Scenario(1, 1, 1, 1)) == 1);
    // Wide scenarios overflow 64-bit arithmetic; the count must still be exact.
    const Int wide = count_onebit_vertices(Scenario(8, 8, 8, 8));
    CHECK(wide == Int(8) * int_pow(Int(8), 7) *
                      (int_pow(Int(8), 8) +
                       (int_pow(Int(2), 7) - 1) * (int_pow(Int(8), 16) - int_pow(Int(8), 8))));
    CHECK_FALSE(fits_int64(wide));
}

TEST_CASE("deduplicated behaviors stay within the vertex count and reach the bound") {
    for (const Scenario& sc : {Scenario(2, 2, 2, 2), Scenario(3, 2, 2, 2)}) {
        const auto behaviors = enumerate_distinct_onebit_behaviors(sc);
        CHECK(Int(static_cast<long>(behaviors.size())) <= count_onebit_vertices(sc));

        Rng rng(59);
        std::vector<BellFunctional> candidates;
        if (sc.m_a == 2) candidates.push_back(make_truncated_xor_game(2));
        candidates.push_back(testing::random_functional(sc, rng, -5, 5));
        for (const BellFunctional& b : candidates) {
            Int best;
            bool have = false;
            for (const auto& pattern : behaviors) {
                Int s(0);
                for (std::size_t i = 0; i < pattern.size(); ++i) {
                    if (pattern[i]) s += b.coefficients[i];
                }
                if (!have || s > best) {
                    have = true;
                    best = s;
                }
            }
            CHECK(best == one_bit_bound(b).value);
        }
    }
}
