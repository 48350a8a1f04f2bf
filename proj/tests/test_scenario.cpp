#include <doctest.h>

#include <algorithm>

#include "bellcomm/classical.hpp"
#include "bellcomm/scenario.hpp"
#include "oracles.hpp"

using namespace bellcomm;

TEST_CASE("scenario validation and dimension") {
    const Scenario sc(5, 2, 5, 5);
    CHECK(sc.probability_dimension() == 250);
    CHECK(Scenario(2, 2, 2, 2).probability_dimension() == 16);
    CHECK_THROWS_AS(Scenario(0, 2, 2, 2), std::invalid_argument);
    CHECK_THROWS_AS(Scenario(2, 2, -1, 2), std::invalid_argument);
}

TEST_CASE("flat_index corners and formula") {
    const Scenario big(5, 2, 5, 5);
    CHECK(flat_index(big, 0, 0, 0, 0) == 0);
    CHECK(flat_index(big, 4, 1, 4, 4) == 249);
    const Scenario small(2, 2, 2, 2);
    CHECK(flat_index(small, 1, 0, 0, 1) == 9);  // ((x*m_b+y)*o_a+a)*o_b+b
    CHECK_THROWS_AS(flat_index(small, 2, 0, 0, 0), std::out_of_range);
    CHECK_THROWS_AS(flat_index(small, 0, 0, 0, -1), std::out_of_range);
}

TEST_CASE("flat_index round-trips exhaustively") {
    const Scenario sc(3, 3, 3, 3);
    for (std::size_t i = 0; i < sc.probability_dimension(); ++i) {
        const JointIndex j = unflatten(sc, i);
        CHECK(flat_index(sc, j.x, j.y, j.a, j.b) == i);
    }
    CHECK_THROWS_AS(unflatten(sc, sc.probability_dimension()), std::out_of_range);
}

TEST_CASE("truncated game reproduces the d=5 coefficient table") {
    const BellFunctional game = make_truncated_xor_game(5);
    CHECK(game.scenario == Scenario(5, 2, 5, 5));

    // y = 0 blocks are identity patterns for every x.
    for (int x = 0; x < 5; ++x)
        for (int a = 0; a < 5; ++a)
            for (int b = 0; b < 5; ++b) CHECK(game.at(x, 0, a, b) == (a == b ? 1 : 0));

    // x = 1 (second input), y = 1: ones on b = a + 1 mod 5.
    for (int a = 0; a < 5; ++a)
        for (int b = 0; b < 5; ++b) CHECK(game.at(1, 1, a, b) == (b == (a + 1) % 5 ? 1 : 0));

    // x = 4, y = 1: ones on b = a + 4 mod 5.
    for (int a = 0; a < 5; ++a)
        for (int b = 0; b < 5; ++b) CHECK(game.at(4, 1, a, b) == (b == (a + 4) % 5 ? 1 : 0));

    Int ones(0);
    for (const Int& c : game.coefficients) {
        CHECK((c == 0 || c == 1));
        ones += c;
    }
    CHECK(ones == 50);  // d * 2 * d unit entries
}

TEST_CASE("truncated game matches the defining bracket at d=2") {
    const BellFunctional game = make_truncated_xor_game(2);
    CHECK(game.scenario.probability_dimension() == 16);
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) {
                    const int expected = ((b - a) % 2 + 2) % 2 == x * y ? 1 : 0;
                    CHECK(game.at(x, y, a, b) == expected);
                }
}

TEST_CASE("truncated game rejects d < 2") {
    CHECK_THROWS_AS(make_truncated_xor_game(1), std::invalid_argument);
    CHECK_THROWS_AS(make_truncated_xor_game(0), std::invalid_argument);
}

TEST_CASE("score of reference behaviors") {
    const BellFunctional game = make_truncated_xor_game(5);
    const Behavior ns = ns_behavior_from_functional(game);
    CHECK(score(game, ns) == doctest::Approx(10.0).epsilon(1e-12));

    const Behavior noise = white_noise_behavior(game.scenario);
    CHECK(score(game, noise) == doctest::Approx(2.0).epsilon(1e-12));  // 50 ones / 25

    const BellFunctional zero(game.scenario,
                              std::vector<Int>(game.scenario.probability_dimension(), Int(0)));
    CHECK(score(zero, ns) == 0.0);

    const Behavior other = white_noise_behavior(Scenario(2, 2, 2, 2));
    CHECK_THROWS_AS(score(game, other), std::invalid_argument);
}

TEST_CASE("restriction slices and reassembles the functional") {
    const BellFunctional game = make_truncated_xor_game(5);

    const BellFunctional whole = restrict_inputs(game, Bipartition::trivial(5));
    CHECK(whole.coefficients == game.coefficients);

    const Bipartition j(5, {0});
    const BellFunctional first = restrict_inputs(game, j);
    CHECK(first.scenario == Scenario(1, 2, 5, 5));
    CHECK(first.coefficients.size() == 1 * 2 * 5 * 5);
    for (int y = 0; y < 2; ++y)
        for (int a = 0; a < 5; ++a)
            for (int b = 0; b < 5; ++b) CHECK(first.at(0, y, a, b) == (a == b ? 1 : 0));

    // The two sides together carry every coefficient exactly once.
    const BellFunctional rest = restrict_inputs(game, j.complement());
    CHECK(first.coefficients.size() + rest.coefficients.size() == game.coefficients.size());
    Int total(0);
    for (const Int& c : first.coefficients) total += c;
    for (const Int& c : rest.coefficients) total += c;
    Int expected(0);
    for (const Int& c : game.coefficients) expected += c;
    CHECK(total == expected);

    CHECK_THROWS_AS(restrict_inputs(game, std::vector<int>{}), std::invalid_argument);
    CHECK_THROWS_AS(restrict_inputs(game, std::vector<int>{3, 1}), std::invalid_argument);
    CHECK_THROWS_AS(restrict_inputs(game, std::vector<int>{5}), std::invalid_argument);
}

TEST_CASE("restriction respects scoring as a direct sum") {
    const BellFunctional game = make_truncated_xor_game(4);
    Rng rng(7);
    const BellFunctional rand = testing::random_functional(game.scenario, rng, -5, 5);

    const std::vector<Behavior> behaviors = {
        ns_behavior_from_functional(game),
        white_noise_behavior(game.scenario),
        behavior_of_strategy(LocalStrategy{{0, 1, 2, 3}, {1, 2}}, game.scenario),
    };
    const std::vector<std::vector<int>> subsets = {{0}, {0, 2}, {1, 3}, {0, 1, 2}};
    for (const BellFunctional& b : {game, rand}) {
        for (const Behavior& p : behaviors) {
            for (const auto& j : subsets) {
                std::vector<int> rest;
                for (int x = 0; x < 4; ++x)
                    if (std::find(j.begin(), j.end(), x) == j.end()) rest.push_back(x);
                const double whole = score(b, p);
                const double parts = score(restrict_inputs(b, j), restrict_inputs(p, j)) +
                                     score(restrict_inputs(b, rest), restrict_inputs(p, rest));
                CHECK(whole == doctest::Approx(parts).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("maximal no-signaling behavior of the game family") {
    for (int d : {2, 3, 5, 6}) {
        const BellFunctional game = make_truncated_xor_game(d);
        const Behavior ns = ns_behavior_from_functional(game);
        CHECK(score(game, ns) == doctest::Approx(2.0 * d).epsilon(1e-12));

        const NoSignalingCheck check = is_no_signaling(ns, 0.0);
        CHECK(check.ok);
        CHECK(check.max_violation == 0.0);
    }

    // Ties the per-block maximum bound on its own game.
    const BellFunctional game = make_truncated_xor_game(5);
    Int trivial(0);
    for (int x = 0; x < 5; ++x)
        for (int y = 0; y < 2; ++y) {
            Int best(0);
            for (int a = 0; a < 5; ++a)
                for (int b = 0; b < 5; ++b) best = std::max(best, game.at(x, y, a, b));
            trivial += best;
        }
    CHECK(score(game, ns_behavior_from_functional(game)) ==
          doctest::Approx(trivial.get_d()).epsilon(1e-12));

    const BellFunctional zero(Scenario(2, 2, 2, 2), std::vector<Int>(16, Int(0)));
    CHECK_THROWS_AS(ns_behavior_from_functional(zero), std::invalid_argument);
}

TEST_CASE("white noise behavior") {
    const Behavior noise = white_noise_behavior(Scenario(5, 2, 5, 5));
    for (double p : noise.probabilities) CHECK(p == 1.0 / 25.0);
    const NoSignalingCheck check = is_no_signaling(noise, 0.0);
    CHECK(check.ok);
    CHECK(check.max_violation == 0.0);
}

TEST_CASE("mix endpoints and affinity") {
    const Scenario sc(2, 2, 2, 2);
    const Behavior p1 = behavior_of_strategy(LocalStrategy{{0, 1}, {1, 0}}, sc);
    const Behavior p2 = white_noise_behavior(sc);

    CHECK(mix(p1, p2, 1.0).probabilities == p1.probabilities);
    CHECK(mix(p1, p2, 0.0).probabilities == p2.probabilities);

    const BellFunctional game = make_truncated_xor_game(2);
    const double w = 0.3;
    const double mixed = score(game, mix(p1, p2, w));
    const double affine = w * score(game, p1) + (1.0 - w) * score(game, p2);
    CHECK(mixed == doctest::Approx(affine).epsilon(1e-12));

    CHECK_THROWS_AS(mix(p1, p2, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(mix(p1, p2, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(mix(p1, white_noise_behavior(Scenario(3, 2, 2, 2)), 0.5),
                    std::invalid_argument);
}

TEST_CASE("signaling strategies are detected") {
    const Scenario sc(2, 2, 2, 2);
    // Bob plays the communicated bit: his marginal follows Alice's input.
    const OneBitStrategy talking{{0, 0}, {0, 1}, {{{0, 1}}, {{0, 1}}}};
    const Behavior p = behavior_of_strategy(talking, sc);
    const NoSignalingCheck check = is_no_signaling(p, 1e-9);
    CHECK_FALSE(check.ok);
    CHECK(check.max_violation == doctest::Approx(1.0));
}
