#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "bellcomm/exact.hpp"
#include "bellcomm/scenario.hpp"

namespace bellcomm {

/// Deterministic product strategy: output maps f (Alice) and g (Bob).
struct LocalStrategy {
    std::vector<int> alice_outputs;  ///< f(x), length m_a
    std::vector<int> bob_outputs;    ///< g(y), length m_b
};

/// Deterministic strategy where Alice sends one bit c = h(x) and Bob's
/// output may depend on it. h induces the input bipartition {x : h(x)=0}.
struct OneBitStrategy {
    std::vector<int> alice_outputs;             ///< f(x), length m_a
    std::vector<int> comm;                      ///< h(x) in {0,1}, length m_a
    std::vector<std::array<int, 2>> bob_outputs;  ///< g(y,c), length m_b
};

/// Exact bound value plus the witness that attains it. Replaying the witness
/// through behavior_of_strategy and score reproduces the value exactly.
struct BoundResult {
    Int value;
    std::optional<LocalStrategy> witness_local;
    std::optional<OneBitStrategy> witness_onebit;
    std::optional<Bipartition> witness_partition;
};

/// Exact maximum over deterministic product strategies. Enumerates Bob's
/// o_b^m_b assignments; Alice's best response is separable per input.
BoundResult local_bound(const BellFunctional& b);

/// local_bound of the sub-game on j plus local_bound on its complement
/// (an empty complement contributes 0). For the trivial partition this is
/// the plain local bound.
Int partition_score(const BellFunctional& b, const Bipartition& j);

/// The trivial partition followed by all 2^(m_a-1)-1 canonical proper
/// bipartitions, each unordered {J, complement} pair exactly once.
std::vector<Bipartition> enumerate_bipartitions(int m_a);

/// Exact one-bit-of-communication bound: the best partition_score over all
/// bipartitions, with the assembled strategy witness. The sweep may run on
/// several threads; results are identical regardless of thread count.
BoundResult one_bit_bound(const BellFunctional& b, int threads = 1);

/// Independent oracle: exhaustive maximum over all deterministic triples
/// (f, h, g). Refuses scenarios above 1e8 candidate triples.
Int one_bit_bound_bruteforce(const BellFunctional& b);

Behavior behavior_of_strategy(const LocalStrategy& s, const Scenario& sc);
Behavior behavior_of_strategy(const OneBitStrategy& s, const Scenario& sc);

/// Exact functional value of a deterministic strategy.
Int score_of_strategy(const BellFunctional& b, const LocalStrategy& s);
Int score_of_strategy(const BellFunctional& b, const OneBitStrategy& s);

/// Closed-form count of one-bit extremum points:
/// o_a^m_a * [o_b^m_b + (2^(m_a-1)-1) * (o_b^(2 m_b) - o_b^m_b)].
Int count_onebit_vertices(const Scenario& sc);

/// Deduplicated deterministic one-bit behaviors as 0/1 tensors, sorted.
/// Same capacity guard as the brute-force bound.
std::vector<std::vector<std::uint8_t>> enumerate_distinct_onebit_behaviors(const Scenario& sc);

}  // namespace bellcomm
