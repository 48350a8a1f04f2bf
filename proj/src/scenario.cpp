#include "bellcomm/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace bellcomm {

namespace {

constexpr double kEntryTol = 1e-12;
constexpr double kBlockSumTol = 1e-9;

void require(bool cond, const char* message) {
    if (!cond) throw std::invalid_argument(message);
}

}  // namespace

Scenario::Scenario(int m_a_, int m_b_, int o_a_, int o_b_)
    : m_a(m_a_), m_b(m_b_), o_a(o_a_), o_b(o_b_) {
    require(m_a >= 1 && m_b >= 1 && o_a >= 1 && o_b >= 1,
            "scenario requires at least one input and output per party");
}

std::size_t Scenario::probability_dimension() const {
    return static_cast<std::size_t>(m_a) * m_b * o_a * o_b;
}

std::size_t flat_index(const Scenario& sc, int x, int y, int a, int b) {
    if (x < 0 || x >= sc.m_a || y < 0 || y >= sc.m_b || a < 0 || a >= sc.o_a || b < 0 ||
        b >= sc.o_b) {
        throw std::out_of_range("flat_index: index outside scenario");
    }
    return ((static_cast<std::size_t>(x) * sc.m_b + y) * sc.o_a + a) * sc.o_b + b;
}

JointIndex unflatten(const Scenario& sc, std::size_t index) {
    if (index >= sc.probability_dimension()) {
        throw std::out_of_range("unflatten: index outside scenario");
    }
    JointIndex j{};
    j.b = static_cast<int>(index % sc.o_b);
    index /= sc.o_b;
    j.a = static_cast<int>(index % sc.o_a);
    index /= sc.o_a;
    j.y = static_cast<int>(index % sc.m_b);
    j.x = static_cast<int>(index / sc.m_b);
    return j;
}

BellFunctional::BellFunctional(Scenario sc, std::vector<Int> coeffs)
    : scenario(sc), coefficients(std::move(coeffs)) {
    require(coefficients.size() == scenario.probability_dimension(),
            "coefficient tensor length must equal the probability dimension");
}

Behavior::Behavior(Scenario sc, std::vector<double> probs)
    : scenario(sc), probabilities(std::move(probs)) {
    require(probabilities.size() == scenario.probability_dimension(),
            "probability tensor length must equal the probability dimension");
    for (double v : probabilities) {
        require(std::isfinite(v) && v >= -kEntryTol && v <= 1.0 + kEntryTol,
                "behavior entries must lie in [0, 1]");
    }
    for (int x = 0; x < scenario.m_a; ++x) {
        for (int y = 0; y < scenario.m_b; ++y) {
            double sum = 0.0;
            for (int a = 0; a < scenario.o_a; ++a)
                for (int b = 0; b < scenario.o_b; ++b) sum += at(x, y, a, b);
            require(std::abs(sum - 1.0) <= kBlockSumTol,
                    "behavior blocks must each sum to one");
        }
    }
}

Bipartition::Bipartition(int ground_size_, std::vector<int> members_)
    : ground_size(ground_size_), members(std::move(members_)) {
    require(ground_size >= 1, "bipartition needs a nonempty ground set");
    require(!members.empty(), "bipartition members must be nonempty");
    require(std::is_sorted(members.begin(), members.end()), "members must be ascending");
    require(std::adjacent_find(members.begin(), members.end()) == members.end(),
            "members must be distinct");
    require(members.front() >= 0 && members.back() < ground_size,
            "members must lie in the ground set");
    // Canonical form: trivial = full set, proper subsets contain input 0.
    if (members.size() != static_cast<std::size_t>(ground_size)) {
        require(members.front() == 0, "proper bipartition must contain input 0");
    }
}

std::vector<int> Bipartition::complement() const {
    std::vector<int> out;
    out.reserve(ground_size - members.size());
    std::size_t pos = 0;
    for (int x = 0; x < ground_size; ++x) {
        if (pos < members.size() && members[pos] == x) {
            ++pos;
        } else {
            out.push_back(x);
        }
    }
    return out;
}

Bipartition Bipartition::trivial(int ground_size) {
    std::vector<int> all(ground_size);
    for (int x = 0; x < ground_size; ++x) all[x] = x;
    return Bipartition(ground_size, std::move(all));
}

BellFunctional make_truncated_xor_game(int d) {
    if (d < 2) throw std::invalid_argument("truncated game requires d >= 2");
    Scenario sc(d, 2, d, d);
    std::vector<Int> coeffs(sc.probability_dimension(), Int(0));
    for (int x = 0; x < d; ++x) {
        for (int y = 0; y < 2; ++y) {
            for (int a = 0; a < d; ++a) {
                const int b = (a + x * y) % d;
                coeffs[flat_index(sc, x, y, a, b)] = 1;
            }
        }
    }
    return BellFunctional(sc, std::move(coeffs));
}

double score(const BellFunctional& b, const Behavior& p) {
    if (!(b.scenario == p.scenario)) {
        throw std::invalid_argument("score: functional and behavior shapes differ");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < b.coefficients.size(); ++i) {
        const Int& c = b.coefficients[i];
        if (c != 0) total += c.get_d() * p.probabilities[i];
    }
    return total;
}

namespace {

void check_subset(int m_a, const std::vector<int>& inputs) {
    if (inputs.empty()) throw std::invalid_argument("input restriction must be nonempty");
    if (!std::is_sorted(inputs.begin(), inputs.end()) ||
        std::adjacent_find(inputs.begin(), inputs.end()) != inputs.end() ||
        inputs.front() < 0 || inputs.back() >= m_a) {
        throw std::invalid_argument("input restriction must be an ascending subset of Alice's inputs");
    }
}

}  // namespace

BellFunctional restrict_inputs(const BellFunctional& b, const std::vector<int>& inputs) {
    check_subset(b.scenario.m_a, inputs);
    const Scenario sub(static_cast<int>(inputs.size()), b.scenario.m_b, b.scenario.o_a,
                       b.scenario.o_b);
    const std::size_t block = static_cast<std::size_t>(b.scenario.m_b) * b.scenario.o_a *
                              b.scenario.o_b;
    std::vector<Int> coeffs;
    coeffs.reserve(sub.probability_dimension());
    for (int x : inputs) {
        const auto begin = b.coefficients.begin() + static_cast<std::ptrdiff_t>(x * block);
        coeffs.insert(coeffs.end(), begin, begin + static_cast<std::ptrdiff_t>(block));
    }
    return BellFunctional(sub, std::move(coeffs));
}

BellFunctional restrict_inputs(const BellFunctional& b, const Bipartition& j) {
    if (j.ground_size != b.scenario.m_a) {
        throw std::invalid_argument("bipartition ground set must match Alice's inputs");
    }
    return restrict_inputs(b, j.members);
}

Behavior restrict_inputs(const Behavior& p, const std::vector<int>& inputs) {
    check_subset(p.scenario.m_a, inputs);
    const Scenario sub(static_cast<int>(inputs.size()), p.scenario.m_b, p.scenario.o_a,
                       p.scenario.o_b);
    const std::size_t block = static_cast<std::size_t>(p.scenario.m_b) * p.scenario.o_a *
                              p.scenario.o_b;
    std::vector<double> probs;
    probs.reserve(sub.probability_dimension());
    for (int x : inputs) {
        const auto begin = p.probabilities.begin() + static_cast<std::ptrdiff_t>(x * block);
        probs.insert(probs.end(), begin, begin + static_cast<std::ptrdiff_t>(block));
    }
    return Behavior(sub, std::move(probs));
}

Behavior ns_behavior_from_functional(const BellFunctional& b) {
    const Scenario& sc = b.scenario;
    for (int x = 0; x < sc.m_a; ++x) {
        for (int y = 0; y < sc.m_b; ++y) {
            Int sum = 0;
            for (int a = 0; a < sc.o_a; ++a)
                for (int bb = 0; bb < sc.o_b; ++bb) sum += b.at(x, y, a, bb);
            if (sum != sc.o_a) {
                throw std::invalid_argument(
                    "coefficient blocks must each sum to o_a to normalize as a behavior");
            }
        }
    }
    const double inv = 1.0 / sc.o_a;
    std::vector<double> probs(sc.probability_dimension());
    for (std::size_t i = 0; i < probs.size(); ++i) {
        probs[i] = b.coefficients[i].get_d() * inv;
    }
    return Behavior(sc, std::move(probs));
}

Behavior white_noise_behavior(const Scenario& sc) {
    const double v = 1.0 / (static_cast<double>(sc.o_a) * sc.o_b);
    return Behavior(sc, std::vector<double>(sc.probability_dimension(), v));
}

Behavior mix(const Behavior& p1, const Behavior& p2, double w) {
    if (!(p1.scenario == p2.scenario)) {
        throw std::invalid_argument("mix: behavior shapes differ");
    }
    if (!(w >= 0.0 && w <= 1.0)) {
        throw std::invalid_argument("mix: weight must lie in [0, 1]");
    }
    std::vector<double> probs(p1.probabilities.size());
    for (std::size_t i = 0; i < probs.size(); ++i) {
        probs[i] = w * p1.probabilities[i] + (1.0 - w) * p2.probabilities[i];
    }
    return Behavior(p1.scenario, std::move(probs));
}

NoSignalingCheck is_no_signaling(const Behavior& p, double tol) {
    const Scenario& sc = p.scenario;
    double worst = 0.0;
    // Alice marginal for (x, a) must not depend on y.
    for (int x = 0; x < sc.m_a; ++x) {
        for (int a = 0; a < sc.o_a; ++a) {
            double lo = 2.0, hi = -1.0;
            for (int y = 0; y < sc.m_b; ++y) {
                double m = 0.0;
                for (int b = 0; b < sc.o_b; ++b) m += p.at(x, y, a, b);
                lo = std::min(lo, m);
                hi = std::max(hi, m);
            }
            worst = std::max(worst, hi - lo);
        }
    }
    // Bob marginal for (y, b) must not depend on x.
    for (int y = 0; y < sc.m_b; ++y) {
        for (int b = 0; b < sc.o_b; ++b) {
            double lo = 2.0, hi = -1.0;
            for (int x = 0; x < sc.m_a; ++x) {
                double m = 0.0;
                for (int a = 0; a < sc.o_a; ++a) m += p.at(x, y, a, b);
                lo = std::min(lo, m);
                hi = std::max(hi, m);
            }
            worst = std::max(worst, hi - lo);
        }
    }
    return NoSignalingCheck{worst <= tol, worst};
}

}  // namespace bellcomm
