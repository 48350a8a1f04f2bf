#include "bellcomm/experiments.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "bellcomm/util.hpp"

namespace bellcomm {

namespace {

long long exact_int(const Rational& q, const char* what) {
    if (q.get_den() != 1) throw std::logic_error(std::string(what) + " is not an integer");
    return to_int64(Int(q.get_num()));
}

}  // namespace

std::vector<BoundsRow> bounds_table(int d_min, int d_max, const SeesawConfig& config) {
    if (d_min < 2 || d_min > d_max) throw std::invalid_argument("need 2 <= d_min <= d_max");
    if (d_max > 8) throw std::length_error("bounds table capped at d = 8");

    std::vector<BoundsRow> rows;
    for (int d = d_min; d <= d_max; ++d) {
        const BellFunctional game = make_truncated_xor_game(d);
        BoundsRow row{};
        row.d = d;
        row.s_local = to_int64(local_bound(game).value);
        row.s_onebit = to_int64(one_bit_bound(game, config.threads).value);
        row.s_ns = exact_int(ns_bound(game), "no-signaling bound");

        SeesawConfig per_d = config;
        per_d.rng_seed = split_seed(config.rng_seed, static_cast<std::uint64_t>(d));
        row.s_quantum_lower = seesaw_optimize(game, maximally_entangled_state(d), per_d).score;

        if (!(row.s_local <= row.s_onebit && row.s_onebit <= row.s_ns)) {
            throw std::logic_error("bound ordering violated");
        }
        if (!(row.s_quantum_lower <= static_cast<double>(row.s_ns) + 1e-6)) {
            throw std::logic_error("quantum score exceeds the no-signaling bound");
        }
        rows.push_back(row);
    }
    return rows;
}

std::vector<SweepRow> noise_sweep(int d, const std::vector<double>& sigma_grid,
                                  int trials_per_sigma, const SeesawConfig& config) {
    if (d < 2) throw std::invalid_argument("noise sweep needs d >= 2");
    if (trials_per_sigma < 1) throw std::invalid_argument("need at least one trial per sigma");
    for (double s : sigma_grid) {
        if (!(s >= 0.0)) throw std::invalid_argument("sigma grid values must be nonnegative");
    }

    const BellFunctional game = make_truncated_xor_game(d);
    const double ceiling = static_cast<double>(exact_int(ns_bound(game), "no-signaling bound"));
    const QuantumState ideal = maximally_entangled_state(d);

    const std::size_t tasks = sigma_grid.size() * static_cast<std::size_t>(trials_per_sigma);
    std::vector<SweepRow> rows(tasks);
    parallel_for(tasks, config.threads, [&](std::size_t index) {
        const std::size_t si = index / trials_per_sigma;
        const double sigma = sigma_grid[si];
        const std::uint64_t seed = split_seed(config.rng_seed, index);

        const QuantumState noisy = perturb_state(ideal, sigma, split_seed(seed, 0));
        SeesawConfig per_task = config;
        per_task.rng_seed = split_seed(seed, 1);
        per_task.threads = 1;  // tasks are already parallel
        const SeesawResult run = seesaw_optimize(game, noisy, per_task);

        rows[index] = SweepRow{sigma, seed, fidelity(noisy, d), run.score};
    });

    for (const SweepRow& row : rows) {
        if (!(row.fidelity >= 0.0 && row.fidelity <= 1.0 + 1e-12)) {
            throw std::logic_error("fidelity outside [0, 1]");
        }
        if (!(row.best_score <= ceiling + 1e-6)) {
            throw std::logic_error("sweep score exceeds the no-signaling bound");
        }
    }
    return rows;
}

StructureReport structure_report(const QuantumModel& model, const BellFunctional& b) {
    const Behavior p = behavior_of_model(model);
    StructureReport report{};
    report.score = score(b, p);
    report.mub_deviation = mub_deviation(model.bob);
    report.neighbor_overlap_spread = neighbor_overlap_spread(model.alice);
    report.fit = fit_decomposition(p, b);
    report.ns_violation = is_no_signaling(p, 0.0).max_violation;

    double worst = 0.0;
    const Scenario& sc = p.scenario;
    for (int x = 0; x < sc.m_a; ++x) {
        for (int y = 0; y < sc.m_b; ++y) {
            double sum = 0.0;
            for (int a = 0; a < sc.o_a; ++a)
                for (int bb = 0; bb < sc.o_b; ++bb) sum += p.at(x, y, a, bb);
            worst = std::max(worst, std::abs(sum - 1.0));
        }
    }
    report.normalization_violation = worst;
    return report;
}

std::vector<double> default_sigma_grid() {
    // Calibrated so the induced fidelities run from ~0.9995 down to ~0.29 at
    // d = 5 and straddle the violation threshold near 0.97.
    constexpr double lo = 1e-5, hi = 5e-2;
    constexpr int count = 12;
    std::vector<double> grid(count);
    for (int i = 0; i < count; ++i) {
        grid[i] = std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / (count - 1));
    }
    return grid;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    out << "sigma,seed,fidelity,score\n";
    for (const SweepRow& r : rows) {
        out << format_significant(r.sigma, 12) << ',' << r.seed << ','
            << format_significant(r.fidelity, 12) << ','
            << format_significant(r.best_score, 12) << '\n';
    }
    return out.str();
}

std::string bounds_csv(const std::vector<BoundsRow>& rows) {
    std::ostringstream out;
    out << "d,s_local,s_onebit,s_ns,s_quantum_lower\n";
    for (const BoundsRow& r : rows) {
        out << r.d << ',' << r.s_local << ',' << r.s_onebit << ',' << r.s_ns << ','
            << format_significant(r.s_quantum_lower, 12) << '\n';
    }
    return out.str();
}

ViolationThreshold extract_threshold(const std::vector<SweepRow>& rows, double bound) {
    ViolationThreshold t;
    for (const SweepRow& r : rows) {
        if (r.best_score > bound) {
            if (!t.any_violating || r.fidelity < t.min_violating_fidelity) {
                t.min_violating_fidelity = r.fidelity;
            }
            t.any_violating = true;
        } else {
            if (!t.any_nonviolating || r.fidelity > t.max_nonviolating_fidelity) {
                t.max_nonviolating_fidelity = r.fidelity;
            }
            t.any_nonviolating = true;
        }
    }
    return t;
}

}  // namespace bellcomm
