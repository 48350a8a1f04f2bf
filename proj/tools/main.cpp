#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>

#include "bellcomm/classical.hpp"
#include "bellcomm/experiments.hpp"
#include "bellcomm/json_io.hpp"
#include "bellcomm/ns_lp.hpp"
#include "bellcomm/quantum.hpp"
#include "bellcomm/scenario.hpp"
#include "bellcomm/util.hpp"

namespace {

using namespace bellcomm;

constexpr int kExitOk = 0;
constexpr int kExitSemantic = 1;   // mismatch, missing violation
constexpr int kExitError = 2;      // usage, domain, or I/O failure

// Refuse brute-force verification above this many deduplicated vertices
// unless --force is given.
constexpr double kVerifyVertexGate = 1e7;

std::string rational_str(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

BellFunctional load_functional(const std::string& path) {
    return functional_from_json(read_json_file(path));
}

int cmd_game(int d, const std::string& out_path) {
    const BellFunctional game = make_truncated_xor_game(d);
    const Json j = to_json(game);
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        write_json_file(out_path, j);
    }
    std::cout << "probability_dimension " << game.scenario.probability_dimension() << "\n";
    return kExitOk;
}

int cmd_bounds(const std::string& in_path, bool want_local, bool want_onebit, bool want_ns,
               bool as_json, int threads) {
    const BellFunctional b = load_functional(in_path);
    if (!want_local && !want_onebit && !want_ns) {
        want_local = want_onebit = want_ns = true;
    }
    Json out;
    if (want_local) {
        const BoundResult r = local_bound(b);
        if (as_json) {
            out["local"] = to_json(r);
        } else {
            std::cout << "local " << r.value.get_str() << "\n";
        }
    }
    if (want_onebit) {
        const BoundResult r = one_bit_bound(b, threads);
        if (as_json) {
            out["onebit"] = to_json(r);
        } else {
            std::cout << "onebit " << r.value.get_str() << "\n";
        }
    }
    if (want_ns) {
        const Rational r = ns_bound(b);
        if (as_json) {
            out["ns"] = rational_str(r);
        } else {
            std::cout << "ns " << rational_str(r) << "\n";
        }
    }
    if (as_json) std::cout << out.dump(2) << "\n";
    return kExitOk;
}

int cmd_verify(const std::string& in_path, bool force) {
    const BellFunctional b = load_functional(in_path);
    const Int vertices = count_onebit_vertices(b.scenario);
    if (!force && vertices.get_d() > kVerifyVertexGate) {
        std::cerr << "error: " << vertices.get_str()
                  << " vertices exceed the verification gate; rerun with --force\n";
        return kExitError;
    }
    const Int fast = one_bit_bound(b).value;
    const Int brute = one_bit_bound_bruteforce(b);
    if (fast == brute) {
        std::cout << "MATCH " << fast.get_str() << "\n";
        return kExitOk;
    }
    std::cout << "MISMATCH " << fast.get_str() << " " << brute.get_str() << "\n";
    return kExitSemantic;
}

int cmd_seesaw(const std::string& in_path, int restarts, int sweeps, std::uint64_t seed,
               const std::string& out_model, bool require_violation, bool as_json, int threads) {
    const BellFunctional b = load_functional(in_path);
    if (b.scenario.o_a != b.scenario.o_b) {
        throw std::invalid_argument("seesaw requires equal output counts");
    }
    const int d = b.scenario.o_a;

    SeesawConfig config;
    config.restarts = restarts;
    config.sweeps_max = sweeps;
    config.rng_seed = seed;
    config.threads = threads;

    const SeesawResult run = seesaw_optimize(b, maximally_entangled_state(d), config);
    if (!out_model.empty()) write_json_file(out_model, to_json(run.model));

    if (as_json) {
        Json out{{"score", run.score}, {"best_restart", run.best_restart}};
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "score " << format_significant(run.score, 12) << "\n";
    }

    if (require_violation) {
        const Int bound = one_bit_bound(b, threads).value;
        if (!(run.score > bound.get_d())) {
            std::cout << "no violation: score does not beat the one-bit bound "
                      << bound.get_str() << "\n";
            return kExitSemantic;
        }
        std::cout << "violation of the one-bit bound " << bound.get_str() << "\n";
    }
    return kExitOk;
}

int cmd_sweep(int d, double sigma_min, double sigma_max, int sigma_count, bool include_zero,
              int trials, int restarts, std::uint64_t seed, const std::string& out_csv,
              int threads) {
    std::vector<double> grid;
    if (include_zero) grid.push_back(0.0);
    for (int i = 0; i < sigma_count; ++i) {
        const double t = sigma_count == 1 ? 0.0 : static_cast<double>(i) / (sigma_count - 1);
        grid.push_back(std::exp(std::log(sigma_min) + (std::log(sigma_max) - std::log(sigma_min)) * t));
    }

    SeesawConfig config;
    config.restarts = restarts;
    config.rng_seed = seed;
    config.threads = threads;

    const std::vector<SweepRow> rows = noise_sweep(d, grid, trials, config);
    const std::string csv = sweep_csv(rows);
    if (out_csv.empty()) {
        std::cout << csv;
    } else {
        write_text_file(out_csv, csv);
    }

    const double onebit = one_bit_bound(make_truncated_xor_game(d), threads).value.get_d();
    const ViolationThreshold t = extract_threshold(rows, onebit);
    if (t.any_violating) {
        std::cout << "min_violating_fidelity " << format_significant(t.min_violating_fidelity, 12)
                  << " (sqrt " << format_significant(std::sqrt(t.min_violating_fidelity), 12)
                  << ")\n";
    }
    if (t.any_nonviolating) {
        std::cout << "max_nonviolating_fidelity "
                  << format_significant(t.max_nonviolating_fidelity, 12) << " (sqrt "
                  << format_significant(std::sqrt(t.max_nonviolating_fidelity), 12) << ")\n";
    }
    return kExitOk;
}

int cmd_report(const std::string& model_path, const std::string& in_path, bool as_json) {
    const BellFunctional b = load_functional(in_path);
    const QuantumModel model = model_from_json(read_json_file(model_path));
    const StructureReport report = structure_report(model, b);
    if (as_json) {
        std::cout << to_json(report).dump(2) << "\n";
    } else {
        std::cout << "score " << format_significant(report.score, 12) << "\n"
                  << "mub_deviation " << format_significant(report.mub_deviation, 12) << "\n"
                  << "neighbor_overlap_spread "
                  << format_significant(report.neighbor_overlap_spread, 12) << "\n"
                  << "w " << format_significant(report.fit.w, 12) << "\n"
                  << "residual_l2 " << format_significant(report.fit.residual_l2, 12) << "\n"
                  << "ns_violation " << format_significant(report.ns_violation, 12) << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact classical, one-bit, and no-signaling bounds of Bell functionals, "
                 "with measurement optimization on entangled qudits"};
    app.require_subcommand(1);

    // game
    auto* game = app.add_subcommand("game", "Generate a truncated XOR-d game functional");
    int game_d = 5;
    std::string game_out;
    game->add_option("--d", game_d, "Game dimension (>= 2)")->required();
    game->add_option("--out", game_out, "Output JSON path (stdout if omitted)");

    // bounds
    auto* bounds = app.add_subcommand("bounds", "Exact polytope bounds of a functional");
    std::string bounds_in;
    bool bounds_local = false, bounds_onebit = false, bounds_ns = false, bounds_json = false;
    int bounds_threads = 0;
    bounds->add_option("--in", bounds_in, "Functional JSON path")->required();
    bounds->add_flag("--local", bounds_local, "Local bound");
    bounds->add_flag("--onebit", bounds_onebit, "One-bit communication bound");
    bounds->add_flag("--ns", bounds_ns, "No-signaling bound");
    bounds->add_flag("--json", bounds_json, "Machine-readable output");
    bounds->add_option("--threads", bounds_threads, "Worker threads (0 = all cores)");

    // verify
    auto* verify = app.add_subcommand("verify", "Cross-check the one-bit bound by brute force");
    std::string verify_in;
    bool verify_force = false;
    verify->add_option("--in", verify_in, "Functional JSON path")->required();
    verify->add_flag("--force", verify_force, "Run even above the capacity gate");

    // seesaw
    auto* seesaw = app.add_subcommand("seesaw", "Optimize measurements on the maximally entangled state");
    std::string seesaw_in, seesaw_out_model;
    int seesaw_restarts = 50, seesaw_sweeps = 500, seesaw_threads = 0;
    std::uint64_t seesaw_seed = 1;
    bool seesaw_require = false, seesaw_json = false;
    seesaw->add_option("--in", seesaw_in, "Functional JSON path")->required();
    seesaw->add_option("--restarts", seesaw_restarts, "Random restarts");
    seesaw->add_option("--sweeps", seesaw_sweeps, "Max sweeps per restart");
    seesaw->add_option("--seed", seesaw_seed, "Random seed");
    seesaw->add_option("--out-model", seesaw_out_model, "Write the best model JSON here");
    seesaw->add_flag("--require-violation", seesaw_require,
                     "Exit 1 unless the score beats the one-bit bound");
    seesaw->add_flag("--json", seesaw_json, "Machine-readable output");
    seesaw->add_option("--threads", seesaw_threads, "Worker threads (0 = all cores)");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Noise-robustness sweep over perturbed states");
    int sweep_d = 5, sweep_count = 12, sweep_trials = 10, sweep_restarts = 10, sweep_threads = 0;
    double sweep_min = 1e-5, sweep_max = 5e-2;
    bool sweep_zero = false;
    std::uint64_t sweep_seed = 1;
    std::string sweep_out;
    sweep->add_option("--d", sweep_d, "Game dimension");
    sweep->add_option("--sigma-min", sweep_min, "Smallest noise width");
    sweep->add_option("--sigma-max", sweep_max, "Largest noise width");
    sweep->add_option("--sigma-count", sweep_count, "Grid size (log-spaced)");
    sweep->add_flag("--include-zero", sweep_zero, "Prepend noiseless control rows");
    sweep->add_option("--trials", sweep_trials, "Trials per sigma");
    sweep->add_option("--restarts", sweep_restarts, "Seesaw restarts per trial");
    sweep->add_option("--seed", sweep_seed, "Random seed");
    sweep->add_option("--out", sweep_out, "CSV output path (stdout if omitted)");
    sweep->add_option("--threads", sweep_threads, "Worker threads (0 = all cores)");

    // report
    auto* report = app.add_subcommand("report", "Structural checks of an optimized model");
    std::string report_model, report_in;
    bool report_json = false;
    report->add_option("--model", report_model, "Model JSON path")->required();
    report->add_option("--in", report_in, "Functional JSON path")->required();
    report->add_flag("--json", report_json, "Machine-readable output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitError;
    }

    try {
        if (game->parsed()) return cmd_game(game_d, game_out);
        if (bounds->parsed()) {
            return cmd_bounds(bounds_in, bounds_local, bounds_onebit, bounds_ns, bounds_json,
                              bounds_threads);
        }
        if (verify->parsed()) return cmd_verify(verify_in, verify_force);
        if (seesaw->parsed()) {
            return cmd_seesaw(seesaw_in, seesaw_restarts, seesaw_sweeps, seesaw_seed,
                              seesaw_out_model, seesaw_require, seesaw_json, seesaw_threads);
        }
        if (sweep->parsed()) {
            return cmd_sweep(sweep_d, sweep_min, sweep_max, sweep_count, sweep_zero, sweep_trials,
                             sweep_restarts, sweep_seed, sweep_out, sweep_threads);
        }
        if (report->parsed()) return cmd_report(report_model, report_in, report_json);
        std::cerr << "error: no subcommand\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
}
