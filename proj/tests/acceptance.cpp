// acceptance.cpp — end-to-end acceptance runner. Each criterion prints one
// PASS/FAIL line with its measured quantity; the process exits nonzero if
// any criterion fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "qwmaze/analytic.hpp"
#include "qwmaze/cli.hpp"
#include "qwmaze/maze.hpp"
#include "qwmaze/recovery.hpp"
#include "qwmaze/verify.hpp"
#include "qwmaze/walk.hpp"

using namespace qwmaze;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

int g_failures = 0;

void run_criterion(int number, const std::string& name, double time_limit_s,
                   const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
        out = body();
    } catch (const std::exception& e) {
        out.pass = false;
        out.detail = std::string("exception: ") + e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = elapsed < time_limit_s;
    const bool pass = out.pass && in_time;
    if (!pass) ++g_failures;
    std::printf("[%2d] %s  %-34s %s  (%.1fs / limit %.0fs)\n", number, pass ? "PASS" : "FAIL",
                name.c_str(), out.detail.c_str(), elapsed, time_limit_s);
    std::fflush(stdout);
}

int cli(const std::vector<std::string>& args) {
    std::vector<const char*> argv{"qwmaze"};
    for (const std::string& a : args) argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data());
}

std::vector<std::vector<double>> read_csv_rows(const fs::path& p) {
    std::vector<std::vector<double>> rows;
    std::ifstream in(p);
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            header_seen = true;
            continue;
        }
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        rows.push_back(row);
    }
    return rows;
}

char fmtbuf[256];

// --- criterion bodies -------------------------------------------------------

Outcome unitarity_and_subspace() {
    const SuiteResult u = verify_unitarity();
    const SuiteResult s = verify_subspace();
    std::snprintf(fmtbuf, sizeof(fmtbuf), "max residual %.2e (bound 1e-12)",
                  std::max(u.max_residual, s.max_residual));
    return {u.pass && s.pass, fmtbuf};
}

Outcome grover_reduction() {
    const int M = 5, N = 100;
    const Maze maze = Maze::build(Topology::chain, M, N, 1);
    const GroverModel model(N);
    WalkState state = prepare(maze, Prescription::superposed());
    const long long sweep = static_cast<long long>(2.0 * model.optimal_steps());
    double worst = 0.0;
    for (long long steps = 0; steps <= sweep; steps += 2) {
        if (steps > 0) evolve(maze, state, 2);
        worst = std::max(worst, std::abs(path_probability(maze, state) - model.psuc(steps, true)));
    }
    const long long opt = optimal_steps_superposed(N);
    const double p_opt = model.psuc(opt, true);
    const double floor = 1.0 - 8.0 / N - 2.0 * std::sqrt(2.0 / N);
    std::snprintf(fmtbuf, sizeof(fmtbuf), "max |sim-law| %.2e, p(%lld)=%.4f >= %.4f", worst, opt,
                  p_opt, floor);
    return {worst <= 1e-10 && p_opt >= floor, fmtbuf};
}

Outcome ring_exactness() {
    double worst = 0.0;
    long long cases = 0;
    for (const auto& [M, N] : std::vector<std::pair<int, int>>{{5, 20}, {11, 450}}) {
        const Maze maze = Maze::build(Topology::ring, M, N, 1);
        const RingSpectrum spectrum(M, N);
        WalkState state = prepare(maze, Prescription::localized_connection(1));
        for (long long steps = 0; steps <= 100; steps += 2) {
            if (steps > 0) evolve(maze, state, 2);
            for (int b = 0; b < M; ++b) {
                const AmplitudePair sim = success_amplitudes(maze, state, b % M + 1);
                const AmplitudePair formula = spectrum.amplitude(b, steps);
                worst = std::max({worst, std::abs(sim.e_plus - formula.e_plus),
                                  std::abs(sim.e_minus - formula.e_minus)});
                cases += 2;
            }
        }
    }
    std::snprintf(fmtbuf, sizeof(fmtbuf), "%lld amplitudes, max diff %.2e (bound 1e-9)", cases,
                  worst);
    return {worst <= 1e-9, fmtbuf};
}

Outcome mirror_construction() {
    const SuiteResult r = verify_mirror();
    std::snprintf(fmtbuf, sizeof(fmtbuf), "%lld amplitudes, max diff %.2e (bound 1e-10)", r.cases,
                  r.max_residual);
    return {r.pass, fmtbuf};
}

Outcome curve_families() {
    const fs::path dir = fs::temp_directory_path() / "qwmaze_acceptance";
    fs::create_directories(dir);
    const std::string maze = (dir / "m11.json").string();
    if (cli({"generate", "--topology", "chain", "--stars", "11", "--spokes", "450", "--seed", "3",
             "--out", maze}) != 0) {
        return {false, "maze generation failed"};
    }
    const std::vector<std::pair<std::string, std::string>> families{
        {"start", "1"}, {"connection:1", "2"}, {"connection:5", "6"}};
    double worst_exact = 0.0, worst_bessel = 0.0, p48 = -1.0;
    for (const auto& [init, target] : families) {
        const std::string out = (dir / ("curve_" + target + ".csv")).string();
        if (cli({"curve", "--maze", maze, "--init", init, "--target", target, "--max-steps",
                 "100", "--out", out}) != 0) {
            return {false, "curve command failed for " + init};
        }
        for (const auto& row : read_csv_rows(out)) {
            worst_exact = std::max(worst_exact, std::abs(row[1] - row[2]));
            if (row[0] <= 60.0) worst_bessel = std::max(worst_bessel, std::abs(row[3] - row[2]));
            if (init == "connection:5" && row[0] == 48.0) p48 = row[1];
        }
    }
    std::snprintf(fmtbuf, sizeof(fmtbuf),
                  "|sim-exact| %.2e, |bessel-exact| %.4f, middle p(48)=%.4f", worst_exact,
                  worst_bessel, p48);
    return {worst_exact <= 1e-9 && worst_bessel <= 0.02 && std::abs(p48 - 0.25) <= 0.05, fmtbuf};
}

Outcome step_bounds() {
    const SuiteResult r = verify_bounds();
    std::snprintf(fmtbuf, sizeof(fmtbuf), "%lld samples, worst delta/bound %.4f", r.cases,
                  r.max_residual);
    return {r.pass, fmtbuf};
}

Outcome coupon_collector() {
    const int M = 20, N = 100;
    const Maze maze = Maze::build(Topology::chain, M, N, 7);
    RecoveryConfig config;
    config.strategy = Strategy::superposed;
    config.trials = 1000;
    config.master_seed = 11;
    const auto results = run_trials(maze, config);
    double mean = 0.0;
    bool all_ok = true;
    for (const RecoveryResult& r : results) {
        all_ok = all_ok && r.success;
        mean += std::accumulate(r.rounds_per_connection.begin(), r.rounds_per_connection.end(),
                                0.0);
    }
    mean /= results.size();
    const double bound = M * std::log(M) + 3.0 * M;
    const double oracle = testutil::coupon_collector_mean(M, 40000, 13);
    const double rel = std::abs(mean - oracle) / oracle;
    std::snprintf(fmtbuf, sizeof(fmtbuf), "mean %.1f <= %.1f, oracle %.1f (rel dev %.1f%%)", mean,
                  bound, oracle, 100.0 * rel);
    return {all_ok && mean <= bound && rel <= 0.15, fmtbuf};
}

Outcome successive_recovery() {
    // (a) Full scale: success rate and mid-chain stage rounds.
    const Maze maze = Maze::build(Topology::chain, 11, 450, 3);
    RecoveryConfig config;
    config.strategy = Strategy::successive;
    config.trials = 500;
    config.master_seed = 17;
    const auto results = run_trials(maze, config);
    const TrialSummary summary = summarize(results);
    double mid_rounds = 0.0;
    long long mid_count = 0;
    for (const RecoveryResult& r : results) {
        if (!r.success) continue;
        for (int k = 1; k <= 9; ++k) {
            mid_rounds += r.rounds_per_connection[k];
            ++mid_count;
        }
    }
    mid_rounds /= mid_count;

    // (b) Linear scaling of total work in the star count.
    std::vector<double> ms, unitary_m;
    for (int M : {4, 8, 16}) {
        const Maze mm = Maze::build(Topology::chain, M, 450, 100 + M);
        RecoveryConfig c = config;
        c.trials = 250;
        c.master_seed = 19;
        unitary_m.push_back(summarize(run_trials(mm, c)).mean_unitary);
        ms.push_back(M);
    }
    const testutil::LinearFit in_m = testutil::fit_line(ms, unitary_m);

    // (c) Square-root scaling in the spoke count at fixed M.
    std::vector<double> log_n, log_unitary;
    for (int N : {112, 450, 1800}) {
        const Maze mn = Maze::build(Topology::chain, 8, N, 200 + N);
        RecoveryConfig c = config;
        c.trials = 200;
        c.master_seed = 23;
        log_n.push_back(std::log(N));
        log_unitary.push_back(std::log(summarize(run_trials(mn, c)).mean_unitary));
    }
    const testutil::LinearFit in_n = testutil::fit_line(log_n, log_unitary);

    std::snprintf(fmtbuf, sizeof(fmtbuf),
                  "success %.3f, mid rounds %.2f, R2(M) %.4f, exponent(N) %.3f",
                  summary.success_rate, mid_rounds, in_m.r_squared, in_n.slope);
    const bool pass = summary.success_rate >= 0.99 && mid_rounds >= 3.0 && mid_rounds <= 5.0 &&
                      in_m.r_squared >= 0.98 && std::abs(in_n.slope - 0.5) <= 0.1;
    return {pass, fmtbuf};
}

// Outcome frequencies of single rounds of the unknown-start machinery.
struct PairRoundStats {
    double start_freq = 0.0;
    double next_conn_freq = 0.0;
    double terminal_freq = 0.0;
};

PairRoundStats pair_round_stats(int N, int rounds, std::uint64_t seed) {
    const int M = 11;
    const Maze maze = Maze::build(Topology::chain, M, N, 31);
    Rng rng(seed);
    PairRoundStats stats;
    const long long pair_steps = optimal_steps_superposed(N);
    for (int i = 0; i < rounds; ++i) {
        WalkState state = prepare(maze, Prescription::two_star(1));
        evolve(maze, state, pair_steps);
        const Measurement m = measure(maze, state, rng);
        const DirectedEdge e = maze.index_edge(m.state_index);
        const Vertex ext = e.tail.kind == Vertex::Kind::center ? e.head : e.tail;
        if (ext.kind == Vertex::Kind::junction && ext.index == 0) stats.start_freq += 1.0;
        if (ext.kind == Vertex::Kind::junction && ext.index == 2) stats.next_conn_freq += 1.0;
    }
    const long long probe_steps = optimal_steps_localized(N);
    for (int i = 0; i < rounds; ++i) {
        WalkState state = prepare(maze, Prescription::localized_connection(M - 1));
        evolve(maze, state, probe_steps);
        const Measurement m = measure(maze, state, rng);
        const DirectedEdge e = maze.index_edge(m.state_index);
        const Vertex ext = e.tail.kind == Vertex::Kind::center ? e.head : e.tail;
        if (ext.kind == Vertex::Kind::junction && ext.index == M) stats.terminal_freq += 1.0;
    }
    stats.start_freq /= rounds;
    stats.next_conn_freq /= rounds;
    stats.terminal_freq /= rounds;
    return stats;
}

Outcome unknown_start_probabilities() {
    const int rounds = 2000;
    const PairRoundStats base = pair_round_stats(450, rounds, 41);
    bool pass = std::abs(base.start_freq - 0.25) <= 0.05 &&
                std::abs(base.next_conn_freq - 0.125) <= 0.05 &&
                std::abs(base.terminal_freq - 0.5) <= 0.07;
    double max_shift = 0.0;
    for (int N : {200, 800}) {
        const PairRoundStats other = pair_round_stats(N, rounds, 43 + N);
        max_shift = std::max({max_shift, std::abs(other.start_freq - base.start_freq),
                              std::abs(other.next_conn_freq - base.next_conn_freq),
                              std::abs(other.terminal_freq - base.terminal_freq)});
    }
    pass = pass && max_shift <= 0.03;
    std::snprintf(fmtbuf, sizeof(fmtbuf),
                  "start %.3f, next %.3f, terminal %.3f, N-shift %.3f", base.start_freq,
                  base.next_conn_freq, base.terminal_freq, max_shift);
    return {pass, fmtbuf};
}

Outcome classical_counts() {
    const Maze maze = Maze::build(Topology::chain, 10, 100, 5);
    RecoveryConfig config;
    config.strategy = Strategy::classical;
    config.trials = 2000;
    config.master_seed = 29;
    const TrialSummary summary = summarize(run_trials(maze, config));
    std::snprintf(fmtbuf, sizeof(fmtbuf), "mean queries %.1f (want 500 +- 25), success %.3f",
                  summary.mean_queries, summary.success_rate);
    return {std::abs(summary.mean_queries - 500.0) <= 25.0 && summary.success_rate == 1.0,
            fmtbuf};
}

Outcome performance_floor() {
    const Maze maze = Maze::build(Topology::chain, 50, 1000, 1);
    WalkState state = prepare(maze, Prescription::superposed());
    const auto t0 = std::chrono::steady_clock::now();
    evolve(maze, state, 10000);
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    const double per_step = ms / 10000.0;
    const double drift = std::abs(state.norm() - 1.0);
    std::snprintf(fmtbuf, sizeof(fmtbuf), "%.4f ms/step over 1e4 steps, norm drift %.1e",
                  per_step, drift);
    return {per_step <= 1.0 && drift < 1e-9, fmtbuf};
}

}  // namespace

int main() {
    std::printf("acceptance suite: scattering-walk maze toolkit\n");
    run_criterion(1, "unitarity & subspace algebra", 10, unitarity_and_subspace);
    run_criterion(2, "invariant-plane reduction", 30, grover_reduction);
    run_criterion(3, "ring exactness", 120, ring_exactness);
    run_criterion(4, "mirror construction", 120, mirror_construction);
    run_criterion(5, "full-scale curve families", 60, curve_families);
    run_criterion(6, "integer-step error bounds", 60, step_bounds);
    run_criterion(7, "coupon-collector repetitions", 300, coupon_collector);
    run_criterion(8, "successive recovery & scaling", 600, successive_recovery);
    run_criterion(9, "unknown-start probabilities", 600, unknown_start_probabilities);
    run_criterion(10, "classical baseline", 10, classical_counts);
    run_criterion(11, "performance floor", 60, performance_floor);
    if (g_failures == 0) {
        std::printf("all 11 acceptance criteria pass\n");
    } else {
        std::printf("%d acceptance criteria FAILED\n", g_failures);
    }
    return g_failures == 0 ? 0 : 1;
}
