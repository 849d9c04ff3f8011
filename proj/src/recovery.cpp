// recovery.cpp — superposed, successive, unknown-start, and classical search.
#include "qwmaze/recovery.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "qwmaze/analytic.hpp"

namespace qwmaze {

void to_json(nlohmann::json& j, const MeasurementRecord& r) {
    j = nlohmann::json{{"round", r.round},
                       {"star", r.outcome.star},
                       {"tail", r.outcome.tail},
                       {"head", r.outcome.head}};
}

void to_json(nlohmann::json& j, const RecoveryResult& r) {
    j = nlohmann::json{{"path", r.path},
                       {"success", r.success},
                       {"total_unitary_applications", r.total_unitary_applications},
                       {"total_oracle_queries", r.total_oracle_queries},
                       {"rounds_per_connection", r.rounds_per_connection},
                       {"measurement_log", r.measurement_log}};
}

namespace {

void require_chain_maze(const Maze& maze) {
    if (maze.topology() != Topology::chain) {
        throw std::invalid_argument("recovery: strategies require a chain maze");
    }
}

long long pick_steps(const RecoveryConfig& config, long long fallback) {
    if (!config.step_override) return fallback;
    const long long s = *config.step_override;
    if (s < 0 || s % 2 != 0) {
        throw std::invalid_argument("recovery: step override must be even and non-negative");
    }
    return s;
}

// What one measured edge tells us after a single oracle query on its
// external endpoint. A junction is recognized by having exactly two
// neighbors; the junction index comes from the adjacent hub names, which are
// public because the star order is known.
struct Classified {
    enum class Kind { junction, start_vertex, end_vertex, dead_end } kind;
    int junction = -1;
    std::string name;  // external vertex name as observed
};

Classified classify(const Maze& maze, const Measurement& m, long long& oracle_queries) {
    const std::string& external = m.outgoing ? m.head : m.tail;
    const NeighborQuery q = maze.neighbors(external);
    ++oracle_queries;
    if (q.is_start) return {Classified::Kind::start_vertex, 0, external};
    if (q.is_end) return {Classified::Kind::end_vertex, maze.stars(), external};
    if (q.degree() == 2) {
        int lo = maze.stars() + 1;
        for (const std::string& n : q.neighbors) {
            lo = std::min(lo, std::stoi(n.substr(1)));
        }
        return {Classified::Kind::junction, lo, external};
    }
    return {Classified::Kind::dead_end, -1, external};
}

// Assemble S -> ... -> E from whatever was identified, stopping at the first
// gap so a failed run reports the recovered prefix.
std::vector<std::string> assemble_path(const Maze& maze, const std::vector<std::string>& names,
                                       bool start_found, bool end_found) {
    std::vector<std::string> path;
    if (!start_found) return path;
    path.push_back("S");
    for (int k = 1; k < maze.stars(); ++k) {
        if (names[k].empty()) return path;
        path.push_back(names[k]);
    }
    if (end_found) path.push_back("E");
    return path;
}

}  // namespace

RecoveryResult recover_superposed(const Maze& maze, const RecoveryConfig& config, Rng& rng) {
    require_chain_maze(maze);
    const int M = maze.stars();
    if (maze.spokes() < 5) {
        throw std::invalid_argument("recovery: superposed strategy needs N >= 5");
    }
    const long long steps = pick_steps(config, optimal_steps_superposed(maze.spokes()));
    const long long budget = static_cast<long long>(config.max_rounds_per_stage) * (M + 1);

    RecoveryResult result;
    std::vector<std::string> names(M + 1);
    std::vector<bool> found(M + 1, false);  // coupon per junction, 0 = START, M = END
    int remaining = M + 1;
    int rounds_since_find = 0;

    for (long long round = 1; round <= budget && remaining > 0; ++round) {
        WalkState state = prepare(maze, Prescription::superposed());
        evolve(maze, state, steps);
        result.total_unitary_applications += steps;
        const Measurement m = measure(maze, state, rng);
        result.measurement_log.push_back({static_cast<int>(round), m});
        ++rounds_since_find;
        const Classified c = classify(maze, m, result.total_oracle_queries);
        if (c.kind == Classified::Kind::dead_end) continue;
        if (!found[c.junction]) {
            found[c.junction] = true;
            names[c.junction] = c.name;
            --remaining;
            result.rounds_per_connection.push_back(rounds_since_find);
            rounds_since_find = 0;
        }
    }
    result.success = remaining == 0;
    result.path = assemble_path(maze, names, found[0], found[M]);
    return result;
}

RecoveryResult recover_successive(const Maze& maze, const RecoveryConfig& config, Rng& rng) {
    require_chain_maze(maze);
    const int M = maze.stars();
    const long long steps = pick_steps(config, optimal_steps_localized(maze.spokes()));

    RecoveryResult result;
    std::vector<std::string> names(M + 1);
    int round_counter = 0;

    // Stage k: launch from the last known junction (START for k = 0) and
    // accept only the junction one star ahead; at the last stage, the END
    // edge itself.
    for (int k = 0; k < M; ++k) {
        bool advanced = false;
        for (int attempt = 1; attempt <= config.max_rounds_per_stage; ++attempt) {
            WalkState state = prepare(maze, k == 0 ? Prescription::localized_start()
                                                   : Prescription::localized_connection(k));
            evolve(maze, state, steps);
            result.total_unitary_applications += steps;
            const Measurement m = measure(maze, state, rng);
            result.measurement_log.push_back({++round_counter, m});
            const Classified c = classify(maze, m, result.total_oracle_queries);
            const bool hit = (c.kind == Classified::Kind::junction && c.junction == k + 1) ||
                             (c.kind == Classified::Kind::end_vertex && k + 1 == M);
            if (hit) {
                names[k + 1] = c.name;
                result.rounds_per_connection.push_back(attempt);
                advanced = true;
                break;
            }
        }
        if (!advanced) break;
    }
    result.success = !names[M].empty();
    result.path = assemble_path(maze, names, true, result.success);
    return result;
}

RecoveryResult recover_unknown_start(const Maze& maze, const RecoveryConfig& config, Rng& rng) {
    require_chain_maze(maze);
    const int M = maze.stars();
    if (M < 2) {
        throw std::invalid_argument("recovery: unknown-start strategy needs M >= 2");
    }
    const long long pair_steps = pick_steps(config, optimal_steps_superposed(maze.spokes()));
    const long long probe_steps = pick_steps(config, optimal_steps_localized(maze.spokes()));

    RecoveryResult result;
    std::vector<std::string> names(M + 1);
    std::vector<bool> found(M + 1, false);
    int round_counter = 0;

    const auto record = [&](const Classified& c) {
        if (c.kind == Classified::Kind::dead_end || found[c.junction]) return;
        found[c.junction] = true;
        names[c.junction] = c.name;
    };

    // Pair stages: the state on stars (j, j+1) localizes on junction j and,
    // with small probability, on the flanking positions; stage 1 must also
    // surface the start vertex before we trust the frontier. A stage whose
    // junction already turned up as a flank observation is skipped and
    // records no rounds.
    for (int j = 1; j < M; ++j) {
        const auto stage_done = [&] { return found[j] && (j != 1 || found[0]); };
        int attempts = 0;
        while (!stage_done() && attempts < config.max_rounds_per_stage) {
            ++attempts;
            WalkState state = prepare(maze, Prescription::two_star(j));
            evolve(maze, state, pair_steps);
            result.total_unitary_applications += pair_steps;
            const Measurement m = measure(maze, state, rng);
            result.measurement_log.push_back({++round_counter, m});
            record(classify(maze, m, result.total_oracle_queries));
        }
        if (attempts > 0) result.rounds_per_connection.push_back(attempts);
        if (!stage_done()) {
            result.path = assemble_path(maze, names, found[0], found[M]);
            return result;
        }
    }

    // Terminal stage: no star pair reaches past the last hub, so probe END
    // from the known junction M-1 with the localized search.
    int attempts = 0;
    while (!found[M] && attempts < config.max_rounds_per_stage) {
        ++attempts;
        WalkState state = prepare(maze, Prescription::localized_connection(M - 1));
        evolve(maze, state, probe_steps);
        result.total_unitary_applications += probe_steps;
        const Measurement m = measure(maze, state, rng);
        result.measurement_log.push_back({++round_counter, m});
        record(classify(maze, m, result.total_oracle_queries));
    }
    if (attempts > 0) result.rounds_per_connection.push_back(attempts);

    result.success = found[M] && found[0];
    result.path = assemble_path(maze, names, found[0], found[M]);
    return result;
}

RecoveryResult classical_baseline(const Maze& maze, const RecoveryConfig& config, Rng& rng) {
    require_chain_maze(maze);
    (void)config;
    const int M = maze.stars();

    RecoveryResult result;
    result.path.push_back("S");
    std::string entry = "S";
    for (int j = 1; j <= M; ++j) {
        const std::string hub = "A" + std::to_string(j);
        std::vector<std::string> candidates;
        for (const std::string& n : maze.neighbors(hub).neighbors) {
            if (n != entry) candidates.push_back(n);
        }
        rng.shuffle(candidates);
        int probes = 0;
        std::string next;
        for (const std::string& cand : candidates) {
            ++probes;
            ++result.total_oracle_queries;
            const NeighborQuery q = maze.neighbors(cand);
            if (q.is_end || q.degree() == 2) {
                next = cand;
                break;
            }
        }
        result.rounds_per_connection.push_back(probes);
        if (next.empty()) break;  // cannot happen on a well-formed chain
        result.path.push_back(next);
        entry = next;
    }
    result.success = static_cast<int>(result.path.size()) == M + 1;
    return result;
}

RecoveryResult run_recovery(const Maze& maze, const RecoveryConfig& config, Rng& rng) {
    switch (config.strategy) {
        case Strategy::superposed:
            return recover_superposed(maze, config, rng);
        case Strategy::successive:
            return recover_successive(maze, config, rng);
        case Strategy::unknown_start:
            return recover_unknown_start(maze, config, rng);
        case Strategy::classical:
            return classical_baseline(maze, config, rng);
    }
    throw std::logic_error("recovery: bad strategy");
}

namespace {

int worker_count(int trials) {
    unsigned n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env = std::getenv("QWALK_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
    }
    return static_cast<int>(std::min<unsigned>(n, static_cast<unsigned>(trials)));
}

}  // namespace

std::vector<RecoveryResult> run_trials(const Maze& maze, const RecoveryConfig& config) {
    if (config.trials < 1) throw std::invalid_argument("recovery: trials must be >= 1");
    std::vector<RecoveryResult> results(config.trials);
    const int workers = worker_count(config.trials);
    if (workers <= 1) {
        for (int i = 0; i < config.trials; ++i) {
            Rng rng = Rng::stream(config.master_seed, static_cast<std::uint64_t>(i));
            results[i] = run_recovery(maze, config, rng);
        }
        return results;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < config.trials; i = next.fetch_add(1)) {
                Rng rng = Rng::stream(config.master_seed, static_cast<std::uint64_t>(i));
                results[i] = run_recovery(maze, config, rng);
            }
        });
    }
    for (std::thread& t : pool) t.join();
    return results;
}

TrialSummary summarize(const std::vector<RecoveryResult>& results) {
    TrialSummary s;
    if (results.empty()) return s;
    for (const RecoveryResult& r : results) {
        s.success_rate += r.success ? 1.0 : 0.0;
        s.mean_rounds += std::accumulate(r.rounds_per_connection.begin(),
                                         r.rounds_per_connection.end(), 0.0);
        s.mean_unitary += static_cast<double>(r.total_unitary_applications);
        s.mean_queries += static_cast<double>(r.total_oracle_queries);
    }
    const double n = static_cast<double>(results.size());
    s.success_rate /= n;
    s.mean_rounds /= n;
    s.mean_unitary /= n;
    s.mean_queries /= n;
    return s;
}

}  // namespace qwmaze
