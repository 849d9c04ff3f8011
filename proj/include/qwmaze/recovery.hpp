// recovery.hpp — path-recovery strategies over the oracle query surface.
//
// Strategies learn the maze only through measure() outcomes and neighbors()
// queries; reveal_path() is reserved for tests. Each strategy is a
// deterministic function of (maze, config, rng stream).
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qwmaze/maze.hpp"
#include "qwmaze/rng.hpp"
#include "qwmaze/walk.hpp"

namespace qwmaze {

enum class Strategy { superposed, successive, unknown_start, classical };

struct RecoveryConfig {
    Strategy strategy = Strategy::successive;
    int max_rounds_per_stage = 50;
    int trials = 1;
    std::uint64_t master_seed = 0;
    std::optional<long long> step_override;  // even; replaces the optimal count
};

struct MeasurementRecord {
    int round = 0;
    Measurement outcome;
};

struct RecoveryResult {
    std::vector<std::string> path;  // START ... END external names
    bool success = false;
    long long total_unitary_applications = 0;
    long long total_oracle_queries = 0;
    std::vector<int> rounds_per_connection;
    std::vector<MeasurementRecord> measurement_log;
};

void to_json(nlohmann::json& j, const MeasurementRecord& r);
void to_json(nlohmann::json& j, const RecoveryResult& r);

// The walk is restarted every round: prepare the strategy's state, run the
// optimal even number of steps, measure, classify the outcome with one
// neighbors() query.
RecoveryResult recover_superposed(const Maze& maze, const RecoveryConfig& config, Rng& rng);
RecoveryResult recover_successive(const Maze& maze, const RecoveryConfig& config, Rng& rng);
RecoveryResult recover_unknown_start(const Maze& maze, const RecoveryConfig& config, Rng& rng);

// Classical probe baseline: per star, test candidate spokes in a uniformly
// random order until the degree-2 connection (or the END flag) shows up.
// total_oracle_queries counts exactly those candidate probes.
RecoveryResult classical_baseline(const Maze& maze, const RecoveryConfig& config, Rng& rng);

RecoveryResult run_recovery(const Maze& maze, const RecoveryConfig& config, Rng& rng);

// config.trials independent runs on per-trial rng streams
// Rng::stream(master_seed, trial). Parallelized across trials; QWALK_THREADS
// caps the worker count. Results are indexed by trial, independent of the
// thread schedule.
std::vector<RecoveryResult> run_trials(const Maze& maze, const RecoveryConfig& config);

struct TrialSummary {
    double success_rate = 0.0;
    double mean_rounds = 0.0;   // total measurement rounds per trial
    double mean_unitary = 0.0;  // unitary applications per trial
    double mean_queries = 0.0;  // oracle queries per trial
};
TrialSummary summarize(const std::vector<RecoveryResult>& results);

}  // namespace qwmaze
