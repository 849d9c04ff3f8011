// cli.cpp — maze generation, probability curves, recoveries, verify suites.
#include "qwmaze/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qwmaze/analytic.hpp"
#include "qwmaze/maze.hpp"
#include "qwmaze/recovery.hpp"
#include "qwmaze/verify.hpp"
#include "qwmaze/walk.hpp"

namespace qwmaze {

namespace {

void write_atomically(const std::string& path, const std::string& contents) {
    const std::filesystem::path target(path);
    const std::filesystem::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
        out << contents;
        if (!out.flush()) throw std::runtime_error("write failed for '" + tmp.string() + "'");
    }
    std::filesystem::rename(tmp, target);
}

Maze load_maze(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read maze file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return Maze::from_json(buffer.str());
}

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

// --- generate --------------------------------------------------------------

struct GenerateOptions {
    std::string topology;
    int stars = 0;
    int spokes = 0;
    std::uint64_t seed = 0;
    std::string out;
    bool reveal = false;
};

int cmd_generate(const GenerateOptions& opt) {
    const Topology topo = opt.topology == "ring" ? Topology::ring : Topology::chain;
    const Maze maze = Maze::build(topo, opt.stars, opt.spokes, opt.seed);
    write_atomically(opt.out, maze.to_json());
    std::cout << "maze " << opt.topology << " M=" << opt.stars << " N=" << opt.spokes
              << " seed=" << opt.seed << ": " << maze.state_count()
              << " directed edge states -> " << opt.out << "\n";
    if (opt.reveal) {
        std::cout << "path:";
        for (const std::string& v : maze.reveal_path()) std::cout << " " << v;
        std::cout << "\n";
    }
    return 0;
}

// --- curve -----------------------------------------------------------------

struct CurveOptions {
    std::string maze_path;
    std::string init;
    int target = 0;
    long long max_steps = 0;
    std::string out;
};

struct CurveInit {
    enum class Kind { start, connection, superposed, two_star } kind;
    int index = 0;
};

CurveInit parse_init(const std::string& text) {
    if (text == "start") return {CurveInit::Kind::start, 0};
    if (text == "superposed") return {CurveInit::Kind::superposed, 0};
    const auto colon = text.find(':');
    if (colon != std::string::npos) {
        const std::string head = text.substr(0, colon);
        const int index = std::stoi(text.substr(colon + 1));
        if (head == "connection") return {CurveInit::Kind::connection, index};
        if (head == "two-star") return {CurveInit::Kind::two_star, index};
    }
    throw std::invalid_argument(
        "bad --init '" + text + "' (expected start|connection:K|superposed|two-star:J)");
}

// Mirror-ring components of the two-star state for the spectral prediction.
std::vector<RingStateTerm> two_star_mirror_terms(const Maze& maze, int j) {
    const int M = maze.stars();
    const int N = maze.spokes();
    const double w = 1.0 / std::sqrt(2.0 * N);
    std::vector<RingStateTerm> terms;
    terms.reserve(4 * N);
    const auto push_pair = [&](int star, double coeff) {
        const int mirror_star = 2 * M + 1 - star;
        for (int s = 0; s < N; ++s) {
            const int ms = s == 0 ? 1 : (s == 1 ? 0 : s);
            terms.push_back({star, s, coeff});
            terms.push_back({mirror_star, ms, -coeff});
        }
    };
    push_pair(j + 1, w);
    push_pair(j, -w);
    return terms;
}

int cmd_curve(const CurveOptions& opt) {
    const Maze maze = load_maze(opt.maze_path);
    const int M = maze.stars();
    const int N = maze.spokes();
    const CurveInit init = parse_init(opt.init);
    if (opt.target < maze.junction_min() || opt.target > maze.junction_max()) {
        throw std::invalid_argument("--target junction out of range");
    }
    if (opt.max_steps < 0) throw std::invalid_argument("--max-steps must be >= 0");
    const bool chain = maze.topology() == Topology::chain;
    if (!chain && init.kind != CurveInit::Kind::connection) {
        throw std::invalid_argument("only connection starts are defined on a ring maze");
    }

    // Launch state and the closed-form ingredients it needs.
    Prescription prescription = Prescription::localized_start();
    int start_junction = 0;
    switch (init.kind) {
        case CurveInit::Kind::start:
            prescription = Prescription::localized_start();
            start_junction = 0;
            break;
        case CurveInit::Kind::connection:
            prescription = Prescription::localized_connection(init.index);
            start_junction = init.index;
            break;
        case CurveInit::Kind::superposed:
            prescription = Prescription::superposed();
            break;
        case CurveInit::Kind::two_star:
            prescription = Prescription::two_star(init.index);
            break;
    }

    const RingSpectrum spectrum(chain ? 2 * M : M, N);
    const GroverModel grover(N);
    std::vector<RingStateTerm> spectral_init;
    if (init.kind == CurveInit::Kind::two_star) {
        spectral_init = two_star_mirror_terms(maze, init.index);
    }
    const int offset = opt.target - start_junction;

    WalkState state = prepare(maze, prescription);
    std::ostringstream csv;
    csv << "# " << (chain ? "chain" : "ring") << " M=" << M << " N=" << N
        << " seed=" << maze.seed() << "; init=" << opt.init << "; target=" << opt.target
        << "; success probability per even step\n";
    csv << "steps,p_simulated,p_exact,p_bessel,e_plus,e_minus\n";

    for (long long steps = 0; steps <= opt.max_steps; steps += 2) {
        if (steps > 0) evolve(maze, state, 2);
        const double p_sim = connection_probability(maze, state, opt.target);

        AmplitudePair exact;
        double p_exact = 0.0;
        double p_bessel = 0.0;
        const double n_real = steps / 2.0;
        switch (init.kind) {
            case CurveInit::Kind::start:
            case CurveInit::Kind::connection:
                if (chain) {
                    exact = chain_amplitude(spectrum, start_junction, offset, steps);
                    p_exact = chain_psuc(spectrum, M, start_junction, offset, steps);
                    p_bessel = chain_psuc_approx(M, N, start_junction, offset, n_real);
                } else {
                    const int b = ((offset % M) + M) % M;
                    exact = spectrum.amplitude(b, steps);
                    p_exact = exact.probability();
                    const int folded = std::min(b, M - b);
                    const double a = ring_amplitude_approx(folded, n_real, maze.transmission());
                    p_bessel = 2.0 * a * a;
                }
                break;
            case CurveInit::Kind::superposed: {
                // In the invariant plane the target weight is exact:
                // sin^2((2n+1) theta / 2) split uniformly over the path, with
                // half weight on the two terminals.
                const double beta = std::sin((steps + 1.0) * grover.theta() / 2.0);
                const double share = maze.is_terminal_junction(opt.target) ? 0.5 / M : 1.0 / M;
                p_exact = beta * beta * share;
                const double ideal = std::sin(n_real * grover.theta());
                p_bessel = ideal * ideal * share;
                const double sign = (opt.target % 2 == 0) ? -1.0 : 1.0;
                const double amp = sign * beta / std::sqrt(2.0 * M);
                exact.e_plus = maze.is_terminal_junction(opt.target) && opt.target == 0 ? 0.0 : amp;
                exact.e_minus = maze.is_terminal_junction(opt.target) && opt.target == M ? 0.0 : amp;
                break;
            }
            case CurveInit::Kind::two_star: {
                // No closed form for pair launches; the exact column comes
                // from the Bloch-mode expansion on the mirror ring and the
                // approximation column repeats it.
                const int tgt = opt.target;
                double lower = 0.0, upper = 0.0;
                if (tgt >= 1) {
                    lower = ring_state_amplitude(spectrum, spectral_init, tgt, 1, steps);
                }
                if (tgt < M || tgt == 0) {
                    const int upper_star = tgt == 0 ? 1 : tgt + 1;
                    const int upper_slot = 0;
                    upper = ring_state_amplitude(spectrum, spectral_init, upper_star, upper_slot, steps);
                }
                exact.e_plus = tgt >= 1 ? -lower : 0.0;
                exact.e_minus = (tgt < M || tgt == 0) ? upper : 0.0;
                if (tgt == M) exact.e_minus = 0.0;
                p_exact = exact.probability();
                p_bessel = p_exact;
                break;
            }
        }
        csv << steps << "," << fmt17(p_sim) << "," << fmt17(p_exact) << "," << fmt17(p_bessel)
            << "," << fmt17(exact.e_plus) << "," << fmt17(exact.e_minus) << "\n";
    }
    write_atomically(opt.out, csv.str());
    std::cout << "wrote " << (opt.max_steps / 2 + 1) << " rows -> " << opt.out << "\n";
    return 0;
}

// --- recover ---------------------------------------------------------------

struct RecoverOptions {
    std::string maze_path;
    std::string strategy;
    int trials = 1;
    std::uint64_t seed = 0;
    std::string out;
    int max_rounds = 50;
    long long steps = -1;
};

Strategy parse_strategy(const std::string& text) {
    if (text == "superposed") return Strategy::superposed;
    if (text == "successive") return Strategy::successive;
    if (text == "unknown-start") return Strategy::unknown_start;
    if (text == "classical") return Strategy::classical;
    throw std::invalid_argument("bad --strategy '" + text + "'");
}

int cmd_recover(const RecoverOptions& opt) {
    const Maze maze = load_maze(opt.maze_path);
    if (maze.topology() != Topology::chain) {
        throw std::invalid_argument("recovery strategies require a chain maze");
    }
    RecoveryConfig config;
    config.strategy = parse_strategy(opt.strategy);
    config.trials = opt.trials;
    config.master_seed = opt.seed;
    config.max_rounds_per_stage = opt.max_rounds;
    if (opt.steps >= 0) config.step_override = opt.steps;

    const std::vector<RecoveryResult> results = run_trials(maze, config);
    const TrialSummary summary = summarize(results);

    nlohmann::json doc;
    doc["strategy"] = opt.strategy;
    doc["maze"] = {{"M", maze.stars()}, {"N", maze.spokes()}, {"seed", maze.seed()}};
    doc["trials"] = opt.trials;
    doc["master_seed"] = opt.seed;
    doc["aggregate"] = {{"success_rate", summary.success_rate},
                        {"mean_rounds", summary.mean_rounds},
                        {"mean_unitary_applications", summary.mean_unitary},
                        {"mean_oracle_queries", summary.mean_queries}};
    doc["results"] = results;
    write_atomically(opt.out, doc.dump(2) + "\n");

    std::cout << "strategy      " << opt.strategy << "\n"
              << "trials        " << opt.trials << "\n"
              << "success rate  " << summary.success_rate << "\n"
              << "mean rounds   " << summary.mean_rounds << "\n"
              << "mean unitary  " << summary.mean_unitary << "\n"
              << "mean queries  " << summary.mean_queries << "\n"
              << "-> " << opt.out << "\n";
    return 0;
}

// --- verify ----------------------------------------------------------------

int cmd_verify(const std::string& suite, const std::string& out_path) {
    const std::vector<SuiteResult> report = run_suite(suite);
    nlohmann::json doc = nlohmann::json::array();
    bool all_pass = true;
    for (const SuiteResult& r : report) {
        doc.push_back({{"suite", r.suite},
                       {"cases", r.cases},
                       {"max_residual", r.max_residual},
                       {"bound", r.bound},
                       {"pass", r.pass}});
        all_pass = all_pass && r.pass;
        std::cout << (r.pass ? "PASS" : "FAIL") << "  " << r.suite << "  cases=" << r.cases
                  << "  max_residual=" << fmt17(r.max_residual) << "  bound=" << fmt17(r.bound)
                  << "\n";
    }
    if (!out_path.empty()) write_atomically(out_path, doc.dump(2) + "\n");
    return all_pass ? 0 : 2;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"scattering-walk maze toolkit: exact simulation, closed-form curves, "
                 "path recovery"};
    app.require_subcommand(1);

    GenerateOptions gen;
    CLI::App* generate = app.add_subcommand("generate", "write a maze JSON file");
    generate->add_option("--topology", gen.topology, "chain or ring")
        ->required()
        ->check(CLI::IsMember({"chain", "ring"}));
    generate->add_option("--stars", gen.stars, "number of stars M")->required();
    generate->add_option("--spokes", gen.spokes, "spokes per star N")->required();
    generate->add_option("--seed", gen.seed, "label-permutation seed")->required();
    generate->add_option("--out", gen.out, "output path")->required();
    generate->add_flag("--reveal", gen.reveal, "print the hidden path (privileged)");

    CurveOptions curve;
    CLI::App* curve_cmd = app.add_subcommand("curve", "emit a success-probability CSV");
    curve_cmd->add_option("--maze", curve.maze_path, "maze JSON path")->required();
    curve_cmd->add_option("--init", curve.init, "start|connection:K|superposed|two-star:J")
        ->required();
    curve_cmd->add_option("--target", curve.target, "target junction index")->required();
    curve_cmd->add_option("--max-steps", curve.max_steps, "largest even step count")->required();
    curve_cmd->add_option("--out", curve.out, "output CSV path")->required();

    RecoverOptions rec;
    CLI::App* recover = app.add_subcommand("recover", "run recovery trials");
    recover->add_option("--maze", rec.maze_path, "maze JSON path")->required();
    recover->add_option("--strategy", rec.strategy,
                        "superposed|successive|unknown-start|classical")
        ->required();
    recover->add_option("--trials", rec.trials, "number of independent trials")->required();
    recover->add_option("--seed", rec.seed, "master seed for trial streams")->required();
    recover->add_option("--out", rec.out, "output JSON path")->required();
    recover->add_option("--max-rounds", rec.max_rounds, "round budget per stage (default 50)");
    recover->add_option("--steps", rec.steps, "even step-count override");

    std::string suite;
    std::string verify_out;
    CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("--suite", suite,
                       "unitarity|subspace|ring-exact|mirror|bounds|bessel|eigenvectors|all")
        ->required();
    verify->add_option("--out", verify_out, "optional report JSON path");

    try {
        app.parse(argc, argv);
        if (generate->parsed()) return cmd_generate(gen);
        if (curve_cmd->parsed()) return cmd_curve(curve);
        if (recover->parsed()) return cmd_recover(rec);
        if (verify->parsed()) return cmd_verify(suite, verify_out);
        return 1;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace qwmaze
