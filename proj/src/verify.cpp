// verify.cpp — implementation of the cross-check suites.
#include "qwmaze/verify.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qwmaze/analytic.hpp"

namespace qwmaze {

namespace {

constexpr double kPi = std::numbers::pi;

double vec_residual(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

std::vector<double> linear_combination(double ca, const std::vector<double>& a, double cb,
                                       const std::vector<double>& b) {
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = ca * a[i] + cb * b[i];
    return out;
}

}  // namespace

double bessel_j_quadrature(int order, double z) {
    constexpr int panels = 4096;
    const double h = kPi / panels;
    double sum = 0.0;
    for (int i = 0; i <= panels; ++i) {
        const double u = i * h;
        const double w = (i == 0 || i == panels) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        sum += w * std::cos(order * u - z * std::sin(u));
    }
    return sum * h / (3.0 * kPi);
}

WalkState mirror_embed(const Maze& chain, const Maze& ring, const WalkState& state) {
    const int M = chain.stars();
    const int N = chain.spokes();
    if (ring.stars() != 2 * M || ring.spokes() != N || ring.topology() != Topology::ring) {
        throw std::invalid_argument("verify: mirror ring must be a 2M ring with matching spokes");
    }
    WalkState out;
    out.amps.assign(ring.state_count(), 0.0);
    for (int j = 1; j <= M; ++j) {
        const int mirror_star = 2 * M + 1 - j;
        for (int s = 0; s < N; ++s) {
            const int mirror_slot = s == 0 ? 1 : (s == 1 ? 0 : s);
            out.amps[ring.out_state(j, s)] += state.amps[chain.out_state(j, s)];
            out.amps[ring.out_state(mirror_star, mirror_slot)] -= state.amps[chain.out_state(j, s)];
            out.amps[ring.in_state(j, s)] += state.amps[chain.in_state(j, s)];
            out.amps[ring.in_state(mirror_star, mirror_slot)] -= state.amps[chain.in_state(j, s)];
        }
    }
    out.step_count = state.step_count;
    return out;
}

SuiteResult verify_unitarity() {
    SuiteResult res{"unitarity", 0, 0.0, 1e-12, false};
    for (const auto& [M, N] : std::vector<std::pair<int, int>>{{2, 4}, {3, 8}, {5, 16}}) {
        const Maze maze = Maze::build(Topology::chain, M, N, 1);
        const auto cols = materialize_unitary(maze);
        const int dim = maze.state_count();
        for (int i = 0; i < dim; ++i) {
            for (int j = i; j < dim; ++j) {
                double dot = 0.0;
                for (int k = 0; k < dim; ++k) dot += cols[i][k] * cols[j][k];
                const double want = i == j ? 1.0 : 0.0;
                res.max_residual = std::max(res.max_residual, std::abs(dot - want));
                ++res.cases;
            }
        }
    }
    res.pass = res.max_residual <= res.bound;
    return res;
}

SuiteResult verify_subspace() {
    SuiteResult res{"subspace", 0, 0.0, 1e-12, false};
    for (const auto& [M, N] : std::vector<std::pair<int, int>>{{2, 4}, {3, 8}, {5, 16}}) {
        const Maze maze = Maze::build(Topology::chain, M, N, 1);
        const double t = maze.transmission();
        const double r = maze.reflection();
        const double cross = 2.0 * std::sqrt(r * t);
        const auto p1 = prepare(maze, Prescription::psi1());
        const auto p2 = prepare(maze, Prescription::psi2());
        const auto p3 = prepare(maze, Prescription::psi3());
        const auto p4 = prepare(maze, Prescription::psi4());
        const auto step = [&](const WalkState& s) {
            WalkState out = s;
            apply_step(maze, out);
            return out;
        };
        // Single-step closure of the four-state family.
        const double d1 = vec_residual(step(p1).amps, p2.amps);
        const double d2 =
            vec_residual(step(p2).amps, linear_combination(r - t, p1.amps, cross, p3.amps));
        const double d3 = vec_residual(step(p3).amps, linear_combination(-1.0, p4.amps, 0.0, p4.amps));
        const double d4 =
            vec_residual(step(p4).amps, linear_combination(t - r, p3.amps, cross, p1.amps));
        // Double step acts as a rotation in the (psi1, psi3) plane.
        const double d5 =
            vec_residual(step(step(p1)).amps, linear_combination(r - t, p1.amps, cross, p3.amps));
        const double d6 =
            vec_residual(step(step(p3)).amps, linear_combination(r - t, p3.amps, -cross, p1.amps));
        for (double d : {d1, d2, d3, d4, d5, d6}) {
            res.max_residual = std::max(res.max_residual, d);
            ++res.cases;
        }
    }
    res.pass = res.max_residual <= res.bound;
    return res;
}

SuiteResult verify_ring_exact() {
    SuiteResult res{"ring-exact", 0, 0.0, 1e-9, false};
    for (const auto& [M, N] : std::vector<std::pair<int, int>>{{5, 20}, {8, 32}, {11, 450}}) {
        const Maze maze = Maze::build(Topology::ring, M, N, 1);
        const RingSpectrum spectrum(M, N);
        const int start = 1;
        const long long sweep = std::max(100LL, 4 * optimal_steps_localized(N));
        WalkState state = prepare(maze, Prescription::localized_connection(start));
        for (long long steps = 0; steps <= sweep; steps += 2) {
            if (steps > 0) evolve(maze, state, 2);
            for (int b = 0; b < M; ++b) {
                const int junction = (start + b - 1) % M + 1;
                const AmplitudePair sim = success_amplitudes(maze, state, junction);
                const AmplitudePair formula = spectrum.amplitude(b, steps);
                res.max_residual = std::max({res.max_residual, std::abs(sim.e_plus - formula.e_plus),
                                             std::abs(sim.e_minus - formula.e_minus)});
                res.cases += 2;
            }
        }
    }
    res.pass = res.max_residual <= res.bound;
    return res;
}

SuiteResult verify_mirror() {
    SuiteResult res{"mirror", 0, 0.0, 1e-10, false};
    for (const auto& [M, N] : std::vector<std::pair<int, int>>{{4, 16}, {11, 450}}) {
        const Maze chain = Maze::build(Topology::chain, M, N, 1);
        const Maze ring = Maze::build(Topology::ring, 2 * M, N, 1);
        for (const Prescription& p :
             {Prescription::localized_start(), Prescription::localized_connection(M / 2)}) {
            WalkState c = prepare(chain, p);
            WalkState r = mirror_embed(chain, ring, c);
            for (long long steps = 0; steps <= 100; steps += 2) {
                if (steps > 0) {
                    evolve(chain, c, 2);
                    evolve(ring, r, 2);
                }
                for (int j = 1; j <= M; ++j) {
                    for (int s = 0; s < N; ++s) {
                        res.max_residual = std::max(
                            {res.max_residual,
                             std::abs(c.amps[chain.out_state(j, s)] - r.amps[ring.out_state(j, s)]),
                             std::abs(c.amps[chain.in_state(j, s)] - r.amps[ring.in_state(j, s)])});
                        res.cases += 2;
                    }
                }
            }
        }
    }
    res.pass = res.max_residual <= res.bound;
    return res;
}

SuiteResult verify_bounds() {
    // Residual is the worst ratio of a measured probability shift to its
    // bound, so the suite passes while max_residual <= 1.
    SuiteResult res{"bounds", 0, 0.0, 1.0, false};
    const std::vector<int> sizes{16, 64, 256, 1024};
    for (int N : sizes) {
        const GroverModel model(N);
        const double general = integer_step_error_bound(StepErrorCase::superposed, N);
        const double at_optimum = integer_step_error_bound(StepErrorCase::superposed_optimal, N);
        const long long sweep = round_to_even(3.0 * model.optimal_steps());
        for (long long x = 0; x <= sweep; x += 2) {
            const double p = model.psuc_real(static_cast<double>(x), true);
            for (int e = -100; e <= 100; ++e) {
                const double eps = e / 100.0;
                const double delta = std::abs(p - model.psuc_real(x + 2.0 * eps, true));
                res.max_residual = std::max(res.max_residual, delta / general);
                ++res.cases;
            }
        }
        const double x_opt = model.optimal_steps() - 1.0;  // peak of the superposed start
        const double p_opt = model.psuc_real(x_opt, true);
        for (int e = -100; e <= 100; ++e) {
            const double eps = e / 100.0;
            const double delta = std::abs(p_opt - model.psuc_real(x_opt + 2.0 * eps, true));
            res.max_residual = std::max(res.max_residual, delta / at_optimum);
            ++res.cases;
        }
    }
    for (int N : sizes) {
        const RingSpectrum spectrum(16, N);
        const double bound = integer_step_error_bound(StepErrorCase::localized, N);
        for (int b = 0; b <= 2; ++b) {
            for (long long x = 0; x <= 120; x += 2) {
                const double p = spectrum.amplitude_real(b, x / 2.0).probability();
                for (int e = -100; e <= 100; ++e) {
                    const double eps = e / 100.0;
                    const double q = spectrum.amplitude_real(b, x / 2.0 + eps).probability();
                    res.max_residual = std::max(res.max_residual, std::abs(p - q) / bound);
                    ++res.cases;
                }
            }
        }
    }
    res.pass = res.max_residual <= res.bound;
    return res;
}

SuiteResult verify_bessel() {
    SuiteResult res{"bessel", 0, 0.0, 1e-8, false};
    const std::vector<int> orders{0, 1, 2, 3, 5, 8, 13, 21, 34, 64};
    const std::vector<double> args{0.05, 0.5, 1.0, 2.0, kPi, 5.0, 8.0, 11.5,
                                   12.5, 20.0, 50.0, 100.0, 200.0};
    for (int n : orders) {
        for (double z : args) {
            const double got = bessel_j(n, z);
            const double want = bessel_j_quadrature(n, z);
            res.max_residual = std::max(res.max_residual, std::abs(got - want));
            ++res.cases;
        }
    }
    res.pass = res.max_residual <= res.bound;
    return res;
}

SuiteResult verify_eigenvectors() {
    SuiteResult res{"eigenvectors", 0, 0.0, 1e-9, false};
    for (const auto& [M, N] : std::vector<std::pair<int, int>>{{4, 8}, {5, 6}, {8, 24}}) {
        const EigenvectorCheck check = ring_eigenvector_check(RingSpectrum(M, N));
        res.max_residual = std::max({res.max_residual, check.max_residual, check.max_norm_error});
        res.cases += 2 * M;
    }
    res.pass = res.max_residual <= res.bound;
    return res;
}

std::vector<SuiteResult> verify_all() {
    return {verify_unitarity(), verify_subspace(),     verify_ring_exact(), verify_mirror(),
            verify_bounds(),    verify_bessel(),       verify_eigenvectors()};
}

std::vector<SuiteResult> run_suite(const std::string& name) {
    if (name == "all") return verify_all();
    if (name == "unitarity") return {verify_unitarity()};
    if (name == "subspace") return {verify_subspace()};
    if (name == "ring-exact") return {verify_ring_exact()};
    if (name == "mirror") return {verify_mirror()};
    if (name == "bounds") return {verify_bounds()};
    if (name == "bessel") return {verify_bessel()};
    if (name == "eigenvectors") return {verify_eigenvectors()};
    throw std::invalid_argument("verify: unknown suite '" + name + "'");
}

}  // namespace qwmaze
