// walk.cpp — scattering-step kernel, state preparation, measurement.
#include "qwmaze/walk.hpp"

#include <cmath>
#include <stdexcept>

namespace qwmaze {

double WalkState::norm() const {
    double s = 0.0;
    for (double a : amps) s += a * a;
    return std::sqrt(s);
}

void scatter_step(const Maze& maze, const double* cur, double* out) {
    const int M = maze.stars();
    const int N = maze.spokes();
    const double t = maze.transmission();
    const bool ring = maze.topology() == Topology::ring;

    // Hubs: out[A_j -> s] = t * (sum of incoming) - cur[s -> A_j].
    for (int j0 = 0; j0 < M; ++j0) {
        const double* in = cur + 2 * N * j0;
        double* o = out + 2 * N * j0;
        double sum = 0.0;
        for (int s = 0; s < N; ++s) sum += in[2 * s + 1];
        const double ts = t * sum;
        for (int s = 0; s < N; ++s) o[2 * s] = ts - in[2 * s + 1];
    }
    // Dead-end spokes reflect.
    for (int j0 = 0; j0 < M; ++j0) {
        const double* in = cur + 2 * N * j0;
        double* o = out + 2 * N * j0;
        for (int s = 2; s < N; ++s) o[2 * s + 1] = in[2 * s];
    }
    // Junctions transmit; chain terminals reflect with a phase flip.
    const auto out_ix = [N](int j0, int s) { return (j0 * N + s) * 2; };
    const auto in_ix = [N](int j0, int s) { return (j0 * N + s) * 2 + 1; };
    for (int j0 = 0; j0 + 1 < M; ++j0) {
        out[in_ix(j0 + 1, 0)] = cur[out_ix(j0, 1)];
        out[in_ix(j0, 1)] = cur[out_ix(j0 + 1, 0)];
    }
    if (ring) {
        out[in_ix(0, 0)] = cur[out_ix(M - 1, 1)];
        out[in_ix(M - 1, 1)] = cur[out_ix(0, 0)];
    } else {
        out[in_ix(M - 1, 1)] = -cur[out_ix(M - 1, 1)];  // END
        out[in_ix(0, 0)] = -cur[out_ix(0, 0)];          // START
    }
}

void apply_step(const Maze& maze, WalkState& state) {
    std::vector<double> scratch(state.amps.size());
    scatter_step(maze, state.amps.data(), scratch.data());
    state.amps.swap(scratch);
    state.step_count += 1;
}

void evolve(const Maze& maze, WalkState& state, long long steps) {
    if (steps < 0) throw std::invalid_argument("walk: negative step count");
    if (steps == 0) return;
    std::vector<double> scratch(state.amps.size());
    double* a = state.amps.data();
    double* b = scratch.data();
    for (long long i = 0; i < steps; ++i) {
        scatter_step(maze, a, b);
        std::swap(a, b);
    }
    if (a != state.amps.data()) state.amps.swap(scratch);
    state.step_count += steps;
}

namespace {

void require_chain(const Maze& maze, const char* what) {
    if (maze.topology() != Topology::chain) {
        throw std::invalid_argument(std::string("walk: ") + what + " requires a chain maze");
    }
}

}  // namespace

WalkState prepare(const Maze& maze, const Prescription& p) {
    const int M = maze.stars();
    const int N = maze.spokes();
    WalkState state;
    state.amps.assign(maze.state_count(), 0.0);

    using K = Prescription::Kind;
    switch (p.kind) {
        case K::psi1:
        case K::psi2: {
            require_chain(maze, "psi1/psi2");
            const double w = 1.0 / std::sqrt(double(M) * (N - 2));
            const bool incoming = p.kind == K::psi2;
            for (int j = 1; j <= M; ++j) {
                const double sign = (j % 2 == 0) ? 1.0 : -1.0;
                for (int k = 2; k < N; ++k) {
                    const int ix = incoming ? maze.in_state(j, k) : maze.out_state(j, k);
                    state.amps[ix] = sign * w;
                }
            }
            break;
        }
        case K::psi3:
        case K::psi4: {
            require_chain(maze, "psi3/psi4");
            const double w = 1.0 / std::sqrt(2.0 * M);
            const bool incoming = p.kind == K::psi4;
            for (int j = 1; j <= M; ++j) {
                const double sign = (j % 2 == 0) ? 1.0 : -1.0;
                for (int slot : {1, 0}) {
                    const int ix = incoming ? maze.in_state(j, slot) : maze.out_state(j, slot);
                    state.amps[ix] = sign * w;
                }
            }
            break;
        }
        case K::superposed: {
            require_chain(maze, "the superposed start");
            const double w = 1.0 / std::sqrt(double(M) * N);
            for (int j = 1; j <= M; ++j) {
                const double sign = (j % 2 == 0) ? 1.0 : -1.0;
                for (int s = 0; s < N; ++s) state.amps[maze.out_state(j, s)] = sign * w;
            }
            break;
        }
        case K::localized_start:
            require_chain(maze, "the localized start");
            state.amps[maze.out_state(1, 0)] = 1.0;
            break;
        case K::localized_connection: {
            const int k = p.index;
            const int upper_max = maze.topology() == Topology::ring ? M : M - 1;
            if (k < 1 || k > upper_max) {
                throw std::invalid_argument("walk: connection index out of range");
            }
            const int upper = k % M + 1;  // star on the far side of junction k
            state.amps[maze.out_state(upper, 0)] = 1.0 / std::sqrt(2.0);
            state.amps[maze.out_state(k, 1)] = -1.0 / std::sqrt(2.0);
            break;
        }
        case K::two_star: {
            require_chain(maze, "the two-star start");
            const int j = p.index;
            if (j < 1 || j >= M) {
                throw std::invalid_argument("walk: two-star index needs stars j and j+1");
            }
            const double w = 1.0 / std::sqrt(2.0 * N);
            for (int s = 0; s < N; ++s) {
                state.amps[maze.out_state(j + 1, s)] = w;
                state.amps[maze.out_state(j, s)] = -w;
            }
            break;
        }
        case K::basis_edge: {
            if (p.index < 0 || p.index >= maze.state_count()) {
                throw std::invalid_argument("walk: basis edge index out of range");
            }
            state.amps[p.index] = 1.0;
            break;
        }
    }
    return state;
}

AmplitudePair success_amplitudes(const Maze& maze, const WalkState& state, int junction) {
    const int M = maze.stars();
    if (junction < maze.junction_min() || junction > maze.junction_max()) {
        throw std::invalid_argument("walk: junction index out of range");
    }
    AmplitudePair pair;
    if (maze.topology() == Topology::chain && junction == 0) {
        pair.e_minus = state.amps[maze.out_state(1, 0)];
    } else if (maze.topology() == Topology::chain && junction == M) {
        pair.e_plus = -state.amps[maze.out_state(M, 1)];
    } else {
        const int upper = junction % M + 1;
        pair.e_plus = -state.amps[maze.out_state(junction, 1)];
        pair.e_minus = state.amps[maze.out_state(upper, 0)];
    }
    return pair;
}

double connection_probability(const Maze& maze, const WalkState& state, int junction) {
    return success_amplitudes(maze, state, junction).probability();
}

double path_probability(const Maze& maze, const WalkState& state) {
    const int M = maze.stars();
    double p = 0.0;
    const auto add_edge = [&](int star1, int slot) {
        const double a = state.amps[maze.out_state(star1, slot)];
        const double b = state.amps[maze.in_state(star1, slot)];
        p += a * a + b * b;
    };
    if (maze.topology() == Topology::chain) {
        add_edge(1, 0);  // START edge
        add_edge(M, 1);  // END edge
        for (int k = 1; k < M; ++k) {
            add_edge(k, 1);
            add_edge(k + 1, 0);
        }
    } else {
        for (int k = 1; k <= M; ++k) {
            add_edge(k, 1);
            add_edge(k % M + 1, 0);
        }
    }
    return p;
}

Measurement measure(const Maze& maze, const WalkState& state, Rng& rng) {
    double total = 0.0;
    for (double a : state.amps) total += a * a;
    const double u = rng.next_unit() * total;
    double cum = 0.0;
    int chosen = maze.state_count() - 1;
    for (int i = 0; i < maze.state_count(); ++i) {
        cum += state.amps[i] * state.amps[i];
        if (u < cum) {
            chosen = i;
            break;
        }
    }
    const DirectedEdge e = maze.index_edge(chosen);
    Measurement m;
    m.state_index = chosen;
    m.outgoing = e.tail.kind == Vertex::Kind::center;
    m.star = (m.outgoing ? e.tail : e.head).star;
    m.tail = maze.vertex_name(e.tail);
    m.head = maze.vertex_name(e.head);
    return m;
}

std::vector<std::vector<double>> materialize_unitary(const Maze& maze) {
    if (maze.stars() * maze.spokes() > 200) {
        throw std::invalid_argument("walk: dense unitary limited to M*N <= 200");
    }
    const int dim = maze.state_count();
    std::vector<std::vector<double>> cols(dim);
    std::vector<double> basis(dim, 0.0);
    for (int i = 0; i < dim; ++i) {
        basis.assign(dim, 0.0);
        basis[i] = 1.0;
        cols[i].assign(dim, 0.0);
        scatter_step(maze, basis.data(), cols[i].data());
    }
    return cols;
}

}  // namespace qwmaze
