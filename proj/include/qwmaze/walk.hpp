// walk.hpp — exact state-vector evolution of the scattering walk.
//
// Basis states are directed edges; one step scatters every occupied state at
// the head vertex of its edge.  Hubs apply the N-dimensional reflection
// (2/N)J - I, dead-end spokes reflect, chain terminals reflect with -1, and
// junctions transmit.  All reachable amplitudes are real.
#pragma once

#include <string>
#include <vector>

#include "qwmaze/maze.hpp"
#include "qwmaze/rng.hpp"
#include "qwmaze/types.hpp"

namespace qwmaze {

struct WalkState {
    std::vector<double> amps;     // canonical-index amplitudes, unit 2-norm
    long long step_count = 0;

    double norm() const;
};

// Initial-state prescriptions.
struct Prescription {
    enum class Kind {
        psi1,                  // spoke-outgoing symmetric state, (-1)^j phases
        psi2,                  // spoke-incoming counterpart
        psi3,                  // junction-outgoing symmetric state
        psi4,                  // junction-incoming counterpart
        superposed,            // all outgoing states, (-1)^j phases
        localized_start,       // |A_1, B_01>
        localized_connection,  // (|A_{k+1},B_k1> - |A_k,B_k1>)/sqrt(2)
        two_star,              // (+ star j+1 outgoing - star j outgoing)/sqrt(2N)
        basis_edge,            // single canonical basis state
    };

    Kind kind = Kind::localized_start;
    int index = 0;  // connection k, star j, or canonical edge index

    static Prescription psi1() { return {Kind::psi1, 0}; }
    static Prescription psi2() { return {Kind::psi2, 0}; }
    static Prescription psi3() { return {Kind::psi3, 0}; }
    static Prescription psi4() { return {Kind::psi4, 0}; }
    static Prescription superposed() { return {Kind::superposed, 0}; }
    static Prescription localized_start() { return {Kind::localized_start, 0}; }
    static Prescription localized_connection(int k) { return {Kind::localized_connection, k}; }
    static Prescription two_star(int j) { return {Kind::two_star, j}; }
    static Prescription basis_edge(int index) { return {Kind::basis_edge, index}; }
};

// Unit-norm state per the prescription. Throws std::invalid_argument when the
// prescription does not fit the maze (topology or index range).
WalkState prepare(const Maze& maze, const Prescription& p);

// One application of U, in place. O(MN) time.
void apply_step(const Maze& maze, WalkState& state);

// U^steps. One scratch buffer for the whole call; the per-step loop only
// ping-pongs between the two buffers.
void evolve(const Maze& maze, WalkState& state, long long steps);

// Low-level kernel: out <- U * cur. Buffers must hold state_count() doubles
// and must not alias.
void scatter_step(const Maze& maze, const double* cur, double* out);

// Success amplitudes at a junction, in the fixed (e_plus, e_minus) pairing
// used by the analytic module: e_plus = -amp(|A_k, B_k1>) (lower star),
// e_minus = +amp(|A_{k+1}, B_k1>) (upper star). Terminal junctions on a chain
// have one edge; the other component is zero.
AmplitudePair success_amplitudes(const Maze& maze, const WalkState& state, int junction);

// e_plus^2 + e_minus^2 (single-edge term at chain terminals).
double connection_probability(const Maze& maze, const WalkState& state, int junction);

// Total probability on junction and terminal edges, both directions.
double path_probability(const Maze& maze, const WalkState& state);

struct Measurement {
    int state_index = 0;   // canonical index of the observed edge state
    int star = 0;          // star owning the edge (1-based)
    std::string tail;      // external name of the tail vertex
    std::string head;      // external name of the head vertex
    bool outgoing = false; // hub -> external direction
};

// Samples one edge state with probability amplitude^2 and reports it through
// the external naming. Does not modify the state; rounds re-prepare instead
// of modelling collapse.
Measurement measure(const Maze& maze, const WalkState& state, Rng& rng);

// Dense U for verification, columns U|e_i>. Guarded to M*N <= 200.
std::vector<std::vector<double>> materialize_unitary(const Maze& maze);

}  // namespace qwmaze
