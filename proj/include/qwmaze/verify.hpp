// verify.hpp — property suites cross-checking the walk engine against the
// closed forms. Shared by the CLI `verify` command, the acceptance runner,
// and the unit tests. Oracles here stay independent of the code they check
// (dense unitary columns, quadrature Bessel, direct state embeddings).
#pragma once

#include <string>
#include <vector>

#include "qwmaze/maze.hpp"
#include "qwmaze/walk.hpp"

namespace qwmaze {

struct SuiteResult {
    std::string suite;
    long long cases = 0;
    double max_residual = 0.0;
    double bound = 0.0;
    bool pass = false;
};

SuiteResult verify_unitarity();     // dense U columns orthonormal, 1e-12
SuiteResult verify_subspace();      // four-state closure and the U^2 rotation, 1e-12
SuiteResult verify_ring_exact();    // mode sum vs simulation, 1e-9
SuiteResult verify_mirror();        // chain vs doubled-ring normal side, 1e-10
SuiteResult verify_bounds();        // step-rounding error bounds (residual is Delta/bound)
SuiteResult verify_bessel();        // Miller/series evaluator vs quadrature, 1e-8
SuiteResult verify_eigenvectors();  // Bloch eigenvector residuals, 1e-9

std::vector<SuiteResult> verify_all();

// "unitarity", "subspace", "ring-exact", "mirror", "bounds", "bessel",
// "eigenvectors", or "all". Throws std::invalid_argument otherwise.
std::vector<SuiteResult> run_suite(const std::string& name);

// Independent Bessel oracle: composite Simpson (4096 panels) on the integral
// representation (1/pi) int_0^pi cos(n u - z sin u) du.
double bessel_j_quadrature(int order, double z);

// Embed a chain state into the doubled mirror ring: the normal half keeps
// the amplitudes, the mirror half carries them negated with the two junction
// slots swapped. The embedded state has norm sqrt(2) by construction.
WalkState mirror_embed(const Maze& chain, const Maze& ring, const WalkState& state);

}  // namespace qwmaze
