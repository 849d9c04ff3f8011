// analytic.hpp — closed-form predictions for the scattering walk.
//
// Three layers:
//   * the two-dimensional invariant-plane model of the superposed search
//     (rotation by theta per double step, cos theta = (N-4)/N),
//   * the Bloch spectrum of a ring of stars, whose mode sum gives exact
//     success amplitudes for the localized search, and
//   * the mirror construction mapping a chain of M stars onto a ring of 2M,
//     plus Bessel-function approximations of the resulting wavefronts.
#pragma once

#include <span>
#include <vector>

#include "qwmaze/types.hpp"

namespace qwmaze {

// Nearest even integer, ties rounded up. Used wherever a real optimal step
// count must become an even number of unitary applications.
long long round_to_even(double x);

// ---------------------------------------------------------------------------
// Invariant-plane (Grover-like) model of the superposed search.

class GroverModel {
  public:
    explicit GroverModel(int spokes);  // requires N >= 3

    int spokes() const { return spokes_; }
    double theta() const { return theta_; }

    // Real-valued optimal double-step count: 2*n0 with n0*theta = pi/2.
    double optimal_steps() const { return two_n0_; }

    // Success probability after an even number of steps: sin^2(n*theta) from
    // the ideal in-plane start, sin^2((2n+1)*theta/2) from the uniform
    // superposed start (which carries a small overlap with the target plane).
    double psuc(long long steps, bool from_superposed) const;

    // Same, at a real-valued step count; used by the step-rounding bounds.
    double psuc_real(double steps, bool from_superposed) const;

  private:
    int spokes_;
    double theta_;
    double two_n0_;
};

long long optimal_steps_superposed(int spokes);  // round_to_even(pi/theta), N >= 4
long long optimal_steps_localized(int spokes);   // round_to_even(pi*sqrt(N/2)), N >= 3

// Step-rounding error bounds on the success probability.
enum class StepErrorCase { superposed, superposed_optimal, localized };
double integer_step_error_bound(StepErrorCase c, int spokes);

// ---------------------------------------------------------------------------
// Bessel function of the first kind, integer order.
//
// Ascending series for small arguments; Miller downward recurrence with
// even-order normalization otherwise. Absolute error <= 1e-10 on the
// supported domain order <= 512, 0 <= z <= 1e4.
double bessel_j(int order, double z);

// ---------------------------------------------------------------------------
// Bloch spectrum of a ring of M stars.

class RingSpectrum {
  public:
    RingSpectrum(int stars, int spokes);  // requires M >= 2, N >= 3

    int stars() const { return stars_; }
    int spokes() const { return spokes_; }
    double hop() const { return hop_; }                      // t = 2/N
    double phase(int m) const { return phi_[m]; }            // 2*pi*m/M
    double frequency(int m) const { return omega_[m]; }      // cos w = 1 - t(1-cos phi)

    // Exact success amplitudes at offset b from the starting junction after
    // an even number of steps (odd counts are rejected). The mode sum is
    //   E_pm(2n) = (1/(sqrt2 M)) sum_m (1 -+ t_m sin phi_m / sin w_m)
    //              cos(n w_m + b phi_m),  t_0 = 0,
    // paired so that e_plus reads the lower-star edge and e_minus the upper.
    AmplitudePair amplitude(int b, long long steps) const;
    double psuc(int b, long long steps) const;

    // Mode sum at a real-valued half-step count n; used by the bounds scan.
    AmplitudePair amplitude_real(int b, double n) const;

  private:
    int stars_;
    int spokes_;
    double hop_;
    std::vector<double> phi_;
    std::vector<double> omega_;
    std::vector<double> skew_;  // t_m sin(phi_m) / sin(omega_m), zero at m = 0
};

// Large-ring approximation of either success amplitude at offset b:
// (1/sqrt2) J_{2b}(2 n sqrt(t)). Valid while M sqrt(N) >> n.
double ring_amplitude_approx(int b, double n, double t);

// ---------------------------------------------------------------------------
// Chain of M stars via the mirror ring of 2M stars.
//
// k = 0 denotes the walk launched from the START edge (amplitudes
// sqrt2 * E^{(b)} on the doubled ring); k >= 1 launches from connection k and
// adds the mirror echo E^{(2k+b)}. Probabilities keep both components except
// at a terminal junction, which has a single edge.
AmplitudePair chain_amplitude(int stars, int spokes, int k, int b, long long steps);
AmplitudePair chain_amplitude(const RingSpectrum& doubled, int k, int b, long long steps);
double chain_psuc(int stars, int spokes, int k, int b, long long steps);
double chain_psuc(const RingSpectrum& doubled, int stars, int k, int b, long long steps);

// Bessel-window approximation of chain_psuc built from ring_amplitude_approx
// with the echo index folded by the period-2M reflection symmetry.
double chain_psuc_approx(int stars, int spokes, int k, int b, double n);

// ---------------------------------------------------------------------------
// Full spectral route (exact, any launch state in the hub->external class).

// One component of a ring state: coeff on |A_star, slot>, slot 0 = left
// junction, slot 1 = right junction, slot >= 2 = dead-end spokes.
struct RingStateTerm {
    int star = 1;  // 1-based
    int slot = 0;
    double coeff = 0.0;
};

// <target| U^steps |init> for an even number of steps, evaluated by summing
// the travelling Bloch modes and folding the flat lambda = -1 remainder.
double ring_state_amplitude(const RingSpectrum& spectrum, std::span<const RingStateTerm> init,
                            int target_star, int target_slot, long long steps);

// Residuals of the closed-form Bloch eigenvectors against U^2 applied by the
// walk engine; limited to M <= 8, N <= 24.
struct EigenvectorCheck {
    double max_residual = 0.0;    // max over modes of ||U^2 v - lambda v||
    double max_norm_error = 0.0;  // max over modes of | ||v|| - 1 |
};
EigenvectorCheck ring_eigenvector_check(const RingSpectrum& spectrum);

}  // namespace qwmaze
