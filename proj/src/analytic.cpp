// analytic.cpp — invariant-plane model, Bessel evaluator, Bloch mode sums.
#include "qwmaze/analytic.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "qwmaze/maze.hpp"
#include "qwmaze/walk.hpp"

namespace qwmaze {

namespace {

constexpr double kPi = std::numbers::pi;

double pairwise_sum(const double* v, int n) {
    if (n <= 32) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += v[i];
        return s;
    }
    const int h = n / 2;
    return pairwise_sum(v, h) + pairwise_sum(v + h, n - h);
}

void require_even(long long steps) {
    if (steps < 0 || steps % 2 != 0) {
        throw std::invalid_argument("analytic: step count must be even and non-negative");
    }
}

}  // namespace

long long round_to_even(double x) {
    return 2 * static_cast<long long>(std::floor(x / 2.0 + 0.5));
}

// ---------------------------------------------------------------------------
// Invariant-plane model.

GroverModel::GroverModel(int spokes) : spokes_(spokes) {
    if (spokes < 3) throw std::invalid_argument("analytic: need N >= 3");
    theta_ = std::acos((spokes - 4.0) / spokes);
    two_n0_ = kPi / theta_;
}

double GroverModel::psuc(long long steps, bool from_superposed) const {
    require_even(steps);
    return psuc_real(static_cast<double>(steps), from_superposed);
}

double GroverModel::psuc_real(double steps, bool from_superposed) const {
    const double s = from_superposed ? std::sin((steps + 1.0) * theta_ / 2.0)
                                     : std::sin(steps / 2.0 * theta_);
    return s * s;
}

long long optimal_steps_superposed(int spokes) {
    if (spokes < 4) throw std::invalid_argument("analytic: superposed optimum needs N >= 4");
    return round_to_even(GroverModel(spokes).optimal_steps());
}

long long optimal_steps_localized(int spokes) {
    if (spokes < 3) throw std::invalid_argument("analytic: need N >= 3");
    return round_to_even(kPi * std::sqrt(spokes / 2.0));
}

double integer_step_error_bound(StepErrorCase c, int spokes) {
    if (spokes < 3) throw std::invalid_argument("analytic: need N >= 3");
    switch (c) {
        case StepErrorCase::superposed:
            return 2.0 * std::sqrt(2.0 / spokes);
        case StepErrorCase::superposed_optimal:
            return 8.0 / spokes;
        case StepErrorCase::localized:
            return 16.0 / std::sqrt(double(spokes));
    }
    throw std::logic_error("analytic: bad bound case");
}

// ---------------------------------------------------------------------------
// Bessel J_n.

namespace {

// Ascending power series; accurate while the largest term stays modest.
double bessel_series(int n, double z) {
    const double half = z / 2.0;
    // First term in log space; n can be large enough to underflow.
    const double log_t0 = n * std::log(half) - std::lgamma(n + 1.0);
    if (log_t0 < -700.0) return 0.0;
    double term = std::exp(log_t0);
    double sum = term;
    const double q = half * half;
    for (int k = 1; k <= 400; ++k) {
        term *= -q / (k * double(n + k));
        sum += term;
        if (std::abs(term) < 1e-18 * (std::abs(sum) + 1e-280)) break;
    }
    return sum;
}

// Miller downward recurrence, normalized with J_0 + 2 sum J_{2k} = 1.
double bessel_miller(int n, double z) {
    const int base = std::max(n, static_cast<int>(z));
    int start = base + 40 + static_cast<int>(12.0 * std::cbrt(double(base + 1)));
    if (start % 2) ++start;
    double above = 0.0;   // J_{m+1} (unnormalized)
    double here = 1e-30;  // J_m
    double target = 0.0;
    double norm = 0.0;
    for (int m = start; m >= 1; --m) {
        const double below = 2.0 * m / z * here - above;
        above = here;
        here = below;
        if (std::abs(here) > 1e250) {
            here *= 1e-250;
            above *= 1e-250;
            target *= 1e-250;
            norm *= 1e-250;
        }
        const int order = m - 1;
        if (order == n) target = here;
        if (order % 2 == 0) norm += (order == 0 ? 1.0 : 2.0) * here;
    }
    return target / norm;
}

}  // namespace

double bessel_j(int order, double z) {
    if (order < 0 || order > 512) {
        throw std::domain_error("bessel_j: order must be in [0, 512]");
    }
    if (!(z >= 0.0) || z > 1e4) {
        throw std::domain_error("bessel_j: argument must be in [0, 1e4]");
    }
    if (z == 0.0) return order == 0 ? 1.0 : 0.0;
    if (z < 12.0) return bessel_series(order, z);
    return bessel_miller(order, z);
}

// ---------------------------------------------------------------------------
// Ring spectrum.

RingSpectrum::RingSpectrum(int stars, int spokes) : stars_(stars), spokes_(spokes) {
    if (stars < 2) throw std::invalid_argument("analytic: ring needs M >= 2");
    if (spokes < 3) throw std::invalid_argument("analytic: need N >= 3");
    hop_ = 2.0 / spokes;
    phi_.resize(stars);
    omega_.resize(stars);
    skew_.resize(stars);
    for (int m = 0; m < stars; ++m) {
        phi_[m] = 2.0 * kPi * m / stars;
        const double cw = 1.0 - hop_ * (1.0 - std::cos(phi_[m]));
        omega_[m] = std::acos(std::min(1.0, std::max(-1.0, cw)));
        // The m = 0 mode is flat: its eigenvalue is 1 and it carries no skew
        // term (the formal sin phi / sin w expression is 0/0 there).
        skew_[m] = m == 0 ? 0.0 : hop_ * std::sin(phi_[m]) / std::sin(omega_[m]);
    }
}

AmplitudePair RingSpectrum::amplitude_real(int b, double n) const {
    std::vector<double> plus(stars_), minus(stars_);
    for (int m = 0; m < stars_; ++m) {
        const double c = std::cos(n * omega_[m] + b * phi_[m]);
        plus[m] = (1.0 - skew_[m]) * c;
        minus[m] = (1.0 + skew_[m]) * c;
    }
    const double f = 1.0 / (std::sqrt(2.0) * stars_);
    return {f * pairwise_sum(plus.data(), stars_), f * pairwise_sum(minus.data(), stars_)};
}

AmplitudePair RingSpectrum::amplitude(int b, long long steps) const {
    require_even(steps);
    return amplitude_real(b, static_cast<double>(steps) / 2.0);
}

double RingSpectrum::psuc(int b, long long steps) const {
    return amplitude(b, steps).probability();
}

double ring_amplitude_approx(int b, double n, double t) {
    return bessel_j(2 * b, 2.0 * n * std::sqrt(t)) / std::sqrt(2.0);
}

// ---------------------------------------------------------------------------
// Chain amplitudes through the doubled ring.

namespace {

void check_chain_args(int stars, int k, int b) {
    if (k < 0 || k >= stars) {
        throw std::invalid_argument("analytic: chain start junction out of range");
    }
    if (k + b < 0 || k + b > stars) {
        throw std::invalid_argument("analytic: chain target junction out of range");
    }
}

}  // namespace

AmplitudePair chain_amplitude(const RingSpectrum& doubled, int k, int b, long long steps) {
    if (doubled.stars() % 2 != 0) {
        throw std::invalid_argument("analytic: chain amplitudes need the doubled ring");
    }
    const int stars = doubled.stars() / 2;
    check_chain_args(stars, k, b);
    if (k == 0) {
        AmplitudePair e = doubled.amplitude(b, steps);
        return {std::sqrt(2.0) * e.e_plus, std::sqrt(2.0) * e.e_minus};
    }
    const AmplitudePair direct = doubled.amplitude(b, steps);
    const AmplitudePair echo = doubled.amplitude(2 * k + b, steps);
    return {direct.e_plus + echo.e_plus, direct.e_minus + echo.e_minus};
}

AmplitudePair chain_amplitude(int stars, int spokes, int k, int b, long long steps) {
    check_chain_args(stars, k, b);
    return chain_amplitude(RingSpectrum(2 * stars, spokes), k, b, steps);
}

double chain_psuc(const RingSpectrum& doubled, int stars, int k, int b, long long steps) {
    const AmplitudePair f = chain_amplitude(doubled, k, b, steps);
    if (k + b == stars) return f.e_plus * f.e_plus;    // END has only the lower edge
    if (k + b == 0) return f.e_minus * f.e_minus;      // START has only the upper edge
    return f.probability();
}

double chain_psuc(int stars, int spokes, int k, int b, long long steps) {
    return chain_psuc(RingSpectrum(2 * stars, spokes), stars, k, b, steps);
}

double chain_psuc_approx(int stars, int spokes, int k, int b, double n) {
    check_chain_args(stars, k, b);
    const double t = 2.0 / spokes;
    const int period = 2 * stars;
    const auto fold = [period](int x) {
        x = ((x % period) + period) % period;
        return std::min(x, period - x);
    };
    const bool terminal = (k + b == stars) || (k + b == 0);
    if (k == 0) {
        const double amp = std::sqrt(2.0) * ring_amplitude_approx(fold(b), n, t);
        return terminal ? amp * amp : 2.0 * amp * amp;
    }
    const double f = ring_amplitude_approx(fold(b), n, t) + ring_amplitude_approx(fold(2 * k + b), n, t);
    return terminal ? f * f : 2.0 * f * f;
}

// ---------------------------------------------------------------------------
// Spectral route: explicit Bloch eigenvectors of U^2 in the hub->external
// class.  Per momentum m != 0 there are two travelling modes e^{+-i w_m};
// m = 0 contributes the flat difference mode and the uniform state (both
// eigenvalue 1); everything else has eigenvalue -1 and is handled as the
// projector remainder.

namespace {

using cx = std::complex<double>;

struct BlochMode {
    cx c0;       // left-junction slot coefficient
    cx c1;       // right-junction slot
    cx cs;       // each dead-end slot
    cx lambda;   // U^2 eigenvalue
    double phi;  // momentum phase
};

std::vector<BlochMode> bloch_modes(const RingSpectrum& spectrum) {
    const int M = spectrum.stars();
    const int N = spectrum.spokes();
    const double t = spectrum.hop();
    const double r = 1.0 - t;
    std::vector<BlochMode> modes;
    modes.reserve(2 * M);
    const double inv_flat = 1.0 / std::sqrt(2.0 * M);
    modes.push_back({inv_flat, -inv_flat, 0.0, 1.0, 0.0});
    const double inv_uniform = 1.0 / std::sqrt(double(M) * N);
    modes.push_back({inv_uniform, inv_uniform, inv_uniform, 1.0, 0.0});
    for (int m = 1; m < M; ++m) {
        const double phi = spectrum.phase(m);
        const double w = spectrum.frequency(m);
        const double denom = std::sqrt(2.0 * M * t * (1.0 + std::cos(w)));
        const cx eip = std::exp(cx(0.0, phi));
        for (int sign : {+1, -1}) {
            const cx lam = std::exp(cx(0.0, sign * w));
            const cx lam_conj = std::conj(lam);
            BlochMode mode;
            mode.c0 = (1.0 - lam) / (lam - eip) * r / denom;
            mode.c1 = std::conj((1.0 - lam_conj) / (lam_conj - eip) * r / denom);
            mode.cs = t / denom;
            mode.lambda = lam;
            mode.phi = phi;
            modes.push_back(mode);
        }
    }
    return modes;
}

cx mode_component(const BlochMode& mode, int star, int slot) {
    const cx coeff = slot == 0 ? mode.c0 : (slot == 1 ? mode.c1 : mode.cs);
    return std::exp(cx(0.0, mode.phi * star)) * coeff;
}

}  // namespace

double ring_state_amplitude(const RingSpectrum& spectrum, std::span<const RingStateTerm> init,
                            int target_star, int target_slot, long long steps) {
    require_even(steps);
    const long long n = steps / 2;
    const auto modes = bloch_modes(spectrum);

    double init_at_target = 0.0;
    for (const RingStateTerm& term : init) {
        if (term.star == target_star && term.slot == target_slot) init_at_target += term.coeff;
    }

    cx travelling = 0.0;
    cx projected = 0.0;
    for (const BlochMode& mode : modes) {
        cx overlap = 0.0;
        for (const RingStateTerm& term : init) {
            overlap += std::conj(mode_component(mode, term.star, term.slot)) * term.coeff;
        }
        const cx at_target = mode_component(mode, target_star, target_slot);
        const cx weight = at_target * overlap;
        projected += weight;
        travelling += std::pow(mode.lambda, static_cast<double>(n)) * weight;
    }
    // The lambda = -1 remainder is whatever the listed modes do not cover.
    const double flip = (n % 2 == 0) ? 1.0 : -1.0;
    const cx total = travelling + flip * (cx(init_at_target) - projected);
    return total.real();
}

EigenvectorCheck ring_eigenvector_check(const RingSpectrum& spectrum) {
    const int M = spectrum.stars();
    const int N = spectrum.spokes();
    if (M > 8 || N > 24) {
        throw std::invalid_argument("analytic: eigenvector check limited to M <= 8, N <= 24");
    }
    const Maze maze = Maze::build(Topology::ring, M, N, 0);
    const int dim = maze.state_count();
    EigenvectorCheck report;

    std::vector<double> re(dim), im(dim), scratch(dim), re2(dim), im2(dim);
    for (const BlochMode& mode : bloch_modes(spectrum)) {
        double norm2 = 0.0;
        for (int j = 1; j <= M; ++j) {
            for (int s = 0; s < N; ++s) {
                const cx v = mode_component(mode, j, s);
                re[maze.out_state(j, s)] = v.real();
                im[maze.out_state(j, s)] = v.imag();
                re[maze.in_state(j, s)] = 0.0;
                im[maze.in_state(j, s)] = 0.0;
                norm2 += std::norm(v);
            }
        }
        report.max_norm_error = std::max(report.max_norm_error, std::abs(std::sqrt(norm2) - 1.0));

        scatter_step(maze, re.data(), scratch.data());
        scatter_step(maze, scratch.data(), re2.data());
        scatter_step(maze, im.data(), scratch.data());
        scatter_step(maze, scratch.data(), im2.data());

        double resid2 = 0.0;
        for (int i = 0; i < dim; ++i) {
            const cx got(re2[i], im2[i]);
            const cx want = mode.lambda * cx(re[i], im[i]);
            resid2 += std::norm(got - want);
        }
        report.max_residual = std::max(report.max_residual, std::sqrt(resid2));
    }
    return report;
}

}  // namespace qwmaze
