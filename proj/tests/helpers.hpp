// helpers.hpp — statistical oracles and fit utilities for the test suites.
// Everything here is independent of the library paths it is used to check.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "qwmaze/rng.hpp"

namespace testutil {

// Upper regularized incomplete gamma Q(a, x), series + continued fraction.
inline double gammq(double a, double x) {
    if (x < 0.0 || a <= 0.0) throw std::invalid_argument("gammq domain");
    if (x == 0.0) return 1.0;
    const double lg = std::lgamma(a);
    if (x < a + 1.0) {
        // P(a,x) by series, return 1 - P.
        double ap = a;
        double sum = 1.0 / a;
        double del = sum;
        for (int i = 0; i < 500; ++i) {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if (std::abs(del) < std::abs(sum) * 1e-15) break;
        }
        return 1.0 - sum * std::exp(-x + a * std::log(x) - lg);
    }
    // Q(a,x) by Lentz continued fraction.
    double b = x + 1.0 - a;
    double c = 1e308;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < 1e-300) d = 1e-300;
        c = b + an / c;
        if (std::abs(c) < 1e-300) c = 1e-300;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-15) break;
    }
    return h * std::exp(-x + a * std::log(x) - lg);
}

inline double chi2_pvalue(double statistic, int dof) {
    return gammq(dof / 2.0, statistic / 2.0);
}

// Pearson chi-square p-value of observed counts against expected counts.
inline double chi2_test(const std::vector<double>& observed, const std::vector<double>& expected) {
    double stat = 0.0;
    int dof = -1;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        if (expected[i] <= 0.0) continue;
        const double d = observed[i] - expected[i];
        stat += d * d / expected[i];
        ++dof;
    }
    return chi2_pvalue(stat, std::max(dof, 1));
}

// Asymptotic Kolmogorov distribution tail for a KS statistic on n samples.
inline double ks_pvalue(double d_stat, std::size_t n) {
    const double sn = std::sqrt(static_cast<double>(n));
    const double lambda = (sn + 0.12 + 0.11 / sn) * d_stat;
    double p = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = 2.0 * ((k % 2) ? 1.0 : -1.0) * std::exp(-2.0 * k * k * lambda * lambda);
        p += term;
        if (std::abs(term) < 1e-12) break;
    }
    return std::clamp(p, 0.0, 1.0);
}

// KS distance of integer samples against a geometric(p) law on {1, 2, ...}.
// Both distributions are discrete, so the CDFs are compared only at integer
// atoms; the flat stretches between observed values are probed at their last
// integer, where the model CDF is largest.
inline double ks_geometric(const std::vector<int>& samples, double p) {
    std::vector<int> sorted = samples;
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    const auto model_cdf = [p](int k) { return 1.0 - std::pow(1.0 - p, k); };
    double d = 0.0;
    std::size_t i = 0;
    int prev_value = 0;
    while (i < sorted.size()) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
        const int v = sorted[i];
        if (v - 1 > prev_value) {
            d = std::max(d, std::abs(model_cdf(v - 1) - static_cast<double>(i) / n));
        }
        d = std::max(d, std::abs(model_cdf(v) - static_cast<double>(j) / n));
        prev_value = v;
        i = j;
    }
    return d;
}

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

inline LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
        syy += y[i] * y[i];
    }
    LinearFit f;
    const double cov = sxy - sx * sy / n;
    const double var_x = sxx - sx * sx / n;
    const double var_y = syy - sy * sy / n;
    f.slope = cov / var_x;
    f.intercept = (sy - f.slope * sx) / n;
    f.r_squared = var_y > 0 ? cov * cov / (var_x * var_y) : 1.0;
    return f;
}

// Direct coupon-collector Monte Carlo: M-1 interior coupons of weight 1/M
// each and two terminal coupons of weight 1/(2M); rounds until all are seen.
inline double coupon_collector_mean(int stars, int trials, std::uint64_t seed) {
    qwmaze::Rng rng(seed);
    const int coupons = stars + 1;
    long long total = 0;
    for (int t = 0; t < trials; ++t) {
        std::vector<bool> seen(coupons, false);
        int remaining = coupons;
        long long rounds = 0;
        while (remaining > 0) {
            ++rounds;
            const double u = rng.next_unit();
            int hit = -1;
            if (u < (stars - 1) / static_cast<double>(stars)) {
                hit = 1 + static_cast<int>(u * stars);  // interior junction
                hit = std::min(hit, stars - 1);
            } else if (u < (stars - 0.5) / stars) {
                hit = 0;  // START
            } else {
                hit = stars;  // END
            }
            if (!seen[hit]) {
                seen[hit] = true;
                --remaining;
            }
        }
        total += rounds;
    }
    return static_cast<double>(total) / trials;
}

}  // namespace testutil
