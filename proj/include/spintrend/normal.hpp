#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace spintrend {

// Standard normal tail probabilities via erfc; the two tails sum to 1
// exactly because erfc(x) + erfc(-x) == 2.
inline double normal_upper_tail(double z) { return 0.5 * std::erfc(z / std::numbers::sqrt2); }

inline double normal_lower_tail(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

// z such that normal_upper_tail(z) == p, by bisection on the monotone tail.
// 160 halvings of [-40, 40] put the result far below double resolution.
inline double normal_upper_inverse(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("normal_upper_inverse: p must be in (0,1)");
    double lo = -40.0, hi = 40.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (normal_upper_tail(mid) > p)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

// Survival function of chi-squared with even dof = 2k: the Erlang tail
// exp(-x/2) * sum_{j<k} (x/2)^j / j!.
inline double chi2_even_sf(double x, int k) {
    if (k < 1) throw std::invalid_argument("chi2_even_sf: k must be >= 1");
    if (x <= 0.0) return 1.0;
    const double h = 0.5 * x;
    double term = std::exp(-h);
    double s = term;
    for (int j = 1; j < k; ++j) {
        term *= h / j;
        s += term;
    }
    return s > 1.0 ? 1.0 : s;
}

}  // namespace spintrend
