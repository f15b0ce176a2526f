#include "spintrend/kernels.hpp"

namespace spintrend::kernels::scalar {

CrossPairCount cross_pair_count(std::span<const double> lo, std::span<const double> hi) {
    CrossPairCount c;
    for (const double a : lo) {
        for (const double b : hi) {
            if (b > a)
                ++c.greater;
            else if (b == a)
                ++c.equal;
        }
    }
    return c;
}

ConcordanceCount concordance_count(std::span<const double> x, std::span<const double> y) {
    ConcordanceCount c;
    const std::size_t n = x.size();
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const double xk = x[k], yk = y[k];
        for (std::size_t l = k + 1; l < n; ++l) {
            const double dx = x[l] - xk;
            const double dy = y[l] - yk;
            if (dx == 0.0 || dy == 0.0) continue;
            if ((dx > 0.0) == (dy > 0.0))
                ++c.concordant;
            else
                ++c.discordant;
        }
    }
    return c;
}

double sum(std::span<const double> v) {
    double s = 0.0;
    for (const double a : v) s += a;
    return s;
}

double sum_sq_dev(std::span<const double> v, double mean) {
    double s = 0.0;
    for (const double a : v) {
        const double d = a - mean;
        s += d * d;
    }
    return s;
}

double sum_sq_succ_diff(std::span<const double> v) {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        const double d = v[i + 1] - v[i];
        s += d * d;
    }
    return s;
}

}  // namespace spintrend::kernels::scalar
