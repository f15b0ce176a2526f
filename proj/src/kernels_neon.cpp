#if defined(__aarch64__)

#include <arm_neon.h>

#include "spintrend/kernels.hpp"

namespace spintrend::kernels::neon {

bool supported() { return true; }  // NEON is baseline on aarch64

namespace {

inline std::uint64_t count2(uint64x2_t mask) {
    // lanes are all-ones or all-zeros
    return (vgetq_lane_u64(mask, 0) & 1) + (vgetq_lane_u64(mask, 1) & 1);
}

inline double hsum2(float64x2_t v) { return vgetq_lane_f64(v, 0) + vgetq_lane_f64(v, 1); }

}  // namespace

CrossPairCount cross_pair_count(std::span<const double> lo, std::span<const double> hi) {
    CrossPairCount c;
    const std::size_t nb = hi.size();
    const std::size_t nb2 = nb & ~std::size_t{1};
    for (const double a : lo) {
        const float64x2_t av = vdupq_n_f64(a);
        std::size_t j = 0;
        for (; j < nb2; j += 2) {
            const float64x2_t bv = vld1q_f64(hi.data() + j);
            c.greater += count2(vcgtq_f64(bv, av));
            c.equal += count2(vceqq_f64(bv, av));
        }
        for (; j < nb; ++j) {
            if (hi[j] > a)
                ++c.greater;
            else if (hi[j] == a)
                ++c.equal;
        }
    }
    return c;
}

ConcordanceCount concordance_count(std::span<const double> x, std::span<const double> y) {
    ConcordanceCount c;
    const std::size_t n = x.size();
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const float64x2_t xk = vdupq_n_f64(x[k]);
        const float64x2_t yk = vdupq_n_f64(y[k]);
        std::size_t l = k + 1;
        const std::size_t rem = (n - l) & 1;
        const std::size_t n2 = n - rem;
        for (; l < n2; l += 2) {
            const float64x2_t xl = vld1q_f64(x.data() + l);
            const float64x2_t yl = vld1q_f64(y.data() + l);
            const uint64x2_t xg = vcgtq_f64(xl, xk);
            const uint64x2_t xs = vcltq_f64(xl, xk);
            const uint64x2_t yg = vcgtq_f64(yl, yk);
            const uint64x2_t ys = vcltq_f64(yl, yk);
            c.concordant += count2(vorrq_u64(vandq_u64(xg, yg), vandq_u64(xs, ys)));
            c.discordant += count2(vorrq_u64(vandq_u64(xg, ys), vandq_u64(xs, yg)));
        }
        for (; l < n; ++l) {
            const double dx = x[l] - x[k];
            const double dy = y[l] - y[k];
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
    float64x2_t acc = vdupq_n_f64(0.0);
    const std::size_t n = v.size();
    const std::size_t n2 = n & ~std::size_t{1};
    std::size_t i = 0;
    for (; i < n2; i += 2) acc = vaddq_f64(acc, vld1q_f64(v.data() + i));
    double s = hsum2(acc);
    for (; i < n; ++i) s += v[i];
    return s;
}

double sum_sq_dev(std::span<const double> v, double mean) {
    const float64x2_t mv = vdupq_n_f64(mean);
    float64x2_t acc = vdupq_n_f64(0.0);
    const std::size_t n = v.size();
    const std::size_t n2 = n & ~std::size_t{1};
    std::size_t i = 0;
    for (; i < n2; i += 2) {
        const float64x2_t d = vsubq_f64(vld1q_f64(v.data() + i), mv);
        acc = vfmaq_f64(acc, d, d);
    }
    double s = hsum2(acc);
    for (; i < n; ++i) {
        const double d = v[i] - mean;
        s += d * d;
    }
    return s;
}

double sum_sq_succ_diff(std::span<const double> v) {
    const std::size_t n = v.size();
    if (n < 2) return 0.0;
    const std::size_t m = n - 1;
    const std::size_t m2 = m & ~std::size_t{1};
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i < m2; i += 2) {
        const float64x2_t d = vsubq_f64(vld1q_f64(v.data() + i + 1), vld1q_f64(v.data() + i));
        acc = vfmaq_f64(acc, d, d);
    }
    double s = hsum2(acc);
    for (; i < m; ++i) {
        const double d = v[i + 1] - v[i];
        s += d * d;
    }
    return s;
}

}  // namespace spintrend::kernels::neon

#endif  // aarch64
