#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <bit>

#include "spintrend/kernels.hpp"

namespace spintrend::kernels::avx2 {

bool supported() { return __builtin_cpu_supports("avx2"); }

namespace {

inline int mask4(__m256d cmp) { return _mm256_movemask_pd(cmp); }

inline double hsum4(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

CrossPairCount cross_pair_count(std::span<const double> lo, std::span<const double> hi) {
    CrossPairCount c;
    const std::size_t nb = hi.size();
    const std::size_t nb4 = nb & ~std::size_t{3};
    for (const double a : lo) {
        const __m256d av = _mm256_set1_pd(a);
        std::size_t j = 0;
        for (; j < nb4; j += 4) {
            const __m256d bv = _mm256_loadu_pd(hi.data() + j);
            c.greater += std::popcount(static_cast<unsigned>(mask4(_mm256_cmp_pd(bv, av, _CMP_GT_OQ))));
            c.equal += std::popcount(static_cast<unsigned>(mask4(_mm256_cmp_pd(bv, av, _CMP_EQ_OQ))));
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
        const __m256d xk = _mm256_set1_pd(x[k]);
        const __m256d yk = _mm256_set1_pd(y[k]);
        std::size_t l = k + 1;
        const std::size_t rem = (n - l) & 3;
        const std::size_t n4 = n - rem;
        for (; l < n4; l += 4) {
            const __m256d xl = _mm256_loadu_pd(x.data() + l);
            const __m256d yl = _mm256_loadu_pd(y.data() + l);
            const __m256d xg = _mm256_cmp_pd(xl, xk, _CMP_GT_OQ);
            const __m256d xs = _mm256_cmp_pd(xl, xk, _CMP_LT_OQ);
            const __m256d yg = _mm256_cmp_pd(yl, yk, _CMP_GT_OQ);
            const __m256d ys = _mm256_cmp_pd(yl, yk, _CMP_LT_OQ);
            const __m256d con = _mm256_or_pd(_mm256_and_pd(xg, yg), _mm256_and_pd(xs, ys));
            const __m256d dis = _mm256_or_pd(_mm256_and_pd(xg, ys), _mm256_and_pd(xs, yg));
            c.concordant += std::popcount(static_cast<unsigned>(mask4(con)));
            c.discordant += std::popcount(static_cast<unsigned>(mask4(dis)));
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
    __m256d acc = _mm256_setzero_pd();
    const std::size_t n = v.size();
    const std::size_t n4 = n & ~std::size_t{3};
    std::size_t i = 0;
    for (; i < n4; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(v.data() + i));
    double s = hsum4(acc);
    for (; i < n; ++i) s += v[i];
    return s;
}

double sum_sq_dev(std::span<const double> v, double mean) {
    const __m256d mv = _mm256_set1_pd(mean);
    __m256d acc = _mm256_setzero_pd();
    const std::size_t n = v.size();
    const std::size_t n4 = n & ~std::size_t{3};
    std::size_t i = 0;
    for (; i < n4; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(v.data() + i), mv);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
    }
    double s = hsum4(acc);
    for (; i < n; ++i) {
        const double d = v[i] - mean;
        s += d * d;
    }
    return s;
}

double sum_sq_succ_diff(std::span<const double> v) {
    const std::size_t n = v.size();
    if (n < 2) return 0.0;
    const std::size_t m = n - 1;  // number of successive differences
    const std::size_t m4 = m & ~std::size_t{3};
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i < m4; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(v.data() + i + 1), _mm256_loadu_pd(v.data() + i));
        acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
    }
    double s = hsum4(acc);
    for (; i < m; ++i) {
        const double d = v[i + 1] - v[i];
        s += d * d;
    }
    return s;
}

}  // namespace spintrend::kernels::avx2

#endif  // x86_64
