#include "spintrend/kernels.hpp"

#include <stdexcept>

namespace spintrend::kernels {

namespace {

struct Vtable {
    Backend backend;
    CrossPairCount (*cross_pair_count)(std::span<const double>, std::span<const double>);
    ConcordanceCount (*concordance_count)(std::span<const double>, std::span<const double>);
    double (*sum)(std::span<const double>);
    double (*sum_sq_dev)(std::span<const double>, double);
    double (*sum_sq_succ_diff)(std::span<const double>);
};

constexpr Vtable kScalar{Backend::scalar,
                         &scalar::cross_pair_count,
                         &scalar::concordance_count,
                         &scalar::sum,
                         &scalar::sum_sq_dev,
                         &scalar::sum_sq_succ_diff};

#if defined(__x86_64__) || defined(_M_X64)
constexpr Vtable kAvx2{Backend::avx2,
                       &avx2::cross_pair_count,
                       &avx2::concordance_count,
                       &avx2::sum,
                       &avx2::sum_sq_dev,
                       &avx2::sum_sq_succ_diff};
#endif
#if defined(__aarch64__)
constexpr Vtable kNeon{Backend::neon,
                       &neon::cross_pair_count,
                       &neon::concordance_count,
                       &neon::sum,
                       &neon::sum_sq_dev,
                       &neon::sum_sq_succ_diff};
#endif

const Vtable* detect() {
#if defined(__x86_64__) || defined(_M_X64)
    if (avx2::supported()) return &kAvx2;
#endif
#if defined(__aarch64__)
    if (neon::supported()) return &kNeon;
#endif
    return &kScalar;
}

const Vtable* g_active = nullptr;

const Vtable* active() {
    if (!g_active) g_active = detect();
    return g_active;
}

}  // namespace

Backend active_backend() { return active()->backend; }

const char* backend_name() {
    switch (active()->backend) {
        case Backend::avx2: return "avx2";
        case Backend::neon: return "neon";
        default: return "scalar";
    }
}

void force_backend(Backend b) {
    switch (b) {
        case Backend::scalar:
            g_active = &kScalar;
            return;
        case Backend::avx2:
#if defined(__x86_64__) || defined(_M_X64)
            if (avx2::supported()) {
                g_active = &kAvx2;
                return;
            }
#endif
            break;
        case Backend::neon:
#if defined(__aarch64__)
            if (neon::supported()) {
                g_active = &kNeon;
                return;
            }
#endif
            break;
    }
    throw std::invalid_argument("kernel backend not available on this machine");
}

void reset_backend() { g_active = nullptr; }

CrossPairCount cross_pair_count(std::span<const double> lo, std::span<const double> hi) {
    return active()->cross_pair_count(lo, hi);
}

ConcordanceCount concordance_count(std::span<const double> x, std::span<const double> y) {
    return active()->concordance_count(x, y);
}

double sum(std::span<const double> v) { return active()->sum(v); }

double sum_sq_dev(std::span<const double> v, double mean) { return active()->sum_sq_dev(v, mean); }

double sum_sq_succ_diff(std::span<const double> v) { return active()->sum_sq_succ_diff(v); }

}  // namespace spintrend::kernels
