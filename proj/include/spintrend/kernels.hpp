#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

// Data-parallel inner loops behind the rank statistics. Each operation has a
// scalar reference implementation and, where the target supports it, an AVX2
// or NEON variant picked once at runtime. The counting kernels are exact
// (comparisons only), so every backend returns identical counts; the float
// reductions may differ in the last ulps due to lane-wise accumulation.
//
// Inputs are assumed finite; NaN handling is the caller's job.

namespace spintrend::kernels {

// Counts of hi[j] > lo[i] and hi[j] == lo[i] over all cross pairs (i, j).
struct CrossPairCount {
    std::uint64_t greater = 0;
    std::uint64_t equal = 0;
};

// Counts over all index pairs k < l of sign agreements between x and y.
// Pairs tied in either coordinate land in neither bucket.
struct ConcordanceCount {
    std::uint64_t concordant = 0;
    std::uint64_t discordant = 0;
};

enum class Backend { scalar, avx2, neon };

Backend active_backend();
const char* backend_name();

// Test/benchmark hook; throws std::invalid_argument if the backend is not
// available on this machine.
void force_backend(Backend b);
void reset_backend();

CrossPairCount cross_pair_count(std::span<const double> lo, std::span<const double> hi);
ConcordanceCount concordance_count(std::span<const double> x, std::span<const double> y);
double sum(std::span<const double> v);
double sum_sq_dev(std::span<const double> v, double mean);
double sum_sq_succ_diff(std::span<const double> v);

namespace scalar {
CrossPairCount cross_pair_count(std::span<const double> lo, std::span<const double> hi);
ConcordanceCount concordance_count(std::span<const double> x, std::span<const double> y);
double sum(std::span<const double> v);
double sum_sq_dev(std::span<const double> v, double mean);
double sum_sq_succ_diff(std::span<const double> v);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
bool supported();
CrossPairCount cross_pair_count(std::span<const double> lo, std::span<const double> hi);
ConcordanceCount concordance_count(std::span<const double> x, std::span<const double> y);
double sum(std::span<const double> v);
double sum_sq_dev(std::span<const double> v, double mean);
double sum_sq_succ_diff(std::span<const double> v);
}  // namespace avx2
#endif

#if defined(__aarch64__)
namespace neon {
bool supported();
CrossPairCount cross_pair_count(std::span<const double> lo, std::span<const double> hi);
ConcordanceCount concordance_count(std::span<const double> x, std::span<const double> y);
double sum(std::span<const double> v);
double sum_sq_dev(std::span<const double> v, double mean);
double sum_sq_succ_diff(std::span<const double> v);
}  // namespace neon
#endif

}  // namespace spintrend::kernels
