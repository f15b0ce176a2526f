#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace spintrend {

// Paired observations (x_n, y_n) with x already nondecreasing; x is the
// error, y the log-sensitivity in the intended application, but the tests
// only see ranks.
struct RankedSample {
    std::vector<double> x;
    std::vector<double> y;

    std::size_t size() const { return x.size(); }
    void validate() const;
};

// y-observations partitioned into bins that follow the x-order.
struct GroupedSample {
    std::vector<std::vector<double>> groups;
    std::vector<double> upper_edges;  // max x per bin, diagnostic only

    std::size_t total() const;
    void validate() const;
};

enum class Tail { right, left };

struct TrendTestResult {
    std::string test;
    double statistic = 0.0;  // U or tau
    double mean = 0.0;       // under H0
    double variance = 0.0;   // under H0
    double z = 0.0;          // signed
    double jt = 0.0;         // |z|
    double p = 1.0;          // one-tailed at `tail`
    Tail tail = Tail::right;
    double alpha = 0.05;
    bool reject = false;  // p < alpha
    bool monte_carlo_moments = false;
    std::string note;
};

struct PowerPoint {
    double alpha = 0.0;
    double mu_a = 0.0;
    double beta = 0.0;
    double power = 0.0;
};

enum class JtVariant { plain, spacing_weighted, rank_weighted };

enum class CombineMethod { stouffer, liptak, fisher };

struct CombinedResult {
    CombineMethod method = CombineMethod::stouffer;
    double statistic = 0.0;  // Z for stouffer/liptak, chi-squared for fisher
    double p = 1.0;
    double variance = 1.0;  // liptak reports 1/E
    bool clamped = false;   // fisher input p clamped away from 0
};

struct MeanReport {
    std::size_t count = 0;
    double jt_min = 0.0, jt_mean = 0.0, jt_max = 0.0, jt_std = 0.0;
    double p_min = 0.0, p_mean = 0.0, p_max = 0.0, p_std = 0.0;
    double p_of_mean_jt = 0.0;    // upper tail at the mean JT
    double consistency_gap = 0.0; // |p_of_mean_jt - p_mean|, diagnostic only
};

struct JtMoments {
    double mean = 0.0;
    double variance = 0.0;
};

// ---- rank correlation -----------------------------------------------------

// Kendall tau-a: tied pairs contribute zero to the numerator and stay in
// the denominator. Normal approximation with sigma^2 = 2(2N+5)/(9N(N-1)).
TrendTestResult kendall_tau(const RankedSample& sample, Tail tail = Tail::right, double alpha = 0.05);

// First I-1 bins of floor(N/I) observations; the last bin takes the rest.
GroupedSample partition_uniform(const RankedSample& sample, std::size_t bins);

// Jonckheere-Terpstra: U = sum_{i<j} #(Y_j > Y_i) + (1/2) #(Y_j == Y_i),
// standardized by the no-ties moments.
TrendTestResult jt_test(const GroupedSample& groups, Tail tail = Tail::right, double alpha = 0.05);

// Closed-form H0 moments of U for given bin sizes.
JtMoments jt_moments(std::span<const std::size_t> sizes);

// Raw U of a grouped sample (exposed for permutation loops).
double jt_u_statistic(const GroupedSample& groups);
double jt_u_from_pooled(std::span<const double> pooled, std::span<const std::size_t> sizes);

// Weighted U variants. Plain delegates to jt_test; the weighted variants
// standardize with permutation-estimated moments (no closed forms known).
TrendTestResult jt_variant_test(const GroupedSample& groups, JtVariant variant, Tail tail = Tail::right,
                                double alpha = 0.05, std::size_t shuffles = 10000, std::uint64_t seed = 1);

// ---- decision machinery ----------------------------------------------------

// z with one-tailed p(z) == alpha at the given tail.
double critical_value(double alpha, Tail tail);

// Type II error for the shifted alternative: beta = Phi(Z_alpha - mu_a).
PowerPoint power(double alpha, double mu_a);

// Stouffer/Liptak take z-scores; Fisher takes p-values in (0, 1].
CombinedResult combine(std::span<const double> values, CombineMethod method);

// Min/mean/max/std of JT and p across experiments, plus the heuristic
// check that p(mean JT) tracks mean p.
MeanReport mean_report(std::span<const TrendTestResult> results);

// ---- independence diagnostics ----------------------------------------------

// Pairwise two-sample sup-ECDF distances after removing each bin's mean.
std::vector<std::vector<double>> ecdf_consistency(const GroupedSample& groups);

// VN = delta^2 / s^2 with delta^2 = (1/(N-1)) sum (y_{n+1}-y_n)^2 and the
// biased variance s^2 = (1/N) sum (y - ybar)^2. Near 2 under independence.
double von_neumann(std::span<const double> series);

// Rank variant: ranks (average ranks for ties), optionally after removing
// the least-squares line in n; no 1/(N-1) or 1/N normalization.
double rank_von_neumann(std::span<const double> series, bool detrend);

// Least-squares line removal over the index, exposed for reuse.
std::vector<double> detrend_linear(std::span<const double> series);

// Ascending ranks, ties averaged.
std::vector<double> ranks_with_ties(std::span<const double> v);

// ---- second-level analysis over case studies --------------------------------

struct SectorPoint {
    int spins = 0;
    int out = 0;
    double jt = 0.0;
};

// Sector of the transfer target around the ring: 3 = nearby (angle up to
// 60 degrees), 2 = middle, 1 = nearly antipodal. Contiguous balanced split
// of out in [1, ceil(M/2)] with remainders toward sector 3, which matches
// the published per-M contingency assignments.
int sector_of(int spins, int out);

// JT trend test of sector medians, groups ordered (Y_1, Y_2, Y_3).
TrendTestResult sector_meta_analysis(std::span<const SectorPoint> points, double alpha = 0.05);

}  // namespace spintrend
