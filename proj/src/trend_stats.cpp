#include "spintrend/trend_stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "spintrend/kernels.hpp"
#include "spintrend/normal.hpp"
#include "spintrend/rng.hpp"

namespace spintrend {

namespace {

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

double tail_p(double z, Tail tail) {
    return tail == Tail::right ? normal_upper_tail(z) : normal_lower_tail(z);
}

TrendTestResult standardized(std::string name, double stat, double mean, double variance, Tail tail,
                             double alpha) {
    require(variance > 0.0, "trend test: vanishing null variance");
    TrendTestResult r;
    r.test = std::move(name);
    r.statistic = stat;
    r.mean = mean;
    r.variance = variance;
    r.z = (stat - mean) / std::sqrt(variance);
    r.jt = std::abs(r.z);
    r.tail = tail;
    r.alpha = alpha;
    r.p = tail_p(r.z, tail);
    r.reject = r.p < alpha;  // decision at p == alpha is "accept"
    return r;
}

double sample_mean(std::span<const double> v) { return kernels::sum(v) / static_cast<double>(v.size()); }

}  // namespace

void RankedSample::validate() const {
    require(x.size() == y.size(), "RankedSample: x/y length mismatch");
    require(x.size() >= 2, "RankedSample: need at least two observations");
    for (std::size_t i = 0; i + 1 < x.size(); ++i)
        require(x[i] <= x[i + 1], "RankedSample: x must be nondecreasing");
}

std::size_t GroupedSample::total() const {
    std::size_t n = 0;
    for (const auto& g : groups) n += g.size();
    return n;
}

void GroupedSample::validate() const {
    require(groups.size() >= 2, "GroupedSample: need at least two bins");
    for (const auto& g : groups) require(!g.empty(), "GroupedSample: empty bin");
}

TrendTestResult kendall_tau(const RankedSample& sample, Tail tail, double alpha) {
    sample.validate();
    const auto n = static_cast<double>(sample.size());
    const auto counts = kernels::concordance_count(sample.x, sample.y);
    const double pairs = n * (n - 1.0) / 2.0;
    const double tau =
        (static_cast<double>(counts.concordant) - static_cast<double>(counts.discordant)) / pairs;
    const double variance = 2.0 * (2.0 * n + 5.0) / (9.0 * n * (n - 1.0));
    TrendTestResult r = standardized("kendall-tau", tau, 0.0, variance, tail, alpha);
    if (sample.size() < 10) r.note = "N < 10: normal approximation is unreliable";
    return r;
}

GroupedSample partition_uniform(const RankedSample& sample, std::size_t bins) {
    sample.validate();
    const std::size_t n = sample.size();
    require(bins >= 1 && bins <= n, "partition_uniform: bins must be in [1, N]");

    const std::size_t base = n / bins;
    GroupedSample out;
    out.groups.reserve(bins);
    out.upper_edges.reserve(bins);
    std::size_t pos = 0;
    for (std::size_t i = 0; i < bins; ++i) {
        const std::size_t take = (i + 1 < bins) ? base : n - pos;
        out.groups.emplace_back(sample.y.begin() + static_cast<std::ptrdiff_t>(pos),
                                sample.y.begin() + static_cast<std::ptrdiff_t>(pos + take));
        out.upper_edges.push_back(sample.x[pos + take - 1]);
        pos += take;
    }
    return out;
}

JtMoments jt_moments(std::span<const std::size_t> sizes) {
    double n = 0.0, sum_sq = 0.0, sum_var = 0.0;
    for (const std::size_t s : sizes) {
        const auto ni = static_cast<double>(s);
        n += ni;
        sum_sq += ni * ni;
        sum_var += ni * ni * (2.0 * ni + 3.0);
    }
    JtMoments m;
    m.mean = (n * n - sum_sq) / 4.0;
    m.variance = (n * n * (2.0 * n + 3.0) - sum_var) / 72.0;
    return m;
}

double jt_u_statistic(const GroupedSample& groups) {
    double u = 0.0;
    for (std::size_t i = 0; i + 1 < groups.groups.size(); ++i) {
        for (std::size_t j = i + 1; j < groups.groups.size(); ++j) {
            const auto c = kernels::cross_pair_count(groups.groups[i], groups.groups[j]);
            u += static_cast<double>(c.greater) + 0.5 * static_cast<double>(c.equal);
        }
    }
    return u;
}

double jt_u_from_pooled(std::span<const double> pooled, std::span<const std::size_t> sizes) {
    double u = 0.0;
    std::size_t off_i = 0;
    for (std::size_t i = 0; i + 1 < sizes.size(); ++i) {
        std::size_t off_j = off_i + sizes[i];
        for (std::size_t j = i + 1; j < sizes.size(); ++j) {
            const auto c =
                kernels::cross_pair_count(pooled.subspan(off_i, sizes[i]), pooled.subspan(off_j, sizes[j]));
            u += static_cast<double>(c.greater) + 0.5 * static_cast<double>(c.equal);
            off_j += sizes[j];
        }
        off_i += sizes[i];
    }
    return u;
}

TrendTestResult jt_test(const GroupedSample& groups, Tail tail, double alpha) {
    groups.validate();
    std::vector<std::size_t> sizes;
    sizes.reserve(groups.groups.size());
    for (const auto& g : groups.groups) sizes.push_back(g.size());
    const JtMoments m = jt_moments(sizes);
    return standardized("jonckheere-terpstra", jt_u_statistic(groups), m.mean, m.variance, tail, alpha);
}

namespace {

double weighted_u(const GroupedSample& groups, JtVariant variant) {
    const auto& g = groups.groups;
    if (variant == JtVariant::spacing_weighted) {
        double u = 0.0;
        for (std::size_t i = 0; i + 1 < g.size(); ++i) {
            for (std::size_t j = i + 1; j < g.size(); ++j) {
                const auto c = kernels::cross_pair_count(g[i], g[j]);
                u += static_cast<double>(j - i) *
                     (static_cast<double>(c.greater) + 0.5 * static_cast<double>(c.equal));
            }
        }
        return u;
    }

    // rank_weighted: per-pair weight is the rank difference in the combined
    // data, average ranks for ties.
    std::vector<double> pooled;
    pooled.reserve(groups.total());
    for (const auto& grp : g) pooled.insert(pooled.end(), grp.begin(), grp.end());
    const std::vector<double> rank = ranks_with_ties(pooled);

    std::vector<std::size_t> offsets(g.size());
    std::size_t off = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        offsets[i] = off;
        off += g[i].size();
    }

    double u = 0.0;
    for (std::size_t i = 0; i + 1 < g.size(); ++i) {
        for (std::size_t j = i + 1; j < g.size(); ++j) {
            for (std::size_t k = 0; k < g[i].size(); ++k) {
                for (std::size_t l = 0; l < g[j].size(); ++l) {
                    const double d = g[j][l] - g[i][k];
                    if (d < 0.0) continue;
                    const double phi = d > 0.0 ? 1.0 : 0.5;
                    u += (rank[offsets[j] + l] - rank[offsets[i] + k]) * phi;
                }
            }
        }
    }
    return u;
}

}  // namespace

TrendTestResult jt_variant_test(const GroupedSample& groups, JtVariant variant, Tail tail, double alpha,
                                std::size_t shuffles, std::uint64_t seed) {
    if (variant == JtVariant::plain) return jt_test(groups, tail, alpha);
    groups.validate();
    require(shuffles >= 100, "jt_variant_test: too few shuffles for moment estimation");

    const double u = weighted_u(groups, variant);

    std::vector<double> pooled;
    pooled.reserve(groups.total());
    for (const auto& g : groups.groups) pooled.insert(pooled.end(), g.begin(), g.end());
    std::vector<std::size_t> sizes;
    for (const auto& g : groups.groups) sizes.push_back(g.size());

    Rng rng(seed);
    GroupedSample scratch = groups;
    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t s = 0; s < shuffles; ++s) {
        rng.shuffle(std::span<double>(pooled));
        std::size_t pos = 0;
        for (std::size_t i = 0; i < sizes.size(); ++i) {
            std::copy_n(pooled.begin() + static_cast<std::ptrdiff_t>(pos), sizes[i],
                        scratch.groups[i].begin());
            pos += sizes[i];
        }
        const double us = weighted_u(scratch, variant);
        sum += us;
        sum_sq += us * us;
    }
    const auto ns = static_cast<double>(shuffles);
    const double mean = sum / ns;
    const double variance = (sum_sq - ns * mean * mean) / (ns - 1.0);

    const char* name =
        variant == JtVariant::spacing_weighted ? "jt-spacing-weighted" : "jt-rank-weighted";
    TrendTestResult r = standardized(name, u, mean, variance, tail, alpha);
    r.monte_carlo_moments = true;
    r.note = "moments from " + std::to_string(shuffles) + " permutations";
    return r;
}

double critical_value(double alpha, Tail tail) {
    require(alpha > 0.0 && alpha < 1.0, "critical_value: alpha must be in (0,1)");
    const double z = normal_upper_inverse(alpha);
    return tail == Tail::right ? z : -z;
}

PowerPoint power(double alpha, double mu_a) {
    require(alpha > 0.0 && alpha < 1.0, "power: alpha must be in (0,1)");
    require(mu_a >= 0.0, "power: mu_a must be >= 0");
    PowerPoint pt;
    pt.alpha = alpha;
    pt.mu_a = mu_a;
    const double z_alpha = normal_upper_inverse(alpha);
    pt.beta = normal_lower_tail(z_alpha - mu_a);
    pt.power = 1.0 - pt.beta;
    return pt;
}

CombinedResult combine(std::span<const double> values, CombineMethod method) {
    require(!values.empty(), "combine: need at least one input");
    const auto e = static_cast<double>(values.size());
    CombinedResult r;
    r.method = method;
    switch (method) {
        case CombineMethod::stouffer:
            r.statistic = kernels::sum(values) / std::sqrt(e);
            r.p = normal_upper_tail(r.statistic);
            break;
        case CombineMethod::liptak:
            r.statistic = kernels::sum(values) / e;
            r.variance = 1.0 / e;
            r.p = normal_upper_tail(r.statistic * std::sqrt(e));
            break;
        case CombineMethod::fisher: {
            double x = 0.0;
            for (double p : values) {
                require(p <= 1.0 && p >= 0.0, "combine: fisher needs p in [0,1]");
                if (p < 1e-300) {
                    p = 1e-300;
                    r.clamped = true;
                }
                x += -2.0 * std::log(p);
            }
            r.statistic = x;
            r.p = chi2_even_sf(x, static_cast<int>(values.size()));
            break;
        }
    }
    return r;
}

MeanReport mean_report(std::span<const TrendTestResult> results) {
    require(!results.empty(), "mean_report: need at least one result");
    MeanReport rep;
    rep.count = results.size();
    std::vector<double> jt, p;
    jt.reserve(results.size());
    p.reserve(results.size());
    for (const auto& r : results) {
        jt.push_back(r.jt);
        p.push_back(r.p);
    }
    const auto summarize = [](std::span<const double> v, double& mn, double& mean, double& mx,
                              double& sd) {
        mn = *std::min_element(v.begin(), v.end());
        mx = *std::max_element(v.begin(), v.end());
        mean = sample_mean(v);
        sd = v.size() > 1 ? std::sqrt(kernels::sum_sq_dev(v, mean) / (static_cast<double>(v.size()) - 1.0))
                          : 0.0;
    };
    summarize(jt, rep.jt_min, rep.jt_mean, rep.jt_max, rep.jt_std);
    summarize(p, rep.p_min, rep.p_mean, rep.p_max, rep.p_std);
    rep.p_of_mean_jt = normal_upper_tail(rep.jt_mean);
    rep.consistency_gap = std::abs(rep.p_of_mean_jt - rep.p_mean);
    return rep;
}

namespace {

double ks_distance(const std::vector<double>& a, const std::vector<double>& b) {
    const auto na = static_cast<double>(a.size());
    const auto nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() || j < b.size()) {
        const double t = (j >= b.size() || (i < a.size() && a[i] <= b[j])) ? a[i] : b[j];
        while (i < a.size() && a[i] <= t) ++i;
        while (j < b.size() && b[j] <= t) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

}  // namespace

std::vector<std::vector<double>> ecdf_consistency(const GroupedSample& groups) {
    groups.validate();
    const std::size_t bins = groups.groups.size();

    std::vector<std::vector<double>> centered(bins);
    for (std::size_t i = 0; i < bins; ++i) {
        const double mean = sample_mean(groups.groups[i]);
        centered[i] = groups.groups[i];
        for (double& v : centered[i]) v -= mean;
        std::sort(centered[i].begin(), centered[i].end());
    }

    std::vector<std::vector<double>> dist(bins, std::vector<double>(bins, 0.0));
    for (std::size_t i = 0; i < bins; ++i)
        for (std::size_t j = i + 1; j < bins; ++j)
            dist[i][j] = dist[j][i] = ks_distance(centered[i], centered[j]);
    return dist;
}

double von_neumann(std::span<const double> series) {
    const auto n = static_cast<double>(series.size());
    require(series.size() >= 3, "von_neumann: need at least 3 observations");
    const double mean = sample_mean(series);
    const double s2 = kernels::sum_sq_dev(series, mean) / n;
    require(s2 > 0.0, "von_neumann: series has zero variance");
    const double d2 = kernels::sum_sq_succ_diff(series) / (n - 1.0);
    return d2 / s2;
}

std::vector<double> detrend_linear(std::span<const double> series) {
    const auto n = static_cast<double>(series.size());
    const double tbar = (n - 1.0) / 2.0;  // abscissa 0..N-1
    const double ybar = sample_mean(series);
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < series.size(); ++i) {
        const double dt = static_cast<double>(i) - tbar;
        sxy += dt * (series[i] - ybar);
        sxx += dt * dt;
    }
    const double slope = sxx > 0.0 ? sxy / sxx : 0.0;
    std::vector<double> out(series.size());
    for (std::size_t i = 0; i < series.size(); ++i)
        out[i] = series[i] - (ybar + slope * (static_cast<double>(i) - tbar));
    return out;
}

std::vector<double> ranks_with_ties(std::span<const double> v) {
    const std::size_t n = v.size();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> r(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && v[idx[j + 1]] == v[idx[i]]) ++j;
        const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
        i = j + 1;
    }
    return r;
}

double rank_von_neumann(std::span<const double> series, bool detrend) {
    require(series.size() >= 10, "rank_von_neumann: need at least 10 observations");
    std::vector<double> work;
    if (detrend) {
        work = detrend_linear(series);
    } else {
        work.assign(series.begin(), series.end());
    }
    const std::vector<double> r = ranks_with_ties(work);
    const double rbar = sample_mean(r);
    const double denom = kernels::sum_sq_dev(r, rbar);
    require(denom > 0.0, "rank_von_neumann: constant series");
    return kernels::sum_sq_succ_diff(r) / denom;
}

int sector_of(int spins, int out) {
    require(spins >= 3, "sector_of: need at least 3 spins");
    require(out >= 1 && out <= spins, "sector_of: out of range");
    const int half = (spins + 1) / 2;
    if (out > half) out = spins - out + 2;  // ring reflection symmetry
    const int q = half / 3;
    const int rem = half % 3;
    const int near_size = q + (rem >= 1 ? 1 : 0);   // sector 3, angle up to 60 deg
    const int mid_size = q + (rem >= 2 ? 1 : 0);    // sector 2
    if (out <= near_size) return 3;
    if (out <= near_size + mid_size) return 2;
    return 1;
}

TrendTestResult sector_meta_analysis(std::span<const SectorPoint> points, double alpha) {
    GroupedSample groups;
    groups.groups.assign(3, {});
    for (const auto& pt : points) {
        const int sector = sector_of(pt.spins, pt.out);
        groups.groups[static_cast<std::size_t>(3 - sector)].push_back(pt.jt);  // order Y_1, Y_2, Y_3
    }
    for (const auto& g : groups.groups)
        if (g.empty()) throw std::invalid_argument("sector_meta_analysis: fewer than 3 nonempty sectors");
    TrendTestResult r = jt_test(groups, Tail::right, alpha);
    r.test = "sector-meta-jt";
    return r;
}

}  // namespace spintrend
