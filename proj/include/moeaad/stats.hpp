#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace moeaad {

struct WilcoxonResult {
    double p_value = 1.0;
    bool a_better = false;
    bool b_better = false;
    bool small_n = false;  // below the comfortable range of the normal approximation
    double rank_sum_a = 0.0;
};

namespace detail {

inline double normal_sf(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

inline double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return (n % 2 == 1) ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// midranks of the pooled sample plus the tie-correction term sum(t^3 - t)
inline void midranks(const std::vector<double>& pooled, std::vector<double>& ranks,
                     double& tie_term) {
    const std::size_t n = pooled.size();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return pooled[a] < pooled[b]; });
    ranks.assign(n, 0.0);
    tie_term = 0.0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && pooled[order[j + 1]] == pooled[order[i]]) ++j;
        const double avg = 0.5 * static_cast<double>(i + j) + 1.0;  // 1-based midrank
        for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = avg;
        const double ties = static_cast<double>(j - i + 1);
        tie_term += ties * ties * ties - ties;
        i = j + 1;
    }
}

}  // namespace detail

// Two-sided rank-sum test by normal approximation with midrank ties,
// tie-corrected variance and continuity correction.  "Better" couples the
// significance decision with a larger sample median (values are
// larger-is-better scores such as hypervolume).
inline WilcoxonResult wilcoxon_rank_sum(const std::vector<double>& a,
                                        const std::vector<double>& b, double alpha = 0.05) {
    const std::size_t na = a.size(), nb = b.size();
    if (na < 2 || nb < 2) {
        throw std::invalid_argument("wilcoxon_rank_sum: need at least 2 values per sample");
    }
    for (double v : a) {
        if (!std::isfinite(v)) throw std::invalid_argument("wilcoxon_rank_sum: non-finite value");
    }
    for (double v : b) {
        if (!std::isfinite(v)) throw std::invalid_argument("wilcoxon_rank_sum: non-finite value");
    }
    std::vector<double> pooled(a);
    pooled.insert(pooled.end(), b.begin(), b.end());
    std::vector<double> ranks;
    double tie_term = 0.0;
    detail::midranks(pooled, ranks, tie_term);
    const double n = static_cast<double>(na + nb);

    WilcoxonResult res;
    res.small_n = std::min(na, nb) < 10;
    for (std::size_t i = 0; i < na; ++i) res.rank_sum_a += ranks[i];

    const double mean = static_cast<double>(na) * (n + 1.0) / 2.0;
    const double var = static_cast<double>(na) * static_cast<double>(nb) / 12.0 *
                       ((n + 1.0) - tie_term / (n * (n - 1.0)));
    if (var <= 0.0) {
        res.p_value = 1.0;
        return res;
    }
    const double d = res.rank_sum_a - mean;
    const double cc = (d > 0.0) ? 0.5 : (d < 0.0 ? -0.5 : 0.0);
    const double z = (d - cc) / std::sqrt(var);
    res.p_value = std::min(1.0, 2.0 * detail::normal_sf(std::abs(z)));

    const double med_a = detail::median_of(a);
    const double med_b = detail::median_of(b);
    if (res.p_value < alpha) {
        res.a_better = med_a > med_b;
        res.b_better = med_b > med_a;
    }
    return res;
}

// Exact two-sided p-value by full enumeration of rank-label assignments,
// keeping the observed midranks fixed.  Intended for small samples; the
// subset count explodes combinatorially, so the pooled size is capped.
inline double wilcoxon_exact_p(const std::vector<double>& a, const std::vector<double>& b) {
    const std::size_t na = a.size(), nb = b.size();
    const std::size_t n = na + nb;
    if (na < 1 || nb < 1) throw std::invalid_argument("wilcoxon_exact_p: empty sample");
    if (n > 24) throw std::invalid_argument("wilcoxon_exact_p: pooled size capped at 24");
    std::vector<double> pooled(a);
    pooled.insert(pooled.end(), b.begin(), b.end());
    std::vector<double> ranks;
    double tie_term = 0.0;
    detail::midranks(pooled, ranks, tie_term);
    double w_obs = 0.0;
    for (std::size_t i = 0; i < na; ++i) w_obs += ranks[i];

    long long total = 0, le = 0, ge = 0;
    const double eps = 1e-9;
    std::vector<std::size_t> pick(na);
    // iterate over all combinations of na indices out of n
    for (std::size_t i = 0; i < na; ++i) pick[i] = i;
    while (true) {
        double w = 0.0;
        for (std::size_t i : pick) w += ranks[i];
        ++total;
        if (w <= w_obs + eps) ++le;
        if (w >= w_obs - eps) ++ge;
        // next combination
        bool advanced = false;
        for (std::size_t i = na; i-- > 0;) {
            if (pick[i] < n - na + i) {
                ++pick[i];
                for (std::size_t j = i + 1; j < na; ++j) pick[j] = pick[j - 1] + 1;
                advanced = true;
                break;
            }
        }
        if (!advanced) {
            const double p_le = static_cast<double>(le) / static_cast<double>(total);
            const double p_ge = static_cast<double>(ge) / static_cast<double>(total);
            return std::min(1.0, 2.0 * std::min(p_le, p_ge));
        }
    }
}

}  // namespace moeaad
