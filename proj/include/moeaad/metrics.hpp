#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "moeaad/core.hpp"
#include "moeaad/rng.hpp"

namespace moeaad {

namespace detail {

using PointList = std::vector<ObjectiveVector>;

inline double inclhv(const ObjectiveVector& p, const ObjectiveVector& ref) {
    double v = 1.0;
    for (std::size_t j = 0; j < p.size(); ++j) v *= ref[j] - p[j];
    return v;
}

// keep only minimal points; duplicates collapse to the first occurrence
inline PointList nds_filter(const PointList& ps) {
    PointList out;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        bool removed = false;
        for (std::size_t j = 0; j < ps.size() && !removed; ++j) {
            if (j == i) continue;
            bool le = true, strict = false;
            for (std::size_t k = 0; k < ps[i].size(); ++k) {
                if (ps[j][k] > ps[i][k]) {
                    le = false;
                    break;
                }
                if (ps[j][k] < ps[i][k]) strict = true;
            }
            if (le && (strict || j < i)) removed = true;
        }
        if (!removed) out.push_back(ps[i]);
    }
    return out;
}

// staircase sweep for two objectives
inline double hv2d(PointList ps, const ObjectiveVector& ref) {
    std::sort(ps.begin(), ps.end());
    double hv = 0.0;
    double last_y = ref[1];
    for (const ObjectiveVector& p : ps) {
        if (p[1] < last_y) {
            hv += (ref[0] - p[0]) * (last_y - p[1]);
            last_y = p[1];
        }
    }
    return hv;
}

inline double wfg_hv(PointList ps, const ObjectiveVector& ref);

// volume dominated by ps[i] alone, beyond what later points cover
inline double exclhv(const PointList& ps, std::size_t i, const ObjectiveVector& ref) {
    PointList limited;
    limited.reserve(ps.size() - i - 1);
    for (std::size_t j = i + 1; j < ps.size(); ++j) {
        ObjectiveVector q(ps[i].size());
        for (std::size_t k = 0; k < q.size(); ++k) q[k] = std::max(ps[i][k], ps[j][k]);
        limited.push_back(std::move(q));
    }
    return inclhv(ps[i], ref) - wfg_hv(nds_filter(limited), ref);
}

inline double wfg_hv(PointList ps, const ObjectiveVector& ref) {
    if (ps.empty()) return 0.0;
    if (ref.size() == 1) {
        double mn = ps[0][0];
        for (const ObjectiveVector& p : ps) mn = std::min(mn, p[0]);
        return ref[0] - mn;
    }
    if (ref.size() == 2) return hv2d(std::move(ps), ref);
    std::sort(ps.begin(), ps.end(), [](const ObjectiveVector& a, const ObjectiveVector& b) {
        if (a.back() != b.back()) return a.back() < b.back();
        return a < b;
    });
    double total = 0.0;
    for (std::size_t i = 0; i < ps.size(); ++i) total += exclhv(ps, i, ref);
    return total;
}

// drop points with any component at or beyond the reference
inline PointList inside_reference(const PointList& points, const ObjectiveVector& ref) {
    PointList kept;
    for (const ObjectiveVector& p : points) {
        if (p.size() != ref.size()) {
            throw std::invalid_argument("hypervolume: point/reference dimension mismatch");
        }
        bool inside = true;
        for (std::size_t j = 0; j < p.size(); ++j) {
            if (p[j] >= ref[j]) {
                inside = false;
                break;
            }
        }
        if (inside) kept.push_back(p);
    }
    return kept;
}

}  // namespace detail

// Exact hypervolume (minimization) by recursive exclusive-volume slicing.
// Cost grows steeply with dimension; capped at 10 objectives.
inline double hv_exact(const std::vector<ObjectiveVector>& points, const ObjectiveVector& ref) {
    if (ref.size() > 10) {
        throw std::invalid_argument(
            "hv_exact: more than 10 objectives; use hv_monte_carlo instead");
    }
    detail::PointList kept = detail::inside_reference(points, ref);
    return detail::wfg_hv(detail::nds_filter(kept), ref);
}

// Hypervolume estimate from uniform samples in the box spanned by the
// componentwise minimum of the points and the reference point.
inline double hv_monte_carlo(const std::vector<ObjectiveVector>& points,
                             const ObjectiveVector& ref, long long samples,
                             std::uint64_t seed) {
    if (samples < 1) throw std::invalid_argument("hv_monte_carlo: samples must be >= 1");
    detail::PointList kept = detail::inside_reference(points, ref);
    if (kept.empty()) return 0.0;
    kept = detail::nds_filter(kept);
    const std::size_t m = ref.size();
    ObjectiveVector lo(m);
    for (std::size_t j = 0; j < m; ++j) {
        lo[j] = kept[0][j];
        for (const ObjectiveVector& p : kept) lo[j] = std::min(lo[j], p[j]);
    }
    double volume = 1.0;
    for (std::size_t j = 0; j < m; ++j) volume *= ref[j] - lo[j];
    if (volume <= 0.0) return 0.0;

    Rng rng(seed);
    ObjectiveVector s(m);
    long long hits = 0;
    for (long long it = 0; it < samples; ++it) {
        for (std::size_t j = 0; j < m; ++j) s[j] = lo[j] + rng.uniform() * (ref[j] - lo[j]);
        for (const ObjectiveVector& p : kept) {
            bool dom = true;
            for (std::size_t j = 0; j < m; ++j) {
                if (p[j] > s[j]) {
                    dom = false;
                    break;
                }
            }
            if (dom) {
                ++hits;
                break;
            }
        }
    }
    return volume * static_cast<double>(hits) / static_cast<double>(samples);
}

// wins[j][i] = algorithm j beat algorithm i with significance on this
// instance; the score of i counts how many j beat it (lower is better).
inline std::vector<int> performance_score(const std::vector<std::vector<char>>& wins) {
    const std::size_t k = wins.size();
    std::vector<int> score(k, 0);
    for (std::size_t j = 0; j < k; ++j) {
        if (wins[j].size() != k) {
            throw std::invalid_argument("performance_score: matrix must be square");
        }
        for (std::size_t i = 0; i < k; ++i) {
            if (wins[j][i]) ++score[i];
        }
    }
    return score;
}

}  // namespace moeaad
