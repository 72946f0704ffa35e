#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>

#include "moeaad/scalarizing.hpp"

namespace moeaad {

inline constexpr double kMinWeight = 1e-6;

struct WeightSet {
    std::vector<WeightVector> vectors;
    // generation metadata
    int h1 = 0;
    int h2 = 0;
    double tau = 0.5;
    bool centroid_added = false;
};

// T nearest weight vectors per row (Euclidean), self first, ties by index.
struct Neighborhood {
    std::vector<std::vector<int>> B;
};

namespace detail {

// Emit all m-part compositions of h in ascending order of the first
// component, recursively (matches the documented enumeration order).
inline void compositions(int m, int h, std::vector<int>& parts,
                         const std::function<void(const std::vector<int>&)>& emit) {
    if (m == 1) {
        parts.push_back(h);
        emit(parts);
        parts.pop_back();
        return;
    }
    for (int v = 0; v <= h; ++v) {
        parts.push_back(v);
        compositions(m - 1, h - v, parts, emit);
        parts.pop_back();
    }
}

inline void clamp_and_renormalize(WeightVector& w) {
    for (double& v : w) v = std::max(v, kMinWeight);
    const double s = std::accumulate(w.begin(), w.end(), 0.0);
    for (double& v : w) v /= s;
}

}  // namespace detail

// Two-layer simplex-lattice weight generation.  Outer layer: compositions of
// h1 on the simplex.  Inner layer (h2 > 0): compositions of h2 shrunk toward
// the centroid by w' = tau*w + (1-tau)/m.  Optional centroid appended unless
// already present.  All components clamped to >= 1e-6, then renormalized.
inline WeightSet generate_weights(int m, int h1, int h2, double tau, bool add_centroid) {
    if (m < 2) throw std::invalid_argument("generate_weights: m must be >= 2");
    if (h1 < 1) throw std::invalid_argument("generate_weights: h1 must be >= 1");
    WeightSet ws;
    ws.h1 = h1;
    ws.h2 = h2;
    ws.tau = tau;
    ws.centroid_added = false;

    std::vector<int> parts;
    detail::compositions(m, h1, parts, [&](const std::vector<int>& p) {
        WeightVector w(m);
        for (int i = 0; i < m; ++i) w[i] = static_cast<double>(p[i]) / h1;
        ws.vectors.push_back(std::move(w));
    });
    if (h2 > 0) {
        detail::compositions(m, h2, parts, [&](const std::vector<int>& p) {
            WeightVector w(m);
            for (int i = 0; i < m; ++i) {
                w[i] = tau * (static_cast<double>(p[i]) / h2) + (1.0 - tau) / m;
            }
            ws.vectors.push_back(std::move(w));
        });
    }
    if (add_centroid) {
        WeightVector c(m, 1.0 / m);
        const bool present = std::any_of(ws.vectors.begin(), ws.vectors.end(),
                                         [&](const WeightVector& w) {
                                             for (int i = 0; i < m; ++i) {
                                                 if (std::abs(w[i] - c[i]) > 1e-12) return false;
                                             }
                                             return true;
                                         });
        if (!present) {
            ws.vectors.push_back(std::move(c));
            ws.centroid_added = true;
        }
    }
    for (auto& w : ws.vectors) detail::clamp_and_renormalize(w);
    return ws;
}

// The published population sizes per objective count, with the two-layer
// settings that produce them.
struct LayerParams {
    int h1;
    int h2;
    bool centroid;
};

inline LayerParams layer_params_for(int m) {
    switch (m) {
        case 3: return {12, 0, false};   // 91
        case 5: return {6, 0, false};    // 210
        case 8: return {3, 2, true};     // 120 + 36 + 1 = 157
        case 10: return {3, 2, true};    // 220 + 55 + 1 = 276
        case 15: return {2, 1, true};    // 120 + 15 + 1 = 136
        default:
            throw std::invalid_argument("layer_params_for: no standard setting for m=" +
                                        std::to_string(m));
    }
}

inline WeightSet standard_weights(int m) {
    const LayerParams lp = layer_params_for(m);
    return generate_weights(m, lp.h1, lp.h2, 0.5, lp.centroid);
}

inline Neighborhood build_neighborhood(const WeightSet& ws, int T) {
    const int n = static_cast<int>(ws.vectors.size());
    if (T > n) throw std::invalid_argument("build_neighborhood: T exceeds weight count");
    Neighborhood nb;
    nb.B.assign(n, {});
    std::vector<std::pair<double, int>> dist(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double d2 = 0.0;
            for (std::size_t c = 0; c < ws.vectors[i].size(); ++c) {
                const double d = ws.vectors[i][c] - ws.vectors[j][c];
                d2 += d * d;
            }
            dist[j] = {d2, j};
        }
        std::sort(dist.begin(), dist.end());  // ties resolve to the lower index
        nb.B[i].reserve(T);
        for (int t = 0; t < T; ++t) nb.B[i].push_back(dist[t].second);
    }
    return nb;
}

}  // namespace moeaad
