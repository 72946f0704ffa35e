#pragma once

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <vector>

#include "moeaad/core.hpp"
#include "moeaad/scalarizing.hpp"
#include "moeaad/weights.hpp"

namespace moeaad {

// Mutual preferences between the N subproblems (one per weight vector, the
// "d side") and the N solutions of the convergence population (the "c side").
// pref_d[i] lists c indexes in ascending order of the subproblem-i aggregation
// cost of that solution; pref_c[j] lists subproblem indexes in ascending order
// of the solution's perpendicular distance to that weight ray.  Ties break
// toward the lower index, so every list is a strict order.
struct PreferenceProfile {
    std::vector<std::vector<int>> pref_d;
    std::vector<std::vector<int>> pref_c;
};

// M[i] = index in the convergence population matched with subproblem i.
// R[i] = 1 when the pair formed in the first (locality-restricted) matching
// level, 0 when it formed in the second (unrestricted) level.
struct MatchResult {
    std::vector<int> M;
    std::vector<int> R;
};

inline PreferenceProfile build_preferences(const std::vector<Solution>& sc,
                                           const WeightSet& ws,
                                           const ReferencePoints& refs,
                                           const ScalarizingParams& params) {
    const int n = static_cast<int>(sc.size());
    if (n != static_cast<int>(ws.vectors.size())) {
        throw std::invalid_argument("build_preferences: population/weight size mismatch");
    }
    const int m = static_cast<int>(refs.ideal.size());
    const ObjectiveVector origin(m, 0.0);

    std::vector<std::vector<double>> val_d(n, std::vector<double>(n));
    std::vector<std::vector<double>> val_c(n, std::vector<double>(n));
    for (int j = 0; j < n; ++j) {
        const ObjectiveVector fbar = normalize(sc[j].f, refs);
        for (int i = 0; i < n; ++i) {
            const auto [d1, d2] = d1_d2(fbar, ws.vectors[i], origin);
            val_d[i][j] = d1 + params.theta * d2;
            val_c[j][i] = d2;
        }
    }

    PreferenceProfile prof;
    prof.pref_d.resize(n);
    prof.pref_c.resize(n);
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) {
        for (int t = 0; t < n; ++t) idx[t] = t;
        std::sort(idx.begin(), idx.end(), [&](int a, int b) {
            if (val_d[i][a] != val_d[i][b]) return val_d[i][a] < val_d[i][b];
            return a < b;
        });
        prof.pref_d[i] = idx;
    }
    for (int j = 0; j < n; ++j) {
        for (int t = 0; t < n; ++t) idx[t] = t;
        std::sort(idx.begin(), idx.end(), [&](int a, int b) {
            if (val_c[j][a] != val_c[j][b]) return val_c[j][a] < val_c[j][b];
            return a < b;
        });
        prof.pref_c[j] = idx;
    }
    return prof;
}

// Deferred-acceptance matching in two rounds.  Round one restricts both
// sides to their level1_len most preferred partners and requires mutual
// acceptability, so only nearby pairs form; round two matches everyone left
// over using the complete lists.  Subproblems propose in both rounds.
inline MatchResult two_level_match(const PreferenceProfile& prof, int level1_len) {
    const int n = static_cast<int>(prof.pref_d.size());
    const int L = std::min(level1_len, n);
    MatchResult res;
    res.M.assign(n, -1);
    res.R.assign(n, 0);
    if (n == 0) return res;

    std::vector<std::vector<int>> rank_c(n, std::vector<int>(n));
    for (int j = 0; j < n; ++j) {
        for (int pos = 0; pos < n; ++pos) rank_c[j][prof.pref_c[j][pos]] = pos;
    }

    // round one: truncated lists
    std::vector<int> partner_c(n, -1);
    std::vector<int> next_prop(n, 0);
    std::deque<int> free_d;
    for (int i = 0; i < n; ++i) free_d.push_back(i);
    while (!free_d.empty()) {
        const int i = free_d.front();
        free_d.pop_front();
        while (next_prop[i] < L) {
            const int j = prof.pref_d[i][next_prop[i]++];
            if (rank_c[j][i] >= L) continue;  // i is not acceptable to j here
            if (partner_c[j] < 0) {
                partner_c[j] = i;
                break;
            }
            if (rank_c[j][i] < rank_c[j][partner_c[j]]) {
                free_d.push_back(partner_c[j]);
                partner_c[j] = i;
                break;
            }
        }
    }
    std::vector<char> c_taken(n, 0);
    for (int j = 0; j < n; ++j) {
        if (partner_c[j] >= 0) {
            res.M[partner_c[j]] = j;
            res.R[partner_c[j]] = 1;
            c_taken[j] = 1;
        }
    }

    // round two: complete lists over the leftovers
    std::vector<int> partner2_c(n, -1);
    std::fill(next_prop.begin(), next_prop.end(), 0);
    for (int i = 0; i < n; ++i) {
        if (res.M[i] < 0) free_d.push_back(i);
    }
    while (!free_d.empty()) {
        const int i = free_d.front();
        free_d.pop_front();
        while (next_prop[i] < n) {
            const int j = prof.pref_d[i][next_prop[i]++];
            if (c_taken[j]) continue;
            if (partner2_c[j] < 0) {
                partner2_c[j] = i;
                break;
            }
            if (rank_c[j][i] < rank_c[j][partner2_c[j]]) {
                free_d.push_back(partner2_c[j]);
                partner2_c[j] = i;
                break;
            }
        }
    }
    for (int j = 0; j < n; ++j) {
        if (partner2_c[j] >= 0) res.M[partner2_c[j]] = j;
    }
    return res;
}

}  // namespace moeaad
