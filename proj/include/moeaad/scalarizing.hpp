#pragma once

#include <cmath>
#include <limits>
#include <utility>

#include "moeaad/core.hpp"

namespace moeaad {

// Weight vectors live on the unit simplex; generation clamps components to
// >= 1e-6 before renormalizing so every division below is safe.
using WeightVector = std::vector<double>;

struct ScalarizingParams {
    double theta = 5.0;        // PBI penalty
    double alpha = 1e-6;       // augmentation coefficient of the nadir-anchored ASF
    double theta_ipbi = 0.1;   // inverted-PBI penalty
};

// Weighted Chebyshev value: max_i |f_i - z_i| / w_i.
inline double tch(const ObjectiveVector& f, const WeightVector& w, const ObjectiveVector& z) {
    double best = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        best = std::max(best, std::abs(f[i] - z[i]) / w[i]);
    }
    return best;
}

// Projection length d1 along the ray through z with direction w, and the
// perpendicular distance d2 from that line.  d2 does not depend on the sign
// of w, so the same helper serves rays anchored at the origin, the all-ones
// point, or the nadir.
inline std::pair<double, double> d1_d2(const ObjectiveVector& y, const WeightVector& w,
                                       const ObjectiveVector& z) {
    double dot = 0.0, wnorm2 = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        dot += (y[i] - z[i]) * w[i];
        wnorm2 += w[i] * w[i];
    }
    const double wnorm = std::sqrt(wnorm2);
    const double d1 = std::abs(dot) / wnorm;
    // distance from y to z + (dot/|w|^2) w  (the orthogonal projection)
    double d2sq = 0.0;
    const double scale = dot / wnorm2;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double diff = y[i] - (z[i] + scale * w[i]);
        d2sq += diff * diff;
    }
    return {d1, std::sqrt(std::max(d2sq, 0.0))};
}

// Raw-space PBI with an explicit reference point: d1 + theta * d2.
inline double pbi(const ObjectiveVector& f, const WeightVector& w, const ObjectiveVector& z,
                  double theta) {
    auto [d1, d2] = d1_d2(f, w, z);
    return d1 + theta * d2;
}

// Diversity-population criterion: PBI of the normalized objectives against
// the origin (the ideal image).
inline double pbi_diversity(const ObjectiveVector& f_bar, const WeightVector& w,
                            const ScalarizingParams& params) {
    ObjectiveVector zero(f_bar.size(), 0.0);
    return pbi(f_bar, w, zero, params.theta);
}

// Raw-space augmented ASF anchored at a reference point z (normally the
// nadir): max_i (f_i - z_i)/w_i + alpha * sum_i (f_i - z_i)/w_i.
inline double maasf(const ObjectiveVector& f, const WeightVector& w, const ObjectiveVector& z,
                    double alpha) {
    double best = -std::numeric_limits<double>::infinity();
    double sum = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double v = (f[i] - z[i]) / w[i];
        best = std::max(best, v);
        sum += v;
    }
    return best + alpha * sum;
}

// Convergence-population criterion: augmented ASF of the normalized
// objectives against the all-ones point (the nadir image).  Negative values
// mean the solution has pushed past the nadir image.
inline double maasf_convergence(const ObjectiveVector& f_bar, const WeightVector& w,
                                const ScalarizingParams& params) {
    ObjectiveVector ones(f_bar.size(), 1.0);
    return maasf(f_bar, w, ones, params.alpha);
}

// Inverted PBI folded to minimization: the underlying criterion maximizes
// d1' - theta * d2' measured from the all-ones point along -w, so we return
// its negation.  d2 is direction-sign invariant, d1 uses |dot| and is too.
inline double ipbi(const ObjectiveVector& f_bar, const WeightVector& w,
                   const ScalarizingParams& params) {
    ObjectiveVector ones(f_bar.size(), 1.0);
    auto [d1, d2] = d1_d2(f_bar, w, ones);
    return -(d1 - params.theta_ipbi * d2);
}

}  // namespace moeaad
