#pragma once

#include <algorithm>
#include <cmath>
#include <utility>

#include "moeaad/core.hpp"
#include "moeaad/problems.hpp"
#include "moeaad/rng.hpp"

namespace moeaad {

struct VariationParams {
    double p_c = 1.0;
    double eta_c = 30.0;
    double p_m = 0.0;  // <= 0 means 1/n
    double eta_m = 20.0;
};

// Simulated binary crossover.  Returns both children; each crossed variable
// keeps the parents' mean, children are clamped into the box afterwards.
inline std::pair<DecisionVector, DecisionVector> sbx(const DecisionVector& p1,
                                                     const DecisionVector& p2,
                                                     const std::vector<double>& lower,
                                                     const std::vector<double>& upper,
                                                     double p_c, double eta, Rng& rng) {
    DecisionVector c1 = p1, c2 = p2;
    if (rng.uniform() > p_c) return {c1, c2};
    for (std::size_t i = 0; i < p1.size(); ++i) {
        if (rng.uniform() > 0.5) continue;
        if (std::abs(p1[i] - p2[i]) < 1e-14) continue;
        const double u = rng.uniform();
        const double beta = (u <= 0.5)
                                ? std::pow(2.0 * u, 1.0 / (eta + 1.0))
                                : std::pow(1.0 / (2.0 * (1.0 - u)), 1.0 / (eta + 1.0));
        double a = 0.5 * ((1.0 + beta) * p1[i] + (1.0 - beta) * p2[i]);
        double b = 0.5 * ((1.0 - beta) * p1[i] + (1.0 + beta) * p2[i]);
        if (rng.uniform() <= 0.5) std::swap(a, b);
        c1[i] = std::clamp(a, lower[i], upper[i]);
        c2[i] = std::clamp(b, lower[i], upper[i]);
    }
    return {c1, c2};
}

// Bounded polynomial mutation, applied in place per variable with rate p_m.
inline void polynomial_mutation(DecisionVector& x, const std::vector<double>& lower,
                                const std::vector<double>& upper, double p_m, double eta,
                                Rng& rng) {
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (rng.uniform() > p_m) continue;
        const double lo = lower[i], hi = upper[i];
        const double range = hi - lo;
        if (range <= 0.0) continue;
        const double u = rng.uniform();
        const double d1 = (x[i] - lo) / range;
        const double d2 = (hi - x[i]) / range;
        double dq;
        if (u <= 0.5) {
            const double b = 2.0 * u + (1.0 - 2.0 * u) * std::pow(1.0 - d1, eta + 1.0);
            dq = std::pow(b, 1.0 / (eta + 1.0)) - 1.0;
        } else {
            const double b =
                2.0 * (1.0 - u) + 2.0 * (u - 0.5) * std::pow(1.0 - d2, eta + 1.0);
            dq = 1.0 - std::pow(b, 1.0 / (eta + 1.0));
        }
        x[i] = std::clamp(x[i] + dq * range, lo, hi);
    }
}

// SBX -> pick one child uniformly -> polynomial mutation -> evaluate.
inline Solution variation(const Solution& a, const Solution& b, const Problem& prob,
                          const VariationParams& vp, Rng& rng) {
    auto [c1, c2] = sbx(a.x, b.x, prob.lower, prob.upper, vp.p_c, vp.eta_c, rng);
    DecisionVector child = (rng.uniform() <= 0.5) ? std::move(c1) : std::move(c2);
    const double p_m = (vp.p_m > 0.0) ? vp.p_m : 1.0 / static_cast<double>(prob.n);
    polynomial_mutation(child, prob.lower, prob.upper, p_m, vp.eta_m, rng);
    Solution s;
    s.x = std::move(child);
    s.f = evaluate(prob, s.x);
    return s;
}

}  // namespace moeaad
