#pragma once

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace moeaad {

// Decision and objective vectors are plain real sequences; box bounds are
// owned by the Problem they belong to.
using DecisionVector = std::vector<double>;
using ObjectiveVector = std::vector<double>;

// Online estimates of the best (ideal) and worst (nadir) objective values.
struct ReferencePoints {
    ObjectiveVector ideal;
    ObjectiveVector nadir;
};

inline constexpr double kEpsNorm = 1e-12;  // degenerate-span guard in normalize()

// One individual. closeness / closest_p are bookkeeping written by the
// convergence-population update: the 1-based rank of the occupied subproblem
// in the offspring's distance order, and the index of its nearest subproblem.
struct Solution {
    DecisionVector x;
    ObjectiveVector f;
    int closeness = 1;
    int closest_p = 0;
};

// Pareto dominance, minimization: a <= b componentwise and a != b.
inline bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dominates: length mismatch");
    bool strictly_better = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) return false;
        if (a[i] < b[i]) strictly_better = true;
    }
    return strictly_better;
}

// True iff no other element of pool dominates pool[i].
template <typename Pool>
inline bool is_nondominated(std::size_t i, const Pool& pool) {
    for (std::size_t j = 0; j < pool.size(); ++j) {
        if (j != i && dominates(pool[j], pool[i])) return false;
    }
    return true;
}

// Per-component (f_i - ideal_i) / max(nadir_i - ideal_i, eps).
inline ObjectiveVector normalize(const ObjectiveVector& f, const ReferencePoints& refs) {
    ObjectiveVector out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double span = std::max(refs.nadir[i] - refs.ideal[i], kEpsNorm);
        out[i] = (f[i] - refs.ideal[i]) / span;
    }
    return out;
}

}  // namespace moeaad
