#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "moeaad/core.hpp"
#include "moeaad/matching.hpp"
#include "moeaad/operators.hpp"
#include "moeaad/problems.hpp"
#include "moeaad/rng.hpp"
#include "moeaad/scalarizing.hpp"
#include "moeaad/weights.hpp"

namespace moeaad {

enum class Variant { kFull, kV1, kV2, kV3 };
enum class BaselineKind { kPbi, kIpbi };

struct AlgorithmConfig {
    int T = 20;
    double delta = 0.9;
    int nr_c = 2;
    ScalarizingParams scal{};
    VariationParams var{};
    int generations = 250;
    std::uint64_t seed = 1;
    Variant variant = Variant::kFull;
};

// Both populations share one weight set: sd[i] and sc[i] both answer to
// weight i.  M pairs subproblem i with convergence slot M[i]; R marks pairs
// formed in the locality-restricted matching round.  prev_fd/prev_fc hold the
// objective vectors each slot had at the start of the current generation.
struct DualPopulationState {
    std::vector<Solution> sd, sc;
    ReferencePoints refs;
    std::vector<int> M, R;
    std::vector<ObjectiveVector> prev_fd, prev_fc;
};

namespace detail {

inline double gd_value(const Solution& s, const WeightVector& w,
                       const ReferencePoints& refs, const ScalarizingParams& sp) {
    return pbi_diversity(normalize(s.f, refs), w, sp);
}

inline double gc_value(const Solution& s, const WeightVector& w,
                       const ReferencePoints& refs, const ScalarizingParams& sp) {
    return maasf_convergence(normalize(s.f, refs), w, sp);
}

// Fractional one-step change of an aggregation value.  A near-zero previous
// value yields 0; the absolute flag drops the sign of the change.
inline double relative_change(double prev, double curr, bool absolute) {
    if (std::abs(prev) < 1e-12) return 0.0;
    const double delta = (prev - curr) / prev;
    return absolute ? std::abs(delta) : delta;
}

}  // namespace detail

inline DualPopulationState initialize(const Problem& p, const WeightSet& ws, Rng& rng) {
    const int n_pop = static_cast<int>(ws.vectors.size());
    DualPopulationState st;
    st.sd.resize(n_pop);
    for (int i = 0; i < n_pop; ++i) {
        Solution& s = st.sd[i];
        s.x.resize(p.n);
        for (int v = 0; v < p.n; ++v) s.x[v] = rng.uniform(p.lower[v], p.upper[v]);
        s.f = evaluate(p, s.x);
        s.closeness = 1;
        s.closest_p = i;
    }
    st.sc = st.sd;
    st.refs.ideal = st.sd[0].f;
    st.refs.nadir = st.sd[0].f;
    for (const Solution& s : st.sd) {
        for (std::size_t j = 0; j < s.f.size(); ++j) {
            st.refs.ideal[j] = std::min(st.refs.ideal[j], s.f[j]);
            st.refs.nadir[j] = std::max(st.refs.nadir[j], s.f[j]);
        }
    }
    st.M.resize(n_pop);
    std::iota(st.M.begin(), st.M.end(), 0);
    st.R.assign(n_pop, 1);
    return st;
}

inline void update_ideal(ReferencePoints& refs, const ObjectiveVector& f) {
    for (std::size_t j = 0; j < f.size(); ++j) refs.ideal[j] = std::min(refs.ideal[j], f[j]);
}

// Nadir is refreshed once per generation from the union of both populations.
inline void refresh_nadir(DualPopulationState& st) {
    const std::size_t m = st.refs.nadir.size();
    for (std::size_t j = 0; j < m; ++j) {
        double mx = st.sd[0].f[j];
        for (const Solution& s : st.sd) mx = std::max(mx, s.f[j]);
        for (const Solution& s : st.sc) mx = std::max(mx, s.f[j]);
        st.refs.nadir[j] = mx;
    }
}

struct PairUpdateReport {
    bool d_replaced = false;
    std::vector<int> c_slots;
};

// One offspring updates at most one diversity slot (its nearest weight ray
// from the origin) and up to nr_c convergence slots, scanned in ascending
// order of perpendicular distance to the rays anchored at the all-ones point.
inline PairUpdateReport population_update(DualPopulationState& st, const Solution& x_new,
                                          const WeightSet& ws, const ScalarizingParams& sp,
                                          int nr_c) {
    PairUpdateReport rep;
    const int n_pop = static_cast<int>(ws.vectors.size());
    const int m = static_cast<int>(st.refs.ideal.size());
    const ObjectiveVector fbar = normalize(x_new.f, st.refs);
    const ObjectiveVector origin(m, 0.0);
    const ObjectiveVector ones(m, 1.0);

    int i_d = 0;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n_pop; ++i) {
        const double d2 = d1_d2(fbar, ws.vectors[i], origin).second;
        if (d2 < best) {
            best = d2;
            i_d = i;
        }
    }
    if (pbi_diversity(fbar, ws.vectors[i_d], sp) <=
        detail::gd_value(st.sd[i_d], ws.vectors[i_d], st.refs, sp)) {
        Solution s = x_new;
        s.closeness = st.sd[i_d].closeness;
        s.closest_p = st.sd[i_d].closest_p;
        st.sd[i_d] = std::move(s);
        rep.d_replaced = true;
    }

    std::vector<std::pair<double, int>> order(n_pop);
    for (int i = 0; i < n_pop; ++i) {
        order[i] = {d1_d2(fbar, ws.vectors[i], ones).second, i};
    }
    std::sort(order.begin(), order.end());
    int t = 0;
    for (int rank = 0; rank < n_pop && t < nr_c; ++rank) {
        const int slot = order[rank].second;
        if (maasf_convergence(fbar, ws.vectors[slot], sp) <=
            detail::gc_value(st.sc[slot], ws.vectors[slot], st.refs, sp)) {
            Solution s = x_new;
            s.closeness = rank + 1;
            s.closest_p = order[0].second;
            st.sc[slot] = std::move(s);
            rep.c_slots.push_back(slot);
            ++t;
        }
    }
    return rep;
}

// One-generation fractional change of a slot's aggregation value, evaluated
// under the current reference points.  The convergence side uses the absolute
// value; a near-zero previous value yields 0.
inline double relative_improvement(const ObjectiveVector& prev_f, const ObjectiveVector& curr_f,
                                   const WeightVector& w, bool convergence_side,
                                   const ReferencePoints& refs, const ScalarizingParams& sp) {
    double prev, curr;
    if (convergence_side) {
        prev = maasf_convergence(normalize(prev_f, refs), w, sp);
        curr = maasf_convergence(normalize(curr_f, refs), w, sp);
    } else {
        prev = pbi_diversity(normalize(prev_f, refs), w, sp);
        curr = pbi_diversity(normalize(curr_f, refs), w, sp);
    }
    return detail::relative_change(prev, curr, convergence_side);
}

enum class PopTag { kD, kC };

// Pick which member of pair i is the principal parent: the one whose slot
// improved more this generation; ties fall back to dominance and pairing
// locality, or a coin flip.
inline PopTag pop_selection(const DualPopulationState& st, int i, const WeightSet& ws,
                            const ScalarizingParams& sp, Variant variant, Rng& rng) {
    const int ci = st.M[i];
    const double delta_d = relative_improvement(st.prev_fd[i], st.sd[i].f, ws.vectors[i],
                                                false, st.refs, sp);
    const double delta_c = relative_improvement(st.prev_fc[ci], st.sc[ci].f,
                                                ws.vectors[ci], true, st.refs, sp);
    if (delta_d > delta_c) return PopTag::kD;
    if (delta_d < delta_c) return PopTag::kC;
    if (variant == Variant::kV3) return rng.chance(0.5) ? PopTag::kD : PopTag::kC;

    std::vector<const Solution*> pool;
    pool.reserve(st.sd.size() + st.sc.size());
    for (const Solution& s : st.sd) pool.push_back(&s);
    for (const Solution& s : st.sc) pool.push_back(&s);
    bool nondominated = true;
    for (const Solution* s : pool) {
        if (dominates(s->f, st.sd[i].f)) {
            nondominated = false;
            break;
        }
    }
    const int m = static_cast<int>(st.refs.ideal.size());
    const bool partner_far = st.sc[ci].closeness > m;
    if (nondominated && partner_far) return PopTag::kD;
    if (!nondominated && !partner_far) return PopTag::kC;
    return rng.chance(0.5) ? PopTag::kD : PopTag::kC;
}

struct ParentPair {
    Solution principal, mate;
    PopTag tag = PopTag::kD;
};

namespace detail {

// (population, slot) address used while assembling mate pools
struct SlotRef {
    int pop;  // 0 = diversity, 1 = convergence
    int idx;
    bool operator==(const SlotRef& o) const { return pop == o.pop && idx == o.idx; }
};

inline const Solution& deref(const DualPopulationState& st, SlotRef r) {
    return r.pop == 0 ? st.sd[r.idx] : st.sc[r.idx];
}

}  // namespace detail

// Restricted mating selection.  The mate never comes from the principal's own
// pair, so each pair contributes at most one parent.
inline ParentPair mating_selection(const DualPopulationState& st, int i, const WeightSet& ws,
                                   const Neighborhood& nb, const AlgorithmConfig& cfg,
                                   Rng& rng) {
    using detail::SlotRef;
    const PopTag tag = pop_selection(st, i, ws, cfg.scal, cfg.variant, rng);
    const int ci = st.M[i];
    const SlotRef principal_slot =
        (tag == PopTag::kD) ? SlotRef{0, i} : SlotRef{1, ci};
    const SlotRef partner_slot =
        (tag == PopTag::kD) ? SlotRef{1, ci} : SlotRef{0, i};

    std::vector<SlotRef> pool;
    const bool own_population_only = (cfg.variant == Variant::kV2);
    if (rng.uniform() < cfg.delta) {
        if (tag == PopTag::kD) {
            for (int b : nb.B[i]) pool.push_back({0, b});
            if (!own_population_only) {
                for (int b : nb.B[i]) {
                    if (st.R[b] == 1) pool.push_back({1, st.M[b]});
                }
            }
        } else {
            const int my_closest = st.sc[ci].closest_p;
            for (int b : nb.B[ci]) {
                if (own_population_only || st.sc[b].closest_p != my_closest) {
                    pool.push_back({1, b});
                }
            }
        }
    } else {
        const int n_pop = static_cast<int>(ws.vectors.size());
        if (own_population_only) {
            const int pop = (tag == PopTag::kD) ? 0 : 1;
            for (int j = 0; j < n_pop; ++j) pool.push_back({pop, j});
        } else {
            for (int j = 0; j < n_pop; ++j) pool.push_back({0, j});
            for (int j = 0; j < n_pop; ++j) pool.push_back({1, j});
        }
    }
    std::erase_if(pool, [&](SlotRef r) { return r == principal_slot || r == partner_slot; });
    if (pool.empty()) {
        const int n_pop = static_cast<int>(ws.vectors.size());
        for (int j = 0; j < n_pop; ++j) pool.push_back({0, j});
        for (int j = 0; j < n_pop; ++j) pool.push_back({1, j});
        std::erase_if(pool,
                      [&](SlotRef r) { return r == principal_slot || r == partner_slot; });
    }
    const SlotRef mate_slot = pool[rng.index(pool.size())];

    ParentPair pp;
    pp.tag = tag;
    pp.principal = detail::deref(st, principal_slot);
    pp.mate = detail::deref(st, mate_slot);
    return pp;
}

// Recompute the pairing between subproblems and the convergence population.
inline void rematch(DualPopulationState& st, const WeightSet& ws,
                    const ScalarizingParams& sp, Variant variant, Rng& rng) {
    const int n_pop = static_cast<int>(ws.vectors.size());
    if (variant == Variant::kV1) {
        std::iota(st.M.begin(), st.M.end(), 0);
        rng.shuffle(st.M.begin(), st.M.end());
        st.R.assign(n_pop, 1);
        return;
    }
    const PreferenceProfile prof = build_preferences(st.sc, ws, st.refs, sp);
    const MatchResult mr = two_level_match(prof, static_cast<int>(st.refs.ideal.size()));
    st.M = mr.M;
    st.R = mr.R;
}

inline void snapshot_previous(DualPopulationState& st) {
    const int n_pop = static_cast<int>(st.sd.size());
    st.prev_fd.resize(n_pop);
    st.prev_fc.resize(n_pop);
    for (int i = 0; i < n_pop; ++i) {
        st.prev_fd[i] = st.sd[i].f;
        st.prev_fc[i] = st.sc[i].f;
    }
}

inline DualPopulationState run(const Problem& p, const WeightSet& ws, const Neighborhood& nb,
                               const AlgorithmConfig& cfg) {
    Rng rng(cfg.seed);
    DualPopulationState st = initialize(p, ws, rng);
    const int n_pop = static_cast<int>(ws.vectors.size());
    for (int gen = 0; gen < cfg.generations; ++gen) {
        refresh_nadir(st);
        snapshot_previous(st);
        for (int i = 0; i < n_pop; ++i) {
            const ParentPair pp = mating_selection(st, i, ws, nb, cfg, rng);
            const Solution child = variation(pp.principal, pp.mate, p, cfg.var, rng);
            update_ideal(st.refs, child.f);
            population_update(st, child, ws, cfg.scal, cfg.nr_c);
        }
        rematch(st, ws, cfg.scal, cfg.variant, rng);
    }
    return st;
}

// Classic single-population MOEA/D with the same weights, neighborhood and
// variation stack.  kPbi aggregates raw objectives against the ideal point;
// kIpbi aggregates normalized objectives against the all-ones point.
struct BaselineState {
    std::vector<Solution> pop;
    ReferencePoints refs;
};

inline BaselineState run_moead_baseline(const Problem& p, const WeightSet& ws,
                                        const Neighborhood& nb, const AlgorithmConfig& cfg,
                                        BaselineKind kind) {
    Rng rng(cfg.seed);
    const int n_pop = static_cast<int>(ws.vectors.size());
    BaselineState st;
    st.pop.resize(n_pop);
    for (int i = 0; i < n_pop; ++i) {
        Solution& s = st.pop[i];
        s.x.resize(p.n);
        for (int v = 0; v < p.n; ++v) s.x[v] = rng.uniform(p.lower[v], p.upper[v]);
        s.f = evaluate(p, s.x);
    }
    st.refs.ideal = st.pop[0].f;
    st.refs.nadir = st.pop[0].f;
    for (const Solution& s : st.pop) {
        for (std::size_t j = 0; j < s.f.size(); ++j) {
            st.refs.ideal[j] = std::min(st.refs.ideal[j], s.f[j]);
            st.refs.nadir[j] = std::max(st.refs.nadir[j], s.f[j]);
        }
    }
    const auto value = [&](const ObjectiveVector& f, const WeightVector& w) {
        if (kind == BaselineKind::kPbi) return pbi(f, w, st.refs.ideal, cfg.scal.theta);
        return ipbi(normalize(f, st.refs), w, cfg.scal);
    };
    std::vector<int> all(n_pop);
    std::iota(all.begin(), all.end(), 0);
    for (int gen = 0; gen < cfg.generations; ++gen) {
        if (kind == BaselineKind::kIpbi) {
            for (std::size_t j = 0; j < st.refs.nadir.size(); ++j) {
                double mx = st.pop[0].f[j];
                for (const Solution& s : st.pop) mx = std::max(mx, s.f[j]);
                st.refs.nadir[j] = mx;
            }
        }
        for (int i = 0; i < n_pop; ++i) {
            const std::vector<int>& pool = (rng.uniform() < cfg.delta) ? nb.B[i] : all;
            const std::size_t a = rng.index(pool.size());
            std::size_t b = rng.index(pool.size() - 1);
            if (b >= a) ++b;
            const Solution child =
                variation(st.pop[pool[a]], st.pop[pool[b]], p, cfg.var, rng);
            update_ideal(st.refs, child.f);
            std::vector<int> scan = pool;
            rng.shuffle(scan.begin(), scan.end());
            int t = 0;
            for (int j : scan) {
                if (value(child.f, ws.vectors[j]) <= value(st.pop[j].f, ws.vectors[j])) {
                    st.pop[j] = child;
                    if (++t == cfg.nr_c) break;
                }
            }
        }
    }
    return st;
}

}  // namespace moeaad
