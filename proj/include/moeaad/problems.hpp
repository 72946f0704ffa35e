#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>

#include "moeaad/core.hpp"

namespace moeaad {

// A box-constrained scalable benchmark problem.  hv_bounds are the analytic
// ideal/nadir of the Pareto front, used to normalize objectives to [0,1]
// before hypervolume computation.
struct Problem {
    std::string name;
    int m = 0;  // objectives
    int n = 0;  // decision variables
    int k = 0;  // DTLZ distance count / WFG position count
    int l = 0;  // WFG distance count (0 for DTLZ)
    bool is_minus = false;
    std::vector<double> lower, upper;
    ReferencePoints hv_bounds;
    std::function<ObjectiveVector(const DecisionVector&)> eval_fn;
};

inline ObjectiveVector evaluate(const Problem& p, const DecisionVector& x) {
    if (static_cast<int>(x.size()) != p.n) {
        throw std::invalid_argument("evaluate: expected " + std::to_string(p.n) +
                                    " variables, got " + std::to_string(x.size()));
    }
    for (int i = 0; i < p.n; ++i) {
        if (x[i] < p.lower[i] || x[i] > p.upper[i]) {
            throw std::domain_error("evaluate: variable " + std::to_string(i) +
                                    " out of bounds");
        }
    }
    return p.eval_fn(x);
}

namespace detail {

inline constexpr double kPi = std::numbers::pi;

// ---- DTLZ ----------------------------------------------------------------

// multimodal distance function of DTLZ1/DTLZ3
inline double dtlz_g1(const DecisionVector& x, int m) {
    const int n = static_cast<int>(x.size());
    double s = 0.0;
    for (int i = m - 1; i < n; ++i) {
        const double d = x[i] - 0.5;
        s += d * d - std::cos(20.0 * kPi * d);
    }
    return 100.0 * (static_cast<double>(n - m + 1) + s);
}

// unimodal distance function of DTLZ2/DTLZ4
inline double dtlz_g2(const DecisionVector& x, int m) {
    const int n = static_cast<int>(x.size());
    double s = 0.0;
    for (int i = m - 1; i < n; ++i) {
        const double d = x[i] - 0.5;
        s += d * d;
    }
    return s;
}

inline ObjectiveVector dtlz1_eval(const DecisionVector& x, int m) {
    const double g = dtlz_g1(x, m);
    ObjectiveVector f(m);
    for (int j = 0; j < m; ++j) {
        double v = 0.5 * (1.0 + g);
        for (int i = 0; i < m - 1 - j; ++i) v *= x[i];
        if (j > 0) v *= 1.0 - x[m - 1 - j];
        f[j] = v;
    }
    return f;
}

// spherical shape shared by DTLZ2-4; alpha warps the position variables
inline ObjectiveVector dtlz_sphere_eval(const DecisionVector& x, int m, double g, double alpha) {
    ObjectiveVector f(m);
    for (int j = 0; j < m; ++j) {
        double v = 1.0 + g;
        for (int i = 0; i < m - 1 - j; ++i) v *= std::cos(std::pow(x[i], alpha) * kPi / 2.0);
        if (j > 0) v *= std::sin(std::pow(x[m - 1 - j], alpha) * kPi / 2.0);
        f[j] = v;
    }
    return f;
}

// ---- WFG transformation toolbox -------------------------------------------

// The transformations may drift out of [0,1] by a few ulps; snap back.
inline double to01(double v) {
    if (v < 0.0 && v > -1e-10) return 0.0;
    if (v > 1.0 && v < 1.0 + 1e-10) return 1.0;
    return v;
}

inline double b_poly(double y, double a) { return to01(std::pow(y, a)); }

inline double b_flat(double y, double A, double B, double C) {
    const double v = A + std::min(0.0, std::floor(y - B)) * A * (B - y) / B -
                     std::min(0.0, std::floor(C - y)) * (1.0 - A) * (y - C) / (1.0 - C);
    return to01(v);
}

inline double b_param(double y, double u, double A, double B, double C) {
    const double v = B + (C - B) * (A - (1.0 - 2.0 * u) * std::abs(std::floor(0.5 - u) + A));
    return to01(std::pow(y, v));
}

inline double s_linear(double y, double A) {
    return to01(std::abs(y - A) / std::abs(std::floor(A - y) + A));
}

inline double s_decept(double y, double A, double B, double C) {
    const double t1 = std::floor(y - A + B) * (1.0 - C + (A - B) / B) / (A - B);
    const double t2 = std::floor(A + B - y) * (1.0 - C + (1.0 - A - B) / B) / (1.0 - A - B);
    return to01(1.0 + (std::abs(y - A) - B) * (t1 + t2 + 1.0 / B));
}

inline double s_multi(double y, double A, double B, double C) {
    const double t1 = std::abs(y - C) / (2.0 * (std::floor(C - y) + C));
    const double t2 = (4.0 * A + 2.0) * kPi * (0.5 - t1);
    return to01((1.0 + std::cos(t2) + 4.0 * B * t1 * t1) / (B + 2.0));
}

inline double r_sum(const std::vector<double>& y, const std::vector<double>& w) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        num += w[i] * y[i];
        den += w[i];
    }
    return to01(num / den);
}

inline double r_nonsep(const std::vector<double>& y, int A) {
    const int n = static_cast<int>(y.size());
    double num = 0.0;
    for (int j = 0; j < n; ++j) {
        num += y[j];
        for (int q = 0; q <= A - 2; ++q) num += std::abs(y[j] - y[(j + q + 1) % n]);
    }
    const double mx = std::ceil(A / 2.0);
    const double den = (static_cast<double>(n) / A) * mx * (1.0 + 2.0 * A - 2.0 * mx);
    return to01(num / den);
}

// ---- WFG shape functions ---------------------------------------------------
// x has M-1 position values; j is the 1-based objective index.

inline double shape_linear(const std::vector<double>& x, int j, int M) {
    double v = 1.0;
    for (int i = 0; i < M - j; ++i) v *= x[i];
    if (j > 1) v *= 1.0 - x[M - j];
    return v;
}

inline double shape_convex(const std::vector<double>& x, int j, int M) {
    double v = 1.0;
    for (int i = 0; i < M - j; ++i) v *= 1.0 - std::cos(x[i] * kPi / 2.0);
    if (j > 1) v *= 1.0 - std::sin(x[M - j] * kPi / 2.0);
    return v;
}

inline double shape_concave(const std::vector<double>& x, int j, int M) {
    double v = 1.0;
    for (int i = 0; i < M - j; ++i) v *= std::sin(x[i] * kPi / 2.0);
    if (j > 1) v *= std::cos(x[M - j] * kPi / 2.0);
    return v;
}

inline double shape_mixed(double x1, double alpha, double A) {
    return std::pow(1.0 - x1 - std::cos(2.0 * A * kPi * x1 + kPi / 2.0) / (2.0 * A * kPi),
                    alpha);
}

inline double shape_disc(double x1, double alpha, double beta, double A) {
    const double c = std::cos(A * std::pow(x1, beta) * kPi);
    return 1.0 - std::pow(x1, alpha) * c * c;
}

// ---- WFG problem chains ------------------------------------------------------

// slice [first, last) of v
inline std::vector<double> slice(const std::vector<double>& v, int first, int last) {
    return std::vector<double>(v.begin() + first, v.begin() + last);
}

// the canonical weighted sums over the M-1 position groups plus the distance tail
inline std::vector<double> reduce_groups(const std::vector<double>& t, int k, int M,
                                         bool weighted) {
    std::vector<double> out(M);
    const int per = k / (M - 1);
    for (int j = 1; j <= M - 1; ++j) {
        const int lo = (j - 1) * per, hi = j * per;
        std::vector<double> ys = slice(t, lo, hi);
        std::vector<double> ws(ys.size(), 1.0);
        if (weighted) {
            for (std::size_t i = 0; i < ys.size(); ++i) ws[i] = 2.0 * (lo + i + 1);
        }
        out[j - 1] = r_sum(ys, ws);
    }
    std::vector<double> tail = slice(t, k, static_cast<int>(t.size()));
    std::vector<double> wt(tail.size(), 1.0);
    if (weighted) {
        for (std::size_t i = 0; i < tail.size(); ++i) wt[i] = 2.0 * (k + i + 1);
    }
    out[M - 1] = r_sum(tail, wt);
    return out;
}

enum class WfgShape { kWfg1, kWfg2, kWfg3, kConcave };

// final mapping from the reduced vector t (length M) to objectives
inline ObjectiveVector wfg_shape_eval(const std::vector<double>& t, int M, WfgShape shape) {
    // degenerate mask: only WFG3 zeroes A_2..A_{M-1}
    std::vector<double> A(M - 1, 1.0);
    if (shape == WfgShape::kWfg3) {
        for (int i = 1; i < M - 1; ++i) A[i] = 0.0;
    }
    std::vector<double> x(M - 1);
    const double xm = t[M - 1];
    for (int i = 0; i < M - 1; ++i) x[i] = std::max(xm, A[i]) * (t[i] - 0.5) + 0.5;

    ObjectiveVector f(M);
    for (int j = 1; j <= M; ++j) {
        double h;
        switch (shape) {
            case WfgShape::kWfg1:
                h = (j == M) ? shape_mixed(x[0], 1.0, 5.0) : shape_convex(x, j, M);
                break;
            case WfgShape::kWfg2:
                h = (j == M) ? shape_disc(x[0], 1.0, 1.0, 5.0) : shape_convex(x, j, M);
                break;
            case WfgShape::kWfg3:
                h = shape_linear(x, j, M);
                break;
            case WfgShape::kConcave:
            default:
                h = shape_concave(x, j, M);
                break;
        }
        f[j - 1] = xm + 2.0 * j * h;
    }
    return f;
}

inline ObjectiveVector wfg_eval(int id, const DecisionVector& z, int k, int l, int M) {
    const int n = k + l;
    std::vector<double> y(n);
    for (int i = 0; i < n; ++i) y[i] = z[i] / (2.0 * (i + 1));

    switch (id) {
        case 1: {
            for (int i = k; i < n; ++i) y[i] = s_linear(y[i], 0.35);
            for (int i = k; i < n; ++i) y[i] = b_flat(y[i], 0.8, 0.75, 0.85);
            for (int i = 0; i < n; ++i) y[i] = b_poly(y[i], 0.02);
            return wfg_shape_eval(reduce_groups(y, k, M, /*weighted=*/true), M,
                                  WfgShape::kWfg1);
        }
        case 2:
        case 3: {
            for (int i = k; i < n; ++i) y[i] = s_linear(y[i], 0.35);
            std::vector<double> t(k + l / 2);
            for (int i = 0; i < k; ++i) t[i] = y[i];
            for (int i = k; i < k + l / 2; ++i) {
                const int a = k + 2 * (i - k), b = a + 1;
                t[i] = r_nonsep({y[a], y[b]}, 2);
            }
            return wfg_shape_eval(reduce_groups(t, k, M, /*weighted=*/false), M,
                                  id == 2 ? WfgShape::kWfg2 : WfgShape::kWfg3);
        }
        case 4: {
            for (int i = 0; i < n; ++i) y[i] = s_multi(y[i], 30.0, 10.0, 0.35);
            return wfg_shape_eval(reduce_groups(y, k, M, false), M, WfgShape::kConcave);
        }
        case 5: {
            for (int i = 0; i < n; ++i) y[i] = s_decept(y[i], 0.35, 0.001, 0.05);
            return wfg_shape_eval(reduce_groups(y, k, M, false), M, WfgShape::kConcave);
        }
        case 6: {
            for (int i = k; i < n; ++i) y[i] = s_linear(y[i], 0.35);
            std::vector<double> t(M);
            const int per = k / (M - 1);
            for (int j = 1; j <= M - 1; ++j) {
                t[j - 1] = r_nonsep(slice(y, (j - 1) * per, j * per), per);
            }
            t[M - 1] = r_nonsep(slice(y, k, n), l);
            return wfg_shape_eval(t, M, WfgShape::kConcave);
        }
        case 7: {
            std::vector<double> t(y);
            for (int i = 0; i < k; ++i) {
                std::vector<double> rest = slice(y, i + 1, n);
                const double u = r_sum(rest, std::vector<double>(rest.size(), 1.0));
                t[i] = b_param(y[i], u, 0.98 / 49.98, 0.02, 50.0);
            }
            for (int i = k; i < n; ++i) t[i] = s_linear(t[i], 0.35);
            return wfg_shape_eval(reduce_groups(t, k, M, false), M, WfgShape::kConcave);
        }
        case 8: {
            std::vector<double> t(y);
            for (int i = k; i < n; ++i) {
                std::vector<double> head = slice(y, 0, i);
                const double u = r_sum(head, std::vector<double>(head.size(), 1.0));
                t[i] = b_param(y[i], u, 0.98 / 49.98, 0.02, 50.0);
            }
            for (int i = k; i < n; ++i) t[i] = s_linear(t[i], 0.35);
            return wfg_shape_eval(reduce_groups(t, k, M, false), M, WfgShape::kConcave);
        }
        case 9: {
            std::vector<double> t(y);
            for (int i = 0; i < n - 1; ++i) {
                std::vector<double> rest = slice(y, i + 1, n);
                const double u = r_sum(rest, std::vector<double>(rest.size(), 1.0));
                t[i] = b_param(y[i], u, 0.98 / 49.98, 0.02, 50.0);
            }
            for (int i = 0; i < k; ++i) t[i] = s_decept(t[i], 0.35, 0.001, 0.05);
            for (int i = k; i < n; ++i) t[i] = s_multi(t[i], 30.0, 95.0, 0.35);
            std::vector<double> r(M);
            const int per = k / (M - 1);
            for (int j = 1; j <= M - 1; ++j) {
                r[j - 1] = r_nonsep(slice(t, (j - 1) * per, j * per), per);
            }
            r[M - 1] = r_nonsep(slice(t, k, n), l);
            return wfg_shape_eval(r, M, WfgShape::kConcave);
        }
        default:
            throw std::invalid_argument("wfg_eval: bad id");
    }
}

// largest value the multimodal DTLZ distance term can reach per variable:
// (x-0.5)^2 - cos(20*pi*(x-0.5)) maximized at x = 0.5 +/- 0.45
inline constexpr double kDtlzG1TermMax = 0.45 * 0.45 + 1.0;

}  // namespace detail

// Analytic Pareto-front bounds of the negated problem, used for HV
// normalization of the minus suites.  The front of a minus problem is the
// negated maximal set of the plain problem: for DTLZ that is the sphere or
// simplex slice at the distance-function maximum; for WFG it is the
// distance-at-max slice where f_j spans [1, 2j+1].
inline ReferencePoints minus_hv_bounds(const std::string& family, int m, int k) {
    ReferencePoints rp;
    rp.ideal.assign(m, 0.0);
    rp.nadir.assign(m, 0.0);
    if (family == "dtlz1") {
        const double gmax = 100.0 * k * (1.0 + detail::kDtlzG1TermMax);
        for (int j = 0; j < m; ++j) rp.ideal[j] = -0.5 * (1.0 + gmax);
    } else if (family == "dtlz2" || family == "dtlz4") {
        const double gmax = 0.25 * k;
        for (int j = 0; j < m; ++j) rp.ideal[j] = -(1.0 + gmax);
    } else if (family == "dtlz3") {
        const double gmax = 100.0 * k * (1.0 + detail::kDtlzG1TermMax);
        for (int j = 0; j < m; ++j) rp.ideal[j] = -(1.0 + gmax);
    } else if (family.rfind("wfg", 0) == 0) {
        for (int j = 0; j < m; ++j) {
            rp.ideal[j] = -(2.0 * (j + 1) + 1.0);
            rp.nadir[j] = -1.0;
        }
    } else {
        throw std::invalid_argument("minus_hv_bounds: unknown family " + family);
    }
    return rp;
}

// Negate all objectives; HV bounds switch to the minus-front analytic table.
inline Problem minus_wrap(const Problem& p) {
    if (p.is_minus) throw std::invalid_argument("minus_wrap: problem is already a minus variant");
    Problem q = p;
    q.name = "minus-" + p.name;
    q.is_minus = true;
    auto base = p.eval_fn;
    q.eval_fn = [base](const DecisionVector& x) {
        ObjectiveVector f = base(x);
        for (double& v : f) v = -v;
        return f;
    };
    q.hv_bounds = minus_hv_bounds(p.name, p.m, p.k);
    return q;
}

// Construct a benchmark problem by name ("dtlz1".."dtlz4", "wfg1".."wfg9",
// optionally prefixed with "minus-").  n_override = 0 keeps the standard
// sizing: DTLZ n = m + k - 1 (k = 5 for DTLZ1, 10 otherwise), WFG n = k + l
// with k = 2(m-1), l = 20.  A nonzero override resizes the DTLZ distance
// count or the WFG distance tail.
inline Problem make_problem(const std::string& name, int m, int n_override = 0) {
    if (m < 2) throw std::invalid_argument("make_problem: m must be >= 2");
    if (name.rfind("minus-", 0) == 0) {
        return minus_wrap(make_problem(name.substr(6), m, n_override));
    }
    Problem p;
    p.name = name;
    p.m = m;

    if (name.rfind("dtlz", 0) == 0 && name.size() == 5) {
        const int id = name[4] - '0';
        if (id < 1 || id > 4) throw std::invalid_argument("make_problem: unknown problem " + name);
        p.k = (id == 1) ? 5 : 10;
        p.n = (n_override > 0) ? n_override : m + p.k - 1;
        if (p.n < m) throw std::invalid_argument("make_problem: n must be >= m for DTLZ");
        p.k = p.n - m + 1;
        p.l = 0;
        p.lower.assign(p.n, 0.0);
        p.upper.assign(p.n, 1.0);
        const int mm = m;
        switch (id) {
            case 1:
                p.eval_fn = [mm](const DecisionVector& x) { return detail::dtlz1_eval(x, mm); };
                p.hv_bounds.ideal.assign(m, 0.0);
                p.hv_bounds.nadir.assign(m, 0.5);
                break;
            case 2:
                p.eval_fn = [mm](const DecisionVector& x) {
                    return detail::dtlz_sphere_eval(x, mm, detail::dtlz_g2(x, mm), 1.0);
                };
                p.hv_bounds.ideal.assign(m, 0.0);
                p.hv_bounds.nadir.assign(m, 1.0);
                break;
            case 3:
                p.eval_fn = [mm](const DecisionVector& x) {
                    return detail::dtlz_sphere_eval(x, mm, detail::dtlz_g1(x, mm), 1.0);
                };
                p.hv_bounds.ideal.assign(m, 0.0);
                p.hv_bounds.nadir.assign(m, 1.0);
                break;
            case 4:
                p.eval_fn = [mm](const DecisionVector& x) {
                    return detail::dtlz_sphere_eval(x, mm, detail::dtlz_g2(x, mm), 100.0);
                };
                p.hv_bounds.ideal.assign(m, 0.0);
                p.hv_bounds.nadir.assign(m, 1.0);
                break;
        }
        return p;
    }

    if (name.rfind("wfg", 0) == 0 && name.size() == 4) {
        const int id = name[3] - '0';
        if (id < 1 || id > 9) throw std::invalid_argument("make_problem: unknown problem " + name);
        p.k = 2 * (m - 1);
        p.l = (n_override > 0) ? n_override - p.k : 20;
        if (p.l < 1) throw std::invalid_argument("make_problem: WFG needs at least one distance variable");
        if ((id == 2 || id == 3) && p.l % 2 != 0) {
            throw std::invalid_argument("make_problem: WFG2/WFG3 need an even distance count");
        }
        p.n = p.k + p.l;
        p.lower.assign(p.n, 0.0);
        p.upper.resize(p.n);
        for (int i = 0; i < p.n; ++i) p.upper[i] = 2.0 * (i + 1);
        const int kk = p.k, ll = p.l, mm = m;
        p.eval_fn = [id, kk, ll, mm](const DecisionVector& x) {
            return detail::wfg_eval(id, x, kk, ll, mm);
        };
        p.hv_bounds.ideal.assign(m, 0.0);
        p.hv_bounds.nadir.resize(m);
        for (int j = 0; j < m; ++j) p.hv_bounds.nadir[j] = 2.0 * (j + 1);
        return p;
    }

    throw std::invalid_argument("make_problem: unknown problem " + name);
}

// hv_bounds accessor mirroring the stored analytic table.
inline ReferencePoints hv_bounds(const Problem& p) { return p.hv_bounds; }

}  // namespace moeaad
