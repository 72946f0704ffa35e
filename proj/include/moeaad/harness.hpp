#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include <nlohmann/json.hpp>

#include "moeaad/engine.hpp"
#include "moeaad/io.hpp"
#include "moeaad/metrics.hpp"
#include "moeaad/problems.hpp"
#include "moeaad/stats.hpp"
#include "moeaad/weights.hpp"

namespace moeaad {

// Standard per-(family, m) generation budgets; minus variants share their
// base family's row and every WFG instance shares one row.
inline int resolve_generations(const std::string& problem, int m) {
    std::string fam = problem;
    if (fam.rfind("minus-", 0) == 0) fam = fam.substr(6);
    if (fam.rfind("wfg", 0) == 0 && fam.size() == 4) fam = "wfg";
    static const std::map<std::string, std::map<int, int>> table = {
        {"dtlz1", {{3, 400}, {5, 600}, {8, 750}, {10, 1000}, {15, 1500}}},
        {"dtlz2", {{3, 250}, {5, 350}, {8, 500}, {10, 750}, {15, 1000}}},
        {"dtlz3", {{3, 1000}, {5, 1000}, {8, 1000}, {10, 1500}, {15, 2000}}},
        {"dtlz4", {{3, 600}, {5, 1000}, {8, 1250}, {10, 2000}, {15, 3000}}},
        {"wfg", {{3, 400}, {5, 750}, {8, 1500}, {10, 2000}, {15, 3000}}},
    };
    const auto fit = table.find(fam);
    if (fit == table.end()) {
        throw std::invalid_argument("resolve_generations: unknown problem " + problem);
    }
    const auto mit = fit->second.find(m);
    if (mit == fit->second.end()) {
        throw std::invalid_argument("resolve_generations: no budget for " + problem +
                                    " with m=" + std::to_string(m));
    }
    return mit->second;
}

inline std::uint64_t mix_seed(std::uint64_t acc, std::uint64_t v) {
    std::uint64_t s = acc ^ v;
    return splitmix64(s);
}

// Pure function of (base, problem, m, algorithm label, run index): any cell
// can be reproduced in isolation.
inline std::uint64_t derive_seed(std::uint64_t base, const std::string& problem, int m,
                                 const std::string& algorithm, int run) {
    std::uint64_t s = mix_seed(base, fnv1a64(problem));
    s = mix_seed(s, static_cast<std::uint64_t>(m));
    s = mix_seed(s, fnv1a64(algorithm));
    return mix_seed(s, static_cast<std::uint64_t>(run));
}

struct AlgorithmSpec {
    std::string label = "moea_ad";
    AlgorithmConfig cfg{};
    bool baseline = false;
    BaselineKind kind = BaselineKind::kPbi;
};

inline Variant parse_variant(const std::string& v) {
    if (v == "full" || v.empty()) return Variant::kFull;
    if (v == "v1") return Variant::kV1;
    if (v == "v2") return Variant::kV2;
    if (v == "v3") return Variant::kV3;
    throw std::invalid_argument("unknown variant: " + v);
}

inline AlgorithmSpec make_algorithm_spec(const std::string& algorithm,
                                         const std::string& variant = "full") {
    AlgorithmSpec spec;
    if (algorithm == "moea_ad") {
        spec.cfg.variant = parse_variant(variant);
        spec.label = (spec.cfg.variant == Variant::kFull) ? "moea_ad" : "moea_ad_" + variant;
        return spec;
    }
    if (algorithm == "moead_pbi") {
        spec.baseline = true;
        spec.kind = BaselineKind::kPbi;
        spec.label = "moead_pbi";
        return spec;
    }
    if (algorithm == "moead_ipbi") {
        spec.baseline = true;
        spec.kind = BaselineKind::kIpbi;
        spec.label = "moead_ipbi";
        return spec;
    }
    throw std::invalid_argument("unknown algorithm: " + algorithm);
}

// Hypervolume policy: exact up to exact_max_m objectives, Monte Carlo beyond.
struct HvPolicy {
    int exact_max_m = 5;
    long long mc_samples = 1'000'000;
};

inline double population_hv(const std::vector<Solution>& pop, const Problem& prob,
                            const HvPolicy& policy, std::uint64_t mc_seed) {
    const ObjectiveVector ref(prob.m, 2.0);
    std::vector<ObjectiveVector> pts;
    pts.reserve(pop.size());
    for (const Solution& s : pop) pts.push_back(normalize(s.f, prob.hv_bounds));
    if (prob.m <= policy.exact_max_m) return hv_exact(pts, ref);
    return hv_monte_carlo(pts, ref, policy.mc_samples, mc_seed);
}

struct RunRecord {
    std::string problem;
    int m = 0;
    std::string algorithm;
    int run_index = 0;
    std::uint64_t seed = 0;
    int generations = 0;
    double hv_d = 0.0, hv_c = 0.0, hv_selected = 0.0;
    double wall_seconds = 0.0;
    bool failed = false;
    std::string error;
};

namespace detail {

inline void persist_run(const std::string& dir, const RunRecord& rec, const AlgorithmSpec& spec,
                        const Problem& prob, const std::vector<Solution>& pd,
                        const std::vector<Solution>& pc) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    write_population_csv(dir + "/pop_d.csv", pd);
    write_population_csv(dir + "/pop_c.csv", pc);
    nlohmann::json j;
    j["problem"] = rec.problem;
    j["objectives"] = rec.m;
    j["variables"] = prob.n;
    j["algorithm"] = rec.algorithm;
    j["run_index"] = rec.run_index;
    j["seed"] = rec.seed;
    j["generations"] = rec.generations;
    j["config"] = {{"T", spec.cfg.T},
                   {"delta", spec.cfg.delta},
                   {"nr_c", spec.cfg.nr_c},
                   {"theta", spec.cfg.scal.theta},
                   {"alpha", spec.cfg.scal.alpha},
                   {"theta_ipbi", spec.cfg.scal.theta_ipbi},
                   {"p_c", spec.cfg.var.p_c},
                   {"eta_c", spec.cfg.var.eta_c},
                   {"p_m", spec.cfg.var.p_m},
                   {"eta_m", spec.cfg.var.eta_m}};
    j["hv_d"] = rec.hv_d;
    j["hv_c"] = rec.hv_c;
    j["hv_selected"] = rec.hv_selected;
    j["wall_seconds"] = rec.wall_seconds;
    j["failed"] = rec.failed;
    if (rec.failed) j["error"] = rec.error;
    std::ofstream out(dir + "/manifest.json", std::ios::binary);
    out << j.dump(2) << '\n';
}

}  // namespace detail

// Run one (problem, algorithm, run-index) cell.  out_dir == "" skips
// persistence; otherwise populations and a manifest land in
// out_dir/<problem>_m<m>/<algorithm>/run_<idx>/.
inline RunRecord execute_cell(const std::string& problem_name, int m, AlgorithmSpec spec,
                              int generations, std::uint64_t seed, int run_index,
                              const HvPolicy& policy, const std::string& out_dir) {
    RunRecord rec;
    rec.problem = problem_name;
    rec.m = m;
    rec.algorithm = spec.label;
    rec.run_index = run_index;
    rec.seed = seed;
    rec.generations = generations;
    try {
        const Problem prob = make_problem(problem_name, m);
        const WeightSet ws = standard_weights(m);
        const int n_pop = static_cast<int>(ws.vectors.size());
        const Neighborhood nb = build_neighborhood(ws, std::min(spec.cfg.T, n_pop));
        spec.cfg.seed = seed;
        spec.cfg.generations = generations;

        const auto t0 = std::chrono::steady_clock::now();
        std::vector<Solution> pd, pc;
        if (spec.baseline) {
            BaselineState bs = run_moead_baseline(prob, ws, nb, spec.cfg, spec.kind);
            pd = std::move(bs.pop);
            pc = pd;
        } else {
            DualPopulationState st = run(prob, ws, nb, spec.cfg);
            pd = std::move(st.sd);
            pc = std::move(st.sc);
        }
        const auto t1 = std::chrono::steady_clock::now();
        rec.wall_seconds = std::chrono::duration<double>(t1 - t0).count();

        rec.hv_d = population_hv(pd, prob, policy, mix_seed(seed, 0xD1));
        rec.hv_c = spec.baseline ? rec.hv_d
                                 : population_hv(pc, prob, policy, mix_seed(seed, 0xC1));
        rec.hv_selected = std::max(rec.hv_d, rec.hv_c);

        if (!out_dir.empty()) {
            char run_tag[16];
            std::snprintf(run_tag, sizeof(run_tag), "run_%03d", run_index);
            const std::string dir = out_dir + "/" + problem_name + "_m" + std::to_string(m) +
                                    "/" + spec.label + "/" + run_tag;
            detail::persist_run(dir, rec, spec, prob, pd, pc);
        }
    } catch (const std::exception& e) {
        rec.failed = true;
        rec.error = e.what();
    }
    return rec;
}

struct ExperimentConfig {
    std::vector<std::pair<std::string, int>> problems;  // (name, m)
    std::vector<AlgorithmSpec> algorithms;
    int runs = 31;
    std::uint64_t seed_base = 1;
    int generations_override = 0;  // 0 = per-problem table
    std::string output_dir = "results";
    int jobs = 1;
    HvPolicy hv{};
};

// JSON layout: problems [{name, m}], algorithms [{algorithm, variant}],
// runs, seed_base, generations, output_dir, jobs, mc_samples and an optional
// engine{} block overriding AlgorithmConfig knobs for every algorithm.
inline ExperimentConfig load_experiment_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_experiment_config: cannot open " + path);
    nlohmann::json j;
    in >> j;
    ExperimentConfig cfg;
    for (const auto& p : j.at("problems")) {
        cfg.problems.emplace_back(p.at("name").get<std::string>(), p.at("m").get<int>());
    }
    for (const auto& a : j.at("algorithms")) {
        const std::string algorithm = a.at("algorithm").get<std::string>();
        const std::string variant = a.value("variant", std::string("full"));
        cfg.algorithms.push_back(make_algorithm_spec(algorithm, variant));
    }
    cfg.runs = j.value("runs", 31);
    cfg.seed_base = j.value("seed_base", static_cast<std::uint64_t>(1));
    cfg.generations_override = j.value("generations", 0);
    cfg.output_dir = j.value("output_dir", std::string("results"));
    cfg.jobs = j.value("jobs", 1);
    cfg.hv.mc_samples = j.value("mc_samples", static_cast<long long>(1'000'000));
    cfg.hv.exact_max_m = j.value("hv_exact_max_m", 5);
    if (j.contains("engine")) {
        const auto& e = j["engine"];
        for (AlgorithmSpec& spec : cfg.algorithms) {
            spec.cfg.T = e.value("T", spec.cfg.T);
            spec.cfg.delta = e.value("delta", spec.cfg.delta);
            spec.cfg.nr_c = e.value("nr_c", spec.cfg.nr_c);
            spec.cfg.scal.theta = e.value("theta", spec.cfg.scal.theta);
            spec.cfg.scal.alpha = e.value("alpha", spec.cfg.scal.alpha);
            spec.cfg.scal.theta_ipbi = e.value("theta_ipbi", spec.cfg.scal.theta_ipbi);
            spec.cfg.var.p_c = e.value("p_c", spec.cfg.var.p_c);
            spec.cfg.var.eta_c = e.value("eta_c", spec.cfg.var.eta_c);
            spec.cfg.var.p_m = e.value("p_m", spec.cfg.var.p_m);
            spec.cfg.var.eta_m = e.value("eta_m", spec.cfg.var.eta_m);
        }
    }
    return cfg;
}

namespace detail {

inline double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

inline double sample_std(const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    const double mu = mean_of(v);
    double s = 0.0;
    for (double x : v) s += (x - mu) * (x - mu);
    return std::sqrt(s / static_cast<double>(v.size() - 1));
}

}  // namespace detail

// Runs every (problem, algorithm, run) cell, persists per-run artifacts plus
// runs.csv and summary.csv, and returns the number of failed cells.
inline int run_experiment(const ExperimentConfig& cfg) {
    namespace fs = std::filesystem;
    if (cfg.problems.empty() || cfg.algorithms.empty() || cfg.runs < 1) {
        throw std::invalid_argument("run_experiment: nothing to run");
    }
    fs::create_directories(cfg.output_dir);

    struct Cell {
        std::string problem;
        int m;
        AlgorithmSpec spec;
        int generations;
        std::uint64_t seed;
        int run_index;
    };
    std::vector<Cell> cells;
    for (const auto& [pname, m] : cfg.problems) {
        const int gens = (cfg.generations_override > 0) ? cfg.generations_override
                                                        : resolve_generations(pname, m);
        for (const AlgorithmSpec& spec : cfg.algorithms) {
            for (int r = 0; r < cfg.runs; ++r) {
                cells.push_back({pname, m, spec, gens,
                                 derive_seed(cfg.seed_base, pname, m, spec.label, r), r});
            }
        }
    }

    std::vector<RunRecord> records(cells.size());
    std::atomic<std::size_t> next{0};
    const int jobs = std::max(1, cfg.jobs);
    auto worker = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= cells.size()) break;
            const Cell& c = cells[i];
            records[i] = execute_cell(c.problem, c.m, c.spec, c.generations, c.seed,
                                      c.run_index, cfg.hv, cfg.output_dir);
            const RunRecord& r = records[i];
            std::cerr << c.problem << " m=" << c.m << ' ' << c.spec.label << " run "
                      << c.run_index << (r.failed ? " FAILED: " + r.error
                                                  : " hv=" + fmt_g17(r.hv_selected))
                      << '\n';
        }
    };
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }

    std::sort(records.begin(), records.end(), [](const RunRecord& a, const RunRecord& b) {
        return std::tie(a.problem, a.m, a.algorithm, a.run_index) <
               std::tie(b.problem, b.m, b.algorithm, b.run_index);
    });

    std::vector<std::vector<std::string>> run_rows;
    for (const RunRecord& r : records) {
        run_rows.push_back({r.problem, std::to_string(r.m), r.algorithm,
                            std::to_string(r.run_index), std::to_string(r.seed),
                            std::to_string(r.generations), fmt_g17(r.hv_d), fmt_g17(r.hv_c),
                            fmt_g17(r.hv_selected), fmt_g17(r.wall_seconds),
                            r.failed ? "1" : "0"});
    }
    write_csv(cfg.output_dir + "/runs.csv",
              {"problem", "m", "algorithm", "run", "seed", "generations", "hv_d", "hv_c",
               "hv_selected", "wall_seconds", "failed"},
              run_rows);

    std::map<std::tuple<std::string, int, std::string>, std::vector<double>> groups;
    for (const RunRecord& r : records) {
        if (!r.failed) groups[{r.problem, r.m, r.algorithm}].push_back(r.hv_selected);
    }
    std::vector<std::vector<std::string>> summary_rows;
    for (const auto& [key, values] : groups) {
        std::vector<double> v = values;
        std::sort(v.begin(), v.end());
        const double med = (v.size() % 2 == 1) ? v[v.size() / 2]
                                               : 0.5 * (v[v.size() / 2 - 1] + v[v.size() / 2]);
        summary_rows.push_back({std::get<0>(key), std::to_string(std::get<1>(key)),
                                std::get<2>(key), std::to_string(v.size()),
                                fmt_g17(detail::mean_of(v)), fmt_g17(detail::sample_std(v)),
                                fmt_g17(med)});
    }
    write_csv(cfg.output_dir + "/summary.csv",
              {"problem", "m", "algorithm", "runs", "mean_hv", "std_hv", "median_hv"},
              summary_rows);

    int failures = 0;
    for (const RunRecord& r : records) {
        if (r.failed) ++failures;
    }
    return failures;
}

// Reads runs.csv, runs pairwise rank-sum tests per (problem, m) instance and
// emits pairwise.csv, scores.csv, scores_by_m.csv, scores_overall.csv and
// reference.csv (flags of every algorithm against a designated reference).
inline void stats_report(const std::string& runs_csv, const std::string& out_dir,
                         const std::string& reference = "moea_ad", double alpha = 0.05) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    const CsvTable t = read_csv_table(runs_csv);
    const int c_problem = t.column("problem");
    const int c_m = t.column("m");
    const int c_alg = t.column("algorithm");
    const int c_hv = t.column("hv_selected");
    const int c_failed = t.column("failed");

    std::map<std::pair<std::string, int>, std::map<std::string, std::vector<double>>> inst;
    for (const auto& row : t.rows) {
        if (row[c_failed] == "1") continue;
        double hv;
        if (!parse_double(row[c_hv], hv)) {
            throw std::runtime_error("stats_report: bad hv_selected value");
        }
        inst[{row[c_problem], std::stoi(row[c_m])}][row[c_alg]].push_back(hv);
    }

    std::vector<std::vector<std::string>> pairwise_rows, score_rows, ref_rows;
    std::map<int, std::map<std::string, std::pair<double, int>>> by_m;  // sum, count
    std::map<std::string, std::pair<double, int>> overall;
    for (const auto& [key, by_alg] : inst) {
        std::vector<std::string> algs;
        for (const auto& [alg, values] : by_alg) {
            if (values.size() < 2) {
                std::cerr << "stats_report: skipping " << key.first << " m=" << key.second
                          << ' ' << alg << " (fewer than 2 runs)\n";
                continue;
            }
            algs.push_back(alg);
        }
        const std::size_t k = algs.size();
        std::vector<std::vector<char>> wins(k, std::vector<char>(k, 0));
        for (std::size_t x = 0; x < k; ++x) {
            for (std::size_t y = x + 1; y < k; ++y) {
                const WilcoxonResult res =
                    wilcoxon_rank_sum(by_alg.at(algs[x]), by_alg.at(algs[y]), alpha);
                wins[x][y] = res.a_better ? 1 : 0;
                wins[y][x] = res.b_better ? 1 : 0;
                pairwise_rows.push_back({key.first, std::to_string(key.second), algs[x],
                                         algs[y], fmt_g17(res.p_value),
                                         res.a_better ? "1" : "0", res.b_better ? "1" : "0",
                                         res.small_n ? "1" : "0"});
            }
        }
        const std::vector<int> scores = performance_score(wins);
        for (std::size_t x = 0; x < k; ++x) {
            score_rows.push_back({key.first, std::to_string(key.second), algs[x],
                                  std::to_string(scores[x])});
            auto& bm = by_m[key.second][algs[x]];
            bm.first += scores[x];
            bm.second += 1;
            auto& ov = overall[algs[x]];
            ov.first += scores[x];
            ov.second += 1;
        }
        if (by_alg.count(reference) && by_alg.at(reference).size() >= 2) {
            for (const std::string& alg : algs) {
                if (alg == reference) continue;
                const WilcoxonResult res =
                    wilcoxon_rank_sum(by_alg.at(alg), by_alg.at(reference), alpha);
                ref_rows.push_back({key.first, std::to_string(key.second), alg,
                                    fmt_g17(res.p_value), res.a_better ? "1" : "0",
                                    res.b_better ? "1" : "0"});
            }
        }
    }
    write_csv(out_dir + "/pairwise.csv",
              {"problem", "m", "algorithm_a", "algorithm_b", "p_value", "a_better",
               "b_better", "small_n"},
              pairwise_rows);
    write_csv(out_dir + "/scores.csv", {"problem", "m", "algorithm", "score"}, score_rows);
    std::vector<std::vector<std::string>> by_m_rows;
    for (const auto& [m, per_alg] : by_m) {
        for (const auto& [alg, sc] : per_alg) {
            by_m_rows.push_back(
                {std::to_string(m), alg, fmt_g17(sc.first / std::max(1, sc.second))});
        }
    }
    write_csv(out_dir + "/scores_by_m.csv", {"m", "algorithm", "mean_score"}, by_m_rows);
    std::vector<std::vector<std::string>> overall_rows;
    for (const auto& [alg, sc] : overall) {
        overall_rows.push_back({alg, fmt_g17(sc.first / std::max(1, sc.second))});
    }
    write_csv(out_dir + "/scores_overall.csv", {"algorithm", "mean_score"}, overall_rows);
    write_csv(out_dir + "/reference.csv",
              {"problem", "m", "algorithm", "p_value_vs_reference", "better_than_reference",
               "worse_than_reference"},
              ref_rows);
}

}  // namespace moeaad
