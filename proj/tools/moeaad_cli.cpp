// Command line front end: single runs, experiment batches, hypervolume of
// point files, significance reports and weight-set export.
#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "moeaad/harness.hpp"

namespace {

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        double v;
        if (!moeaad::parse_double(tok, v)) {
            throw CLI::ValidationError("--ref", "not a number: " + tok);
        }
        out.push_back(v);
    }
    if (out.empty()) throw CLI::ValidationError("--ref", "empty list");
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    using namespace moeaad;
    CLI::App app{"MOEA/AD benchmark harness"};
    app.require_subcommand(1);

    // ---- run: one (problem, algorithm, run-index) cell ----
    auto* cmd_run = app.add_subcommand("run", "execute a single run");
    std::string problem = "dtlz2";
    int m = 3;
    std::string algorithm = "moea_ad";
    std::string variant = "full";
    int generations = 0;
    std::uint64_t seed_base = 1;
    int run_index = 0;
    std::string out_dir = "out";
    long long mc_samples = 1'000'000;
    int exact_max_m = 5;
    cmd_run->add_option("--problem", problem, "problem name, e.g. dtlz2 or minus-wfg4")
        ->required();
    cmd_run->add_option("--objectives,-m", m, "number of objectives")->required();
    cmd_run->add_option("--algorithm", algorithm, "moea_ad | moead_pbi | moead_ipbi");
    cmd_run->add_option("--variant", variant, "full | v1 | v2 | v3");
    cmd_run->add_option("--generations", generations, "0 = standard budget table");
    cmd_run->add_option("--seed", seed_base, "base seed");
    cmd_run->add_option("--run-index", run_index, "run index for seed derivation");
    cmd_run->add_option("--out", out_dir, "output directory ('' skips persistence)");
    cmd_run->add_option("--mc-samples", mc_samples, "Monte Carlo samples for high-m HV");
    cmd_run->add_option("--hv-exact-max-m", exact_max_m, "exact HV up to this m");

    // ---- experiment: batch from config and/or flags ----
    auto* cmd_exp = app.add_subcommand("experiment", "run a batch of cells");
    std::string config_path;
    std::vector<std::string> exp_problems;
    std::vector<int> exp_ms;
    std::vector<std::string> exp_algorithms;
    int runs = 31;
    int jobs = 1;
    auto* opt_cfg = cmd_exp->add_option("--config", config_path, "experiment JSON file");
    auto* opt_prob = cmd_exp->add_option("--problem", exp_problems, "problem name(s)");
    auto* opt_m = cmd_exp->add_option("--objectives,-m", exp_ms, "objective count(s)");
    auto* opt_alg = cmd_exp->add_option("--algorithm", exp_algorithms, "algorithm name(s)");
    auto* opt_var = cmd_exp->add_option("--variant", variant, "variant for moea_ad entries");
    auto* opt_runs = cmd_exp->add_option("--runs", runs, "independent runs per cell");
    auto* opt_seed = cmd_exp->add_option("--seed", seed_base, "base seed");
    auto* opt_gens =
        cmd_exp->add_option("--generations", generations, "override the budget table");
    auto* opt_jobs = cmd_exp->add_option("--jobs", jobs, "parallel runs");
    auto* opt_out = cmd_exp->add_option("--out", out_dir, "output directory");
    auto* opt_mc = cmd_exp->add_option("--mc-samples", mc_samples, "Monte Carlo samples");

    // ---- hv: hypervolume of a CSV point file ----
    auto* cmd_hv = app.add_subcommand("hv", "hypervolume of points in a CSV file");
    std::string points_path;
    std::string ref_spec = "2";
    bool force_mc = false;
    cmd_hv->add_option("points", points_path, "CSV file, one objective vector per row")
        ->required();
    cmd_hv->add_option("--ref", ref_spec, "reference point: scalar or comma list");
    cmd_hv->add_flag("--mc", force_mc, "force the sampling estimator");
    cmd_hv->add_option("--mc-samples", mc_samples, "samples for the estimator");
    cmd_hv->add_option("--seed", seed_base, "sampling seed");

    // ---- stats: significance report from runs.csv ----
    auto* cmd_stats = app.add_subcommand("stats", "pairwise tests and performance scores");
    std::string runs_csv = "out/runs.csv";
    std::string report_dir = "out/report";
    std::string reference = "moea_ad";
    double alpha = 0.05;
    cmd_stats->add_option("--runs-csv", runs_csv, "input runs.csv");
    cmd_stats->add_option("--out", report_dir, "report directory");
    cmd_stats->add_option("--reference", reference, "reference algorithm label");
    cmd_stats->add_option("--alpha", alpha, "significance level");

    // ---- weights: export a weight set ----
    auto* cmd_w = app.add_subcommand("weights", "export weight vectors as CSV");
    int w_m = 3;
    int h1 = -1, h2 = 0;
    double tau = 0.5;
    bool centroid = false;
    std::string w_out;
    cmd_w->add_option("--objectives,-m", w_m, "number of objectives")->required();
    auto* opt_h1 = cmd_w->add_option("--h1", h1, "boundary layer divisions");
    cmd_w->add_option("--h2", h2, "inner layer divisions");
    cmd_w->add_option("--tau", tau, "inner layer shrink factor");
    cmd_w->add_flag("--centroid", centroid, "append the centroid vector");
    cmd_w->add_option("--out", w_out, "output CSV ('' = stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*cmd_run) {
            const AlgorithmSpec spec = make_algorithm_spec(algorithm, variant);
            const int gens = (generations > 0) ? generations : resolve_generations(problem, m);
            const std::uint64_t seed = derive_seed(seed_base, problem, m, spec.label, run_index);
            HvPolicy policy;
            policy.mc_samples = mc_samples;
            policy.exact_max_m = exact_max_m;
            const RunRecord rec =
                execute_cell(problem, m, spec, gens, seed, run_index, policy, out_dir);
            if (rec.failed) {
                std::cerr << "run failed: " << rec.error << "\n";
                return 1;
            }
            std::cout << "problem=" << rec.problem << " m=" << rec.m << " algorithm="
                      << rec.algorithm << " run=" << rec.run_index << " seed=" << rec.seed
                      << " generations=" << rec.generations << "\n"
                      << "hv_d=" << fmt_g17(rec.hv_d) << " hv_c=" << fmt_g17(rec.hv_c)
                      << " hv_selected=" << fmt_g17(rec.hv_selected)
                      << " wall_seconds=" << fmt_g17(rec.wall_seconds) << "\n";
            return 0;
        }

        if (*cmd_exp) {
            ExperimentConfig cfg;
            if (*opt_cfg) cfg = load_experiment_config(config_path);
            if (*opt_prob) {
                if (exp_ms.size() != exp_problems.size() && exp_ms.size() != 1) {
                    std::cerr << "--objectives must be given once or once per --problem\n";
                    return 2;
                }
                cfg.problems.clear();
                for (std::size_t i = 0; i < exp_problems.size(); ++i) {
                    cfg.problems.emplace_back(exp_problems[i],
                                              exp_ms[exp_ms.size() == 1 ? 0 : i]);
                }
            } else if (*opt_m && !*opt_cfg) {
                std::cerr << "--objectives requires --problem\n";
                return 2;
            }
            if (*opt_alg) {
                cfg.algorithms.clear();
                for (const std::string& a : exp_algorithms) {
                    cfg.algorithms.push_back(make_algorithm_spec(
                        a, (*opt_var && a == "moea_ad") ? variant : "full"));
                }
            }
            if (*opt_runs) cfg.runs = runs;
            if (*opt_seed) cfg.seed_base = seed_base;
            if (*opt_gens) cfg.generations_override = generations;
            if (*opt_jobs) cfg.jobs = jobs;
            if (*opt_out) cfg.output_dir = out_dir;
            if (*opt_mc) cfg.hv.mc_samples = mc_samples;
            if (cfg.problems.empty() || cfg.algorithms.empty()) {
                std::cerr << "nothing to run: give --config or --problem/--algorithm\n";
                return 2;
            }
            const int failures = run_experiment(cfg);
            std::cout << "wrote " << cfg.output_dir << "/runs.csv and summary.csv\n";
            if (failures > 0) {
                std::cerr << failures << " cell(s) failed\n";
                return 1;
            }
            return 0;
        }

        if (*cmd_hv) {
            const auto rows = read_numeric_csv(points_path);
            if (rows.empty()) {
                std::cout << fmt_g17(0.0) << "\n";
                return 0;
            }
            const std::size_t dim = rows[0].size();
            std::vector<double> ref = parse_list(ref_spec);
            if (ref.size() == 1) ref.assign(dim, ref[0]);
            if (ref.size() != dim) {
                std::cerr << "reference has " << ref.size() << " components, points have "
                          << dim << "\n";
                return 2;
            }
            const double hv = (force_mc || dim > 10)
                                  ? hv_monte_carlo(rows, ref, mc_samples, seed_base)
                                  : hv_exact(rows, ref);
            std::cout << fmt_g17(hv) << "\n";
            return 0;
        }

        if (*cmd_stats) {
            stats_report(runs_csv, report_dir, reference, alpha);
            std::cout << "wrote " << report_dir << "/{pairwise,scores,scores_by_m,"
                      << "scores_overall,reference}.csv\n";
            return 0;
        }

        if (*cmd_w) {
            const WeightSet ws = (*opt_h1) ? generate_weights(w_m, h1, h2, tau, centroid)
                                           : standard_weights(w_m);
            std::vector<std::string> header;
            for (int j = 0; j < w_m; ++j) header.push_back("w" + std::to_string(j));
            std::vector<std::vector<std::string>> rows;
            for (const auto& w : ws.vectors) {
                std::vector<std::string> row;
                for (double v : w) row.push_back(fmt_g17(v));
                rows.push_back(std::move(row));
            }
            if (w_out.empty()) {
                std::ostringstream ss;
                for (std::size_t j = 0; j < header.size(); ++j) {
                    ss << header[j] << (j + 1 < header.size() ? ',' : '\n');
                }
                for (const auto& row : rows) {
                    for (std::size_t j = 0; j < row.size(); ++j) {
                        ss << row[j] << (j + 1 < row.size() ? ',' : '\n');
                    }
                }
                std::cout << ss.str();
            } else {
                write_csv(w_out, header, rows);
            }
            std::cerr << ws.vectors.size() << " weight vectors\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
