#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "moeaad/harness.hpp"

using Catch::Approx;
using namespace moeaad;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path fresh_dir(const std::string& tag) {
    const fs::path dir = fs::temp_directory_path() / ("moeaad_test_" + tag);
    fs::remove_all(dir);
    return dir;
}

// compares two runs.csv files ignoring the wall-clock column
void require_same_modulo_timing(const fs::path& a, const fs::path& b) {
    const CsvTable ta = read_csv_table(a.string());
    const CsvTable tb = read_csv_table(b.string());
    REQUIRE(ta.header == tb.header);
    REQUIRE(ta.rows.size() == tb.rows.size());
    const int skip = ta.column("wall_seconds");
    for (size_t r = 0; r < ta.rows.size(); ++r) {
        for (size_t c = 0; c < ta.header.size(); ++c) {
            if (static_cast<int>(c) == skip) continue;
            INFO("row " << r << " column " << ta.header[c]);
            REQUIRE(ta.rows[r][c] == tb.rows[r][c]);
        }
    }
}

}  // namespace

TEST_CASE("generation budgets per family and objective count") {
    REQUIRE(resolve_generations("dtlz2", 3) == 250);
    REQUIRE(resolve_generations("dtlz1", 3) == 400);
    REQUIRE(resolve_generations("dtlz3", 8) == 1000);
    REQUIRE(resolve_generations("dtlz4", 3) == 600);
    REQUIRE(resolve_generations("dtlz4", 15) == 3000);
    REQUIRE(resolve_generations("wfg1", 3) == 400);
    REQUIRE(resolve_generations("wfg5", 15) == 3000);
    REQUIRE(resolve_generations("wfg9", 10) == 2000);
    REQUIRE(resolve_generations("minus-dtlz1", 10) == 1000);
    REQUIRE(resolve_generations("minus-wfg9", 3) == 400);
    REQUIRE_THROWS_AS(resolve_generations("zdt1", 3), std::invalid_argument);
    REQUIRE_THROWS_AS(resolve_generations("dtlz2", 4), std::invalid_argument);
}

TEST_CASE("seed derivation is pure and collision-averse") {
    const std::uint64_t s = derive_seed(1, "dtlz2", 3, "moea_ad", 0);
    REQUIRE(s == derive_seed(1, "dtlz2", 3, "moea_ad", 0));
    std::set<std::uint64_t> seen;
    seen.insert(derive_seed(2, "dtlz2", 3, "moea_ad", 0));
    seen.insert(derive_seed(1, "dtlz3", 3, "moea_ad", 0));
    seen.insert(derive_seed(1, "dtlz2", 5, "moea_ad", 0));
    seen.insert(derive_seed(1, "dtlz2", 3, "moead_pbi", 0));
    for (int r = 0; r < 50; ++r) seen.insert(derive_seed(1, "dtlz2", 3, "moea_ad", r));
    REQUIRE(seen.size() == 54);  // 4 single-field tweaks + 50 run indices
}

TEST_CASE("algorithm specs carry labels, variants and baseline flags") {
    REQUIRE(make_algorithm_spec("moea_ad").label == "moea_ad");
    REQUIRE(make_algorithm_spec("moea_ad").cfg.variant == Variant::kFull);
    REQUIRE_FALSE(make_algorithm_spec("moea_ad").baseline);
    REQUIRE(make_algorithm_spec("moea_ad", "v1").label == "moea_ad_v1");
    REQUIRE(make_algorithm_spec("moea_ad", "v1").cfg.variant == Variant::kV1);
    REQUIRE(make_algorithm_spec("moea_ad", "v2").cfg.variant == Variant::kV2);
    REQUIRE(make_algorithm_spec("moea_ad", "v3").label == "moea_ad_v3");
    REQUIRE(make_algorithm_spec("moead_pbi").baseline);
    REQUIRE(make_algorithm_spec("moead_pbi").kind == BaselineKind::kPbi);
    REQUIRE(make_algorithm_spec("moead_ipbi").kind == BaselineKind::kIpbi);
    REQUIRE_THROWS_AS(make_algorithm_spec("nsga3"), std::invalid_argument);
    REQUIRE_THROWS_AS(make_algorithm_spec("moea_ad", "v4"), std::invalid_argument);
}

TEST_CASE("population hypervolume normalizes by the analytic bounds") {
    const Problem prob = make_problem("dtlz2", 3);  // bounds [0,1]^3
    HvPolicy policy;
    std::vector<Solution> pop(1);
    pop[0].f = {0.0, 0.0, 0.0};
    REQUIRE(population_hv(pop, prob, policy, 1) == Approx(8.0));
    pop.resize(2);
    pop[0].f = {1.0, 0.0, 0.0};
    pop[1].f = {0.0, 1.0, 0.0};
    // two unit-axis points: each dominates a 1x2x2 slab, overlapping in 1x1x2
    REQUIRE(population_hv(pop, prob, policy, 1) == Approx(4.0 + 4.0 - 2.0));
    // the sampling path approximates the same value
    HvPolicy mc;
    mc.exact_max_m = 2;
    mc.mc_samples = 200000;
    const double est = population_hv(pop, prob, mc, 99);
    REQUIRE(est == Approx(6.0).margin(0.1));
    REQUIRE(population_hv(pop, prob, mc, 99) == est);
}

TEST_CASE("execute_cell runs, persists and reproduces") {
    const fs::path dir = fresh_dir("cell");
    const AlgorithmSpec spec = make_algorithm_spec("moea_ad");
    HvPolicy policy;
    const RunRecord rec = execute_cell("dtlz2", 3, spec, 2, 12345, 0, policy, dir.string());
    REQUIRE_FALSE(rec.failed);
    REQUIRE(rec.algorithm == "moea_ad");
    REQUIRE(rec.generations == 2);
    REQUIRE(rec.hv_selected == std::max(rec.hv_d, rec.hv_c));
    REQUIRE(rec.hv_d > 0.0);
    REQUIRE(rec.hv_d < 8.0);
    REQUIRE(rec.wall_seconds > 0.0);

    const fs::path run_dir = dir / "dtlz2_m3" / "moea_ad" / "run_000";
    REQUIRE(fs::exists(run_dir / "pop_d.csv"));
    REQUIRE(fs::exists(run_dir / "pop_c.csv"));
    REQUIRE(fs::exists(run_dir / "manifest.json"));

    nlohmann::json j = nlohmann::json::parse(slurp(run_dir / "manifest.json"));
    REQUIRE(j["problem"] == "dtlz2");
    REQUIRE(j["objectives"] == 3);
    REQUIRE(j["algorithm"] == "moea_ad");
    REQUIRE(j["seed"] == 12345);
    REQUIRE(j["failed"] == false);
    REQUIRE(j["config"]["T"] == 20);
    REQUIRE(j["config"]["delta"] == 0.9);
    REQUIRE(j["hv_selected"].get<double>() == Approx(rec.hv_selected));

    // the population file has one row per weight vector plus the header
    const CsvTable pd = read_csv_table((run_dir / "pop_d.csv").string());
    REQUIRE(pd.rows.size() == standard_weights(3).vectors.size());
    REQUIRE(pd.header[0] == "x0");

    // same cell again, no persistence: identical metrics
    const RunRecord again = execute_cell("dtlz2", 3, spec, 2, 12345, 0, policy, "");
    REQUIRE(again.hv_d == rec.hv_d);
    REQUIRE(again.hv_c == rec.hv_c);
}

TEST_CASE("execute_cell: baselines reuse one population for both metrics") {
    HvPolicy policy;
    const RunRecord rec =
        execute_cell("dtlz2", 3, make_algorithm_spec("moead_pbi"), 2, 99, 0, policy, "");
    REQUIRE_FALSE(rec.failed);
    REQUIRE(rec.hv_c == rec.hv_d);
    REQUIRE(rec.hv_selected == rec.hv_d);
}

TEST_CASE("execute_cell reports failures instead of throwing") {
    HvPolicy policy;
    const RunRecord rec =
        execute_cell("dtlz99", 3, make_algorithm_spec("moea_ad"), 2, 1, 0, policy, "");
    REQUIRE(rec.failed);
    REQUIRE_FALSE(rec.error.empty());
}

TEST_CASE("experiment config round-trips through JSON") {
    const fs::path dir = fresh_dir("cfg");
    fs::create_directories(dir);
    const fs::path cfg_path = dir / "exp.json";
    {
        std::ofstream out(cfg_path);
        out << R"({
  "problems": [{"name": "dtlz2", "m": 3}, {"name": "minus-wfg4", "m": 5}],
  "algorithms": [{"algorithm": "moea_ad"}, {"algorithm": "moea_ad", "variant": "v2"},
                 {"algorithm": "moead_ipbi"}],
  "runs": 5,
  "seed_base": 77,
  "generations": 12,
  "output_dir": "outdir",
  "jobs": 3,
  "mc_samples": 5000,
  "hv_exact_max_m": 4,
  "engine": {"T": 11, "delta": 0.8, "nr_c": 3, "theta": 4.0, "p_m": 0.05}
})";
    }
    const ExperimentConfig cfg = load_experiment_config(cfg_path.string());
    REQUIRE(cfg.problems.size() == 2);
    REQUIRE(cfg.problems[1].first == "minus-wfg4");
    REQUIRE(cfg.problems[1].second == 5);
    REQUIRE(cfg.algorithms.size() == 3);
    REQUIRE(cfg.algorithms[0].label == "moea_ad");
    REQUIRE(cfg.algorithms[1].label == "moea_ad_v2");
    REQUIRE(cfg.algorithms[2].label == "moead_ipbi");
    REQUIRE(cfg.runs == 5);
    REQUIRE(cfg.seed_base == 77);
    REQUIRE(cfg.generations_override == 12);
    REQUIRE(cfg.output_dir == "outdir");
    REQUIRE(cfg.jobs == 3);
    REQUIRE(cfg.hv.mc_samples == 5000);
    REQUIRE(cfg.hv.exact_max_m == 4);
    for (const AlgorithmSpec& spec : cfg.algorithms) {
        REQUIRE(spec.cfg.T == 11);
        REQUIRE(spec.cfg.delta == 0.8);
        REQUIRE(spec.cfg.nr_c == 3);
        REQUIRE(spec.cfg.scal.theta == 4.0);
        REQUIRE(spec.cfg.var.p_m == 0.05);
        REQUIRE(spec.cfg.var.eta_m == 20.0);  // untouched knobs keep defaults
    }
    REQUIRE_THROWS_AS(load_experiment_config((dir / "absent.json").string()),
                      std::runtime_error);
}

TEST_CASE("run_experiment produces sorted, reproducible result tables") {
    ExperimentConfig cfg;
    cfg.problems = {{"dtlz2", 3}};
    cfg.algorithms = {make_algorithm_spec("moea_ad"), make_algorithm_spec("moead_pbi")};
    cfg.runs = 2;
    cfg.seed_base = 7;
    cfg.generations_override = 3;
    cfg.jobs = 2;

    const fs::path dir_a = fresh_dir("exp_a");
    cfg.output_dir = dir_a.string();
    REQUIRE(run_experiment(cfg) == 0);

    const CsvTable runs = read_csv_table((dir_a / "runs.csv").string());
    REQUIRE(runs.rows.size() == 4);
    REQUIRE(runs.header == std::vector<std::string>{"problem", "m", "algorithm", "run", "seed",
                                                    "generations", "hv_d", "hv_c",
                                                    "hv_selected", "wall_seconds", "failed"});
    // sorted by (problem, m, algorithm, run)
    REQUIRE(runs.rows[0][2] == "moea_ad");
    REQUIRE(runs.rows[0][3] == "0");
    REQUIRE(runs.rows[1][2] == "moea_ad");
    REQUIRE(runs.rows[1][3] == "1");
    REQUIRE(runs.rows[2][2] == "moead_pbi");
    REQUIRE(runs.rows[3][2] == "moead_pbi");
    for (const auto& row : runs.rows) {
        REQUIRE(row[5] == "3");   // generations override applied
        REQUIRE(row[10] == "0");  // no failures
    }

    const CsvTable summary = read_csv_table((dir_a / "summary.csv").string());
    REQUIRE(summary.rows.size() == 2);
    REQUIRE(summary.header ==
            std::vector<std::string>{"problem", "m", "algorithm", "runs", "mean_hv", "std_hv",
                                     "median_hv"});
    for (const auto& row : summary.rows) REQUIRE(row[3] == "2");
    // mean of two values equals their median
    for (const auto& row : summary.rows) {
        double mean = 0.0, med = 0.0;
        REQUIRE(parse_double(row[4], mean));
        REQUIRE(parse_double(row[6], med));
        REQUIRE(mean == Approx(med).margin(1e-15));
    }

    // per-run artifacts for every cell
    for (const char* alg : {"moea_ad", "moead_pbi"}) {
        for (const char* run : {"run_000", "run_001"}) {
            REQUIRE(fs::exists(dir_a / "dtlz2_m3" / alg / run / "pop_d.csv"));
            REQUIRE(fs::exists(dir_a / "dtlz2_m3" / alg / run / "manifest.json"));
        }
    }

    // second execution, single-threaded: identical apart from wall time
    const fs::path dir_b = fresh_dir("exp_b");
    cfg.output_dir = dir_b.string();
    cfg.jobs = 1;
    REQUIRE(run_experiment(cfg) == 0);
    require_same_modulo_timing(dir_a / "runs.csv", dir_b / "runs.csv");
    REQUIRE(slurp(dir_a / "summary.csv") == slurp(dir_b / "summary.csv"));
    for (const char* alg : {"moea_ad", "moead_pbi"}) {
        for (const char* run : {"run_000", "run_001"}) {
            REQUIRE(slurp(dir_a / "dtlz2_m3" / alg / run / "pop_d.csv") ==
                    slurp(dir_b / "dtlz2_m3" / alg / run / "pop_d.csv"));
            REQUIRE(slurp(dir_a / "dtlz2_m3" / alg / run / "pop_c.csv") ==
                    slurp(dir_b / "dtlz2_m3" / alg / run / "pop_c.csv"));
        }
    }
}

TEST_CASE("run_experiment counts failed cells but still writes tables") {
    ExperimentConfig cfg;
    cfg.problems = {{"dtlz2", 4}};  // no standard weight layout for m=4
    cfg.algorithms = {make_algorithm_spec("moea_ad")};
    cfg.runs = 2;
    cfg.generations_override = 2;
    const fs::path dir = fresh_dir("exp_fail");
    cfg.output_dir = dir.string();
    REQUIRE(run_experiment(cfg) == 2);
    const CsvTable runs = read_csv_table((dir / "runs.csv").string());
    REQUIRE(runs.rows.size() == 2);
    for (const auto& row : runs.rows) REQUIRE(row[10] == "1");
    const CsvTable summary = read_csv_table((dir / "summary.csv").string());
    REQUIRE(summary.rows.empty());  // failed cells contribute no summary groups
}

TEST_CASE("stats_report computes pairwise flags and performance scores") {
    const fs::path dir = fresh_dir("stats");
    fs::create_directories(dir);
    // synthetic results: on p1, "other" clearly beats moea_ad; on p2 they tie.
    // an extra algorithm with a single run must be skipped.
    std::vector<std::vector<std::string>> rows;
    for (int r = 0; r < 10; ++r) {
        rows.push_back({"p1", "3", "moea_ad", std::to_string(r), "1", "5",
                        fmt_g17(1.0 + 0.001 * r), fmt_g17(1.0 + 0.001 * r),
                        fmt_g17(1.0 + 0.001 * r), "0.1", "0"});
        rows.push_back({"p1", "3", "other", std::to_string(r), "1", "5",
                        fmt_g17(2.0 + 0.001 * r), fmt_g17(2.0 + 0.001 * r),
                        fmt_g17(2.0 + 0.001 * r), "0.1", "0"});
        rows.push_back({"p2", "3", "moea_ad", std::to_string(r), "1", "5",
                        fmt_g17(1.0 + 0.001 * (r % 3)), fmt_g17(1.0 + 0.001 * (r % 3)),
                        fmt_g17(1.0 + 0.001 * (r % 3)), "0.1", "0"});
        rows.push_back({"p2", "3", "other", std::to_string(r), "1", "5",
                        fmt_g17(1.0 + 0.001 * (r % 3)), fmt_g17(1.0 + 0.001 * (r % 3)),
                        fmt_g17(1.0 + 0.001 * (r % 3)), "0.1", "0"});
    }
    rows.push_back({"p1", "3", "lonely", "0", "1", "5", "9.0", "9.0", "9.0", "0.1", "0"});
    // failed rows are ignored even with absurd values
    rows.push_back({"p1", "3", "moea_ad", "10", "1", "5", "99.0", "99.0", "99.0", "0.1", "1"});
    write_csv((dir / "runs.csv").string(),
              {"problem", "m", "algorithm", "run", "seed", "generations", "hv_d", "hv_c",
               "hv_selected", "wall_seconds", "failed"},
              rows);

    stats_report((dir / "runs.csv").string(), (dir / "report").string());

    const CsvTable pairwise = read_csv_table((dir / "report" / "pairwise.csv").string());
    REQUIRE(pairwise.rows.size() == 2);  // one pair per instance, "lonely" skipped
    // p1: other wins
    REQUIRE(pairwise.rows[0][0] == "p1");
    REQUIRE(pairwise.rows[0][2] == "moea_ad");
    REQUIRE(pairwise.rows[0][3] == "other");
    REQUIRE(pairwise.rows[0][5] == "0");  // a_better
    REQUIRE(pairwise.rows[0][6] == "1");  // b_better
    // p2: identical populations, no significance
    REQUIRE(pairwise.rows[1][0] == "p2");
    REQUIRE(pairwise.rows[1][5] == "0");
    REQUIRE(pairwise.rows[1][6] == "0");

    const CsvTable scores = read_csv_table((dir / "report" / "scores.csv").string());
    REQUIRE(scores.rows.size() == 4);
    std::map<std::pair<std::string, std::string>, std::string> sc;
    for (const auto& row : scores.rows) sc[{row[0], row[2]}] = row[3];
    REQUIRE(sc[{"p1", "moea_ad"}] == "1");
    REQUIRE(sc[{"p1", "other"}] == "0");
    REQUIRE(sc[{"p2", "moea_ad"}] == "0");
    REQUIRE(sc[{"p2", "other"}] == "0");

    const CsvTable overall = read_csv_table((dir / "report" / "scores_overall.csv").string());
    std::map<std::string, std::string> ov;
    for (const auto& row : overall.rows) ov[row[0]] = row[1];
    double v;
    REQUIRE(parse_double(ov["moea_ad"], v));
    REQUIRE(v == Approx(0.5));
    REQUIRE(parse_double(ov["other"], v));
    REQUIRE(v == Approx(0.0));

    const CsvTable ref = read_csv_table((dir / "report" / "reference.csv").string());
    REQUIRE(ref.rows.size() == 2);  // "other" vs the reference on both instances
    REQUIRE(ref.rows[0][2] == "other");
    REQUIRE(ref.rows[0][4] == "1");  // better than the reference on p1
    REQUIRE(ref.rows[1][4] == "0");
}
