#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

#include "wsnsim/experiment.hpp"

using namespace wsnsim;

namespace {

ExperimentConfig small_config() {
    ExperimentConfig cfg;
    cfg.algorithm = Algorithm::kDsa1;
    cfg.n = 20;
    cfg.side_length = 1.5;
    cfg.radius = 0.8;
    cfg.slot_count = 3;
    cfg.eta_start = 0.5;
    cfg.eta_stop = 0.5;
    cfg.eta_step = 0.1;
    cfg.trial_cap = 10;
    cfg.master_seed = 0xABCD;
    return cfg;
}

}  // namespace

TEST_CASE("trial budget follows the sampled combination count") {
    // C(5,2) = 10 at fraction 0.5 -> 5 trials.
    REQUIRE(trial_count(5, 2, 0.5, 100) == 5);
    // eta = 1: a single possible query set.
    REQUIRE(trial_count(50, 50, 1.0, 500) == 1);
    // Astronomic C(n,h) hits the cap without overflowing.
    REQUIRE(trial_count(1000, 500, 1.0, 500) == 500);
    REQUIRE(trial_count(100, 30, 1e-9, 500) == 500);  // still huge after sampling
}

TEST_CASE("eta grid is inclusive and validated") {
    ExperimentConfig cfg = small_config();
    cfg.eta_start = 0.1;
    cfg.eta_stop = 1.0;
    cfg.eta_step = 0.1;
    const auto grid = cfg.eta_grid();
    REQUIRE(grid.size() == 10);
    REQUIRE(grid.front() == Catch::Approx(0.1));
    REQUIRE(grid.back() == Catch::Approx(1.0));

    cfg.eta_start = 0.0;
    REQUIRE_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.eta_start = 1.2;
    cfg.eta_stop = 1.3;
    REQUIRE_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("config json round trip") {
    ExperimentConfig cfg = small_config();
    cfg.algorithm = Algorithm::kDsa2;
    cfg.dist_kind = DistKind::kRobust;
    cfg.sample_fraction = 0.25;
    cfg.reuse_graph = true;
    const auto doc = cfg.to_json();
    const auto back = ExperimentConfig::from_json(doc);
    REQUIRE(back.to_json() == doc);
}

TEST_CASE("querying the whole network always succeeds") {
    ExperimentConfig cfg = small_config();
    cfg.eta_start = cfg.eta_stop = 1.0;
    const auto result = run_sweep(cfg);
    REQUIRE(result.rows.size() == 1);
    REQUIRE(result.rows[0].h == 20);
    REQUIRE(result.rows[0].trials == 1);
    REQUIRE(result.rows[0].p_s == 1.0);
}

TEST_CASE("sweeps are reproducible byte for byte") {
    ExperimentConfig cfg = small_config();
    cfg.eta_start = 0.3;
    cfg.eta_stop = 0.9;
    cfg.eta_step = 0.3;
    std::ostringstream a, b;
    write_csv(run_sweep(cfg), a);
    write_csv(run_sweep(cfg), b);
    REQUIRE(a.str() == b.str());
    REQUIRE(a.str().rfind("algorithm,n,L,lambda,eta,h,trials,successes,p_s,", 0) == 0);
}

TEST_CASE("different seeds give different experiment streams") {
    ExperimentConfig cfg = small_config();
    std::ostringstream a, b;
    write_csv(run_sweep(cfg), a);
    cfg.master_seed += 1;
    write_csv(run_sweep(cfg), b);
    REQUIRE(a.str() != b.str());
}

TEST_CASE("empty results emit a header-only csv") {
    ExperimentResult result;
    std::ostringstream out;
    write_csv(result, out);
    REQUIRE(out.str() ==
            "algorithm,n,L,lambda,eta,h,trials,successes,p_s,mean_tx,mean_hops,"
            "mean_slot_occupancy,seed\n");
}

TEST_CASE("emit writes files and rejects unknown formats") {
    ExperimentConfig cfg = small_config();
    const auto result = run_sweep(cfg);

    const std::string csv_path = "/tmp/wsnsim_emit_test.csv";
    emit(result, "csv", csv_path);
    std::ifstream csv_in(csv_path);
    std::string header;
    std::getline(csv_in, header);
    REQUIRE(header.rfind("algorithm,n,L,lambda", 0) == 0);

    const std::string json_path = "/tmp/wsnsim_emit_test.json";
    emit(result, "json", json_path);
    std::ifstream json_in(json_path);
    nlohmann::json doc;
    json_in >> doc;
    REQUIRE(doc.at("rows").size() == result.rows.size());

    REQUIRE_THROWS_AS(emit(result, "xml", "/tmp/wsnsim_emit_test.xml"),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(emit(result, "csv", "/nonexistent-dir/out.csv"),
                      std::runtime_error);
}

TEST_CASE("csv and json carry the same row values") {
    ExperimentConfig cfg = small_config();
    const auto result = run_sweep(cfg);
    const auto doc = result_to_json(result);
    REQUIRE(doc.at("rows").size() == result.rows.size());
    REQUIRE(doc.at("rows")[0].at("p_s").get<double>() == result.rows[0].p_s);
    REQUIRE(doc.at("config").at("n").get<std::size_t>() == cfg.n);
}

TEST_CASE("success rate never drops sharply as more nodes are queried") {
    ExperimentConfig cfg = small_config();
    cfg.n = 20;
    cfg.eta_start = 0.2;
    cfg.eta_stop = 1.0;
    cfg.eta_step = 0.2;
    cfg.trial_cap = 60;
    const auto result = run_sweep(cfg);
    for (std::size_t i = 1; i < result.rows.size(); ++i) {
        const double prev = result.rows[i - 1].p_s;
        const double cur = result.rows[i].p_s;
        const double sigma =
            std::sqrt(std::max(prev * (1 - prev), 0.25 / result.rows[i].trials) /
                      result.rows[i].trials);
        REQUIRE(cur >= prev - 3.0 * sigma - 1e-12);
    }
}

TEST_CASE("regressions reject degenerate sweeps") {
    const std::vector<double> x{2.0, 2.0, 2.0, 2.0};
    const std::vector<double> y{1.0, 2.0, 3.0, 4.0};
    REQUIRE_THROWS_AS(linear_fit(x, y), std::invalid_argument);

    ScalingConfig cfg;
    cfg.n_values = {50, 100};
    REQUIRE_THROWS_AS(verify_scaling(cfg), std::invalid_argument);
}

TEST_CASE("linear fit recovers an exact line") {
    const std::vector<double> x{1.0, 2.0, 3.0, 4.0};
    const std::vector<double> y{3.0, 5.0, 7.0, 9.0};
    const auto fit = linear_fit(x, y);
    REQUIRE(fit.slope == Catch::Approx(2.0));
    REQUIRE(fit.intercept == Catch::Approx(1.0));
    REQUIRE(fit.r_squared == Catch::Approx(1.0));
}

TEST_CASE("dsa2 traffic grows with the mixing metric mu(mu - lambda)") {
    const std::vector<double> radii{0.75, 0.9, 1.05, 1.2};
    const auto fit = dsa2_mixing_trend(250, 5.0, radii, 3, 0x717);
    REQUIRE(fit.slope > 0.0);
    REQUIRE(fit.r_squared >= 0.8);
}

TEST_CASE("buffer stats aggregate occupancy per run") {
    ExperimentConfig cfg = small_config();
    const auto result = run_sweep(cfg);
    const std::vector<ExperimentResult> results{result};
    const auto table = buffer_stats(results);
    REQUIRE(table.size() == 1);
    REQUIRE(table[0].n == 20);
    REQUIRE(table[0].mean_distinct_ids > 0.0);
    REQUIRE(table[0].occupancy_ratio ==
            Catch::Approx(table[0].mean_distinct_ids / 20.0));
}

TEST_CASE("graph rejection exhaustion names the offending deployment") {
    ExperimentConfig cfg = small_config();
    cfg.n = 10;
    cfg.side_length = 100.0;  // hopelessly sparse
    cfg.radius = 0.1;
    cfg.max_graph_attempts = 3;
    cfg.trial_cap = 1;
    try {
        run_sweep(cfg);
        FAIL("expected rejection exhaustion");
    } catch (const std::runtime_error& e) {
        const std::string msg = e.what();
        REQUIRE(msg.find("n=10") != std::string::npos);
        REQUIRE(msg.find("r=0.1") != std::string::npos);
    }
}

TEST_CASE("reused deployments still vary by trial seed") {
    ExperimentConfig cfg = small_config();
    cfg.reuse_graph = true;
    cfg.trial_cap = 5;
    const auto result = run_sweep(cfg);
    REQUIRE(result.rows[0].trials == 5);
}
