#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "wsnsim/decoder.hpp"
#include "wsnsim/flooding.hpp"
#include "wsnsim/inference.hpp"
#include "wsnsim/netgraph.hpp"
#include "wsnsim/soliton.hpp"

namespace wsnsim {

enum class Algorithm { kDsa1, kDsa2 };

inline std::string to_string(Algorithm a) {
    return a == Algorithm::kDsa1 ? "dsa1" : "dsa2";
}
inline std::string to_string(DistKind k) {
    return k == DistKind::kIdeal ? "ideal" : "robust";
}

inline Algorithm algorithm_from_string(const std::string& s) {
    if (s == "dsa1") return Algorithm::kDsa1;
    if (s == "dsa2") return Algorithm::kDsa2;
    throw std::invalid_argument("unknown algorithm: " + s);
}
inline DistKind dist_kind_from_string(const std::string& s) {
    if (s == "ideal") return DistKind::kIdeal;
    if (s == "robust") return DistKind::kRobust;
    throw std::invalid_argument("unknown distribution: " + s);
}

// Monte-Carlo sweep over the decoding ratio grid. A trial deploys a fresh
// graph (unless reuse_graph), disseminates every reading, queries
// h = round(eta * n) stores and attempts a full decode.
struct ExperimentConfig {
    Algorithm algorithm = Algorithm::kDsa1;
    std::size_t n = 0;
    double side_length = 1.0;
    double radius = 1.0;
    DistKind dist_kind = DistKind::kIdeal;
    double robust_c0 = 0.1;
    double robust_delta = 0.5;
    std::size_t slot_count = 0;  // 0: derive from slot_ratio
    double slot_ratio = 0.1;     // m = max(2, round(ratio * n))
    double c_scale = 1.0;        // DSA-II inference scale
    double eta_start = 0.1;
    double eta_stop = 1.0;
    double eta_step = 0.1;
    std::size_t trial_cap = 500;
    double sample_fraction = 1.0;  // fraction of the C(n,h) query choices
    std::uint64_t master_seed = 0;
    bool reuse_graph = false;
    bool strict_discard = false;
    std::size_t max_graph_attempts = 100;

    std::size_t resolved_slot_count() const {
        if (slot_count > 0) return slot_count;
        const auto m = static_cast<std::size_t>(
            std::llround(slot_ratio * static_cast<double>(n)));
        return std::max<std::size_t>(2, m);
    }

    std::vector<double> eta_grid() const {
        std::vector<double> grid;
        for (std::size_t i = 0;; ++i) {
            const double eta = eta_start + static_cast<double>(i) * eta_step;
            if (eta > eta_stop + 1e-9) break;
            grid.push_back(eta);
            if (eta_step <= 0.0) break;
        }
        return grid;
    }

    void validate() const {
        if (n < 2) throw std::invalid_argument("experiment: n must be >= 2");
        if (!(side_length > 0.0)) throw std::invalid_argument("experiment: side length > 0");
        if (!(radius > 0.0)) throw std::invalid_argument("experiment: radius > 0");
        if (resolved_slot_count() < 2)
            throw std::invalid_argument("experiment: need at least one coded slot");
        if (!(c_scale > 0.0)) throw std::invalid_argument("experiment: c_scale > 0");
        if (trial_cap < 1) throw std::invalid_argument("experiment: trial cap >= 1");
        if (!(sample_fraction > 0.0 && sample_fraction <= 1.0))
            throw std::invalid_argument("experiment: sample fraction in (0,1]");
        const auto grid = eta_grid();
        if (grid.empty()) throw std::invalid_argument("experiment: empty eta grid");
        for (double eta : grid)
            if (!(eta > 0.0 && eta <= 1.0 + 1e-9))
                throw std::invalid_argument("experiment: eta values must lie in (0,1]");
    }

    nlohmann::json to_json() const {
        return {{"algorithm", to_string(algorithm)},
                {"n", n},
                {"side_length", side_length},
                {"radius", radius},
                {"dist", to_string(dist_kind)},
                {"robust_c0", robust_c0},
                {"robust_delta", robust_delta},
                {"slot_count", slot_count},
                {"slot_ratio", slot_ratio},
                {"c_scale", c_scale},
                {"eta_start", eta_start},
                {"eta_stop", eta_stop},
                {"eta_step", eta_step},
                {"trial_cap", trial_cap},
                {"sample_fraction", sample_fraction},
                {"master_seed", master_seed},
                {"reuse_graph", reuse_graph},
                {"strict_discard", strict_discard},
                {"max_graph_attempts", max_graph_attempts}};
    }

    static ExperimentConfig from_json(const nlohmann::json& doc) {
        ExperimentConfig cfg;
        cfg.algorithm = algorithm_from_string(doc.at("algorithm").get<std::string>());
        cfg.n = doc.at("n").get<std::size_t>();
        cfg.side_length = doc.at("side_length").get<double>();
        cfg.radius = doc.at("radius").get<double>();
        if (doc.contains("dist"))
            cfg.dist_kind = dist_kind_from_string(doc.at("dist").get<std::string>());
        if (doc.contains("robust_c0")) cfg.robust_c0 = doc.at("robust_c0").get<double>();
        if (doc.contains("robust_delta")) cfg.robust_delta = doc.at("robust_delta").get<double>();
        if (doc.contains("slot_count")) cfg.slot_count = doc.at("slot_count").get<std::size_t>();
        if (doc.contains("slot_ratio")) cfg.slot_ratio = doc.at("slot_ratio").get<double>();
        if (doc.contains("c_scale")) cfg.c_scale = doc.at("c_scale").get<double>();
        if (doc.contains("eta_start")) cfg.eta_start = doc.at("eta_start").get<double>();
        if (doc.contains("eta_stop")) cfg.eta_stop = doc.at("eta_stop").get<double>();
        if (doc.contains("eta_step")) cfg.eta_step = doc.at("eta_step").get<double>();
        if (doc.contains("trial_cap")) cfg.trial_cap = doc.at("trial_cap").get<std::size_t>();
        if (doc.contains("sample_fraction"))
            cfg.sample_fraction = doc.at("sample_fraction").get<double>();
        if (doc.contains("master_seed"))
            cfg.master_seed = doc.at("master_seed").get<std::uint64_t>();
        if (doc.contains("reuse_graph")) cfg.reuse_graph = doc.at("reuse_graph").get<bool>();
        if (doc.contains("strict_discard"))
            cfg.strict_discard = doc.at("strict_discard").get<bool>();
        if (doc.contains("max_graph_attempts"))
            cfg.max_graph_attempts = doc.at("max_graph_attempts").get<std::size_t>();
        return cfg;
    }
};

struct ResultRow {
    Algorithm algorithm = Algorithm::kDsa1;
    std::size_t n = 0;
    double side_length = 0.0;
    double lambda = 0.0;
    double eta = 0.0;
    std::size_t h = 0;
    std::size_t trials = 0;
    std::size_t successes = 0;
    double p_s = 0.0;
    double mean_tx = 0.0;
    double mean_hops = 0.0;
    double mean_slot_occupancy = 0.0;
    std::uint64_t seed = 0;
};

struct ExperimentResult {
    ExperimentConfig config;
    std::vector<ResultRow> rows;
};

// Number of query trials at a grid point: the sampled fraction of the C(n,h)
// possible query sets, capped. C(n,h) overflows anything for moderate n, so
// the product stops as soon as it clears the cap.
inline std::size_t trial_count(std::size_t n, std::size_t h, double sample_fraction,
                               std::size_t cap) {
    const double limit = static_cast<double>(cap) / sample_fraction + 1.0;
    double combinations = 1.0;
    for (std::size_t i = 1; i <= h && combinations < limit; ++i)
        combinations *= static_cast<double>(n - h + i) / static_cast<double>(i);
    const double wanted = std::ceil(sample_fraction * combinations);
    if (wanted >= static_cast<double>(cap)) return cap;
    return std::max<std::size_t>(1, static_cast<std::size_t>(wanted));
}

// Deploys graphs until one has no isolated node. Degenerate deployments are
// rejected and regenerated under fresh sub-seeds.
inline NetworkGraph accepted_graph(std::size_t n, double side_length, double radius,
                                   std::uint64_t seed_base, std::size_t max_attempts) {
    for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
        NetworkConfig gc;
        gc.n = n;
        gc.side_length = side_length;
        gc.radius = radius;
        gc.rng_seed = derive_seed(seed_base, attempt);
        NetworkGraph graph = NetworkGraph::generate(gc);
        if (graph.isolated_nodes().empty()) return graph;
    }
    std::ostringstream msg;
    msg << "graph rejection exhausted after " << max_attempts << " attempts"
        << " (n=" << n << ", L=" << side_length << ", r=" << radius << ")";
    throw std::runtime_error(msg.str());
}

namespace detail {

inline DegreeDistribution make_distribution(const ExperimentConfig& cfg) {
    return cfg.dist_kind == DistKind::kIdeal
               ? DegreeDistribution::ideal(cfg.n)
               : DegreeDistribution::robust(cfg.n, cfg.robust_c0, cfg.robust_delta);
}

struct TrialOutcome {
    bool success = false;
    double tx = 0.0;
    double depth = 0.0;
    double occupancy = 0.0;
};

inline TrialOutcome run_trial(const ExperimentConfig& cfg, const NetworkGraph& graph,
                              const DegreeDistribution& dist, std::size_t h,
                              std::uint64_t trial_seed) {
    Rng rng(derive_seed(trial_seed, 2));
    const std::uint64_t payload_seed = derive_seed(trial_seed, 3);
    EngineOptions options;
    options.strict_discard = cfg.strict_discard;

    DisseminationReport report =
        cfg.algorithm == Algorithm::kDsa1
            ? run_dsa1(graph, dist, cfg.resolved_slot_count(), payload_seed, rng, options)
            : run_dsa2(graph, dist, cfg.resolved_slot_count(), cfg.c_scale, payload_seed,
                       rng, options);

    std::vector<Payload> truth(cfg.n);
    for (NodeId u = 0; u < cfg.n; ++u) truth[u] = sensor_reading(u, payload_seed);
    report.verify_xor_ledger(truth);

    TrialOutcome outcome;
    outcome.tx = static_cast<double>(report.tx_count);
    outcome.depth = report.mean_origin_depth();
    outcome.occupancy = report.mean_distinct_stored();

    const std::vector<NodeId> query = select_query(cfg.n, h, rng);
    const DecodeResult decode = solve(build_system(report.stores, query));
    if (decode.success) {
        for (NodeId u = 0; u < cfg.n; ++u)
            if (decode.payloads[u] != truth[u])
                throw IntegrityError("decode succeeded with wrong payloads");
        outcome.success = true;
    }
    return outcome;
}

}  // namespace detail

inline ExperimentResult run_sweep(const ExperimentConfig& cfg) {
    cfg.validate();
    ExperimentResult result;
    result.config = cfg;

    const DegreeDistribution dist = detail::make_distribution(cfg);
    std::optional<NetworkGraph> shared_graph;
    if (cfg.reuse_graph)
        shared_graph = accepted_graph(cfg.n, cfg.side_length, cfg.radius,
                                      derive_seed(cfg.master_seed, 0xF00D),
                                      cfg.max_graph_attempts);

    const std::vector<double> grid = cfg.eta_grid();
    for (std::size_t row_idx = 0; row_idx < grid.size(); ++row_idx) {
        const double eta = grid[row_idx];
        const std::size_t h =
            std::min<std::size_t>(cfg.n, std::max<std::size_t>(1, static_cast<std::size_t>(
                std::llround(eta * static_cast<double>(cfg.n)))));
        const std::size_t trials = trial_count(cfg.n, h, cfg.sample_fraction, cfg.trial_cap);
        const std::uint64_t row_seed = derive_seed(cfg.master_seed, 0x100 + row_idx);

        ResultRow row;
        row.algorithm = cfg.algorithm;
        row.n = cfg.n;
        row.side_length = cfg.side_length;
        row.lambda = static_cast<double>(cfg.n) / (cfg.side_length * cfg.side_length);
        row.eta = eta;
        row.h = h;
        row.trials = trials;
        row.seed = row_seed;

        double sum_tx = 0.0, sum_depth = 0.0, sum_occ = 0.0;
        for (std::size_t t = 0; t < trials; ++t) {
            const std::uint64_t trial_seed = derive_seed(row_seed, t);
            std::optional<NetworkGraph> fresh;
            if (!cfg.reuse_graph)
                fresh = accepted_graph(cfg.n, cfg.side_length, cfg.radius,
                                       derive_seed(trial_seed, 1), cfg.max_graph_attempts);
            const NetworkGraph& graph = cfg.reuse_graph ? *shared_graph : *fresh;
            const detail::TrialOutcome outcome =
                detail::run_trial(cfg, graph, dist, h, trial_seed);
            if (outcome.success) ++row.successes;
            sum_tx += outcome.tx;
            sum_depth += outcome.depth;
            sum_occ += outcome.occupancy;
        }
        const auto denom = static_cast<double>(trials);
        row.p_s = static_cast<double>(row.successes) / denom;
        row.mean_tx = sum_tx / denom;
        row.mean_hops = sum_depth / denom;
        row.mean_slot_occupancy = sum_occ / denom;
        result.rows.push_back(row);
    }
    return result;
}

// --- result emission ------------------------------------------------------

inline void write_csv(const ExperimentResult& result, std::ostream& out) {
    out << "algorithm,n,L,lambda,eta,h,trials,successes,p_s,mean_tx,mean_hops,"
           "mean_slot_occupancy,seed\n";
    out << std::setprecision(10);
    for (const ResultRow& r : result.rows) {
        out << to_string(r.algorithm) << ',' << r.n << ',' << r.side_length << ','
            << r.lambda << ',' << r.eta << ',' << r.h << ',' << r.trials << ','
            << r.successes << ',' << r.p_s << ',' << r.mean_tx << ',' << r.mean_hops << ','
            << r.mean_slot_occupancy << ',' << r.seed << '\n';
    }
}

inline nlohmann::json result_to_json(const ExperimentResult& result) {
    nlohmann::json rows = nlohmann::json::array();
    for (const ResultRow& r : result.rows)
        rows.push_back({{"algorithm", to_string(r.algorithm)},
                        {"n", r.n},
                        {"L", r.side_length},
                        {"lambda", r.lambda},
                        {"eta", r.eta},
                        {"h", r.h},
                        {"trials", r.trials},
                        {"successes", r.successes},
                        {"p_s", r.p_s},
                        {"mean_tx", r.mean_tx},
                        {"mean_hops", r.mean_hops},
                        {"mean_slot_occupancy", r.mean_slot_occupancy},
                        {"seed", r.seed}});
    return {{"config", result.config.to_json()}, {"rows", std::move(rows)}};
}

inline void emit(const ExperimentResult& result, const std::string& format,
                 const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    if (format == "csv")
        write_csv(result, out);
    else if (format == "json")
        out << result_to_json(result).dump(2) << '\n';
    else
        throw std::invalid_argument("unknown output format: " + format);
    if (!out.good()) throw std::runtime_error("write failed: " + path);
}

// --- scaling checks ---------------------------------------------------------

struct RegressionFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

// Ordinary least squares y = slope * x + intercept. Throws on fewer than two
// points or an x range with no variance (degenerate sweep).
inline RegressionFit linear_fit(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("linear fit: need >= 2 paired points");
    const auto nd = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= nd;
    my /= nd;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx <= 0.0) throw std::invalid_argument("linear fit: x values have no variance");
    RegressionFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r_squared = syy <= 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
    return fit;
}

struct ScalingConfig {
    Algorithm algorithm = Algorithm::kDsa1;
    std::vector<std::size_t> n_values;
    double lambda = 5.0;  // fixed density; side length follows sqrt(n/lambda)
    double radius = 1.0;
    DistKind dist_kind = DistKind::kIdeal;
    double robust_c0 = 0.1;
    double robust_delta = 0.5;
    std::size_t slot_count = 0;
    double slot_ratio = 0.1;
    double c_scale = 1.0;
    std::size_t seeds_per_point = 8;
    std::uint64_t master_seed = 0;
    bool strict_discard = false;
    std::size_t max_graph_attempts = 100;

    void validate() const {
        if (n_values.size() < 4)
            throw std::invalid_argument("scaling: need at least 4 network sizes");
        if (!(lambda > 0.0)) throw std::invalid_argument("scaling: lambda > 0");
        if (!(radius > 0.0)) throw std::invalid_argument("scaling: radius > 0");
        if (seeds_per_point < 1) throw std::invalid_argument("scaling: seeds >= 1");
    }

    nlohmann::json to_json() const {
        return {{"algorithm", to_string(algorithm)},
                {"n_values", n_values},
                {"lambda", lambda},
                {"radius", radius},
                {"dist", to_string(dist_kind)},
                {"robust_c0", robust_c0},
                {"robust_delta", robust_delta},
                {"slot_count", slot_count},
                {"slot_ratio", slot_ratio},
                {"c_scale", c_scale},
                {"seeds_per_point", seeds_per_point},
                {"master_seed", master_seed},
                {"strict_discard", strict_discard}};
    }

    static ScalingConfig from_json(const nlohmann::json& doc) {
        ScalingConfig cfg;
        cfg.algorithm = algorithm_from_string(doc.at("algorithm").get<std::string>());
        cfg.n_values = doc.at("n_values").get<std::vector<std::size_t>>();
        cfg.lambda = doc.at("lambda").get<double>();
        cfg.radius = doc.at("radius").get<double>();
        if (doc.contains("dist"))
            cfg.dist_kind = dist_kind_from_string(doc.at("dist").get<std::string>());
        if (doc.contains("robust_c0")) cfg.robust_c0 = doc.at("robust_c0").get<double>();
        if (doc.contains("robust_delta")) cfg.robust_delta = doc.at("robust_delta").get<double>();
        if (doc.contains("slot_count")) cfg.slot_count = doc.at("slot_count").get<std::size_t>();
        if (doc.contains("slot_ratio")) cfg.slot_ratio = doc.at("slot_ratio").get<double>();
        if (doc.contains("c_scale")) cfg.c_scale = doc.at("c_scale").get<double>();
        if (doc.contains("seeds_per_point"))
            cfg.seeds_per_point = doc.at("seeds_per_point").get<std::size_t>();
        if (doc.contains("master_seed"))
            cfg.master_seed = doc.at("master_seed").get<std::uint64_t>();
        if (doc.contains("strict_discard"))
            cfg.strict_discard = doc.at("strict_discard").get<bool>();
        return cfg;
    }
};

struct ScalingPoint {
    std::size_t n = 0;
    double side_length = 0.0;
    double mean_degree = 0.0;
    double mean_total_tx = 0.0;
    double mean_origin_tx = 0.0;
    double mean_depth = 0.0;
    double budget = 0.0;  // n / mu
};

struct ScalingReport {
    Algorithm algorithm = Algorithm::kDsa1;
    std::vector<ScalingPoint> points;
    RegressionFit total_tx_loglog;   // log total tx vs log n
    RegressionFit origin_tx_loglog;  // log per-origin tx vs log n
    RegressionFit depth_vs_budget;   // mean depth vs n/mu, linear

    nlohmann::json to_json() const {
        nlohmann::json pts = nlohmann::json::array();
        for (const ScalingPoint& p : points)
            pts.push_back({{"n", p.n},
                           {"L", p.side_length},
                           {"mean_degree", p.mean_degree},
                           {"mean_total_tx", p.mean_total_tx},
                           {"mean_origin_tx", p.mean_origin_tx},
                           {"mean_depth", p.mean_depth},
                           {"n_over_mu", p.budget}});
        const auto fit_json = [](const RegressionFit& f) {
            return nlohmann::json{
                {"slope", f.slope}, {"intercept", f.intercept}, {"r_squared", f.r_squared}};
        };
        return {{"algorithm", to_string(algorithm)},
                {"points", std::move(pts)},
                {"total_tx_loglog", fit_json(total_tx_loglog)},
                {"origin_tx_loglog", fit_json(origin_tx_loglog)},
                {"depth_vs_budget", fit_json(depth_vs_budget)}};
    }
};

// Transmission-count scaling across network sizes at fixed density. Each
// point averages seeds_per_point independent deployments.
inline ScalingReport verify_scaling(const ScalingConfig& cfg) {
    cfg.validate();
    ScalingReport report;
    report.algorithm = cfg.algorithm;

    for (std::size_t point_idx = 0; point_idx < cfg.n_values.size(); ++point_idx) {
        const std::size_t n = cfg.n_values[point_idx];
        const double side = std::sqrt(static_cast<double>(n) / cfg.lambda);
        const DegreeDistribution dist =
            cfg.dist_kind == DistKind::kIdeal
                ? DegreeDistribution::ideal(n)
                : DegreeDistribution::robust(n, cfg.robust_c0, cfg.robust_delta);
        const std::size_t m =
            cfg.slot_count > 0
                ? cfg.slot_count
                : std::max<std::size_t>(2, static_cast<std::size_t>(std::llround(
                                               cfg.slot_ratio * static_cast<double>(n))));

        ScalingPoint point;
        point.n = n;
        point.side_length = side;
        for (std::size_t s = 0; s < cfg.seeds_per_point; ++s) {
            const std::uint64_t trial_seed =
                derive_seed(cfg.master_seed, point_idx * 100003 + s);
            const NetworkGraph graph = accepted_graph(n, side, cfg.radius,
                                                      derive_seed(trial_seed, 1),
                                                      cfg.max_graph_attempts);
            Rng rng(derive_seed(trial_seed, 2));
            EngineOptions options;
            options.strict_discard = cfg.strict_discard;
            const DisseminationReport run =
                cfg.algorithm == Algorithm::kDsa1
                    ? run_dsa1(graph, dist, m, derive_seed(trial_seed, 3), rng, options)
                    : run_dsa2(graph, dist, m, cfg.c_scale, derive_seed(trial_seed, 3), rng,
                               options);
            point.mean_degree += graph.mean_degree();
            point.mean_total_tx += static_cast<double>(run.tx_count);
            point.mean_origin_tx += run.mean_origin_tx();
            point.mean_depth += run.mean_origin_depth();
        }
        const auto denom = static_cast<double>(cfg.seeds_per_point);
        point.mean_degree /= denom;
        point.mean_total_tx /= denom;
        point.mean_origin_tx /= denom;
        point.mean_depth /= denom;
        point.budget = static_cast<double>(n) / point.mean_degree;
        report.points.push_back(point);
    }

    std::vector<double> log_n, log_total, log_origin, budget, depth;
    for (const ScalingPoint& p : report.points) {
        log_n.push_back(std::log(static_cast<double>(p.n)));
        log_total.push_back(std::log(p.mean_total_tx));
        log_origin.push_back(std::log(p.mean_origin_tx));
        budget.push_back(p.budget);
        depth.push_back(p.mean_depth);
    }
    report.total_tx_loglog = linear_fit(log_n, log_total);
    report.origin_tx_loglog = linear_fit(log_n, log_origin);
    report.depth_vs_budget = linear_fit(budget, depth);
    return report;
}

// Per-origin transmission trend of the size-oblivious algorithm against the
// mixing metric mu * (mu - lambda), swept by radius at fixed n and density.
// Points whose metric is not positive (mu <= lambda) are skipped; the fit is
// log-log over the rest, qualitative trend only.
inline RegressionFit dsa2_mixing_trend(std::size_t n, double lambda,
                                       std::span<const double> radii,
                                       std::size_t seeds_per_point,
                                       std::uint64_t master_seed) {
    if (radii.size() < 3)
        throw std::invalid_argument("mixing trend: need at least 3 radii");
    const double side = std::sqrt(static_cast<double>(n) / lambda);
    const DegreeDistribution dist = DegreeDistribution::ideal(n);
    const std::size_t m = std::max<std::size_t>(2, n / 10);

    std::vector<double> log_metric, log_tx;
    for (std::size_t i = 0; i < radii.size(); ++i) {
        double mu = 0.0, origin_tx = 0.0;
        for (std::size_t s = 0; s < seeds_per_point; ++s) {
            const std::uint64_t trial_seed = derive_seed(master_seed, i * 1009 + s);
            const NetworkGraph graph =
                accepted_graph(n, side, radii[i], derive_seed(trial_seed, 1), 100);
            Rng rng(derive_seed(trial_seed, 2));
            const DisseminationReport run =
                run_dsa2(graph, dist, m, 1.0, derive_seed(trial_seed, 3), rng);
            mu += graph.mean_degree();
            origin_tx += run.mean_origin_tx();
        }
        mu /= static_cast<double>(seeds_per_point);
        origin_tx /= static_cast<double>(seeds_per_point);
        const double metric = mu * (mu - lambda);
        if (metric <= 0.0) continue;
        log_metric.push_back(std::log(metric));
        log_tx.push_back(std::log(origin_tx));
    }
    return linear_fit(log_metric, log_tx);
}

// --- buffer occupancy table -------------------------------------------------

struct BufferStatsRow {
    Algorithm algorithm = Algorithm::kDsa1;
    std::size_t n = 0;
    double lambda = 0.0;
    double mean_distinct_ids = 0.0;
    double occupancy_ratio = 0.0;  // mean_distinct_ids / n
};

// Distinct-ID storage per node for each completed run, for the
// DSA-I vs DSA-II buffer comparison.
inline std::vector<BufferStatsRow> buffer_stats(std::span<const ExperimentResult> results) {
    std::vector<BufferStatsRow> table;
    for (const ExperimentResult& result : results) {
        if (result.rows.empty()) continue;
        BufferStatsRow row;
        row.algorithm = result.config.algorithm;
        row.n = result.config.n;
        row.lambda = result.rows.front().lambda;
        double occ = 0.0;
        for (const ResultRow& r : result.rows) occ += r.mean_slot_occupancy;
        row.mean_distinct_ids = occ / static_cast<double>(result.rows.size());
        row.occupancy_ratio = row.mean_distinct_ids / static_cast<double>(row.n);
        table.push_back(row);
    }
    return table;
}

}  // namespace wsnsim
