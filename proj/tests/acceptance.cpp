// Acceptance suite: one self-contained check per criterion, each printing a
// single PASS/FAIL line. Run with no arguments for the full battery or pass
// criterion numbers to run a subset.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "support/oracles.hpp"
#include "wsnsim/wsnsim.hpp"

using namespace wsnsim;

namespace {

// Deployment radii and sweep densities. The decode-probability suites use a
// [2,2]^2 field; the scaling suites keep the density fixed while n grows so
// the mean degree stays flat. Radii are calibrated so connectivity holds and
// hop budgets exceed the field diameter.
constexpr double kFieldRadius = 0.6;     // criteria 1-4
constexpr double kScalingRadius = 0.5;   // criteria 5-6
constexpr double kScalingLambda = 12.5;  // criteria 5-6

ExperimentConfig field_config(Algorithm alg, std::size_t n, double side, double eta_lo,
                              double eta_hi, std::uint64_t seed) {
    ExperimentConfig cfg;
    cfg.algorithm = alg;
    cfg.n = n;
    cfg.side_length = side;
    cfg.radius = kFieldRadius;
    cfg.dist_kind = DistKind::kIdeal;
    cfg.eta_start = eta_lo;
    cfg.eta_stop = eta_hi;
    cfg.eta_step = 0.1;
    cfg.trial_cap = 500;
    cfg.master_seed = seed;
    return cfg;
}

double binomial_sigma(double p, std::size_t trials) {
    const double var = std::max(p * (1.0 - p), 1e-4);
    return std::sqrt(var / static_cast<double>(trials));
}

// --- criteria ---------------------------------------------------------------

bool criterion_1(std::string& detail) {
    // DSA-I, lambda = 12.5 on [2,2]^2, m = round(0.1 n), P_s at eta = 0.3.
    auto cfg = field_config(Algorithm::kDsa1, 50, 2.0, 0.3, 0.3, 101);
    const auto result = run_sweep(cfg);
    const double p = result.rows.at(0).p_s;
    std::ostringstream os;
    os << "P_s(eta=0.3) = " << p << " over " << result.rows.at(0).trials
       << " trials, need >= 0.60";
    detail = os.str();
    return p >= 0.60;
}

bool criterion_2(std::string& detail) {
    // DSA-I density effect at eta = 0.5: strictly increasing beyond 3 sigma
    // and >= 0.85 at lambda = 12.5.
    const std::vector<std::size_t> ns{10, 30, 50};  // lambda = 2.5, 7.5, 12.5
    std::vector<double> ps;
    std::size_t trials = 0;
    for (std::size_t n : ns) {
        auto cfg = field_config(Algorithm::kDsa1, n, 2.0, 0.5, 0.5, 202);
        const auto result = run_sweep(cfg);
        ps.push_back(result.rows.at(0).p_s);
        trials = result.rows.at(0).trials;
    }
    std::ostringstream os;
    os << "P_s(eta=0.5) by lambda {2.5, 7.5, 12.5} = {" << ps[0] << ", " << ps[1] << ", "
       << ps[2] << "}";
    detail = os.str();
    bool increasing = true;
    for (std::size_t i = 1; i < ps.size(); ++i) {
        const double sigma = binomial_sigma(ps[i - 1], trials);
        increasing = increasing && (ps[i] > ps[i - 1] + 3.0 * sigma);
    }
    return increasing && ps.back() >= 0.85;
}

bool criterion_3(std::string& detail) {
    // DSA-II with C = 1 on the same field: P_s >= 0.60 at eta = 0.4 and
    // >= 0.70 at eta = 0.5.
    auto cfg = field_config(Algorithm::kDsa2, 50, 2.0, 0.4, 0.5, 303);
    const auto result = run_sweep(cfg);
    const double p4 = result.rows.at(0).p_s;
    const double p5 = result.rows.at(1).p_s;
    std::ostringstream os;
    os << "P_s(eta=0.4) = " << p4 << ", P_s(eta=0.5) = " << p5
       << ", need >= 0.60 / >= 0.70";
    detail = os.str();
    return p4 >= 0.60 && p5 >= 0.70;
}

bool criterion_4(std::string& detail) {
    // Buffer growth on the [5,5]^2 field with ample slots: distinct stored
    // IDs per node in [0.05, 0.20] of n, increasing with density.
    const std::vector<double> lambdas{4.0, 8.0, 12.0, 16.0, 20.0};
    std::vector<double> ratios, raw;
    for (double lambda : lambdas) {
        const auto n = static_cast<std::size_t>(std::llround(lambda * 25.0));
        auto cfg = field_config(Algorithm::kDsa1, n, 5.0, 0.5, 0.5, 404);
        cfg.slot_count = n;  // ample: capacity never limits acceptance
        cfg.trial_cap = 10;
        const auto result = run_sweep(cfg);
        const double occ = result.rows.at(0).mean_slot_occupancy;
        raw.push_back(occ);
        ratios.push_back(occ / static_cast<double>(n));
    }
    std::ostringstream os;
    os << "occupancy/n by lambda = {";
    for (std::size_t i = 0; i < ratios.size(); ++i)
        os << (i ? ", " : "") << ratios[i];
    os << "}, raw = {";
    for (std::size_t i = 0; i < raw.size(); ++i) os << (i ? ", " : "") << raw[i];
    os << "}";
    detail = os.str();
    bool in_band = true;
    for (double r : ratios) in_band = in_band && r >= 0.05 && r <= 0.20;
    bool growing = true;
    for (std::size_t i = 1; i < raw.size(); ++i) growing = growing && raw[i] > raw[i - 1];
    return in_band && growing;
}

ScalingConfig scaling_config(Algorithm alg, std::uint64_t seed) {
    ScalingConfig cfg;
    cfg.algorithm = alg;
    cfg.n_values = {50, 100, 200, 400};
    cfg.lambda = kScalingLambda;
    cfg.radius = kScalingRadius;
    cfg.seeds_per_point = 8;
    cfg.master_seed = seed;
    return cfg;
}

bool criterion_5(std::string& detail) {
    // DSA-I total transmissions grow quadratically: log-log slope 2 +- 0.3
    // with R^2 >= 0.9.
    const auto report = verify_scaling(scaling_config(Algorithm::kDsa1, 505));
    const auto fit = report.total_tx_loglog;
    std::ostringstream os;
    os << "total-tx slope = " << fit.slope << " (R^2 = " << fit.r_squared
       << "), need 2.0 +- 0.3 with R^2 >= 0.9";
    detail = os.str();
    return std::abs(fit.slope - 2.0) <= 0.3 && fit.r_squared >= 0.9;
}

bool criterion_6(std::string& detail) {
    // DSA-I per-packet chain depth tracks n/mu.
    const auto report = verify_scaling(scaling_config(Algorithm::kDsa1, 606));
    const auto fit = report.depth_vs_budget;
    std::ostringstream os;
    os << "depth-vs-(n/mu) slope = " << fit.slope << " (R^2 = " << fit.r_squared
       << "), need positive slope with R^2 >= 0.8";
    detail = os.str();
    return fit.slope > 0.0 && fit.r_squared >= 0.8;
}

bool criterion_7(std::string& detail) {
    // DSA-II per-origin transmissions are n-free at a fixed degree profile,
    // in contrast with DSA-I. The sweep starts at n = 200 so the boundary
    // share of the field, and with it the degree profile, stays flat while n
    // grows 8x; the inferred hop budgets never depend on n by construction.
    ScalingConfig cfg;
    cfg.n_values = {200, 400, 800, 1600};
    cfg.lambda = 5.0;
    cfg.radius = 0.75;
    cfg.seeds_per_point = 6;
    cfg.master_seed = 707;
    cfg.algorithm = Algorithm::kDsa2;
    const auto dsa2 = verify_scaling(cfg);
    cfg.algorithm = Algorithm::kDsa1;
    const auto dsa1 = verify_scaling(cfg);
    const double slope2 = dsa2.origin_tx_loglog.slope;
    const double slope1 = dsa1.origin_tx_loglog.slope;
    std::ostringstream os;
    os << "per-origin slope vs n: dsa2 = " << slope2 << " (need 0 +- 0.3), dsa1 = "
       << slope1 << " (contrast, positive)";
    detail = os.str();
    return std::abs(slope2) <= 0.3 && slope1 > 0.3;
}

bool criterion_8(std::string& detail) {
    // Exhaustive decoder oracle on 1000 random systems with n <= 12.
    Rng rng(0x8888);
    std::size_t agreements = 0;
    const std::size_t instances = 1000;
    for (std::size_t i = 0; i < instances; ++i) {
        const std::size_t n = 1 + rng.next_index(12);
        std::vector<Payload> truth;
        for (std::size_t u = 0; u < n; ++u)
            truth.push_back(sensor_reading(static_cast<NodeId>(u), 3000 + i));
        const auto system =
            testing::random_system(truth, 1 + rng.next_index(2 * n), 4, rng);
        const std::size_t count = testing::homogeneous_solution_count(system);
        const auto res = solve(system);
        const bool agree = count == 1
                               ? (res.success && res.payloads == truth)
                               : (!res.success &&
                                  (std::size_t(1) << res.rank_deficit) == count);
        if (agree) ++agreements;
    }
    std::ostringstream os;
    os << agreements << "/" << instances << " oracle agreements, need 100%";
    detail = os.str();
    return agreements == instances;
}

bool criterion_9(std::string& detail) {
    // XOR ledger across the simulation battery. Every coded slot must equal
    // the XOR of the true readings it lists. The suites above already verify
    // this on every trial (violations throw); this check runs its own sweep
    // across both algorithms and both field setups.
    std::size_t sims = 0;
    try {
        for (const Algorithm alg : {Algorithm::kDsa1, Algorithm::kDsa2}) {
            for (const std::size_t n : {20u, 50u, 120u}) {
                for (std::uint64_t s = 0; s < 10; ++s) {
                    const double side = std::sqrt(static_cast<double>(n) / 12.5);
                    const auto graph = accepted_graph(n, side, kFieldRadius,
                                                      derive_seed(909, n * 10 + s), 100);
                    Rng rng(derive_seed(910, n * 10 + s));
                    const auto dist = DegreeDistribution::ideal(n);
                    const std::uint64_t payload_seed = derive_seed(911, n * 10 + s);
                    const auto report =
                        alg == Algorithm::kDsa1
                            ? run_dsa1(graph, dist, std::max<std::size_t>(2, n / 10),
                                       payload_seed, rng)
                            : run_dsa2(graph, dist, std::max<std::size_t>(2, n / 10), 1.0,
                                       payload_seed, rng);
                    std::vector<Payload> truth;
                    for (NodeId u = 0; u < n; ++u)
                        truth.push_back(sensor_reading(u, payload_seed));
                    report.verify_xor_ledger(truth);
                    ++sims;
                }
            }
        }
    } catch (const IntegrityError& e) {
        detail = std::string("ledger violation: ") + e.what();
        return false;
    }
    std::ostringstream os;
    os << sims << " simulations verified with zero ledger violations";
    detail = os.str();
    return true;
}

bool criterion_10(std::string& detail) {
    // Update protocol: disseminate, push one delta, decode with h = n. The
    // updated origin must come back as the new value, everything else
    // untouched, on all 200 instances.
    std::size_t ok = 0;
    const std::size_t instances = 200;
    for (std::size_t i = 0; i < instances; ++i) {
        Rng rng(derive_seed(0x1010, i));
        const std::size_t n = 2 + rng.next_index(9);  // 2..10
        const auto graph = accepted_graph(n, 1.5, 1.2, derive_seed(0x1011, i), 200);
        const auto dist = DegreeDistribution::ideal(n);
        const std::uint64_t payload_seed = derive_seed(0x1012, i);
        auto report = run_dsa1(graph, dist, std::max<std::size_t>(2, n / 2),
                               payload_seed, rng);

        const auto origin = static_cast<NodeId>(rng.next_index(n));
        const Payload fresh = rng.next_u64();
        broadcast_update(report.stores, origin, fresh);

        std::vector<Payload> expect;
        for (NodeId u = 0; u < n; ++u) expect.push_back(sensor_reading(u, payload_seed));
        expect[origin] = fresh;

        std::vector<NodeId> all(n);
        for (NodeId u = 0; u < n; ++u) all[u] = u;
        const auto res = solve(build_system(report.stores, all));
        if (res.success && res.payloads == expect) ++ok;
    }
    std::ostringstream os;
    os << ok << "/" << instances << " updated instances decoded exactly, need 100%";
    detail = os.str();
    return ok == instances;
}

bool criterion_11(std::string& detail) {
    // Byte-identical CSV under a fixed master seed.
    auto cfg = field_config(Algorithm::kDsa1, 50, 2.0, 0.2, 0.4, 111);
    cfg.trial_cap = 50;
    std::ostringstream a, b;
    write_csv(run_sweep(cfg), a);
    write_csv(run_sweep(cfg), b);
    auto cfg2 = field_config(Algorithm::kDsa2, 30, 2.0, 0.3, 0.5, 222);
    cfg2.trial_cap = 30;
    std::ostringstream c, d;
    write_csv(run_sweep(cfg2), c);
    write_csv(run_sweep(cfg2), d);
    const bool same = a.str() == b.str() && c.str() == d.str();
    detail = same ? "reruns byte-identical for dsa1 and dsa2 sweeps"
                  : "rerun outputs differ";
    return same;
}

struct Criterion {
    int id;
    const char* name;
    std::function<bool(std::string&)> run;
};

const std::vector<Criterion>& all_criteria() {
    static const std::vector<Criterion> list = {
        {1, "dsa1 decoding probability at eta 0.3", criterion_1},
        {2, "dsa1 density effect at eta 0.5", criterion_2},
        {3, "dsa2 decoding probability at eta 0.4/0.5", criterion_3},
        {4, "buffer occupancy near 10% of n", criterion_4},
        {5, "dsa1 total transmissions scale as n^2", criterion_5},
        {6, "dsa1 chain depth tracks n/mu", criterion_6},
        {7, "dsa2 per-origin transmissions are n-free", criterion_7},
        {8, "decoder matches exhaustive oracle", criterion_8},
        {9, "xor ledger holds across simulations", criterion_9},
        {10, "update protocol refreshes one origin exactly", criterion_10},
        {11, "seeded reruns are byte-identical", criterion_11},
    };
    return list;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> wanted;
    for (int i = 1; i < argc; ++i) wanted.push_back(std::atoi(argv[i]));

    int failures = 0;
    for (const Criterion& c : all_criteria()) {
        if (!wanted.empty() &&
            std::find(wanted.begin(), wanted.end(), c.id) == wanted.end())
            continue;
        std::string detail;
        bool ok = false;
        try {
            ok = c.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        std::printf("[%s] criterion %2d: %s :: %s\n", ok ? "PASS" : "FAIL", c.id, c.name,
                    detail.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
