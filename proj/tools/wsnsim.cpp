// wsnsim: dissemination + decoding experiments over random sensor fields.
//
//   wsnsim run      Monte-Carlo sweep over the decoding ratio grid
//   wsnsim scaling  transmission-scaling regressions from a JSON config
//   wsnsim trace    single dissemination, newline-delimited JSON events
//
// Exit codes: 0 success, 1 configuration error, 2 integrity violation.

#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "wsnsim/wsnsim.hpp"

namespace {

struct RunArgs {
    wsnsim::ExperimentConfig config;
    std::string alg = "dsa1";
    std::string dist = "ideal";
    std::string out_path;
    std::string format = "csv";
};

void add_common_network_options(CLI::App* cmd, wsnsim::ExperimentConfig& cfg,
                                std::string& alg, std::string& dist) {
    cmd->add_option("--alg", alg, "Algorithm: dsa1 or dsa2")
        ->check(CLI::IsMember({"dsa1", "dsa2"}));
    cmd->add_option("--n", cfg.n, "Number of sensor nodes")->required();
    cmd->add_option("--side", cfg.side_length, "Field side length L")->required();
    cmd->add_option("--radius", cfg.radius, "Connectivity radius r")->required();
    cmd->add_option("--dist", dist, "Degree distribution: ideal or robust")
        ->check(CLI::IsMember({"ideal", "robust"}));
    cmd->add_option("--robust-c0", cfg.robust_c0, "Robust Soliton c0");
    cmd->add_option("--robust-delta", cfg.robust_delta, "Robust Soliton delta");
    cmd->add_option("--m", cfg.slot_count, "Buffers per node (0: use --m-ratio)");
    cmd->add_option("--m-ratio", cfg.slot_ratio, "Buffers per node as a fraction of n");
    cmd->add_option("--c-scale", cfg.c_scale, "DSA-II inference scale C");
    cmd->add_option("--seed", cfg.master_seed, "Master seed");
    cmd->add_flag("--strict-discard", cfg.strict_discard,
                  "Drop duplicate receipts instead of re-forwarding them");
}

int run_command(const RunArgs& args) {
    wsnsim::ExperimentConfig cfg = args.config;
    cfg.algorithm = wsnsim::algorithm_from_string(args.alg);
    cfg.dist_kind = wsnsim::dist_kind_from_string(args.dist);
    const wsnsim::ExperimentResult result = wsnsim::run_sweep(cfg);
    if (args.out_path.empty()) {
        if (args.format == "csv")
            wsnsim::write_csv(result, std::cout);
        else
            std::cout << wsnsim::result_to_json(result).dump(2) << '\n';
    } else {
        wsnsim::emit(result, args.format, args.out_path);
    }
    return 0;
}

int scaling_command(const std::string& config_path, const std::string& out_path) {
    std::ifstream in(config_path);
    if (!in) throw std::invalid_argument("cannot open config file: " + config_path);
    nlohmann::json doc;
    in >> doc;
    const wsnsim::ScalingConfig cfg = wsnsim::ScalingConfig::from_json(doc);
    const wsnsim::ScalingReport report = wsnsim::verify_scaling(cfg);
    const nlohmann::json out = report.to_json();
    if (out_path.empty()) {
        std::cout << out.dump(2) << '\n';
    } else {
        std::ofstream os(out_path);
        if (!os) throw std::runtime_error("cannot open output file: " + out_path);
        os << out.dump(2) << '\n';
    }
    return 0;
}

struct TraceArgs {
    wsnsim::ExperimentConfig config;
    std::string alg = "dsa1";
    std::string dist = "ideal";
    std::string out_path;
    std::string graph_out;
    std::string inference_out;
};

int trace_command(const TraceArgs& args) {
    wsnsim::ExperimentConfig cfg = args.config;
    cfg.algorithm = wsnsim::algorithm_from_string(args.alg);
    cfg.dist_kind = wsnsim::dist_kind_from_string(args.dist);
    if (cfg.n < 2) throw std::invalid_argument("trace: n must be >= 2");

    const wsnsim::NetworkGraph graph = wsnsim::accepted_graph(
        cfg.n, cfg.side_length, cfg.radius, wsnsim::derive_seed(cfg.master_seed, 1),
        cfg.max_graph_attempts);
    if (!args.graph_out.empty()) {
        std::ofstream os(args.graph_out);
        if (!os) throw std::runtime_error("cannot open output file: " + args.graph_out);
        os << graph.to_json().dump() << '\n';
    }
    if (!args.inference_out.empty()) {
        std::ofstream os(args.inference_out);
        if (!os) throw std::runtime_error("cannot open output file: " + args.inference_out);
        wsnsim::write_inference_csv(graph, cfg.c_scale, os);
    }

    wsnsim::Rng rng(wsnsim::derive_seed(cfg.master_seed, 2));
    const std::uint64_t payload_seed = wsnsim::derive_seed(cfg.master_seed, 3);
    const wsnsim::DegreeDistribution dist =
        cfg.dist_kind == wsnsim::DistKind::kIdeal
            ? wsnsim::DegreeDistribution::ideal(cfg.n)
            : wsnsim::DegreeDistribution::robust(cfg.n, cfg.robust_c0, cfg.robust_delta);
    wsnsim::EngineOptions options;
    options.strict_discard = cfg.strict_discard;
    options.record_trace = true;

    const wsnsim::DisseminationReport report =
        cfg.algorithm == wsnsim::Algorithm::kDsa1
            ? wsnsim::run_dsa1(graph, dist, cfg.resolved_slot_count(), payload_seed, rng,
                               options)
            : wsnsim::run_dsa2(graph, dist, cfg.resolved_slot_count(), cfg.c_scale,
                               payload_seed, rng, options);

    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!args.out_path.empty()) {
        file.open(args.out_path);
        if (!file) throw std::runtime_error("cannot open output file: " + args.out_path);
        out = &file;
    }
    for (const wsnsim::TraceEvent& e : report.trace) {
        nlohmann::json line = {{"round", e.round},   {"from", e.from},
                               {"to", e.to},         {"origin", e.origin},
                               {"counter", e.counter}, {"accepted", e.accepted}};
        *out << line.dump() << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Distributed storage simulator for random wireless sensor networks"};
    app.require_subcommand(1);

    RunArgs run_args;
    CLI::App* run = app.add_subcommand("run", "Monte-Carlo decoding-probability sweep");
    add_common_network_options(run, run_args.config, run_args.alg, run_args.dist);
    run->add_option("--eta-start", run_args.config.eta_start, "First decoding ratio");
    run->add_option("--eta-stop", run_args.config.eta_stop, "Last decoding ratio");
    run->add_option("--eta-step", run_args.config.eta_step, "Decoding ratio increment");
    run->add_option("--trials", run_args.config.trial_cap, "Trial cap per grid point");
    run->add_option("--sample-frac", run_args.config.sample_fraction,
                    "Sampled fraction of the C(n,h) query sets");
    run->add_flag("--reuse-graph", run_args.config.reuse_graph,
                  "Reuse one deployment across trials");
    run->add_option("--out", run_args.out_path, "Output path (default: stdout)");
    run->add_option("--format", run_args.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));

    std::string scaling_config, scaling_out;
    CLI::App* scaling = app.add_subcommand("scaling", "Transmission-scaling regressions");
    scaling->add_option("--config", scaling_config, "JSON scaling config")->required();
    scaling->add_option("--out", scaling_out, "Output path (default: stdout)");

    TraceArgs trace_args;
    CLI::App* trace = app.add_subcommand("trace", "Dump one dissemination as JSON events");
    add_common_network_options(trace, trace_args.config, trace_args.alg, trace_args.dist);
    trace->add_option("--out", trace_args.out_path, "Event output path (default: stdout)");
    trace->add_option("--graph-out", trace_args.graph_out, "Also dump the graph fixture");
    trace->add_option("--inference-out", trace_args.inference_out,
                      "Also dump the per-node inference table (CSV)");

    try {
        app.parse(argc, argv);
        if (run->parsed()) return run_command(run_args);
        if (scaling->parsed()) return scaling_command(scaling_config, scaling_out);
        if (trace->parsed()) return trace_command(trace_args);
        return 1;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const wsnsim::IntegrityError& e) {
        std::cerr << "integrity violation: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
