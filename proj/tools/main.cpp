#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <tuple>

#include <CLI11.hpp>
#ifdef _OPENMP
#include <omp.h>
#endif

#include "cvgraph/experiment.hpp"
#include "cvgraph/oracle.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitPhysics = 2;
constexpr int kExitCertificate = 3;

void apply_thread_env() {
    const char* env = std::getenv("CVGRAPH_THREADS");
    if (env == nullptr) return;
    const std::string value(env);
    std::size_t used = 0;
    int threads = 0;
    try {
        threads = std::stoi(value, &used);
    } catch (const std::exception&) {
        throw cvgraph::ConfigError("CVGRAPH_THREADS: expected an integer >= 1, got '" + value +
                                   "'");
    }
    if (used != value.size() || threads < 1)
        throw cvgraph::ConfigError("CVGRAPH_THREADS: expected an integer >= 1, got '" + value +
                                   "'");
#ifdef _OPENMP
    omp_set_num_threads(threads);
#endif
}

json load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw cvgraph::ConfigError("cannot open config file '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw cvgraph::ConfigError("invalid JSON in '" + path + "': " + e.what());
    }
}

void print_summary(const cvgraph::ExperimentReport& report, std::ostream& os) {
    os << "success trace    " << report.success_trace << "\n";
    os << "full-state W     " << (report.full_state.negative ? "negative" : "non-negative")
       << " (trace " << report.full_state.trace << ")\n";
    os << "certificate      " << (report.certificate.pass ? "pass" : "FAIL")
       << " (max outside entry " << report.certificate.max_outside_entry << ")\n";
    for (const auto& m : report.metrics) {
        os << "vertex " << m.vertex << ": kurtosis_x " << m.kurtosis_x << ", kurtosis_p "
           << m.kurtosis_p << ", relative_purity " << m.relative_purity << ", W(0) "
           << (m.negative ? "negative" : "non-negative") << "\n";
    }
}

int cmd_run(const std::string& config_path, const std::string& out_dir) {
    const cvgraph::ExperimentConfig config = cvgraph::parse_config(load_config_file(config_path));
    const cvgraph::ExperimentReport report = cvgraph::run_experiment(config);

    if (report.renormalized_coefficients)
        std::cerr << "warning: operation coefficients renormalized (norm was off by > 1e-9)\n";

    fs::create_directories(out_dir);
    for (const auto& artifact : report.grids) {
        const fs::path path = fs::path(out_dir) / artifact.filename;
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
        cvgraph::write_grid_csv(out, artifact.grid);
        std::cout << "wrote " << path.string() << "\n";
    }
    const fs::path report_path = fs::path(out_dir) / "report.json";
    {
        std::ofstream out(report_path);
        if (!out) throw std::runtime_error("cannot write '" + report_path.string() + "'");
        out << cvgraph::report_to_json(report).dump(2) << "\n";
    }
    std::cout << "wrote " << report_path.string() << "\n";

    print_summary(report, std::cout);
    return report.certificate.pass ? kExitOk : kExitCertificate;
}

int cmd_verify(const std::string& config_path) {
    const cvgraph::ExperimentConfig config = cvgraph::parse_config(load_config_file(config_path));

    const cvgraph::Graph graph = config.graph.build();
    const int m = graph.vertex_count();
    const cvgraph::CovarianceMatrix v =
        cvgraph::graph_state_covariance(cvgraph::v0_from_squeezing(config.squeezing.build(m)),
                                        graph);
    bool renormalized = false;
    const cvgraph::ModeVector mode = config.operation.build(m, renormalized);
    const cvgraph::NonGaussMatrix a = cvgraph::build_A(v, mode, config.operation.sign);

    int failures = 0;
    auto check = [&failures](const std::string& label, double got, double want, double tol) {
        const bool ok = std::abs(got - want) <= tol;
        if (!ok) ++failures;
        std::cout << (ok ? "[ok]   " : "[FAIL] ") << label << ": " << got << " (expected " << want
                  << " +- " << tol << ")\n";
    };

    const auto cert = cvgraph::locality_certificate(graph, v, a, mode.support());
    if (!cert.pass) ++failures;
    std::cout << (cert.pass ? "[ok]   " : "[FAIL] ") << "locality certificate: max outside entry "
              << cert.max_outside_entry << " (tolerance " << cert.tolerance << ")\n";

    constexpr double kTol = 1e-6;
    constexpr int kOraclePoints = 301;
    for (int k = 0; k < m; ++k) {
        const cvgraph::VertexSet vs{k};
        const cvgraph::CovarianceMatrix vk = cvgraph::reduce_covariance(v, vs);
        const cvgraph::NonGaussMatrix ak = cvgraph::reduce_A(a, vs);
        const auto grid = cvgraph::wigner_grid(vk, ak, cvgraph::default_axes(vk, kOraclePoints));
        const std::string tag = "vertex " + std::to_string(k);

        check(tag + " normalization", cvgraph::integrate_grid(grid, cvgraph::Integrand::w()), 1.0,
              kTol);
        check(tag + " purity", cvgraph::purity_from_grid(grid),
              cvgraph::purity_nongaussian(vk, ak), kTol);
        for (const auto& [quad, axis, qname] : {std::tuple{cvgraph::Quadrature::X, 0, "x"},
                                                std::tuple{cvgraph::Quadrature::P, 1, "p"}}) {
            for (int order : {2, 4}) {
                const double want = cvgraph::quadrature_moment(vk, ak, 0, quad, order);
                check(tag + " <" + qname + "^" + std::to_string(order) + ">",
                      cvgraph::moment_from_grid(grid, axis, order), want,
                      kTol * std::max(1.0, std::abs(want)));
            }
        }
    }

    if (failures == 0) {
        std::cout << "verify: all checks passed\n";
        return kExitOk;
    }
    std::cout << "verify: " << failures << " check(s) failed\n";
    return kExitCertificate;
}

int cmd_preset(const std::string& name, const std::string& emit_path) {
    const cvgraph::ExperimentConfig config = cvgraph::preset(name);
    const json j = cvgraph::config_to_json(config);
    if (emit_path.empty()) {
        std::cout << j.dump(2) << "\n";
        return kExitOk;
    }
    std::ofstream out(emit_path);
    if (!out) throw std::runtime_error("cannot write '" + emit_path + "'");
    out << j.dump(2) << "\n";
    std::cout << "wrote " << emit_path << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Continuous-variable graph states with mode-selective photon addition and "
                 "subtraction"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    auto* run = app.add_subcommand("run", "Run an experiment config and write report + grids");
    run->add_option("--config", config_path, "Experiment config (JSON)")->required();
    run->add_option("--out-dir", out_dir, "Output directory (default: current)");

    std::string verify_config;
    auto* verify =
        app.add_subcommand("verify", "Run the locality certificate and oracle cross-checks");
    verify->add_option("--config", verify_config, "Experiment config (JSON)")->required();

    std::string preset_name;
    std::string emit_path;
    auto* preset_cmd = app.add_subcommand("preset", "Print or write a bundled scenario config");
    preset_cmd->add_option("--name", preset_name, "fig1-chain | fig2-superposition | fig3-lattice")
        ->required();
    preset_cmd->add_option("--emit-config", emit_path, "Write the config to this path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        apply_thread_env();
        if (run->parsed()) return cmd_run(config_path, out_dir);
        if (verify->parsed()) return cmd_verify(verify_config);
        return cmd_preset(preset_name, emit_path);
    } catch (const cvgraph::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const cvgraph::VanishingSuccessProbability& e) {
        std::cerr << "physics error: " << e.what() << "\n";
        return kExitPhysics;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
}
