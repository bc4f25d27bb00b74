#include "cvgraph/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <set>
#include <utility>

namespace cvgraph {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw ConfigError(path + ": " + msg);
}

const json& require_field(const json& j, const char* key, const std::string& path) {
    const auto it = j.find(key);
    if (it == j.end()) fail(path, "missing required field '" + std::string(key) + "'");
    return *it;
}

void require_object(const json& j, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
}

void reject_unknown_keys(const json& j, std::initializer_list<const char*> known,
                         const std::string& path) {
    for (const auto& [key, value] : j.items()) {
        bool ok = false;
        for (const char* k : known) ok = ok || key == k;
        if (!ok) fail(path, "unknown field '" + key + "'");
    }
}

int get_int(const json& j, const std::string& path) {
    if (!j.is_number_integer()) fail(path, "expected an integer");
    return j.get<int>();
}

double get_double(const json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "expected a number");
    return j.get<double>();
}

bool get_bool(const json& j, const std::string& path) {
    if (!j.is_boolean()) fail(path, "expected a boolean");
    return j.get<bool>();
}

std::string get_string(const json& j, const std::string& path) {
    if (!j.is_string()) fail(path, "expected a string");
    return j.get<std::string>();
}

GraphConfig parse_graph(const json& j) {
    const std::string path = "graph";
    require_object(j, path);
    GraphConfig out;
    if (j.contains("lattice")) {
        reject_unknown_keys(j, {"lattice", "rows", "cols"}, path);
        const std::string kind = get_string(j.at("lattice"), path + ".lattice");
        if (kind != "triangular") fail(path + ".lattice", "unknown lattice '" + kind + "'");
        out.is_lattice = true;
        out.rows = get_int(require_field(j, "rows", path), path + ".rows");
        out.cols = get_int(require_field(j, "cols", path), path + ".cols");
        if (out.rows < 1 || out.cols < 1) fail(path, "lattice needs rows >= 1 and cols >= 1");
    } else {
        reject_unknown_keys(j, {"m", "edges"}, path);
        out.m = get_int(require_field(j, "m", path), path + ".m");
        if (out.m < 1) fail(path + ".m", "vertex count must be >= 1");
        const json& edges = require_field(j, "edges", path);
        if (!edges.is_array()) fail(path + ".edges", "expected an array of [i, j] pairs");
        int at = 0;
        for (const json& e : edges) {
            const std::string epath = path + ".edges[" + std::to_string(at++) + "]";
            if (!e.is_array() || e.size() != 2) fail(epath, "expected an [i, j] pair");
            out.edges.emplace_back(get_int(e.at(0), epath), get_int(e.at(1), epath));
        }
    }
    return out;
}

SqueezingConfig parse_squeezing(const json& j) {
    const std::string path = "squeezing";
    require_object(j, path);
    reject_unknown_keys(j, {"db", "db_per_vertex", "squeezed_quadrature"}, path);
    SqueezingConfig out;
    const bool has_scalar = j.contains("db");
    const bool has_list = j.contains("db_per_vertex");
    if (has_scalar == has_list)
        fail(path, "provide exactly one of 'db' and 'db_per_vertex'");
    if (has_scalar) {
        out.db = get_double(j.at("db"), path + ".db");
    } else {
        out.per_vertex = true;
        const json& list = j.at("db_per_vertex");
        if (!list.is_array() || list.empty())
            fail(path + ".db_per_vertex", "expected a non-empty array of numbers");
        int at = 0;
        for (const json& v : list)
            out.db_list.push_back(
                get_double(v, path + ".db_per_vertex[" + std::to_string(at++) + "]"));
    }
    if (j.contains("squeezed_quadrature")) {
        const std::string q = get_string(j.at("squeezed_quadrature"), path + ".squeezed_quadrature");
        if (q != "x" && q != "p") fail(path + ".squeezed_quadrature", "expected \"x\" or \"p\"");
        out.squeeze_x = q == "x";
    }
    return out;
}

OperationConfig parse_operation(const json& j, int vertex_count) {
    const std::string path = "operation";
    require_object(j, path);
    reject_unknown_keys(j, {"sign", "coefficients"}, path);
    OperationConfig out;
    const std::string sign = get_string(require_field(j, "sign", path), path + ".sign");
    if (sign == "add") {
        out.sign = OperationSign::Add;
    } else if (sign == "subtract") {
        out.sign = OperationSign::Subtract;
    } else {
        fail(path + ".sign", "expected \"add\" or \"subtract\"");
    }

    const json& coeffs = require_field(j, "coefficients", path);
    if (!coeffs.is_array() || coeffs.empty())
        fail(path + ".coefficients", "expected a non-empty array");
    std::set<int> seen;
    int at = 0;
    for (const json& c : coeffs) {
        const std::string cpath = path + ".coefficients[" + std::to_string(at++) + "]";
        require_object(c, cpath);
        reject_unknown_keys(c, {"vertex", "re", "im"}, cpath);
        CoefficientEntry entry;
        entry.vertex = get_int(require_field(c, "vertex", cpath), cpath + ".vertex");
        if (entry.vertex < 0 || entry.vertex >= vertex_count)
            fail(cpath + ".vertex", "vertex " + std::to_string(entry.vertex) +
                                        " out of range for m=" + std::to_string(vertex_count));
        if (!seen.insert(entry.vertex).second)
            fail(cpath + ".vertex", "duplicate vertex " + std::to_string(entry.vertex));
        if (c.contains("re")) entry.re = get_double(c.at("re"), cpath + ".re");
        if (c.contains("im")) entry.im = get_double(c.at("im"), cpath + ".im");
        if (entry.re == 0.0 && entry.im == 0.0)
            fail(cpath, "coefficient must be nonzero");
        out.coefficients.push_back(entry);
    }
    return out;
}

OutputConfig parse_outputs(const json& j, int vertex_count) {
    const std::string path = "outputs";
    require_object(j, path);
    reject_unknown_keys(j, {"metrics", "grids", "points_1mode", "points_2mode", "half_width"},
                        path);
    OutputConfig out;
    if (j.contains("metrics")) out.metrics = get_bool(j.at("metrics"), path + ".metrics");
    if (j.contains("grids")) {
        const json& grids = j.at("grids");
        if (!grids.is_array()) fail(path + ".grids", "expected an array of vertex lists");
        int at = 0;
        for (const json& g : grids) {
            const std::string gpath = path + ".grids[" + std::to_string(at++) + "]";
            if (!g.is_array() || g.empty() || g.size() > 2)
                fail(gpath, "expected a list of 1 or 2 vertices");
            std::vector<int> vs;
            for (const json& v : g) {
                const int k = get_int(v, gpath);
                if (k < 0 || k >= vertex_count)
                    fail(gpath, "vertex " + std::to_string(k) + " out of range for m=" +
                                    std::to_string(vertex_count));
                vs.push_back(k);
            }
            if (vs.size() == 2 && vs[0] == vs[1]) fail(gpath, "vertices must be distinct");
            out.grids.push_back(std::move(vs));
        }
    }
    if (j.contains("points_1mode"))
        out.points_1mode = get_int(j.at("points_1mode"), path + ".points_1mode");
    if (j.contains("points_2mode"))
        out.points_2mode = get_int(j.at("points_2mode"), path + ".points_2mode");
    if (out.points_1mode < 2 || out.points_2mode < 2)
        fail(path, "grid points per axis must be >= 2");
    if (j.contains("half_width"))
        out.half_width = get_double(j.at("half_width"), path + ".half_width");
    if (!(out.half_width > 0.0)) fail(path + ".half_width", "must be positive");
    return out;
}

}  // namespace

Graph GraphConfig::build() const {
    if (is_lattice) return triangular_lattice(rows, cols);
    return graph_from_edges(m, edges);
}

SqueezingSpec SqueezingConfig::build(int modes) const {
    if (!per_vertex) {
        return SqueezingSpec::uniform_db(modes, db, squeeze_x);
    }
    if (static_cast<int>(db_list.size()) != modes) {
        throw ConfigError("squeezing.db_per_vertex: expected " + std::to_string(modes) +
                          " entries, got " + std::to_string(db_list.size()));
    }
    return SqueezingSpec::from_db(db_list, squeeze_x);
}

ModeVector OperationConfig::build(int modes, bool& renormalized) const {
    std::vector<std::complex<double>> c(static_cast<std::size_t>(modes));
    double norm2 = 0.0;
    for (const auto& entry : coefficients) {
        c[static_cast<std::size_t>(entry.vertex)] = {entry.re, entry.im};
        norm2 += entry.re * entry.re + entry.im * entry.im;
    }
    renormalized = std::abs(norm2 - 1.0) > 1e-9;
    return ModeVector::normalized(modes, std::move(c));
}

ExperimentConfig parse_config(const json& j) {
    require_object(j, "config");
    reject_unknown_keys(j, {"graph", "squeezing", "operation", "outputs", "seed"}, "config");

    ExperimentConfig cfg;
    cfg.graph = parse_graph(require_field(j, "graph", "config"));

    try {
        cfg.graph.build();
    } catch (const std::invalid_argument& e) {
        fail("graph", e.what());
    }
    const int m = cfg.graph.vertex_count();

    cfg.squeezing = parse_squeezing(require_field(j, "squeezing", "config"));
    if (cfg.squeezing.per_vertex && static_cast<int>(cfg.squeezing.db_list.size()) != m)
        fail("squeezing.db_per_vertex", "expected " + std::to_string(m) + " entries, got " +
                                            std::to_string(cfg.squeezing.db_list.size()));

    cfg.operation = parse_operation(require_field(j, "operation", "config"), m);
    if (j.contains("outputs")) cfg.outputs = parse_outputs(j.at("outputs"), m);
    if (j.contains("seed")) {
        const json& seed = j.at("seed");
        if (!seed.is_number_integer()) fail("seed", "expected an integer");
        cfg.seed = seed.get<std::int64_t>();
    }
    return cfg;
}

json config_to_json(const ExperimentConfig& config) {
    json graph;
    if (config.graph.is_lattice) {
        graph = {{"lattice", "triangular"}, {"rows", config.graph.rows},
                 {"cols", config.graph.cols}};
    } else {
        json edges = json::array();
        for (const auto& [i, k] : config.graph.edges) edges.push_back(json::array({i, k}));
        graph = {{"m", config.graph.m}, {"edges", std::move(edges)}};
    }

    json squeezing;
    if (config.squeezing.per_vertex) {
        squeezing["db_per_vertex"] = config.squeezing.db_list;
    } else {
        squeezing["db"] = config.squeezing.db;
    }
    squeezing["squeezed_quadrature"] = config.squeezing.squeeze_x ? "x" : "p";

    json coefficients = json::array();
    for (const auto& c : config.operation.coefficients)
        coefficients.push_back({{"vertex", c.vertex}, {"re", c.re}, {"im", c.im}});

    json grids = json::array();
    for (const auto& g : config.outputs.grids) grids.push_back(g);

    return {{"graph", std::move(graph)},
            {"squeezing", std::move(squeezing)},
            {"operation",
             {{"sign", config.operation.sign == OperationSign::Add ? "add" : "subtract"},
              {"coefficients", std::move(coefficients)}}},
            {"outputs",
             {{"metrics", config.outputs.metrics},
              {"grids", std::move(grids)},
              {"points_1mode", config.outputs.points_1mode},
              {"points_2mode", config.outputs.points_2mode},
              {"half_width", config.outputs.half_width}}},
            {"seed", config.seed}};
}

std::string grid_filename(const VertexSet& vertices) {
    std::string name = "wigner";
    for (int v : vertices.members()) name += "_" + std::to_string(v);
    return name + ".csv";
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
    Graph g = [&config] {
        try {
            return config.graph.build();
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("graph: ") + e.what());
        }
    }();
    const int m = g.vertex_count();

    const SqueezingSpec squeezing = config.squeezing.build(m);
    const CovarianceMatrix v = graph_state_covariance(v0_from_squeezing(squeezing), g);

    ExperimentReport report;
    report.config = config;
    const ModeVector mode = config.operation.build(m, report.renormalized_coefficients);
    const NonGaussMatrix a = build_A(v, mode, config.operation.sign);
    report.success_trace = success_trace(v, mode, config.operation.sign);
    report.full_state = negativity_trace(v, a);

    if (config.outputs.metrics) {
        report.metrics.reserve(static_cast<std::size_t>(m));
        for (int k = 0; k < m; ++k) {
            const VertexSet vs{k};
            const CovarianceMatrix vk = reduce_covariance(v, vs);
            const NonGaussMatrix ak = reduce_A(a, vs);
            VertexMetrics metrics;
            metrics.vertex = k;
            metrics.kurtosis_x = excess_kurtosis(vk, ak, 0, Quadrature::X);
            metrics.kurtosis_p = excess_kurtosis(vk, ak, 0, Quadrature::P);
            metrics.purity = purity_nongaussian(vk, ak);
            metrics.purity_gaussian = gaussian_purity(vk);
            metrics.relative_purity = metrics.purity / metrics.purity_gaussian;
            const NegativityResult neg = negativity_trace(vk, ak);
            metrics.negativity_trace = neg.trace;
            metrics.negative = neg.negative;
            report.metrics.push_back(metrics);
        }
    }

    report.certificate = locality_certificate(g, v, a, mode.support());

    for (const auto& request : config.outputs.grids) {
        const VertexSet vs(request);
        const CovarianceMatrix vr = reduce_covariance(v, vs);
        const NonGaussMatrix ar = reduce_A(a, vs);
        const int points =
            vs.size() == 1 ? config.outputs.points_1mode : config.outputs.points_2mode;
        const auto axes = default_axes(vr, points, config.outputs.half_width);
        report.grids.push_back({vs, grid_filename(vs), wigner_grid(vr, ar, axes)});
    }
    return report;
}

json report_to_json(const ExperimentReport& report) {
    json vertices = json::array();
    for (const auto& metrics : report.metrics) {
        vertices.push_back({{"vertex", metrics.vertex},
                            {"kurtosis_x", metrics.kurtosis_x},
                            {"kurtosis_p", metrics.kurtosis_p},
                            {"purity", metrics.purity},
                            {"purity_gaussian", metrics.purity_gaussian},
                            {"relative_purity", metrics.relative_purity},
                            {"negativity_trace", metrics.negativity_trace},
                            {"negative", metrics.negative}});
    }

    json grids = json::array();
    for (const auto& artifact : report.grids) {
        json axes = json::array();
        for (const auto& axis : artifact.grid.axes)
            axes.push_back({{"min", axis.min}, {"max", axis.max}, {"points", axis.points}});
        grids.push_back({{"vertices", artifact.vertices.members()},
                         {"file", artifact.filename},
                         {"axes", std::move(axes)}});
    }

    return {{"config", config_to_json(report.config)},
            {"operation",
             {{"success_trace", report.success_trace},
              {"renormalized_coefficients", report.renormalized_coefficients}}},
            {"full_state",
             {{"negativity_trace", report.full_state.trace},
              {"negative", report.full_state.negative}}},
            {"vertices", std::move(vertices)},
            {"certificate",
             {{"support", report.certificate.support.members()},
              {"allowed", report.certificate.allowed.members()},
              {"max_outside_entry", report.certificate.max_outside_entry},
              {"tolerance", report.certificate.tolerance},
              {"pass", report.certificate.pass}}},
            {"grids", std::move(grids)}};
}

void write_grid_csv(std::ostream& os, const WignerGrid& grid) {
    const int d = grid.dim();
    if (d != 2 && d != 4)
        throw std::invalid_argument("write_grid_csv: expected a 1- or 2-mode grid");
    os << (d == 2 ? "x,p,w\n" : "x1,p1,x2,p2,w\n");

    std::vector<int> idx(static_cast<std::size_t>(d), 0);
    char buf[192];
    for (const double w : grid.values) {
        int len = 0;
        for (int a = 0; a < d; ++a)
            len += std::snprintf(buf + len, sizeof(buf) - static_cast<std::size_t>(len),
                                 "%.17g,", grid.axes[a].coord(idx[a]));
        len += std::snprintf(buf + len, sizeof(buf) - static_cast<std::size_t>(len), "%.17g\n", w);
        os.write(buf, len);
        for (int a = d - 1; a >= 0; --a) {
            if (++idx[a] < grid.axes[a].points) break;
            idx[a] = 0;
        }
    }
}

ExperimentConfig preset(const std::string& name) {
    ExperimentConfig cfg;
    cfg.squeezing.db = 10.0;
    if (name == "fig1-chain") {
        cfg.graph.m = 6;
        for (int i = 0; i + 1 < 6; ++i) cfg.graph.edges.emplace_back(i, i + 1);
        cfg.operation.coefficients = {{0, 1.0, 0.0}};
        cfg.outputs.grids = {{0}, {5}};
    } else if (name == "fig2-superposition") {
        cfg.graph.m = 7;
        for (int i = 0; i + 1 < 7; ++i) cfg.graph.edges.emplace_back(i, i + 1);
        const double r = 1.0 / std::sqrt(2.0);
        cfg.operation.coefficients = {{0, r, 0.0}, {6, r, 0.0}};
        cfg.outputs.grids = {{0}, {6}};
    } else if (name == "fig3-lattice") {
        cfg.graph.is_lattice = true;
        cfg.graph.rows = 5;
        cfg.graph.cols = 5;
        cfg.operation.coefficients = {{12, 1.0, 0.0}};
        cfg.outputs.grids = {{12}};
    } else {
        throw ConfigError("unknown preset '" + name +
                          "'; expected fig1-chain, fig2-superposition or fig3-lattice");
    }
    return cfg;
}

std::vector<std::string> preset_names() {
    return {"fig1-chain", "fig2-superposition", "fig3-lattice"};
}

}  // namespace cvgraph
