#pragma once

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cvgraph/gaussian.hpp"
#include "cvgraph/graph.hpp"
#include "cvgraph/nongauss.hpp"
#include "cvgraph/wigner.hpp"

namespace cvgraph {

/// Invalid configuration content; what() carries the offending field path.
class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Either an explicit edge list ({"m": int, "edges": [[i,j], ...]}) or a
/// triangular lattice ({"lattice": "triangular", "rows": r, "cols": c}).
struct GraphConfig {
    bool is_lattice = false;
    int m = 0;
    std::vector<std::pair<int, int>> edges;
    int rows = 0;
    int cols = 0;

    Graph build() const;
    int vertex_count() const { return is_lattice ? rows * cols : m; }
    bool operator==(const GraphConfig&) const = default;
};

/// Scalar or per-vertex squeezing in dB; p is the squeezed quadrature unless
/// squeeze_x is set.
struct SqueezingConfig {
    bool per_vertex = false;
    double db = 0.0;
    std::vector<double> db_list;
    bool squeeze_x = false;

    SqueezingSpec build(int modes) const;
    bool operator==(const SqueezingConfig&) const = default;
};

struct CoefficientEntry {
    int vertex = 0;
    double re = 0.0;
    double im = 0.0;
    bool operator==(const CoefficientEntry&) const = default;
};

struct OperationConfig {
    OperationSign sign = OperationSign::Subtract;
    std::vector<CoefficientEntry> coefficients;

    /// Unit-norm mode vector; sets renormalized when the input norm was off
    /// by more than 1e-9.
    ModeVector build(int modes, bool& renormalized) const;
    bool operator==(const OperationConfig&) const = default;
};

struct OutputConfig {
    bool metrics = true;
    std::vector<std::vector<int>> grids;  // vertex sets of size 1 or 2
    int points_1mode = kDefaultPoints1Mode;
    int points_2mode = kDefaultPoints2Mode;
    double half_width = 8.0;
    bool operator==(const OutputConfig&) const = default;
};

struct ExperimentConfig {
    GraphConfig graph;
    SqueezingConfig squeezing;
    OperationConfig operation;
    OutputConfig outputs;
    std::int64_t seed = 0;
    bool operator==(const ExperimentConfig&) const = default;
};

ExperimentConfig parse_config(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& config);

struct VertexMetrics {
    int vertex = 0;
    double kurtosis_x = 0.0;
    double kurtosis_p = 0.0;
    double purity = 0.0;
    double purity_gaussian = 0.0;
    double relative_purity = 0.0;
    double negativity_trace = 0.0;
    bool negative = false;
};

struct GridArtifact {
    VertexSet vertices;
    std::string filename;
    WignerGrid grid;
};

struct ExperimentReport {
    ExperimentConfig config;
    bool renormalized_coefficients = false;
    double success_trace = 0.0;                 // tr[(V +- 1) Pi_g]
    NegativityResult full_state;                // unreduced-state negativity
    std::vector<VertexMetrics> metrics;         // ascending vertex order
    LocalityCertificate certificate;
    std::vector<GridArtifact> grids;            // in config order
};

/// Builds the graph state, applies the photon operation and computes every
/// requested observable. Deterministic: identical configs produce identical
/// reports. Throws ConfigError for invalid configs and
/// VanishingSuccessProbability when the operation cannot be conditioned.
ExperimentReport run_experiment(const ExperimentConfig& config);

/// Deterministic report serialization: no timestamps, keys sorted, doubles
/// written shortest-round-trip. Identical reports give identical bytes.
nlohmann::json report_to_json(const ExperimentReport& report);

/// "wigner_3.csv" / "wigner_0_4.csv" for the vertex sets of a grid request.
std::string grid_filename(const VertexSet& vertices);

/// CSV with header "x,p,w" (1 mode) or "x1,p1,x2,p2,w" (2 modes), rows in
/// row-major axis order, every value with 17 significant digits.
void write_grid_csv(std::ostream& os, const WignerGrid& grid);

/// Fully populated configs behind the bundled scenarios:
/// fig1-chain, fig2-superposition, fig3-lattice.
ExperimentConfig preset(const std::string& name);

std::vector<std::string> preset_names();

}  // namespace cvgraph
