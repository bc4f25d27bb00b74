#pragma once

#include <complex>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "cvgraph/gaussian.hpp"
#include "cvgraph/graph.hpp"
#include "cvgraph/nongauss.hpp"

// Deterministic random instances shared by the unit tests and the acceptance
// suite. Only raw mt19937_64 draws are used (std:: distributions are
// implementation-defined), so a fixed seed reproduces the same instances on
// any platform.
namespace testsupport {

inline double uniform_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
}

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {  // inclusive
    return lo + static_cast<int>(uniform_unit(rng) * static_cast<double>(hi - lo + 1));
}

/// Random recursive tree plus a few extra edges: connected by construction,
/// with hubs, leaves and short cycles well represented.
inline cvgraph::Graph random_connected_graph(std::mt19937_64& rng, int m) {
    std::vector<std::pair<int, int>> edges;
    std::set<std::pair<int, int>> seen;
    for (int v = 1; v < m; ++v) {
        const int parent = uniform_int(rng, 0, v - 1);
        edges.emplace_back(parent, v);
        seen.emplace(parent, v);
    }
    const int extra = uniform_int(rng, 0, m);
    for (int e = 0; e < extra; ++e) {
        const int i = uniform_int(rng, 0, m - 1);
        const int j = uniform_int(rng, 0, m - 1);
        if (i == j) continue;
        const auto key = std::minmax(i, j);
        if (!seen.insert(key).second) continue;
        edges.emplace_back(key.first, key.second);
    }
    return cvgraph::Graph(m, edges);
}

/// Variance factors in [1, 10) per vertex (0 to 10 dB of squeezing).
inline cvgraph::SqueezingSpec random_squeezing(std::mt19937_64& rng, int m) {
    std::vector<double> s(static_cast<std::size_t>(m));
    for (double& sk : s) sk = 1.0 + 9.0 * uniform_unit(rng);
    return cvgraph::SqueezingSpec(std::move(s));
}

/// Random unit mode vector supported on `support_size` distinct vertices.
inline cvgraph::ModeVector random_mode(std::mt19937_64& rng, int m, int support_size) {
    std::vector<int> vertices;
    while (static_cast<int>(vertices.size()) < support_size) {
        const int v = uniform_int(rng, 0, m - 1);
        bool dup = false;
        for (int u : vertices) dup = dup || u == v;
        if (!dup) vertices.push_back(v);
    }
    std::vector<std::complex<double>> c(static_cast<std::size_t>(m));
    double norm2 = 0.0;
    while (norm2 < 0.05) {  // reject near-zero draws so normalization is stable
        norm2 = 0.0;
        for (int v : vertices) {
            const double re = 2.0 * uniform_unit(rng) - 1.0;
            const double im = 2.0 * uniform_unit(rng) - 1.0;
            c[static_cast<std::size_t>(v)] = {re, im};
            norm2 += re * re + im * im;
        }
    }
    return cvgraph::ModeVector::normalized(m, std::move(c));
}

struct RandomInstance {
    cvgraph::Graph graph;
    cvgraph::SqueezingSpec squeezing;
    cvgraph::CovarianceMatrix v;
    cvgraph::ModeVector mode;
    cvgraph::OperationSign sign;
    cvgraph::NonGaussMatrix a;
};

inline RandomInstance random_instance(std::mt19937_64& rng, int min_m = 3, int max_m = 12) {
    const int m = uniform_int(rng, min_m, max_m);
    cvgraph::Graph g = random_connected_graph(rng, m);
    cvgraph::SqueezingSpec s = random_squeezing(rng, m);
    cvgraph::CovarianceMatrix v = cvgraph::graph_state_covariance(cvgraph::v0_from_squeezing(s), g);
    cvgraph::ModeVector mode = random_mode(rng, m, uniform_int(rng, 1, 2));
    const auto sign =
        uniform_int(rng, 0, 1) == 0 ? cvgraph::OperationSign::Add : cvgraph::OperationSign::Subtract;
    cvgraph::NonGaussMatrix a = cvgraph::build_A(v, mode, sign);
    return RandomInstance{std::move(g), std::move(s), std::move(v), std::move(mode), sign,
                          std::move(a)};
}

}  // namespace testsupport
