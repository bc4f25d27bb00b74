#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include <CLI11.hpp>
#ifdef _OPENMP
#include <omp.h>
#endif

#include "cvgraph/oracle.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Timing comparison: row-coefficient Wigner kernel vs per-point reference"};
    int points1 = 401;
    int points2 = 51;
    int repeat = 3;
    app.add_option("--points-1mode", points1, "1-mode grid points per axis");
    app.add_option("--points-2mode", points2, "2-mode grid points per axis");
    app.add_option("--repeat", repeat, "Timed repetitions (best is reported)");
    CLI11_PARSE(app, argc, argv);

    int threads = 1;
#ifdef _OPENMP
#pragma omp parallel
#pragma omp master
    threads = omp_get_num_threads();
#endif
    std::printf("threads: %d\n", threads);

    // Representative workload: lattice graph state, photon subtraction in the
    // middle, reduced to the subtraction vertex and one of its neighbours.
    const cvgraph::Graph g = cvgraph::triangular_lattice(5, 5);
    const auto v = cvgraph::graph_state_covariance(
        cvgraph::v0_from_squeezing(cvgraph::SqueezingSpec::uniform_db(g.vertex_count(), 10.0)), g);
    const auto mode = cvgraph::ModeVector::vertex(g.vertex_count(), 12);
    const auto a = cvgraph::build_A(v, mode, cvgraph::OperationSign::Subtract);

    struct Case {
        const char* label;
        cvgraph::VertexSet vertices;
        int points;
    };
    const Case cases[] = {
        {"1-mode", cvgraph::VertexSet{12}, points1},
        {"2-mode", cvgraph::VertexSet{12, 13}, points2},
    };

    for (const Case& c : cases) {
        const auto vr = cvgraph::reduce_covariance(v, c.vertices);
        const auto ar = cvgraph::reduce_A(a, c.vertices);
        const auto axes = cvgraph::default_axes(vr, c.points);

        double kernel_ms = 1e300, reference_ms = 1e300, stream_ms = 1e300;
        cvgraph::WignerGrid grid, ref;
        for (int r = 0; r < repeat; ++r) {
            auto t0 = Clock::now();
            grid = cvgraph::wigner_grid(vr, ar, axes);
            kernel_ms = std::min(kernel_ms, ms_since(t0));

            t0 = Clock::now();
            ref = cvgraph::wigner_grid_reference(vr, ar, axes);
            reference_ms = std::min(reference_ms, ms_since(t0));

            if (c.points >= 51) {  // quadrature domains insist on >= 51 points
                t0 = Clock::now();
                const double norm = cvgraph::integrate_streaming(
                    vr, ar, cvgraph::QuadratureDomain(axes), cvgraph::Integrand::w());
                stream_ms = std::min(stream_ms, ms_since(t0));
                if (r == 0) std::printf("%s streaming normalization: %.12f\n", c.label, norm);
            }
        }
        std::printf("%s %dx per axis, %zu points: kernel %.2f ms, reference %.2f ms "
                    "(%.1fx), streaming %.2f ms, max|kernel-reference| %.3g\n",
                    c.label, c.points, grid.total_points(), kernel_ms, reference_ms,
                    reference_ms / kernel_ms, stream_ms < 1e300 ? stream_ms : 0.0,
                    max_abs_diff(grid.values, ref.values));
    }
    return 0;
}
