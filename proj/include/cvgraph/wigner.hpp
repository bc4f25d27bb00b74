#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cvgraph/nongauss.hpp"

namespace cvgraph {

/// Uniformly spaced evaluation axis for one quadrature.
struct GridAxis {
    double min = 0.0;
    double max = 0.0;
    int points = 0;

    double step() const { return (max - min) / (points - 1); }
    double coord(int i) const { return min + i * step(); }
};

/// Dense Wigner-function evaluation on a tensor grid. Axis order is
/// (x, p) for one mode and (x1, p1, x2, p2) for two modes; values are stored
/// row-major in that axis order. Values are identical for any number of
/// evaluation threads.
struct WignerGrid {
    std::vector<GridAxis> axes;
    std::vector<double> values;

    int dim() const { return static_cast<int>(axes.size()); }
    std::size_t total_points() const;
    double cell_volume() const;
};

/// Default axes for a reduced state: every axis spans +-half_width standard
/// deviations and carries `points` samples. Single-mode grids use a common
/// range from the largest diagonal variance; two-mode grids use per-axis
/// ranges (the common range cannot resolve the strongly correlated squeezed
/// directions at realistic squeezing).
std::vector<GridAxis> default_axes(const CovarianceMatrix& v_sub, int points,
                                   double half_width = 8.0);

inline constexpr int kDefaultPoints1Mode = 201;
// Two-mode grids are written out as np^4 CSV rows; 21 keeps the default
// artifact around 200k rows. Verification paths choose their own resolution.
inline constexpr int kDefaultPoints2Mode = 21;

/// Evaluates W on the tensor grid. OpenMP-parallel over grid rows; every
/// point is computed independently from row coefficients, so results are
/// bit-identical regardless of thread count. Rejects n > 2.
WignerGrid wigner_grid(const CovarianceMatrix& v_sub, const NonGaussMatrix& a_sub,
                       const std::vector<GridAxis>& axes);

/// Serial reference: one WignerEvaluator call per grid point. Kept for
/// validating the row-coefficient kernel; agrees with wigner_grid to
/// floating-point rearrangement (~1e-13 relative).
WignerGrid wigner_grid_reference(const CovarianceMatrix& v_sub, const NonGaussMatrix& a_sub,
                                 const std::vector<GridAxis>& axes);

/// Maps grid-axis position to the index of the evaluator's beta vector:
/// (x1..xn, p1..pn) ordering from (x1, p1, x2, p2, ...) axis order.
std::vector<int> grid_axis_to_beta(int n);

void validate_grid_axes(const std::vector<GridAxis>& axes, int n);

/// Evaluates one grid row (every axis fixed except the innermost) into
/// out[0 .. axes.back().points). A row is addressed by the row-major index
/// over the outer axes. Shared by the grid builder and the streaming
/// integrator so stored and streamed values are bit-identical.
void wigner_grid_row(const WignerEvaluator& eval, const std::vector<GridAxis>& axes,
                     const std::vector<int>& beta_index, std::size_t row, double* out);

}  // namespace cvgraph
