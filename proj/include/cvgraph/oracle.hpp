#pragma once

#include <cstddef>
#include <vector>

#include "cvgraph/wigner.hpp"

namespace cvgraph {

/// Axis-aligned trapezoid quadrature domain. Deliberately stricter than a
/// plotting grid: at least 51 points per axis.
struct QuadratureDomain {
    std::vector<GridAxis> axes;

    explicit QuadratureDomain(std::vector<GridAxis> domain_axes);
    double cell_volume() const;
};

/// Domain with the same per-axis ranges as default_axes.
QuadratureDomain oracle_domain(const CovarianceMatrix& v_sub, int points,
                               double half_width = 8.0);

/// What to sum over the grid: W itself, |W|^2, or q^order * W for the
/// coordinate of one grid axis.
struct Integrand {
    enum class Kind { Value, SquaredValue, MomentTimesValue };
    Kind kind = Kind::Value;
    int axis = 0;
    int order = 0;

    static Integrand w() { return {Kind::Value, 0, 0}; }
    static Integrand w_squared() { return {Kind::SquaredValue, 0, 0}; }
    static Integrand moment(int axis, int order) {
        return {Kind::MomentTimesValue, axis, order};
    }
};

/// Fixed-order (row-major) trapezoid sum over a stored grid; deterministic
/// for any thread count because it never runs concurrently.
double integrate_grid(const WignerGrid& grid, const Integrand& f);

struct GridMinimum {
    std::vector<double> location;
    double value = 0.0;
    std::size_t linear_index = 0;
};

/// Argmin over grid points; ties broken by lowest linear index.
GridMinimum grid_minimum(const WignerGrid& grid);

/// Trapezoid integral without materializing the grid, for domains too large
/// to store. Wigner values are bit-identical to wigner_grid (same row
/// kernel); row evaluation is OpenMP-parallel but each row's partial sum is
/// serial and rows are combined in a fixed order, so the result is identical
/// for any thread count. Agrees with integrate_grid up to summation-order
/// rounding.
double integrate_streaming(const CovarianceMatrix& v_sub, const NonGaussMatrix& a_sub,
                           const QuadratureDomain& domain, const Integrand& f);

/// Integrates a 2-mode grid over the other mode's two axes, leaving the kept
/// mode's (x, p) marginal (keep = 0 or 1).
WignerGrid integrate_out_mode(const WignerGrid& grid, int keep);

/// (4 pi)^n * integral of W^2.
double purity_from_grid(const WignerGrid& grid);

/// integral(q^order W) / integral(W) for one grid axis.
double moment_from_grid(const WignerGrid& grid, int axis, int order);

}  // namespace cvgraph
