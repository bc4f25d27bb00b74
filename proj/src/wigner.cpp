#include "cvgraph/wigner.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace cvgraph {

std::size_t WignerGrid::total_points() const {
    std::size_t n = 1;
    for (const auto& axis : axes) n *= static_cast<std::size_t>(axis.points);
    return n;
}

double WignerGrid::cell_volume() const {
    double h = 1.0;
    for (const auto& axis : axes) h *= axis.step();
    return h;
}

std::vector<int> grid_axis_to_beta(int n) {
    if (n == 1) return {0, 1};
    if (n == 2) return {0, 2, 1, 3};
    throw std::invalid_argument("wigner grids support 1 or 2 modes, got " + std::to_string(n));
}

void validate_grid_axes(const std::vector<GridAxis>& axes, int n) {
    if (n != 1 && n != 2)
        throw std::invalid_argument("wigner grids support 1 or 2 modes, got " + std::to_string(n));
    if (static_cast<int>(axes.size()) != 2 * n)
        throw std::invalid_argument("expected " + std::to_string(2 * n) + " grid axes, got " +
                                    std::to_string(axes.size()));
    for (std::size_t i = 0; i < axes.size(); ++i) {
        if (axes[i].points < 2)
            throw std::invalid_argument("grid axis " + std::to_string(i) +
                                        " needs at least 2 points");
        if (!(axes[i].max > axes[i].min))
            throw std::invalid_argument("grid axis " + std::to_string(i) + " has empty range");
    }
}

std::vector<GridAxis> default_axes(const CovarianceMatrix& v_sub, int points, double half_width) {
    const int n = v_sub.modes();
    if (n != 1 && n != 2)
        throw std::invalid_argument("wigner grids support 1 or 2 modes, got " + std::to_string(n));
    if (points < 2) throw std::invalid_argument("grid needs at least 2 points per axis");
    const Eigen::MatrixXd& v = v_sub.matrix();

    std::vector<GridAxis> axes;
    if (n == 1) {
        const double r = half_width * std::sqrt(std::max(v(0, 0), v(1, 1)));
        axes.assign(2, GridAxis{-r, r, points});
    } else {
        for (int k : grid_axis_to_beta(n)) {
            const double r = half_width * std::sqrt(v(k, k));
            axes.push_back(GridAxis{-r, r, points});
        }
    }
    return axes;
}

void wigner_grid_row(const WignerEvaluator& eval, const std::vector<GridAxis>& axes,
                     const std::vector<int>& beta_index, std::size_t row, double* out) {
    const Eigen::MatrixXd& vi = eval.v_inverse();
    const Eigen::MatrixXd& m = eval.quadratic_matrix();
    const double norm = eval.gauss_norm();
    const int dim = static_cast<int>(vi.rows());
    const int d = static_cast<int>(axes.size());
    const int last_axis = d - 1;
    const int l = beta_index[last_axis];

    std::array<double, 4> beta{};
    for (int a = d - 2; a >= 0; --a) {
        const auto n = static_cast<std::size_t>(axes[a].points);
        beta[beta_index[a]] = axes[a].coord(static_cast<int>(row % n));
        row /= n;
    }

    // Along the innermost axis both the exponent and the quadratic prefactor
    // are quadratic polynomials, so the whole row reduces to two Horner
    // evaluations per point. Every value depends only on (row, point index),
    // which keeps grids reproducible bit-for-bit for any thread count.
    std::array<double, 4> vi_beta{};
    std::array<double, 4> m_beta{};
    for (int i = 0; i < dim; ++i) {
        double sv = 0.0, sm = 0.0;
        for (int j = 0; j < dim; ++j) {
            sv += vi(i, j) * beta[j];
            sm += m(i, j) * beta[j];
        }
        vi_beta[i] = sv;
        m_beta[i] = sm;
    }
    double be_vi = 0.0, be_m = 0.0;
    for (int i = 0; i < dim; ++i) {
        be_vi += beta[i] * vi_beta[i];
        be_m += beta[i] * m_beta[i];
    }

    const double e0 = -0.5 * be_vi;
    const double e1 = -vi_beta[l];
    const double e2 = -0.5 * vi(l, l);
    const double q0 = norm * 0.5 * be_m + norm * (1.0 - 0.5 * eval.trace_term());
    const double q1 = norm * m_beta[l];
    const double q2 = norm * 0.5 * m(l, l);

    const GridAxis inner = axes[last_axis];
    for (int j = 0; j < inner.points; ++j) {
        const double v = inner.coord(j);
        const double e = e0 + v * (e1 + v * e2);
        const double q = q0 + v * (q1 + v * q2);
        out[j] = q * std::exp(e);
    }
}

WignerGrid wigner_grid(const CovarianceMatrix& v_sub, const NonGaussMatrix& a_sub,
                       const std::vector<GridAxis>& axes) {
    const int n = v_sub.modes();
    validate_grid_axes(axes, n);
    const WignerEvaluator eval(v_sub, a_sub);
    const std::vector<int> beta_index = grid_axis_to_beta(n);

    WignerGrid grid{axes, {}};
    grid.values.resize(grid.total_points());
    const auto inner_points = static_cast<std::size_t>(axes.back().points);
    const auto rows = static_cast<std::ptrdiff_t>(grid.total_points() / inner_points);

#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t row = 0; row < rows; ++row)
        wigner_grid_row(eval, axes, beta_index, static_cast<std::size_t>(row),
                        grid.values.data() + static_cast<std::size_t>(row) * inner_points);
    return grid;
}

WignerGrid wigner_grid_reference(const CovarianceMatrix& v_sub, const NonGaussMatrix& a_sub,
                                 const std::vector<GridAxis>& axes) {
    const int n = v_sub.modes();
    validate_grid_axes(axes, n);
    const WignerEvaluator eval(v_sub, a_sub);
    const std::vector<int> beta_index = grid_axis_to_beta(n);

    WignerGrid grid{axes, {}};
    grid.values.resize(grid.total_points());

    const int d = static_cast<int>(axes.size());
    std::vector<int> idx(static_cast<std::size_t>(d), 0);
    Eigen::VectorXd beta(2 * n);
    for (std::size_t lin = 0; lin < grid.values.size(); ++lin) {
        for (int a = 0; a < d; ++a) beta(beta_index[a]) = axes[a].coord(idx[a]);
        grid.values[lin] = eval(beta);
        for (int a = d - 1; a >= 0; --a) {
            if (++idx[a] < axes[a].points) break;
            idx[a] = 0;
        }
    }
    return grid;
}

}  // namespace cvgraph
