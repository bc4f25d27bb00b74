#include "cvgraph/oracle.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace cvgraph {

namespace {

void validate_integrand(const Integrand& f, int dim) {
    if (f.kind != Integrand::Kind::MomentTimesValue) return;
    if (f.axis < 0 || f.axis >= dim)
        throw std::invalid_argument("moment axis " + std::to_string(f.axis) +
                                    " out of range for a " + std::to_string(dim) +
                                    "-axis grid");
    if (f.order < 1 || f.order > 4)
        throw std::invalid_argument("moment order must be in 1..4, got " +
                                    std::to_string(f.order));
}

double int_pow(double x, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= x;
    return r;
}

}  // namespace

QuadratureDomain::QuadratureDomain(std::vector<GridAxis> domain_axes)
    : axes(std::move(domain_axes)) {
    if (axes.empty()) throw std::invalid_argument("quadrature domain needs at least one axis");
    for (std::size_t i = 0; i < axes.size(); ++i) {
        if (axes[i].points < 51)
            throw std::invalid_argument("quadrature axis " + std::to_string(i) +
                                        " needs at least 51 points, got " +
                                        std::to_string(axes[i].points));
        if (!(axes[i].min < axes[i].max))
            throw std::invalid_argument("quadrature axis " + std::to_string(i) +
                                        " has empty range");
    }
}

double QuadratureDomain::cell_volume() const {
    double h = 1.0;
    for (const auto& axis : axes) h *= axis.step();
    return h;
}

QuadratureDomain oracle_domain(const CovarianceMatrix& v_sub, int points, double half_width) {
    return QuadratureDomain(default_axes(v_sub, points, half_width));
}

double integrate_grid(const WignerGrid& grid, const Integrand& f) {
    const int d = grid.dim();
    validate_integrand(f, d);

    std::vector<int> idx(static_cast<std::size_t>(d), 0);
    double sum = 0.0;
    for (std::size_t lin = 0; lin < grid.values.size(); ++lin) {
        double weight = 1.0;
        for (int a = 0; a < d; ++a) {
            if (idx[a] == 0 || idx[a] == grid.axes[a].points - 1) weight *= 0.5;
        }
        double val = grid.values[lin];
        switch (f.kind) {
            case Integrand::Kind::Value:
                break;
            case Integrand::Kind::SquaredValue:
                val *= val;
                break;
            case Integrand::Kind::MomentTimesValue:
                val *= int_pow(grid.axes[f.axis].coord(idx[f.axis]), f.order);
                break;
        }
        sum += weight * val;
        for (int a = d - 1; a >= 0; --a) {
            if (++idx[a] < grid.axes[a].points) break;
            idx[a] = 0;
        }
    }
    return sum * grid.cell_volume();
}

GridMinimum grid_minimum(const WignerGrid& grid) {
    if (grid.values.empty()) throw std::invalid_argument("grid_minimum: empty grid");
    std::size_t best = 0;
    for (std::size_t lin = 1; lin < grid.values.size(); ++lin) {
        if (grid.values[lin] < grid.values[best]) best = lin;
    }
    GridMinimum out;
    out.value = grid.values[best];
    out.linear_index = best;
    const int d = grid.dim();
    out.location.resize(static_cast<std::size_t>(d));
    std::size_t rest = best;
    for (int a = d - 1; a >= 0; --a) {
        const auto n = static_cast<std::size_t>(grid.axes[a].points);
        out.location[a] = grid.axes[a].coord(static_cast<int>(rest % n));
        rest /= n;
    }
    return out;
}

double integrate_streaming(const CovarianceMatrix& v_sub, const NonGaussMatrix& a_sub,
                           const QuadratureDomain& domain, const Integrand& f) {
    const int n = v_sub.modes();
    const auto& axes = domain.axes;
    validate_grid_axes(axes, n);
    validate_integrand(f, static_cast<int>(axes.size()));
    const WignerEvaluator eval(v_sub, a_sub);
    const std::vector<int> beta_index = grid_axis_to_beta(n);

    const int d = static_cast<int>(axes.size());
    const int last_axis = d - 1;
    const GridAxis inner = axes[last_axis];
    std::size_t rows = 1;
    for (int a = 0; a < last_axis; ++a) rows *= static_cast<std::size_t>(axes[a].points);

    // Inner-axis trapezoid weights, with the moment factor folded in when the
    // moment axis happens to be the innermost one.
    std::vector<double> inner_weight(static_cast<std::size_t>(inner.points), 1.0);
    inner_weight.front() = 0.5;
    inner_weight.back() = 0.5;
    if (f.kind == Integrand::Kind::MomentTimesValue && f.axis == last_axis) {
        for (int j = 0; j < inner.points; ++j)
            inner_weight[static_cast<std::size_t>(j)] *= int_pow(inner.coord(j), f.order);
    }

    std::vector<double> row_sum(rows, 0.0);
#pragma omp parallel
    {
        std::vector<double> buf(static_cast<std::size_t>(inner.points));
#pragma omp for schedule(static)
        for (std::ptrdiff_t row = 0; row < static_cast<std::ptrdiff_t>(rows); ++row) {
            wigner_grid_row(eval, axes, beta_index, static_cast<std::size_t>(row), buf.data());

            double outer_weight = 1.0;
            std::size_t rest = static_cast<std::size_t>(row);
            for (int a = last_axis - 1; a >= 0; --a) {
                const auto np = static_cast<std::size_t>(axes[a].points);
                const int ia = static_cast<int>(rest % np);
                rest /= np;
                if (ia == 0 || ia == axes[a].points - 1) outer_weight *= 0.5;
                if (f.kind == Integrand::Kind::MomentTimesValue && f.axis == a)
                    outer_weight *= int_pow(axes[a].coord(ia), f.order);
            }

            double s = 0.0;
            if (f.kind == Integrand::Kind::SquaredValue) {
                for (std::size_t j = 0; j < buf.size(); ++j)
                    s += inner_weight[j] * buf[j] * buf[j];
            } else {
                for (std::size_t j = 0; j < buf.size(); ++j) s += inner_weight[j] * buf[j];
            }
            row_sum[static_cast<std::size_t>(row)] = outer_weight * s;
        }
    }

    double sum = 0.0;
    for (std::size_t row = 0; row < rows; ++row) sum += row_sum[row];
    return sum * domain.cell_volume();
}

WignerGrid integrate_out_mode(const WignerGrid& grid, int keep) {
    if (grid.dim() != 4)
        throw std::invalid_argument("integrate_out_mode expects a 2-mode grid");
    if (keep != 0 && keep != 1)
        throw std::invalid_argument("integrate_out_mode: keep must be 0 or 1");

    const int ka = 2 * keep;       // first kept axis
    const int ia = 2 - 2 * keep;   // first integrated axis
    const GridAxis k0 = grid.axes[static_cast<std::size_t>(ka)];
    const GridAxis k1 = grid.axes[static_cast<std::size_t>(ka + 1)];
    const GridAxis i0 = grid.axes[static_cast<std::size_t>(ia)];
    const GridAxis i1 = grid.axes[static_cast<std::size_t>(ia + 1)];
    const double cell = i0.step() * i1.step();

    // Strides of the four axes in the row-major value layout.
    std::size_t stride[4];
    stride[3] = 1;
    for (int a = 2; a >= 0; --a)
        stride[a] = stride[a + 1] * static_cast<std::size_t>(grid.axes[a + 1].points);

    auto w_edge = [](int i, int npts) { return (i == 0 || i == npts - 1) ? 0.5 : 1.0; };

    WignerGrid out{{k0, k1}, {}};
    out.values.resize(static_cast<std::size_t>(k0.points) * static_cast<std::size_t>(k1.points));
    std::size_t lin = 0;
    for (int a = 0; a < k0.points; ++a) {
        for (int b = 0; b < k1.points; ++b) {
            const std::size_t base = static_cast<std::size_t>(a) * stride[ka] +
                                     static_cast<std::size_t>(b) * stride[ka + 1];
            double s = 0.0;
            for (int c = 0; c < i0.points; ++c) {
                const double wc = w_edge(c, i0.points);
                double inner = 0.0;
                for (int e = 0; e < i1.points; ++e) {
                    inner += w_edge(e, i1.points) *
                             grid.values[base + static_cast<std::size_t>(c) * stride[ia] +
                                         static_cast<std::size_t>(e) * stride[ia + 1]];
                }
                s += wc * inner;
            }
            out.values[lin++] = s * cell;
        }
    }
    return out;
}

double purity_from_grid(const WignerGrid& grid) {
    const int n = grid.dim() / 2;
    return std::pow(4.0 * std::numbers::pi, n) * integrate_grid(grid, Integrand::w_squared());
}

double moment_from_grid(const WignerGrid& grid, int axis, int order) {
    const double norm = integrate_grid(grid, Integrand::w());
    return integrate_grid(grid, Integrand::moment(axis, order)) / norm;
}

}  // namespace cvgraph
