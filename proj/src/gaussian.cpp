#include "cvgraph/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace cvgraph {

SqueezingSpec::SqueezingSpec(std::vector<double> variance_factors) : s(std::move(variance_factors)) {
    if (s.empty()) throw std::invalid_argument("SqueezingSpec: needs at least one mode");
    for (double v : s) {
        if (!(v > 0.0)) {
            throw std::invalid_argument("SqueezingSpec: variance factor must be positive, got " +
                                        std::to_string(v));
        }
    }
}

SqueezingSpec SqueezingSpec::from_db(const std::vector<double>& db, bool squeeze_x) {
    std::vector<double> s(db.size());
    for (std::size_t i = 0; i < db.size(); ++i) {
        const double factor = std::pow(10.0, db[i] / 10.0);
        s[i] = squeeze_x ? 1.0 / factor : factor;
    }
    return SqueezingSpec(std::move(s));
}

SqueezingSpec SqueezingSpec::uniform_db(int modes, double db, bool squeeze_x) {
    if (modes < 1) throw std::invalid_argument("SqueezingSpec: modes must be >= 1");
    return from_db(std::vector<double>(static_cast<std::size_t>(modes), db), squeeze_x);
}

std::vector<double> SqueezingSpec::to_db() const {
    std::vector<double> db(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) db[i] = 10.0 * std::log10(s[i]);
    return db;
}

CovarianceMatrix::CovarianceMatrix(Eigen::MatrixXd v) : mat_(std::move(v)) {
    if (mat_.rows() != mat_.cols() || mat_.rows() < 2 || mat_.rows() % 2 != 0) {
        throw std::invalid_argument("CovarianceMatrix: expected square 2m x 2m matrix");
    }
    const double scale = std::max(1.0, mat_.cwiseAbs().maxCoeff());
    if ((mat_ - mat_.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
        throw std::invalid_argument("CovarianceMatrix: matrix is not symmetric");
    }
    // Symmetrize exactly so downstream solvers see V == V^t.
    mat_ = ((mat_ + mat_.transpose()) / 2.0).eval();
}

Eigen::MatrixXd cz_symplectic(const Graph& g) {
    const int m = g.vertex_count();
    Eigen::MatrixXd cz = Eigen::MatrixXd::Identity(2 * m, 2 * m);
    cz.topRightCorner(m, m) = g.adjacency();
    return cz;
}

Eigen::MatrixXd symplectic_form(int modes) {
    Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * modes, 2 * modes);
    omega.topRightCorner(modes, modes) = Eigen::MatrixXd::Identity(modes, modes);
    omega.bottomLeftCorner(modes, modes) = -Eigen::MatrixXd::Identity(modes, modes);
    return omega;
}

CovarianceMatrix v0_from_squeezing(const SqueezingSpec& spec) {
    const int m = spec.modes();
    Eigen::VectorXd diag(2 * m);
    for (int k = 0; k < m; ++k) {
        diag(k) = spec.s[k];
        diag(k + m) = 1.0 / spec.s[k];
    }
    return CovarianceMatrix(Eigen::MatrixXd(diag.asDiagonal()));
}

CovarianceMatrix graph_state_covariance(const CovarianceMatrix& v0, const Graph& g) {
    if (v0.modes() != g.vertex_count()) {
        throw std::invalid_argument("graph_state_covariance: V0 has " + std::to_string(v0.modes()) +
                                    " modes but graph has " + std::to_string(g.vertex_count()) +
                                    " vertices");
    }
    if (!v0.matrix().isDiagonal(0.0)) {
        throw std::invalid_argument("graph_state_covariance: V0 must be diagonal");
    }
    const Eigen::MatrixXd cz = cz_symplectic(g);
    return CovarianceMatrix(cz.transpose() * v0.matrix() * cz);
}

CovarianceMatrix reduce_covariance(const CovarianceMatrix& v, const VertexSet& vs) {
    if (vs.empty()) throw std::invalid_argument("reduce_covariance: empty vertex set");
    const int m = v.modes();
    if (vs.max_index() >= m) {
        throw std::invalid_argument("reduce_covariance: vertex index out of range");
    }
    const int n = static_cast<int>(vs.size());
    Eigen::MatrixXd out(2 * n, 2 * n);
    const auto& full = v.matrix();
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            const int ka = vs.members()[a];
            const int kb = vs.members()[b];
            out(a, b) = full(ka, kb);
            out(a, b + n) = full(ka, kb + m);
            out(a + n, b) = full(ka + m, kb);
            out(a + n, b + n) = full(ka + m, kb + m);
        }
    }
    return CovarianceMatrix(std::move(out));
}

double gaussian_purity(const CovarianceMatrix& v_sub) {
    const double det = v_sub.matrix().determinant();
    if (!(det > 0.0)) {
        throw std::invalid_argument("gaussian_purity: non-positive determinant (unphysical input)");
    }
    return 1.0 / std::sqrt(det);
}

std::vector<double> symplectic_eigenvalues(const CovarianceMatrix& v) {
    const int m = v.modes();
    const Eigen::MatrixXd k = symplectic_form(m) * v.matrix();
    Eigen::EigenSolver<Eigen::MatrixXd> solver(k, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("symplectic_eigenvalues: eigensolver failed");
    }
    std::vector<double> moduli(static_cast<std::size_t>(2 * m));
    for (int i = 0; i < 2 * m; ++i) moduli[static_cast<std::size_t>(i)] = std::abs(solver.eigenvalues()(i));
    std::sort(moduli.begin(), moduli.end());
    // Eigenvalues of Omega*V come in +-i*nu pairs: average each pair.
    std::vector<double> nu(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) nu[static_cast<std::size_t>(i)] = (moduli[2 * i] + moduli[2 * i + 1]) / 2.0;
    return nu;
}

bool is_physical(const CovarianceMatrix& v, double tol) {
    for (double nu : symplectic_eigenvalues(v)) {
        if (nu < 1.0 - tol) return false;
    }
    return true;
}

bool is_pure(const CovarianceMatrix& v, double tol) {
    for (double nu : symplectic_eigenvalues(v)) {
        if (std::abs(nu - 1.0) > tol) return false;
    }
    return true;
}

}  // namespace cvgraph
