#include "cvgraph/nongauss.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/LU>

namespace cvgraph {

namespace {

constexpr double kSuccessTraceThreshold = 1e-12;

Eigen::MatrixXd inverse_checked(const CovarianceMatrix& v_sub, const char* who) {
    Eigen::FullPivLU<Eigen::MatrixXd> lu(v_sub.matrix());
    if (!lu.isInvertible()) {
        throw std::invalid_argument(std::string(who) + ": singular covariance matrix");
    }
    return lu.inverse();
}

int quadrature_index(const CovarianceMatrix& v_sub, int vertex_pos, Quadrature quad,
                     const char* who) {
    const int n = v_sub.modes();
    if (vertex_pos < 0 || vertex_pos >= n) {
        throw std::invalid_argument(std::string(who) + ": vertex position out of range");
    }
    return quad == Quadrature::X ? vertex_pos : vertex_pos + n;
}

}  // namespace

ModeVector::ModeVector(int modes, std::vector<std::complex<double>> coefficients)
    : m_(modes), c_(std::move(coefficients)) {
    if (m_ < 1) throw std::invalid_argument("ModeVector: modes must be >= 1");
    if (static_cast<int>(c_.size()) != m_) {
        throw std::invalid_argument("ModeVector: expected " + std::to_string(m_) +
                                    " coefficients, got " + std::to_string(c_.size()));
    }
    double norm2 = 0.0;
    for (const auto& c : c_) norm2 += std::norm(c);
    if (std::abs(norm2 - 1.0) > 1e-12) {
        throw std::invalid_argument("ModeVector: coefficients not normalized (|c|^2 = " +
                                    std::to_string(norm2) + ")");
    }
}

ModeVector ModeVector::vertex(int modes, int j) {
    if (j < 0 || j >= modes) throw std::invalid_argument("ModeVector::vertex: index out of range");
    std::vector<std::complex<double>> c(static_cast<std::size_t>(modes));
    c[static_cast<std::size_t>(j)] = 1.0;
    return ModeVector(modes, std::move(c));
}

ModeVector ModeVector::normalized(int modes, std::vector<std::complex<double>> coefficients) {
    double norm2 = 0.0;
    for (const auto& c : coefficients) norm2 += std::norm(c);
    if (!(norm2 > 0.0)) throw std::invalid_argument("ModeVector::normalized: zero vector");
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& c : coefficients) c *= inv;
    return ModeVector(modes, std::move(coefficients));
}

VertexSet ModeVector::support() const {
    std::vector<int> out;
    for (int j = 0; j < m_; ++j) {
        if (std::abs(c_[static_cast<std::size_t>(j)]) > 0.0) out.push_back(j);
    }
    return VertexSet(std::move(out));
}

NonGaussMatrix::NonGaussMatrix(Eigen::MatrixXd a) : mat_(std::move(a)) {
    if (mat_.rows() != mat_.cols() || mat_.rows() < 2 || mat_.rows() % 2 != 0) {
        throw std::invalid_argument("NonGaussMatrix: expected square 2m x 2m matrix");
    }
    const double scale = std::max(1.0, mat_.cwiseAbs().maxCoeff());
    if ((mat_ - mat_.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
        throw std::invalid_argument("NonGaussMatrix: matrix is not symmetric");
    }
}

NonGaussMatrix NonGaussMatrix::zero(int modes) {
    return NonGaussMatrix(Eigen::MatrixXd::Zero(2 * modes, 2 * modes));
}

Eigen::MatrixXd mode_projector(const ModeVector& mode) {
    const int m = mode.modes();
    Eigen::VectorXd g(2 * m), gp(2 * m);
    for (int j = 0; j < m; ++j) {
        const auto& c = mode.coefficients()[static_cast<std::size_t>(j)];
        g(j) = c.real();
        g(j + m) = c.imag();
        gp(j) = -c.imag();
        gp(j + m) = c.real();
    }
    return g * g.transpose() + gp * gp.transpose();
}

NonGaussMatrix build_A(const CovarianceMatrix& v, const ModeVector& mode, OperationSign sign) {
    const int m = v.modes();
    if (mode.modes() != m) {
        throw std::invalid_argument("build_A: mode has " + std::to_string(mode.modes()) +
                                    " modes, covariance has " + std::to_string(m));
    }
    const double s = sign == OperationSign::Add ? 1.0 : -1.0;
    const Eigen::MatrixXd b = v.matrix() + s * Eigen::MatrixXd::Identity(2 * m, 2 * m);

    Eigen::VectorXd g(2 * m), gp(2 * m);
    for (int j = 0; j < m; ++j) {
        const auto& c = mode.coefficients()[static_cast<std::size_t>(j)];
        g(j) = c.real();
        g(j + m) = c.imag();
        gp(j) = -c.imag();
        gp(j + m) = c.real();
    }
    const Eigen::VectorXd u = b * g;
    const Eigen::VectorXd w = b * gp;
    const double trace = g.dot(u) + gp.dot(w);  // tr[(V +- 1) Pi]
    if (trace <= kSuccessTraceThreshold) {
        std::string vertices;
        for (int k : mode.support().members()) {
            if (!vertices.empty()) vertices += ",";
            vertices += std::to_string(k);
        }
        throw VanishingSuccessProbability(
            "photon " + std::string(sign == OperationSign::Add ? "addition" : "subtraction") +
            " on vertices {" + vertices + "} has vanishing success probability: tr[(V +- 1) Pi] = " +
            std::to_string(trace));
    }
    return NonGaussMatrix(2.0 / trace * (u * u.transpose() + w * w.transpose()));
}

double success_trace(const CovarianceMatrix& v, const ModeVector& mode, OperationSign sign) {
    const int m = v.modes();
    if (mode.modes() != m) {
        throw std::invalid_argument("success_trace: mode and covariance dimensions differ");
    }
    const double s = sign == OperationSign::Add ? 1.0 : -1.0;
    const auto& mat = v.matrix();
    double trace = 0.0;
    // tr[(V +- 1) Pi] = g.(V +- 1)g + g'.(V +- 1)g' without forming Pi.
    Eigen::VectorXd g(2 * m), gp(2 * m);
    for (int j = 0; j < m; ++j) {
        const auto& c = mode.coefficients()[static_cast<std::size_t>(j)];
        g(j) = c.real();
        g(j + m) = c.imag();
        gp(j) = -c.imag();
        gp(j + m) = c.real();
    }
    trace = g.dot(mat * g) + gp.dot(mat * gp) + 2.0 * s;
    return trace;
}

NonGaussMatrix reduce_A(const NonGaussMatrix& a, const VertexSet& vs) {
    if (vs.empty()) throw std::invalid_argument("reduce_A: empty vertex set");
    const int m = a.modes();
    if (vs.max_index() >= m) throw std::invalid_argument("reduce_A: vertex index out of range");
    const int n = static_cast<int>(vs.size());
    Eigen::MatrixXd out(2 * n, 2 * n);
    const auto& full = a.matrix();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const int ki = vs.members()[i];
            const int kj = vs.members()[j];
            out(i, j) = full(ki, kj);
            out(i, j + n) = full(ki, kj + m);
            out(i + n, j) = full(ki + m, kj);
            out(i + n, j + n) = full(ki + m, kj + m);
        }
    }
    return NonGaussMatrix(std::move(out));
}

WignerEvaluator::WignerEvaluator(const CovarianceMatrix& v_sub, const NonGaussMatrix& a_sub)
    : n_(v_sub.modes()) {
    if (a_sub.modes() != n_) {
        throw std::invalid_argument("WignerEvaluator: V and A dimensions differ");
    }
    v_inv_ = inverse_checked(v_sub, "WignerEvaluator");
    m_ = v_inv_ * a_sub.matrix() * v_inv_;
    m_ = ((m_ + m_.transpose()) / 2.0).eval();
    t_ = (v_inv_ * a_sub.matrix()).trace();
    const double det = v_sub.matrix().determinant();
    if (!(det > 0.0)) {
        throw std::invalid_argument("WignerEvaluator: non-positive determinant");
    }
    norm_ = 1.0 / (std::pow(2.0 * std::numbers::pi, n_) * std::sqrt(det));
}

double WignerEvaluator::operator()(const Eigen::VectorXd& beta) const {
    if (beta.size() != 2 * n_) {
        throw std::invalid_argument("WignerEvaluator: beta has wrong dimension");
    }
    const double quad = beta.dot(m_ * beta);
    const double expo = -0.5 * beta.dot(v_inv_ * beta);
    return 0.5 * (quad - t_ + 2.0) * norm_ * std::exp(expo);
}

double wigner_value(const CovarianceMatrix& v_sub, const NonGaussMatrix& a_sub,
                    const Eigen::VectorXd& beta) {
    return WignerEvaluator(v_sub, a_sub)(beta);
}

NegativityResult negativity_trace(const CovarianceMatrix& v_sub, const NonGaussMatrix& a_sub) {
    if (a_sub.modes() != v_sub.modes()) {
        throw std::invalid_argument("negativity_trace: V and A dimensions differ");
    }
    const Eigen::MatrixXd v_inv = inverse_checked(v_sub, "negativity_trace");
    const double t = (v_inv * a_sub.matrix()).trace();
    return NegativityResult{t, t > 2.0};
}

double quadrature_moment(const CovarianceMatrix& v_sub, const NonGaussMatrix& a_sub,
                         int vertex_pos, Quadrature quad, int order) {
    if (order < 1 || order > 4) {
        throw std::invalid_argument("quadrature_moment: order must be in {1,2,3,4}");
    }
    if (order % 2 == 1) return 0.0;  // odd moments vanish for zero-mean states

    const int i = quadrature_index(v_sub, vertex_pos, quad, "quadrature_moment");
    const Eigen::MatrixXd v_inv = inverse_checked(v_sub, "quadrature_moment");
    const double t = (v_inv * a_sub.matrix()).trace();
    const double vii = v_sub.matrix()(i, i);
    // Wick contraction of E_V[q^k beta^t M beta] with M = V^-1 A V^-1 uses
    // tr(M V) = t and (V M V)_ii = A_ii.
    const double aii = a_sub.matrix()(i, i);
    const double c = 1.0 - t / 2.0;
    if (order == 2) {
        return 0.5 * (vii * t + 2.0 * aii) + c * vii;
    }
    // order == 4: E[q^4 beta^t M beta] = 3 V_ii^2 t + 12 V_ii A_ii, E[q^4] = 3 V_ii^2.
    return 0.5 * (3.0 * vii * vii * t + 12.0 * vii * aii) + c * 3.0 * vii * vii;
}

double excess_kurtosis(const CovarianceMatrix& v_sub, const NonGaussMatrix& a_sub,
                       int vertex_pos, Quadrature quad) {
    const double m2 = quadrature_moment(v_sub, a_sub, vertex_pos, quad, 2);
    if (!(m2 > 0.0)) {
        throw std::invalid_argument("excess_kurtosis: degenerate second moment");
    }
    const double m4 = quadrature_moment(v_sub, a_sub, vertex_pos, quad, 4);
    return m4 / (m2 * m2) - 3.0;
}

double purity_nongaussian(const CovarianceMatrix& v_sub, const NonGaussMatrix& a_sub) {
    if (v_sub.modes() != 1) {
        throw std::invalid_argument("purity_nongaussian: single-mode reductions only");
    }
    if (a_sub.modes() != 1) {
        throw std::invalid_argument("purity_nongaussian: V and A dimensions differ");
    }
    const double det = v_sub.matrix().determinant();
    if (!(det > 0.0)) {
        throw std::invalid_argument("purity_nongaussian: non-positive determinant");
    }
    const Eigen::MatrixXd v_inv = inverse_checked(v_sub, "purity_nongaussian");
    const Eigen::MatrixXd k = v_inv * a_sub.matrix();  // M V is similar to this product
    const double t = k.trace();
    const double t2 = (k * k).trace();
    // mu = E_{V/2}[(1/2 beta^t M beta - t/2 + 1)^2] / sqrt(det V), expanded by
    // fourth-order Gaussian moment factorization.
    const double c = 1.0 - t / 2.0;
    const double expectation = t * t / 16.0 + t2 / 8.0 + c * t / 2.0 + c * c;
    return expectation / std::sqrt(det);
}

LocalityCertificate locality_certificate(const Graph& g, const CovarianceMatrix& v,
                                         const NonGaussMatrix& a, const VertexSet& support,
                                         double tol) {
    const int m = g.vertex_count();
    if (v.modes() != m || a.modes() != m) {
        throw std::invalid_argument("locality_certificate: dimension mismatch");
    }
    LocalityCertificate cert;
    cert.support = support;
    cert.allowed = closed_two_neighborhood(g, support);
    cert.tolerance = tol;

    std::vector<bool> allowed(static_cast<std::size_t>(m), false);
    for (int k : cert.allowed.members()) allowed[static_cast<std::size_t>(k)] = true;

    double max_entry = 0.0;
    const auto& mat = a.matrix();
    for (int row = 0; row < 2 * m; ++row) {
        if (allowed[static_cast<std::size_t>(row % m)]) continue;
        max_entry = std::max(max_entry, mat.row(row).cwiseAbs().maxCoeff());
    }
    cert.max_outside_entry = max_entry;
    cert.pass = max_entry <= tol;
    return cert;
}

}  // namespace cvgraph
