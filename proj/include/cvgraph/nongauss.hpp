#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "cvgraph/gaussian.hpp"
#include "cvgraph/graph.hpp"

namespace cvgraph {

enum class OperationSign { Add, Subtract };
enum class Quadrature { X, P };

/// Raised when tr[(V +- 1) Pi_g] falls below threshold: the conditional photon
/// operation has vanishing success probability (e.g. subtraction from vacuum).
class VanishingSuccessProbability : public std::runtime_error {
  public:
    explicit VanishingSuccessProbability(const std::string& what) : std::runtime_error(what) {}
};

/// Normalized complex coefficient vector over the vertices, defining the mode
/// in which the photon is added or subtracted. A single basis vector e_j
/// selects vertex j; several nonzero coefficients describe a superposition.
class ModeVector {
  public:
    /// Requires sum |c_j|^2 = 1 within 1e-12.
    ModeVector(int modes, std::vector<std::complex<double>> coefficients);

    /// Unit vector e_j: the photon operation acts on vertex j alone.
    static ModeVector vertex(int modes, int j);

    /// Rescales an arbitrary nonzero vector to unit norm.
    static ModeVector normalized(int modes, std::vector<std::complex<double>> coefficients);

    int modes() const { return m_; }
    const std::vector<std::complex<double>>& coefficients() const { return c_; }

    /// Vertices with |c_j| > 0, ascending.
    VertexSet support() const;

  private:
    int m_ = 0;
    std::vector<std::complex<double>> c_;
};

/// 2m x 2m real symmetric PSD matrix of rank <= 2 carrying all non-Gaussian
/// corrections induced by a single photon addition or subtraction. Same
/// quadrature ordering as CovarianceMatrix. May be identically zero after
/// reduction to an unaffected subgraph.
class NonGaussMatrix {
  public:
    explicit NonGaussMatrix(Eigen::MatrixXd a);

    static NonGaussMatrix zero(int modes);

    int modes() const { return static_cast<int>(mat_.rows()) / 2; }
    const Eigen::MatrixXd& matrix() const { return mat_; }
    bool is_zero() const { return mat_.isZero(0.0); }

  private:
    Eigen::MatrixXd mat_;
};

/// Rank-2 orthogonal projector onto the phase-space plane of the mode:
/// Pi = g g^t + g' g'^t with g = (Re c, Im c) and g' = (-Im c, Re c).
/// For c = e_j this is exactly P_j + P_{j+m}.
Eigen::MatrixXd mode_projector(const ModeVector& mode);

/// A = 2 (V +- 1) Pi (V +- 1) / tr[(V +- 1) Pi]. Throws
/// VanishingSuccessProbability when the trace is <= 1e-12.
NonGaussMatrix build_A(const CovarianceMatrix& v, const ModeVector& mode, OperationSign sign);

/// tr[(V +- 1) Pi_g], the normalization trace of build_A; proportional to the
/// success probability of conditioning on the photon operation.
double success_trace(const CovarianceMatrix& v, const ModeVector& mode, OperationSign sign);

/// Same row/column selection semantics as reduce_covariance.
NonGaussMatrix reduce_A(const NonGaussMatrix& a, const VertexSet& vs);

/// Precomputed quantities for evaluating the reduced Wigner function
///   W(beta) = 1/2 [beta^t M beta - t + 2] exp(-1/2 beta^t V^-1 beta) / ((2pi)^n sqrt(det V))
/// with M = V^-1 A V^-1 and t = tr(V^-1 A).
class WignerEvaluator {
  public:
    WignerEvaluator(const CovarianceMatrix& v_sub, const NonGaussMatrix& a_sub);

    int modes() const { return n_; }
    double trace_term() const { return t_; }
    double gauss_norm() const { return norm_; }
    const Eigen::MatrixXd& v_inverse() const { return v_inv_; }
    const Eigen::MatrixXd& quadratic_matrix() const { return m_; }

    double operator()(const Eigen::VectorXd& beta) const;

  private:
    int n_ = 0;
    Eigen::MatrixXd v_inv_;
    Eigen::MatrixXd m_;
    double t_ = 0.0;
    double norm_ = 0.0;
};

/// Single-point Wigner evaluation. For repeated evaluation on the same
/// reduced state construct a WignerEvaluator once instead.
double wigner_value(const CovarianceMatrix& v_sub, const NonGaussMatrix& a_sub,
                    const Eigen::VectorXd& beta);

struct NegativityResult {
    double trace = 0.0;  // tr(V^-1 A)
    bool negative = false;  // trace > 2, equivalent to W(0) < 0
};

NegativityResult negativity_trace(const CovarianceMatrix& v_sub, const NonGaussMatrix& a_sub);

/// <q^k> for the x or p quadrature of one vertex of the reduction,
/// k in {1,2,3,4}. Closed form through Gaussian moment factorization of
/// E_V[q^k (1/2 beta^t M beta - t/2 + 1)]; odd orders vanish by symmetry.
double quadrature_moment(const CovarianceMatrix& v_sub, const NonGaussMatrix& a_sub,
                         int vertex_pos, Quadrature quad, int order);

/// <q^4>/<q^2>^2 - 3. Zero for Gaussian reductions, <= 0 for photon-added
/// and -subtracted graph states.
double excess_kurtosis(const CovarianceMatrix& v_sub, const NonGaussMatrix& a_sub,
                       int vertex_pos, Quadrature quad);

/// Single-mode purity mu = 4pi Int d^2beta |W(beta)|^2, evaluated in closed
/// form via fourth-order Gaussian moment factorization with covariance V/2.
double purity_nongaussian(const CovarianceMatrix& v_sub, const NonGaussMatrix& a_sub);

struct LocalityCertificate {
    VertexSet support;   // vertices carrying the photon operation
    VertexSet allowed;   // closed 2-neighborhood of the support
    double max_outside_entry = 0.0;  // max |A| over rows/cols of vertices outside allowed
    double tolerance = 0.0;
    bool pass = false;
};

/// Certifies that A has no support on vertices more than two steps from the
/// operation: max |A entry| on rows/columns (both quadrature copies) of
/// vertices outside closed_two_neighborhood(support) must be <= tol.
LocalityCertificate locality_certificate(const Graph& g, const CovarianceMatrix& v,
                                         const NonGaussMatrix& a, const VertexSet& support,
                                         double tol = 1e-12);

}  // namespace cvgraph
