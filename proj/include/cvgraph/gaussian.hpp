#pragma once

#include <vector>

#include <Eigen/Dense>

#include "cvgraph/graph.hpp"

namespace cvgraph {

/// Per-vertex squeezing of the input modes, stored as variance factors s_k > 0.
/// Quadrature ordering of all matrices in this library is (x_1..x_m, p_1..p_m)
/// with [x,p] = 2i, so the vacuum has unit variance in both quadratures and
/// V0 = diag(s_1..s_m, 1/s_1..1/s_m).
///
/// Decibel convention: "s dB squeezed" means the squeezed quadrature has
/// variance 10^(-db/10). By default the phase quadrature p is squeezed
/// (x antisqueezed), i.e. s_k = 10^(db/10); pass squeeze_x = true to swap.
struct SqueezingSpec {
    std::vector<double> s;

    explicit SqueezingSpec(std::vector<double> variance_factors);

    static SqueezingSpec from_db(const std::vector<double>& db, bool squeeze_x = false);
    static SqueezingSpec uniform_db(int modes, double db, bool squeeze_x = false);

    int modes() const { return static_cast<int>(s.size()); }
    std::vector<double> to_db() const;
};

/// 2m x 2m real symmetric covariance matrix in (x.., p..) ordering.
class CovarianceMatrix {
  public:
    explicit CovarianceMatrix(Eigen::MatrixXd v);

    int modes() const { return static_cast<int>(mat_.rows()) / 2; }
    const Eigen::MatrixXd& matrix() const { return mat_; }

  private:
    Eigen::MatrixXd mat_;
};

/// Symplectic representation of the set of C_Z gates along the edges of g,
/// the block matrix [[I, A], [0, I]] with A the adjacency matrix.
Eigen::MatrixXd cz_symplectic(const Graph& g);

/// Symplectic form Omega = [[0, I], [-I, 0]] in (x.., p..) ordering.
Eigen::MatrixXd symplectic_form(int modes);

/// V0 = diag(s_1..s_m, 1/s_1..1/s_m): independent squeezed vacua.
CovarianceMatrix v0_from_squeezing(const SqueezingSpec& spec);

/// V = G^t V0 G with G the C_Z symplectic of g. Block structure for
/// diagonal V0 = diag(S, S^-1): x-block S, cross blocks S*A / A*S,
/// p-block A*S*A + S^-1.
CovarianceMatrix graph_state_covariance(const CovarianceMatrix& v0, const Graph& g);

/// Restricts V to the vertices of vs: rows/columns {k, k+m : k in vs},
/// reordered to the (x.., p..) convention of dimension 2n.
CovarianceMatrix reduce_covariance(const CovarianceMatrix& v, const VertexSet& vs);

/// det(V)^(-1/2); 1 for pure Gaussian states.
double gaussian_purity(const CovarianceMatrix& v_sub);

/// Moduli of the eigenvalues of i*Omega*V, deduplicated into m values,
/// sorted ascending. All >= 1 for physical states, all == 1 iff pure.
std::vector<double> symplectic_eigenvalues(const CovarianceMatrix& v);

bool is_physical(const CovarianceMatrix& v, double tol = 1e-10);
bool is_pure(const CovarianceMatrix& v, double tol = 1e-10);

}  // namespace cvgraph
