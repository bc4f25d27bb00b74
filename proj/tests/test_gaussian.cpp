#include <doctest.h>

#include <cmath>
#include <random>

#include "cvgraph/gaussian.hpp"
#include "support/random_instances.hpp"

using namespace cvgraph;

namespace {

CovarianceMatrix random_graph_state(std::mt19937_64& rng, Graph& g_out, SqueezingSpec& s_out) {
    const int m = testsupport::uniform_int(rng, 3, 12);
    g_out = testsupport::random_connected_graph(rng, m);
    s_out = testsupport::random_squeezing(rng, m);
    return graph_state_covariance(v0_from_squeezing(s_out), g_out);
}

}  // namespace

TEST_SUITE("gaussian") {
    TEST_CASE("decibel conversion") {
        const auto s = SqueezingSpec::uniform_db(3, 10.0);
        for (double sk : s.s) CHECK(sk == doctest::Approx(10.0).epsilon(1e-15));
        const auto sx = SqueezingSpec::uniform_db(2, 10.0, /*squeeze_x=*/true);
        for (double sk : sx.s) CHECK(sk == doctest::Approx(0.1).epsilon(1e-15));
        const auto round = SqueezingSpec::from_db(std::vector<double>{3.0, 0.0, -2.0});
        const auto db = round.to_db();
        CHECK(db[0] == doctest::Approx(3.0).epsilon(1e-12));
        CHECK(db[1] == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(db[2] == doctest::Approx(-2.0).epsilon(1e-12));
        CHECK_THROWS_AS(SqueezingSpec(std::vector<double>{1.0, 0.0}), std::invalid_argument);
        CHECK_THROWS_AS(SqueezingSpec(std::vector<double>{}), std::invalid_argument);
    }

    TEST_CASE("squeezed vacua covariance") {
        const auto v0 = v0_from_squeezing(SqueezingSpec(std::vector<double>{4.0, 9.0}));
        Eigen::VectorXd want(4);
        want << 4.0, 9.0, 0.25, 1.0 / 9.0;
        CHECK((v0.matrix() - want.asDiagonal().toDenseMatrix()).cwiseAbs().maxCoeff() == 0.0);
    }

    TEST_CASE("two-vertex graph state at unit squeezing") {
        const Graph g(2, {{0, 1}});
        const auto v = graph_state_covariance(v0_from_squeezing(SqueezingSpec({1.0, 1.0})), g);
        Eigen::MatrixXd want(4, 4);
        want << 1, 0, 0, 1,  //
            0, 1, 1, 0,      //
            0, 1, 2, 0,      //
            1, 0, 0, 2;
        CHECK((v.matrix() - want).cwiseAbs().maxCoeff() == 0.0);
    }

    TEST_CASE("cz symplectic preserves the symplectic form") {
        const Graph g = triangular_lattice(3, 3);
        const Eigen::MatrixXd s = cz_symplectic(g);
        const Eigen::MatrixXd omega = symplectic_form(g.vertex_count());
        CHECK((s * omega * s.transpose() - omega).cwiseAbs().maxCoeff() <= 1e-14);
    }

    TEST_CASE("graph states are physical and pure") {
        std::mt19937_64 rng(14001);
        for (int trial = 0; trial < 30; ++trial) {
            Graph g(1, {});
            SqueezingSpec s({1.0});
            const auto v = random_graph_state(rng, g, s);
            CHECK(is_physical(v));
            CHECK(is_pure(v));
            CHECK(gaussian_purity(v) == doctest::Approx(1.0).epsilon(1e-10));
            const auto nu = symplectic_eigenvalues(v);
            CHECK(static_cast<int>(nu.size()) == g.vertex_count());
            for (double n : nu) CHECK(n == doctest::Approx(1.0).epsilon(1e-10));
        }
    }

    TEST_CASE("covariance block sparsity follows the graph") {
        std::mt19937_64 rng(14002);
        for (int trial = 0; trial < 30; ++trial) {
            Graph g(1, {});
            SqueezingSpec s({1.0});
            const auto v = random_graph_state(rng, g, s);
            const int m = g.vertex_count();
            const auto& mat = v.matrix();
            const Eigen::MatrixXd& adj = g.adjacency();
            const Eigen::MatrixXd common = adj * adj;  // (j,k) > 0 iff shared neighbour
            for (int j = 0; j < m; ++j) {
                for (int k = 0; k < m; ++k) {
                    if (j != k) CHECK(mat(j, k) == 0.0);  // x-x block diagonal
                    if (!g.adjacent(j, k)) CHECK(mat(j, k + m) == 0.0);  // x-p on the edges
                    if (j != k && common(j, k) == 0.0)
                        CHECK(mat(j + m, k + m) == 0.0);  // p-p needs a shared neighbour
                }
                CHECK(mat(j, j) == s.s[static_cast<std::size_t>(j)]);
            }
        }
    }

    TEST_CASE("reduction selects vertex rows in both quadratures") {
        const Graph g = path_graph(4);
        const SqueezingSpec s({2.0, 3.0, 5.0, 7.0});
        const auto v = graph_state_covariance(v0_from_squeezing(s), g);
        const auto r = reduce_covariance(v, VertexSet{1, 3});
        CHECK(r.modes() == 2);
        const auto& full = v.matrix();
        const auto& red = r.matrix();
        const int m = 4;
        const int idx[2] = {1, 3};
        for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
                CHECK(red(a, b) == full(idx[a], idx[b]));
                CHECK(red(a, b + 2) == full(idx[a], idx[b] + m));
                CHECK(red(a + 2, b + 2) == full(idx[a] + m, idx[b] + m));
            }
        }
        CHECK_THROWS_AS(reduce_covariance(v, VertexSet{4}), std::invalid_argument);
        CHECK_THROWS_AS(reduce_covariance(v, VertexSet{}), std::invalid_argument);
    }

    TEST_CASE("nested reductions compose") {
        std::mt19937_64 rng(14003);
        for (int trial = 0; trial < 20; ++trial) {
            Graph g(1, {});
            SqueezingSpec s({1.0});
            const auto v = random_graph_state(rng, g, s);
            const int m = g.vertex_count();
            const int a = testsupport::uniform_int(rng, 0, m - 1);
            int b = testsupport::uniform_int(rng, 0, m - 1);
            if (b == a) b = (a + 1) % m;
            const VertexSet pair{std::min(a, b), std::max(a, b)};
            const auto direct = reduce_covariance(v, VertexSet{std::max(a, b)});
            const auto nested = reduce_covariance(reduce_covariance(v, pair), VertexSet{1});
            CHECK((direct.matrix() - nested.matrix()).cwiseAbs().maxCoeff() == 0.0);
        }
    }

    TEST_CASE("mixed states are flagged") {
        Eigen::MatrixXd mat(2, 2);
        mat << 2.0, 0.0, 0.0, 2.0;
        const CovarianceMatrix v(mat);
        CHECK(is_physical(v));
        CHECK_FALSE(is_pure(v));
        CHECK(gaussian_purity(v) == doctest::Approx(0.5).epsilon(1e-12));

        Eigen::MatrixXd bad(2, 2);
        bad << 0.5, 0.0, 0.0, 0.5;  // below the uncertainty bound
        CHECK_FALSE(is_physical(CovarianceMatrix(bad)));
    }

    TEST_CASE("malformed covariance matrices are rejected") {
        Eigen::MatrixXd odd = Eigen::MatrixXd::Identity(3, 3);
        CHECK_THROWS_AS(CovarianceMatrix{odd}, std::invalid_argument);
        Eigen::MatrixXd asym = Eigen::MatrixXd::Identity(4, 4);
        asym(0, 1) = 0.5;
        CHECK_THROWS_AS(CovarianceMatrix{asym}, std::invalid_argument);
        const Graph g = path_graph(2);
        Eigen::MatrixXd nondiag = Eigen::MatrixXd::Identity(4, 4);
        nondiag(0, 1) = nondiag(1, 0) = 0.25;
        CHECK_THROWS_AS(graph_state_covariance(CovarianceMatrix(nondiag), g),
                        std::invalid_argument);
    }
}
