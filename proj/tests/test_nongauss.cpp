#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>

#include "cvgraph/nongauss.hpp"
#include "support/random_instances.hpp"

using namespace cvgraph;

namespace {

CovarianceMatrix vacuum_state() {
    return graph_state_covariance(v0_from_squeezing(SqueezingSpec({1.0})), Graph(1, {}));
}

}  // namespace

TEST_SUITE("nongauss") {
    TEST_CASE("mode vectors enforce normalization") {
        CHECK_THROWS_AS(ModeVector(2, {{0.5, 0.0}, {0.5, 0.0}}), std::invalid_argument);
        CHECK_THROWS_AS(ModeVector(2, {{1.0, 0.0}}), std::invalid_argument);
        CHECK_THROWS_AS(ModeVector::vertex(3, 3), std::invalid_argument);
        CHECK_THROWS_AS(ModeVector::normalized(2, {{0.0, 0.0}, {0.0, 0.0}}),
                        std::invalid_argument);

        const auto mode = ModeVector::normalized(3, {{3.0, 0.0}, {0.0, 0.0}, {0.0, 4.0}});
        CHECK(mode.support().members() == std::vector<int>{0, 2});
        CHECK(std::abs(mode.coefficients()[0]) == doctest::Approx(0.6).epsilon(1e-14));
        CHECK(std::abs(mode.coefficients()[2]) == doctest::Approx(0.8).epsilon(1e-14));
    }

    TEST_CASE("mode projector is a rank-2 orthogonal projector") {
        std::mt19937_64 rng(31001);
        for (int trial = 0; trial < 10; ++trial) {
            const int m = testsupport::uniform_int(rng, 2, 8);
            const auto mode = testsupport::random_mode(rng, m, testsupport::uniform_int(rng, 1, 2));
            const Eigen::MatrixXd pi = mode_projector(mode);
            CHECK((pi - pi.transpose()).cwiseAbs().maxCoeff() <= 1e-15);
            CHECK((pi * pi - pi).cwiseAbs().maxCoeff() <= 1e-14);
            CHECK(pi.trace() == doctest::Approx(2.0).epsilon(1e-13));
        }
        // A single-vertex real mode projects exactly onto x_j and p_j.
        const Eigen::MatrixXd pi = mode_projector(ModeVector::vertex(3, 1));
        Eigen::MatrixXd want = Eigen::MatrixXd::Zero(6, 6);
        want(1, 1) = want(4, 4) = 1.0;
        CHECK((pi - want).cwiseAbs().maxCoeff() == 0.0);
    }

    TEST_CASE("photon-added vacuum in closed form") {
        const auto v = vacuum_state();
        const auto mode = ModeVector::vertex(1, 0);
        const auto a = build_A(v, mode, OperationSign::Add);
        CHECK((a.matrix() - 2.0 * Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() == 0.0);
        CHECK(success_trace(v, mode, OperationSign::Add) == doctest::Approx(4.0).epsilon(1e-15));

        // W(0) = -1/(2 pi); W vanishes on the unit circle; Fock-1 moments.
        CHECK(std::abs(wigner_value(v, a, Eigen::Vector2d::Zero()) + 1.0 / (2.0 * std::numbers::pi)) <=
              1e-15);
        for (double angle : {0.0, 0.7, 2.1}) {
            const Eigen::Vector2d beta{std::cos(angle), std::sin(angle)};
            CHECK(std::abs(wigner_value(v, a, beta)) <= 1e-15);
        }
        CHECK(quadrature_moment(v, a, 0, Quadrature::P, 2) == doctest::Approx(3.0).epsilon(1e-14));
        CHECK(quadrature_moment(v, a, 0, Quadrature::P, 4) == doctest::Approx(15.0).epsilon(1e-14));
        CHECK(quadrature_moment(v, a, 0, Quadrature::X, 1) == 0.0);
        CHECK(quadrature_moment(v, a, 0, Quadrature::X, 3) == 0.0);
        CHECK(excess_kurtosis(v, a, 0, Quadrature::P) ==
              doctest::Approx(-4.0 / 3.0).epsilon(1e-14));
        CHECK(purity_nongaussian(v, a) == doctest::Approx(1.0).epsilon(1e-14));

        const auto neg = negativity_trace(v, a);
        CHECK(neg.trace == doctest::Approx(4.0).epsilon(1e-14));
        CHECK(neg.negative);
    }

    TEST_CASE("subtraction from vacuum cannot be conditioned") {
        const auto v = vacuum_state();
        CHECK_THROWS_AS(build_A(v, ModeVector::vertex(1, 0), OperationSign::Subtract),
                        VanishingSuccessProbability);
    }

    TEST_CASE("A is PSD with rank at most 2") {
        std::mt19937_64 rng(31002);
        for (int trial = 0; trial < 25; ++trial) {
            const auto inst = testsupport::random_instance(rng);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(inst.a.matrix());
            const auto& ev = es.eigenvalues();
            const double top = ev(ev.size() - 1);
            CHECK(top > 0.0);
            CHECK(ev(0) >= -1e-10 * top);
            if (ev.size() > 2) CHECK(ev(ev.size() - 3) <= 1e-10 * top);
        }
    }

    TEST_CASE("pure graph states give full-state trace 4") {
        std::mt19937_64 rng(31003);
        for (int trial = 0; trial < 25; ++trial) {
            const auto inst = testsupport::random_instance(rng);
            const auto neg = negativity_trace(inst.v, inst.a);
            CHECK(neg.trace == doctest::Approx(4.0).epsilon(1e-9));
            CHECK(neg.negative);
        }
    }

    TEST_CASE("the certificate bounds A to the closed 2-neighborhood") {
        std::mt19937_64 rng(31004);
        for (int trial = 0; trial < 25; ++trial) {
            const auto inst = testsupport::random_instance(rng);
            const auto cert =
                locality_certificate(inst.graph, inst.v, inst.a, inst.mode.support());
            CHECK(cert.pass);
            CHECK(cert.max_outside_entry <= cert.tolerance);
            CHECK(cert.allowed.contains(inst.mode.support().members().front()));
        }
    }

    TEST_CASE("reductions beyond distance 2 are exactly Gaussian") {
        const Graph g = path_graph(6);
        const auto v =
            graph_state_covariance(v0_from_squeezing(SqueezingSpec::uniform_db(6, 10.0)), g);
        const auto a = build_A(v, ModeVector::vertex(6, 0), OperationSign::Subtract);

        for (int far : {3, 4, 5}) {
            const auto ar = reduce_A(a, VertexSet{far});
            CHECK(ar.is_zero());
            const auto vr = reduce_covariance(v, VertexSet{far});
            CHECK(std::abs(excess_kurtosis(vr, ar, 0, Quadrature::X)) <= 1e-12);
            CHECK(std::abs(excess_kurtosis(vr, ar, 0, Quadrature::P)) <= 1e-12);
            CHECK(purity_nongaussian(vr, ar) == gaussian_purity(vr));
            CHECK_FALSE(negativity_trace(vr, ar).negative);
        }
        // Non-Gaussian features do reach distance 2.
        CHECK_FALSE(reduce_A(a, VertexSet{2}).is_zero());
    }

    TEST_CASE("kurtosis is never positive") {
        std::mt19937_64 rng(31005);
        for (int trial = 0; trial < 25; ++trial) {
            const auto inst = testsupport::random_instance(rng);
            for (int k = 0; k < inst.graph.vertex_count(); ++k) {
                const auto vr = reduce_covariance(inst.v, VertexSet{k});
                const auto ar = reduce_A(inst.a, VertexSet{k});
                CHECK(excess_kurtosis(vr, ar, 0, Quadrature::X) <= 1e-10);
                CHECK(excess_kurtosis(vr, ar, 0, Quadrature::P) <= 1e-10);
            }
        }
    }

    TEST_CASE("moment preconditions") {
        const auto v = vacuum_state();
        const auto a = NonGaussMatrix::zero(1);
        CHECK_THROWS_AS(quadrature_moment(v, a, 0, Quadrature::X, 0), std::invalid_argument);
        CHECK_THROWS_AS(quadrature_moment(v, a, 0, Quadrature::X, 5), std::invalid_argument);
        CHECK_THROWS_AS(quadrature_moment(v, a, 1, Quadrature::X, 2), std::invalid_argument);
        CHECK(quadrature_moment(v, a, 0, Quadrature::X, 2) == 1.0);  // vacuum variance
        CHECK_THROWS_AS(purity_nongaussian(reduce_covariance(vacuum_state(), VertexSet{0}),
                                           NonGaussMatrix::zero(2)),
                        std::invalid_argument);
    }

    TEST_CASE("dimension mismatches are rejected") {
        const auto v = vacuum_state();
        CHECK_THROWS_AS(build_A(v, ModeVector::vertex(2, 0), OperationSign::Add),
                        std::invalid_argument);
        CHECK_THROWS_AS(negativity_trace(v, NonGaussMatrix::zero(2)), std::invalid_argument);
        CHECK_THROWS_AS(reduce_A(NonGaussMatrix::zero(2), VertexSet{2}), std::invalid_argument);
        CHECK_THROWS_AS(wigner_value(v, NonGaussMatrix::zero(1), Eigen::VectorXd::Zero(4)),
                        std::invalid_argument);
    }
}
