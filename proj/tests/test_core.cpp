#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "unmix/core.hpp"
#include "unmix/graph.hpp"

using namespace unmix;

TEST_SUITE_BEGIN("core");

TEST_CASE("domain type invariants are enforced") {
    Matrix neg(2, 2);
    neg << 1.0, -0.5, 0.0, 2.0;
    CHECK_THROWS_AS(HyperspectralImage(1, 2, neg), ParameterError);
    CHECK_THROWS_AS(AbundanceMatrix{neg}, ParameterError);
    CHECK_THROWS_AS(HyperspectralImage(2, 2, Matrix::Ones(3, 3)), ShapeError);
    CHECK_THROWS_AS(HyperspectralImage(1, 2, Matrix::Ones(2, 2), {3, 2}), ParameterError);
    CHECK_THROWS_AS(HyperspectralImage(1, 2, Matrix::Ones(2, 2), {1}), ShapeError);
    CHECK_THROWS_AS(GroundTruth(EndmemberMatrix(Matrix::Ones(3, 2)),
                                AbundanceMatrix(Matrix::Ones(3, 4))),
                    ShapeError);

    const Objective o = Objective::parts(1.0, 0.25, 0.5);
    CHECK(o.total == doctest::Approx(1.75).epsilon(1e-15));
}

TEST_CASE("lmm_synthesize: exact product cases") {
    Matrix m(2, 1);
    m << 1.0, 0.0;
    Matrix a(1, 2);
    a << 2.0, 3.0;
    const HyperspectralImage y =
        lmm_synthesize(EndmemberMatrix(m), AbundanceMatrix(a), 1, 2, 0.0, 0);
    CHECK(y.data(0, 0) == 2.0);
    CHECK(y.data(0, 1) == 3.0);
    CHECK(y.data(1, 0) == 0.0);
    CHECK(y.data(1, 1) == 0.0);

    // Identity abundances reproduce the endmembers.
    std::mt19937_64 rng(11);
    const Matrix m3 = oracle::random_matrix(5, 3, rng);
    const HyperspectralImage ident = lmm_synthesize(
        EndmemberMatrix(m3), AbundanceMatrix(Matrix::Identity(3, 3)), 1, 3, 0.0, 0);
    CHECK((ident.data - m3).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("lmm_synthesize: matches the triple-loop product oracle") {
    std::mt19937_64 rng(42);
    const Matrix m = oracle::random_matrix(4, 3, rng);
    const Matrix a = oracle::random_matrix(3, 6, rng);
    const HyperspectralImage y =
        lmm_synthesize(EndmemberMatrix(m), AbundanceMatrix(a), 2, 3, 0.0, 0);
    const Matrix expect = oracle::naive_matmul(m, a);
    CHECK((y.data - expect).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("lmm_synthesize: noise is seeded, clamped and shape-checked") {
    std::mt19937_64 rng(7);
    const EndmemberMatrix m{oracle::random_matrix(4, 2, rng)};
    const AbundanceMatrix a{oracle::random_matrix(2, 6, rng)};
    const HyperspectralImage y1 = lmm_synthesize(m, a, 2, 3, 0.5, 123);
    const HyperspectralImage y2 = lmm_synthesize(m, a, 2, 3, 0.5, 123);
    const HyperspectralImage y3 = lmm_synthesize(m, a, 2, 3, 0.5, 124);
    CHECK((y1.data - y2.data).cwiseAbs().maxCoeff() == 0.0);
    CHECK((y1.data - y3.data).cwiseAbs().maxCoeff() > 0.0);
    CHECK(y1.data.minCoeff() >= 0.0);

    CHECK_THROWS_AS(lmm_synthesize(m, a, 2, 2, 0.0, 0), ShapeError);
    CHECK_THROWS_AS(lmm_synthesize(m, AbundanceMatrix(Matrix::Ones(3, 6)), 2, 3, 0.0, 0),
                    ShapeError);
}

TEST_CASE("objective: perfect fit with no penalty is zero") {
    std::mt19937_64 rng(3);
    const Matrix m = oracle::random_matrix(4, 2, rng);
    const Matrix a = oracle::random_matrix(2, 6, rng);
    const HyperspectralImage y =
        lmm_synthesize(EndmemberMatrix(m), AbundanceMatrix(a), 2, 3, 0.0, 0);
    const Objective o = objective(y, EndmemberMatrix(m), AbundanceMatrix(a),
                                  NeighborGraph::edgeless(6), 0.0, 0.0);
    CHECK(o.total == doctest::Approx(0.0).epsilon(1e-20));
}

TEST_CASE("objective: lasso part is the plain sum of a nonnegative A") {
    std::mt19937_64 rng(4);
    const HyperspectralImage y = oracle::random_image(2, 3, 4, rng);
    const Matrix a = oracle::random_matrix(2, 6, rng);
    const Matrix m = oracle::random_matrix(4, 2, rng);
    const Objective o = objective(y, EndmemberMatrix(m), AbundanceMatrix(a),
                                  NeighborGraph::edgeless(6), 0.0, 1.0);
    CHECK(o.lasso == doctest::Approx(a.sum()).epsilon(1e-14));
    CHECK(o.graph == 0.0);
    CHECK(o.total == doctest::Approx(o.fit + o.lasso).epsilon(1e-15));
}

TEST_CASE("objective: two-pixel graph term matches the hand value") {
    // W = [[0,1],[1,0]], A = I2, lambda = 2 -> graph part = 2.
    Matrix ydata(2, 2);
    ydata << 1.0, 1.0, 1.0, 1.0;
    const HyperspectralImage y(1, 2, ydata);
    const NeighborGraph g = build_neighbor_graph(y, 3, 1.0, WeightMode::cosine);
    const Objective o = objective(y, EndmemberMatrix(Matrix::Ones(2, 2)),
                                  AbundanceMatrix(Matrix::Identity(2, 2)), g, 2.0, 0.0);
    CHECK(o.graph == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("objective: parts are consistent and errors propagate") {
    std::mt19937_64 rng(5);
    const HyperspectralImage y = oracle::random_image(2, 4, 5, rng);
    const NeighborGraph g = build_neighbor_graph(y, 3, 0.5, WeightMode::cosine);
    const EndmemberMatrix m{oracle::random_matrix(5, 3, rng)};
    const AbundanceMatrix a{oracle::random_matrix(3, 8, rng)};

    std::uniform_real_distribution<double> dist(0.0, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
        const double lambda = dist(rng), alpha = dist(rng);
        const Objective o = objective(y, m, a, g, lambda, alpha);
        CHECK(o.fit >= 0.0);
        CHECK(o.graph >= 0.0);
        CHECK(o.lasso >= 0.0);
        CHECK(o.total == doctest::Approx(o.fit + o.graph + o.lasso).epsilon(1e-12));
    }

    CHECK_THROWS_AS(objective(y, m, a, g, -1.0, 0.0), ParameterError);
    CHECK_THROWS_AS(objective(y, m, a, g, 0.0, -1.0), ParameterError);
    CHECK_THROWS_AS(objective(y, m, a, NeighborGraph::edgeless(3), 0.0, 0.0), ShapeError);
    CHECK_THROWS_AS(objective(y, EndmemberMatrix(Matrix::Ones(4, 3)), a, g, 0.0, 0.0),
                    ShapeError);
}

TEST_CASE("objective: graph part equals the pairwise oracle on random instances") {
    std::mt19937_64 rng(6);
    std::uniform_int_distribution<int> hw(2, 10), kd(1, 4);
    std::uniform_real_distribution<double> qd(0.1, 1.0);
    for (int trial = 0; trial < 25; ++trial) {
        const int h = hw(rng), w = hw(rng), k = kd(rng);
        const HyperspectralImage y = oracle::random_image(h, w, 5, rng, 0.1, 1.0);
        const NeighborGraph g = build_neighbor_graph(y, 3, qd(rng), WeightMode::cosine);
        const Matrix a = oracle::random_matrix(k, h * w, rng);
        const double lambda = 1.7;
        const Objective o = objective(y, EndmemberMatrix(oracle::random_matrix(5, k, rng)),
                                      AbundanceMatrix(a), g, lambda, 0.0);
        const double expect = 0.5 * lambda * oracle::pairwise_laplacian(Matrix(g.weights), a);
        CHECK(o.graph == doctest::Approx(expect).epsilon(1e-10));
    }
}

TEST_CASE("smooth_gradients: stationary at a perfect fit, zero-data case") {
    std::mt19937_64 rng(8);
    const Matrix m = oracle::random_matrix(3, 2, rng);
    const Matrix a = oracle::random_matrix(2, 4, rng);
    const HyperspectralImage y =
        lmm_synthesize(EndmemberMatrix(m), AbundanceMatrix(a), 1, 4, 0.0, 0);
    const Gradients g = smooth_gradients(y, EndmemberMatrix(m), AbundanceMatrix(a),
                                         NeighborGraph::edgeless(4), 0.0);
    CHECK(g.endmembers.cwiseAbs().maxCoeff() < 1e-12);
    CHECK(g.abundances.cwiseAbs().maxCoeff() < 1e-12);

    const HyperspectralImage zero(1, 4, Matrix::Zero(3, 4));
    const Gradients gz = smooth_gradients(zero, EndmemberMatrix(m), AbundanceMatrix(a),
                                          NeighborGraph::edgeless(4), 0.0);
    const Matrix expect = (m.transpose() * m) * a;
    CHECK((gz.abundances - expect).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("smooth_gradients: matches central finite differences") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 8; ++trial) {
        const int h = 3, w = 3, bands = 3, k = 2;
        const HyperspectralImage y = oracle::random_image(h, w, bands, rng, 0.1, 1.0);
        const NeighborGraph g = build_neighbor_graph(y, 3, 0.5, WeightMode::cosine);
        const Matrix m = oracle::random_matrix(bands, k, rng, 0.1, 1.0);
        const Matrix a = oracle::random_matrix(k, h * w, rng, 0.1, 1.0);
        const double lambda = trial % 2 == 0 ? 0.8 : 0.0;

        const Gradients an =
            smooth_gradients(y, EndmemberMatrix(m), AbundanceMatrix(a), g, lambda);
        const oracle::FdGradients fd =
            oracle::fd_gradients(y.data, m, a, Matrix(g.weights), lambda, 1e-6);
        for (long i = 0; i < m.size(); ++i) {
            const double denom =
                std::max({std::abs(fd.endmembers(i)), std::abs(an.endmembers(i)), 1e-3});
            CHECK(std::abs(fd.endmembers(i) - an.endmembers(i)) / denom < 1e-4);
        }
        for (long i = 0; i < a.size(); ++i) {
            const double denom =
                std::max({std::abs(fd.abundances(i)), std::abs(an.abundances(i)), 1e-3});
            CHECK(std::abs(fd.abundances(i) - an.abundances(i)) / denom < 1e-4);
        }
    }
}

TEST_SUITE_END();
