#include "unmix/core.hpp"

#include <random>
#include <string>

namespace unmix {

namespace {

void check_factor_shapes(const EndmemberMatrix& M, const AbundanceMatrix& A) {
    if (M.count() != A.count()) {
        throw ShapeError("endmember/abundance K mismatch: " + std::to_string(M.count()) +
                         " vs " + std::to_string(A.count()));
    }
}

void check_image_shapes(const HyperspectralImage& Y, const EndmemberMatrix& M,
                        const AbundanceMatrix& A) {
    check_factor_shapes(M, A);
    if (Y.bands != M.bands()) throw ShapeError("image/endmember band count mismatch");
    if (Y.pixels() != A.pixels()) throw ShapeError("image/abundance pixel count mismatch");
}

}  // namespace

HyperspectralImage lmm_synthesize(const EndmemberMatrix& M, const AbundanceMatrix& A,
                                  int height, int width, double noise_sigma,
                                  std::uint64_t seed) {
    check_factor_shapes(M, A);
    if (static_cast<long>(height) * width != A.pixels()) {
        throw ShapeError("height*width does not match abundance pixel count");
    }
    if (noise_sigma < 0.0) throw ParameterError("noise_sigma must be >= 0");

    Matrix Y = M.data * A.data;
    if (noise_sigma > 0.0) {
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> noise(0.0, noise_sigma);
        for (long c = 0; c < Y.cols(); ++c) {
            for (long r = 0; r < Y.rows(); ++r) {
                Y(r, c) = std::max(0.0, Y(r, c) + noise(rng));
            }
        }
    }
    return HyperspectralImage(height, width, std::move(Y));
}

Objective objective(const HyperspectralImage& Y, const EndmemberMatrix& M,
                    const AbundanceMatrix& A, const NeighborGraph& graph,
                    double lambda, double alpha) {
    check_image_shapes(Y, M, A);
    if (graph.n != Y.pixels()) throw ShapeError("graph node count does not match image");
    if (lambda < 0.0 || alpha < 0.0) throw ParameterError("lambda and alpha must be >= 0");

    const double fit = 0.5 * (Y.data - M.data * A.data).squaredNorm();
    const double graph_term =
        lambda > 0.0 ? 0.5 * lambda * laplacian_quadratic(A, graph) : 0.0;
    const double lasso = alpha > 0.0 ? alpha * A.data.sum() : 0.0;
    return Objective::parts(fit, graph_term, lasso);
}

Gradients smooth_gradients(const HyperspectralImage& Y, const EndmemberMatrix& M,
                           const AbundanceMatrix& A, const NeighborGraph& graph,
                           double lambda) {
    check_image_shapes(Y, M, A);
    if (graph.n != Y.pixels()) throw ShapeError("graph node count does not match image");
    if (lambda < 0.0) throw ParameterError("lambda must be >= 0");

    Gradients g;
    g.endmembers = M.data * (A.data * A.data.transpose()) - Y.data * A.data.transpose();
    g.abundances = (M.data.transpose() * M.data) * A.data - M.data.transpose() * Y.data;
    if (lambda > 0.0) {
        // A L = A D - A W with D applied as column scaling by the degrees.
        g.abundances += lambda * (A.data * graph.degrees.asDiagonal() -
                                  A.data * graph.weights);
    }
    return g;
}

}  // namespace unmix
