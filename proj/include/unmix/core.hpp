#pragma once

#include <cstdint>

#include "unmix/graph.hpp"
#include "unmix/types.hpp"

namespace unmix {

/// Forward model Y = M A + E with E ~ iid N(0, noise_sigma^2), negatives
/// clamped to zero. noise_sigma = 0 gives the exact product. The caller
/// supplies the pixel grid (height * width must equal the column count of A).
HyperspectralImage lmm_synthesize(const EndmemberMatrix& M, const AbundanceMatrix& A,
                                  int height, int width, double noise_sigma,
                                  std::uint64_t seed);

/// Full objective 1/2 ||Y - MA||_F^2 + (lambda/2) (Tr(A D A^T) - Tr(A W A^T))
/// + alpha ||A||_1, returned split into its three parts.
Objective objective(const HyperspectralImage& Y, const EndmemberMatrix& M,
                    const AbundanceMatrix& A, const NeighborGraph& graph,
                    double lambda, double alpha);

struct Gradients {
    Matrix endmembers;  // d/dM of the smooth objective parts: M A A^T - Y A^T
    Matrix abundances;  // d/dA: M^T M A - M^T Y + lambda A L
};

/// Gradients of the smooth objective parts (fit + graph). The lasso term is
/// nonsmooth at zero and excluded; for strictly positive A its gradient is
/// the constant alpha, which callers add when needed.
Gradients smooth_gradients(const HyperspectralImage& Y, const EndmemberMatrix& M,
                           const AbundanceMatrix& A, const NeighborGraph& graph,
                           double lambda);

}  // namespace unmix
