#pragma once

#include <cstdint>
#include <vector>

#include "unmix/types.hpp"

namespace unmix {

struct ParamEstimate {
    double alpha0 = 0.0;
    double lambda0 = 0.0;
    std::vector<double> alpha_grid;   // 50 equally spaced values in [0.1 a0, 10 a0]
    std::vector<double> lambda_grid;  // 50 equally spaced values in [1e-4 l0, 10 l0]
};

/// Lasso weight estimate: the mean per-band sparseness of the data,
///   alpha0 = (1/sqrt(L)) sum_l (sqrt(N) - |x_l|_1 / |x_l|_2) / (sqrt(N) - 1),
/// where x_l is band l across all pixels. Zero-norm bands are skipped (with a
/// warning) and L reduced accordingly.
double estimate_alpha0(const HyperspectralImage& Y);

/// Graph weight estimate: sample 100 random 5x5 patches (anchors uniform,
/// with replacement), take the cosine-of-SAD similarity between each patch
/// center and its 24 neighbors, and average the 2400 values.
double estimate_lambda0(const HyperspectralImage& Y, std::uint64_t seed);

/// Linear search grids around the estimates (50 points each). Nonpositive
/// estimates are substituted by 1e-6 with a warning.
ParamEstimate make_grids(double alpha0, double lambda0);

}  // namespace unmix
