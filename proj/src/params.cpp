#include "unmix/params.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "unmix/log.hpp"

namespace unmix {

double estimate_alpha0(const HyperspectralImage& Y) {
    const int n = Y.pixels();
    if (n < 2) throw DegenerateInputError("sparseness needs at least 2 pixels");
    const double sqrt_n = std::sqrt(static_cast<double>(n));

    double sum = 0.0;
    int used = 0;
    for (int l = 0; l < Y.bands; ++l) {
        const double norm2 = Y.data.row(l).norm();
        if (norm2 == 0.0) continue;
        const double norm1 = Y.data.row(l).lpNorm<1>();
        sum += (sqrt_n - norm1 / norm2) / (sqrt_n - 1.0);
        ++used;
    }
    if (used == 0) throw DegenerateInputError("all bands are zero");
    if (used < Y.bands) {
        warn(std::to_string(Y.bands - used) + " zero band(s) skipped in sparsity estimate");
    }
    return sum / std::sqrt(static_cast<double>(used));
}

double estimate_lambda0(const HyperspectralImage& Y, std::uint64_t seed) {
    const int h = Y.height, w = Y.width;
    if (h < 5 || w < 5) throw ParameterError("lambda estimation needs an image of at least 5x5 pixels");

    Vector norms(Y.pixels());
    for (int i = 0; i < Y.pixels(); ++i) norms[i] = Y.data.col(i).norm();

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> row_anchor(0, h - 5);
    std::uniform_int_distribution<int> col_anchor(0, w - 5);

    const int patches = 100;
    double total = 0.0;
    long count = 0;
    bool dead_seen = false;
    for (int p = 0; p < patches; ++p) {
        const int r0 = row_anchor(rng);
        const int c0 = col_anchor(rng);
        const int center = Y.pixel_index(r0 + 2, c0 + 2);
        for (int dr = 0; dr < 5; ++dr) {
            for (int dc = 0; dc < 5; ++dc) {
                const int j = Y.pixel_index(r0 + dr, c0 + dc);
                if (j == center) continue;
                double sim = 0.0;  // zero-norm pairs count as fully dissimilar
                if (norms[center] > 0.0 && norms[j] > 0.0) {
                    sim = std::clamp(
                        Y.data.col(center).dot(Y.data.col(j)) / (norms[center] * norms[j]),
                        -1.0, 1.0);
                } else {
                    dead_seen = true;
                }
                total += sim;
                ++count;
            }
        }
    }
    if (dead_seen) warn("zero-norm pixel(s) encountered while estimating lambda0");
    return total / static_cast<double>(count);
}

namespace {

std::vector<double> linspace(double lo, double hi, int points) {
    std::vector<double> g(points);
    const double span = hi - lo;
    for (int i = 0; i < points; ++i) {
        g[i] = lo + span * static_cast<double>(i) / static_cast<double>(points - 1);
    }
    g.front() = lo;
    g.back() = hi;
    return g;
}

double floor_positive(double v, const char* name) {
    if (v < 0.0) throw ParameterError(std::string(name) + " estimate must be >= 0");
    if (v == 0.0) {
        warn(std::string(name) + " estimate is zero; substituting 1e-6");
        return 1e-6;
    }
    return v;
}

}  // namespace

ParamEstimate make_grids(double alpha0, double lambda0) {
    ParamEstimate est;
    est.alpha0 = floor_positive(alpha0, "alpha0");
    est.lambda0 = floor_positive(lambda0, "lambda0");
    est.alpha_grid = linspace(0.1 * est.alpha0, 10.0 * est.alpha0, 50);
    est.lambda_grid = linspace(1e-4 * est.lambda0, 10.0 * est.lambda0, 50);
    return est;
}

}  // namespace unmix
