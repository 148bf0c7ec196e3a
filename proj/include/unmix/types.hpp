#pragma once

#include <Eigen/Core>
#include <vector>

#include "unmix/errors.hpp"

namespace unmix {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// A hyperspectral cube flattened to an L x N matrix. Column n holds the
/// spectrum of pixel n; pixels are numbered row by row across the 2-D grid
/// (pixel (r, c) maps to column r*width + c). All entries are nonnegative.
struct HyperspectralImage {
    int height = 0;
    int width = 0;
    int bands = 0;
    Matrix data;                // bands x (height*width)
    std::vector<int> band_ids;  // original 1-based band indices kept after
                                // preprocessing; empty means "all, in order"

    HyperspectralImage() = default;
    HyperspectralImage(int height, int width, Matrix data,
                       std::vector<int> band_ids = {});

    int pixels() const { return height * width; }
    int pixel_index(int row, int col) const { return row * width + col; }
};

/// L x K matrix whose columns are the constituent spectra.
struct EndmemberMatrix {
    Matrix data;

    EndmemberMatrix() = default;
    explicit EndmemberMatrix(Matrix data);

    int bands() const { return static_cast<int>(data.rows()); }
    int count() const { return static_cast<int>(data.cols()); }
};

/// K x N matrix of per-pixel fractional abundances. Column n is the mixing
/// vector of pixel n; row k is the abundance map of endmember k.
struct AbundanceMatrix {
    Matrix data;

    AbundanceMatrix() = default;
    explicit AbundanceMatrix(Matrix data);

    int count() const { return static_cast<int>(data.rows()); }
    int pixels() const { return static_cast<int>(data.cols()); }
};

struct GroundTruth {
    EndmemberMatrix endmembers;
    AbundanceMatrix abundances;

    GroundTruth() = default;
    GroundTruth(EndmemberMatrix endmembers, AbundanceMatrix abundances);
};

/// Value of the regularized factorization objective, split into its parts:
/// fit = 1/2 ||Y - MA||_F^2, graph = (lambda/2) Tr(A L A^T), lasso = alpha ||A||_1.
struct Objective {
    double fit = 0.0;
    double graph = 0.0;
    double lasso = 0.0;
    double total = 0.0;

    static Objective parts(double fit, double graph, double lasso) {
        Objective o;
        o.fit = fit;
        o.graph = graph;
        o.lasso = lasso;
        o.total = fit + graph + lasso;
        return o;
    }
};

}  // namespace unmix
