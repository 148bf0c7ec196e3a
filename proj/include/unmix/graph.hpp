#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <iosfwd>
#include <string>

#include "unmix/types.hpp"

namespace unmix {

/// How a kept neighbor pair (i, j) is weighted.
///   cosine:  W_ij = cos(SAD(y_i, y_j)), a similarity in [0, 1] for
///            nonnegative spectra (the default; the Laplacian penalty needs
///            large weight = similar pixels).
///   raw_sad: W_ij = SAD(y_i, y_j) itself, in [0, pi/2] for nonnegative
///            spectra (kept for literal reproduction of the distance form).
enum class WeightMode { cosine, raw_sad };

std::string weight_mode_name(WeightMode mode);
WeightMode parse_weight_mode(const std::string& name);

/// Sparse symmetric pixel-similarity graph over the image grid.
/// Edges connect each pixel to the most spectrally similar pixels inside its
/// m x m spatial window; W is symmetric with zero diagonal, degrees[i] is the
/// row sum of W, and the graph Laplacian is L = diag(degrees) - W.
struct NeighborGraph {
    int n = 0;
    int window = 0;              // odd window size m (0 for the edgeless graph)
    double keep_fraction = 1.0;  // q in (0, 1]
    WeightMode mode = WeightMode::cosine;
    Eigen::SparseMatrix<double> weights;
    Vector degrees;

    /// Graph with n nodes and no edges (used for runs with lambda = 0).
    static NeighborGraph edgeless(int n);
};

inline constexpr int kDefaultWindow = 7;
inline constexpr double kDefaultKeepFraction = 0.30;

/// Clamped normalized inner product x.y / (|x||y|), in [-1, 1].
/// Throws DegenerateInputError if either vector has zero norm.
double cosine_similarity(const Eigen::Ref<const Vector>& x,
                         const Eigen::Ref<const Vector>& y);

/// Spectral angle distance arccos(x.y / (|x||y|)) in radians, in [0, pi].
double sad(const Eigen::Ref<const Vector>& x, const Eigen::Ref<const Vector>& y);

/// Builds the spatial-spectral neighbor graph. For each pixel the candidate
/// set is its m x m window (truncated at image borders) minus itself; the
/// ceil(q * |candidates|) most similar candidates (smallest SAD, ties broken
/// by lower pixel index) are kept, and an edge exists if either endpoint kept
/// the other. Zero-norm pixels get no edges and a warning.
NeighborGraph build_neighbor_graph(const HyperspectralImage& image,
                                   int window = kDefaultWindow,
                                   double keep_fraction = kDefaultKeepFraction,
                                   WeightMode mode = WeightMode::cosine);

/// Tr(A D A^T) - Tr(A W A^T) = sum_{i<j} W_ij ||a_i - a_j||^2, evaluated
/// edgewise over the sparse weights (never materializes the dense Laplacian;
/// exactly zero when all columns of A are equal).
double laplacian_quadratic(const AbundanceMatrix& A, const NeighborGraph& g);

/// A * W using the sparse weights; column j of the result is sum_i W_ij a_i.
Matrix apply_weights(const AbundanceMatrix& A, const NeighborGraph& g);

/// Text edge list: header "n m q mode", then one "i j w" line per edge with
/// i < j and w printed with 17 significant digits.
void save_graph(const NeighborGraph& g, std::ostream& out);
void save_graph(const NeighborGraph& g, const std::string& path);
NeighborGraph load_graph(std::istream& in);
NeighborGraph load_graph(const std::string& path);

}  // namespace unmix
