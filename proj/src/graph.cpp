#include "unmix/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "unmix/log.hpp"

namespace unmix {

std::string weight_mode_name(WeightMode mode) {
    return mode == WeightMode::cosine ? "cosine" : "raw_sad";
}

WeightMode parse_weight_mode(const std::string& name) {
    if (name == "cosine") return WeightMode::cosine;
    if (name == "raw_sad" || name == "raw-sad") return WeightMode::raw_sad;
    throw ParameterError("unknown weight mode '" + name + "'");
}

NeighborGraph NeighborGraph::edgeless(int n) {
    if (n < 0) throw ParameterError("node count must be nonnegative");
    NeighborGraph g;
    g.n = n;
    g.weights.resize(n, n);
    g.degrees = Vector::Zero(n);
    return g;
}

double cosine_similarity(const Eigen::Ref<const Vector>& x,
                         const Eigen::Ref<const Vector>& y) {
    if (x.size() != y.size()) throw ShapeError("spectra have different lengths");
    const double nx = x.norm();
    const double ny = y.norm();
    if (nx == 0.0 || ny == 0.0) {
        throw DegenerateInputError("zero-norm spectrum in angle computation");
    }
    return std::clamp(x.dot(y) / (nx * ny), -1.0, 1.0);
}

double sad(const Eigen::Ref<const Vector>& x, const Eigen::Ref<const Vector>& y) {
    if (x.size() != y.size()) throw ShapeError("spectra have different lengths");
    const double nx = x.norm();
    const double ny = y.norm();
    if (nx == 0.0 || ny == 0.0) {
        throw DegenerateInputError("zero-norm spectrum in angle computation");
    }
    // atan2 form of the angle between unit vectors; unlike acos of the
    // normalized dot it is well conditioned near 0 and pi (and exactly 0
    // for identical inputs).
    const Vector u = x / nx;
    const Vector w = y / ny;
    return 2.0 * std::atan2((u - w).norm(), (u + w).norm());
}

namespace {

// Normalized dot of two pixel columns with norms already checked nonzero.
inline double column_cosine(const Matrix& Y, const Vector& norms, int i, int j) {
    return std::clamp(Y.col(i).dot(Y.col(j)) / (norms[i] * norms[j]), -1.0, 1.0);
}

}  // namespace

NeighborGraph build_neighbor_graph(const HyperspectralImage& image, int window,
                                   double keep_fraction, WeightMode mode) {
    const int h = image.height;
    const int w = image.width;
    const int n = image.pixels();
    if (n == 0) throw ParameterError("cannot build a graph over an empty image");
    if (window < 3 || window % 2 == 0) {
        throw ParameterError("window must be an odd integer >= 3");
    }
    if (!(keep_fraction > 0.0 && keep_fraction <= 1.0)) {
        throw ParameterError("keep_fraction must lie in (0, 1]");
    }

    const Matrix& Y = image.data;
    Vector norms(n);
    int dead = 0;
    for (int i = 0; i < n; ++i) {
        norms[i] = Y.col(i).norm();
        if (norms[i] == 0.0) ++dead;
    }
    if (dead > 0) {
        warn(std::to_string(dead) + " zero-norm pixel(s); they get no graph edges");
    }

    const int half = window / 2;
    // Directed picks per pixel, merged into unordered pairs ("or" rule).
    std::vector<long long> pairs;
    pairs.reserve(static_cast<size_t>(n) * 8);
    std::vector<std::pair<double, int>> ranked;  // (angle, candidate index)
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            const int i = r * w + c;
            if (norms[i] == 0.0) continue;
            ranked.clear();
            const int r0 = std::max(0, r - half), r1 = std::min(h - 1, r + half);
            const int c0 = std::max(0, c - half), c1 = std::min(w - 1, c + half);
            for (int rr = r0; rr <= r1; ++rr) {
                for (int cc = c0; cc <= c1; ++cc) {
                    const int j = rr * w + cc;
                    if (j == i || norms[j] == 0.0) continue;
                    ranked.emplace_back(std::acos(column_cosine(Y, norms, i, j)), j);
                }
            }
            if (ranked.empty()) continue;
            const int keep = static_cast<int>(
                std::ceil(keep_fraction * static_cast<double>(ranked.size())));
            std::partial_sort(ranked.begin(), ranked.begin() + keep, ranked.end());
            for (int t = 0; t < keep; ++t) {
                const int j = ranked[t].second;
                const long long a = std::min(i, j), b = std::max(i, j);
                pairs.push_back(a * static_cast<long long>(n) + b);
            }
        }
    }
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(pairs.size() * 2);
    for (long long key : pairs) {
        const int i = static_cast<int>(key / n);
        const int j = static_cast<int>(key % n);
        const double cosv = column_cosine(Y, norms, i, j);
        const double wij = (mode == WeightMode::cosine) ? cosv : std::acos(cosv);
        triplets.emplace_back(i, j, wij);
        triplets.emplace_back(j, i, wij);
    }

    NeighborGraph g;
    g.n = n;
    g.window = window;
    g.keep_fraction = keep_fraction;
    g.mode = mode;
    g.weights.resize(n, n);
    g.weights.setFromTriplets(triplets.begin(), triplets.end());
    g.degrees = Vector::Zero(n);
    for (int k = 0; k < g.weights.outerSize(); ++k) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(g.weights, k); it; ++it) {
            g.degrees[it.col()] += it.value();
        }
    }
    return g;
}

double laplacian_quadratic(const AbundanceMatrix& A, const NeighborGraph& g) {
    if (A.pixels() != g.n) {
        throw ShapeError("abundance column count does not match graph size");
    }
    double sum = 0.0;
    for (int k = 0; k < g.weights.outerSize(); ++k) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(g.weights, k); it; ++it) {
            if (it.row() < it.col()) {
                sum += it.value() *
                       (A.data.col(it.row()) - A.data.col(it.col())).squaredNorm();
            }
        }
    }
    return sum;
}

Matrix apply_weights(const AbundanceMatrix& A, const NeighborGraph& g) {
    if (A.pixels() != g.n) {
        throw ShapeError("abundance column count does not match graph size");
    }
    return A.data * g.weights;
}

void save_graph(const NeighborGraph& g, std::ostream& out) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%d %d %.17g %s", g.n, g.window, g.keep_fraction,
                  weight_mode_name(g.mode).c_str());
    out << buf << '\n';
    for (int k = 0; k < g.weights.outerSize(); ++k) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(g.weights, k); it; ++it) {
            if (it.row() < it.col()) {
                std::snprintf(buf, sizeof(buf), "%d %d %.17g",
                              static_cast<int>(it.row()), static_cast<int>(it.col()),
                              it.value());
                out << buf << '\n';
            }
        }
    }
}

void save_graph(const NeighborGraph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    save_graph(g, out);
    if (!out) throw IoError("failed writing graph to '" + path + "'");
}

NeighborGraph load_graph(std::istream& in) {
    std::string header;
    if (!std::getline(in, header)) throw IoError("missing graph header");
    std::istringstream hs(header);
    NeighborGraph g;
    std::string mode_name;
    if (!(hs >> g.n >> g.window >> g.keep_fraction >> mode_name) || g.n < 0) {
        throw IoError("malformed graph header '" + header + "'");
    }
    g.mode = parse_weight_mode(mode_name);

    std::vector<Eigen::Triplet<double>> triplets;
    int i = 0, j = 0;
    double wij = 0.0;
    while (in >> i >> j >> wij) {
        if (i < 0 || j < 0 || i >= g.n || j >= g.n || i >= j) {
            throw IoError("bad edge (" + std::to_string(i) + ", " + std::to_string(j) + ")");
        }
        triplets.emplace_back(i, j, wij);
        triplets.emplace_back(j, i, wij);
    }
    g.weights.resize(g.n, g.n);
    g.weights.setFromTriplets(triplets.begin(), triplets.end());
    g.degrees = Vector::Zero(g.n);
    for (int k = 0; k < g.weights.outerSize(); ++k) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(g.weights, k); it; ++it) {
            g.degrees[it.col()] += it.value();
        }
    }
    return g;
}

NeighborGraph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    return load_graph(in);
}

}  // namespace unmix
