#include "unmix/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <random>
#include <string>

#include "unmix/log.hpp"

namespace unmix {

namespace {

constexpr int kInitCandidateBatch = 100;

// Angle between pixel columns i and j; pairs involving a zero-norm column
// count as angle 0 so dead pixels are never preferred as "dissimilar".
double column_angle(const Matrix& Y, const Vector& norms, int i, int j) {
    if (norms[i] == 0.0 || norms[j] == 0.0) return 0.0;
    return std::acos(std::clamp(Y.col(i).dot(Y.col(j)) / (norms[i] * norms[j]), -1.0, 1.0));
}

double elapsed_seconds(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

void SolverConfig::validate() const {
    if (k < 1) throw ParameterError("k must be >= 1");
    if (lambda < 0.0 || alpha < 0.0) throw ParameterError("lambda and alpha must be >= 0");
    if (!(tau > 0.0)) throw ParameterError("tau must be > 0");
    if (max_iter < 1) throw ParameterError("max_iter must be >= 1");
    if (!(epsilon > 0.0)) throw ParameterError("epsilon must be > 0");
}

EndmemberMatrix init_endmembers(const HyperspectralImage& Y, int k, std::uint64_t seed) {
    const int n = Y.pixels();
    if (k < 1) throw ParameterError("k must be >= 1");
    if (k > n) throw ParameterError("k exceeds the pixel count");

    Vector norms(n);
    for (int i = 0; i < n; ++i) norms[i] = Y.data.col(i).norm();

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, n - 1);
    std::vector<int> selected;
    selected.reserve(k);
    selected.push_back(pick(rng));
    while (static_cast<int>(selected.size()) < k) {
        int best = -1;
        double best_score = -1.0;
        for (int t = 0; t < kInitCandidateBatch; ++t) {
            const int c = pick(rng);
            double score = std::numeric_limits<double>::infinity();
            for (int s : selected) score = std::min(score, column_angle(Y.data, norms, c, s));
            if (score > best_score) {
                best_score = score;
                best = c;
            }
        }
        selected.push_back(best);
    }

    Matrix M(Y.bands, k);
    for (int j = 0; j < k; ++j) M.col(j) = Y.data.col(selected[j]);
    return EndmemberMatrix(std::move(M));
}

AbundanceMatrix init_abundances(int k, int n, std::uint64_t seed) {
    if (k < 1 || n < 1) throw ParameterError("k and n must be >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(std::numeric_limits<double>::min(), 1.0);
    Matrix A(k, n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < k; ++i) A(i, j) = unit(rng);
        A.col(j) /= A.col(j).sum();
    }
    return AbundanceMatrix(std::move(A));
}

EndmemberMatrix update_endmembers(const HyperspectralImage& Y, const EndmemberMatrix& M,
                                  const AbundanceMatrix& A, double epsilon) {
    if (Y.bands != M.bands() || M.count() != A.count() || Y.pixels() != A.pixels()) {
        throw ShapeError("update_endmembers: inconsistent shapes");
    }
    const Matrix numer = Y.data * A.data.transpose();
    Matrix denom = M.data * (A.data * A.data.transpose());
    denom.array() += epsilon;
    Matrix out = M.data.array() * numer.array() / denom.array();
    if (!out.allFinite()) throw NumericalError("endmember update produced non-finite values");
    return EndmemberMatrix(std::move(out));
}

AbundanceMatrix update_abundances(const HyperspectralImage& Y, const EndmemberMatrix& M,
                                  const AbundanceMatrix& A, const NeighborGraph& graph,
                                  double lambda, double alpha, double epsilon) {
    if (Y.bands != M.bands() || M.count() != A.count() || Y.pixels() != A.pixels()) {
        throw ShapeError("update_abundances: inconsistent shapes");
    }
    if (graph.n != A.pixels()) throw ShapeError("graph node count does not match abundances");
    if (lambda < 0.0 || alpha < 0.0) throw ParameterError("lambda and alpha must be >= 0");

    Matrix numer = M.data.transpose() * Y.data;
    Matrix denom = (M.data.transpose() * M.data) * A.data;
    if (lambda > 0.0) {
        numer += lambda * (A.data * graph.weights);
        denom += lambda * (A.data * graph.degrees.asDiagonal());
    }
    denom.array() += alpha + epsilon;
    Matrix out = A.data.array() * numer.array() / denom.array();
    if (!out.allFinite()) throw NumericalError("abundance update produced non-finite values");
    return AbundanceMatrix(std::move(out));
}

std::pair<EndmemberMatrix, AbundanceMatrix> rescale(const EndmemberMatrix& M,
                                                    const AbundanceMatrix& A,
                                                    NormMode norm_mode) {
    if (M.count() != A.count()) throw ShapeError("rescale: K mismatch");
    Matrix Mout = M.data;
    Matrix Aout = A.data;
    for (int k = 0; k < M.count(); ++k) {
        const double c = norm_mode == NormMode::l2_columns ? Mout.col(k).norm()
                                                           : Mout.col(k).lpNorm<1>();
        if (c == 0.0) {
            warn("rescale: endmember column " + std::to_string(k + 1) +
                 " is all zero; skipped");
            continue;
        }
        Mout.col(k) /= c;
        Aout.row(k) *= c;
    }
    return {EndmemberMatrix(std::move(Mout)), AbundanceMatrix(std::move(Aout))};
}

UnmixingResult run(const HyperspectralImage& Y, const NeighborGraph& graph,
                   const SolverConfig& config) {
    config.validate();
    const int n = Y.pixels();
    if (graph.n != n) throw ShapeError("graph node count does not match image");
    if (config.k > std::min(Y.bands, n)) {
        warn("k=" + std::to_string(config.k) + " exceeds min(L, N); expected k <= min(" +
             std::to_string(Y.bands) + ", " + std::to_string(n) + ")");
    }

    UnmixingResult res;
    const auto start = std::chrono::steady_clock::now();
    EndmemberMatrix M = init_endmembers(Y, config.k, config.seed);
    AbundanceMatrix A = init_abundances(config.k, n, config.seed + 1);

    Objective prev = objective(Y, M, A, graph, config.lambda, config.alpha);
    res.objective_trace.reserve(std::min(config.max_iter, 1024));
    res.pre_rescale_trace.reserve(std::min(config.max_iter, 1024));
    for (int iter = 1; iter <= config.max_iter; ++iter) {
        A = update_abundances(Y, M, A, graph, config.lambda, config.alpha, config.epsilon);
        M = update_endmembers(Y, M, A, config.epsilon);
        if (!M.data.allFinite() || !A.data.allFinite()) {
            throw NumericalError("non-finite factor entries at iteration " +
                                 std::to_string(iter));
        }
        res.pre_rescale_trace.push_back(
            objective(Y, M, A, graph, config.lambda, config.alpha));
        std::tie(M, A) = rescale(M, A, config.norm_mode);
        const Objective cur = objective(Y, M, A, graph, config.lambda, config.alpha);
        res.objective_trace.push_back(cur);
        res.iterations = iter;
        const double rel =
            prev.total > 0.0 ? std::abs(prev.total - cur.total) / prev.total : 0.0;
        if (rel < config.tau) {
            res.converged = true;
            break;
        }
        prev = cur;
    }
    res.wall_times.iterate = elapsed_seconds(start);
    res.endmembers = std::move(M);
    res.abundances = std::move(A);
    return res;
}

void write_trace_csv(const std::vector<Objective>& trace, std::ostream& out) {
    out << "iter,total,fit,graph,lasso\n";
    char buf[160];
    for (size_t i = 0; i < trace.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g,%.17g,%.17g", i + 1,
                      trace[i].total, trace[i].fit, trace[i].graph, trace[i].lasso);
        out << buf << '\n';
    }
}

}  // namespace unmix
