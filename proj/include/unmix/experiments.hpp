#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "unmix/data.hpp"
#include "unmix/eval.hpp"
#include "unmix/graph.hpp"
#include "unmix/solver.hpp"

namespace unmix {

/// The seven noise levels of the robustness protocol: infinity (no noise),
/// 30, 25, 20, 15, 10 and 8 dB.
const std::vector<double>& default_snr_ladder();

/// Exponents of the 9-point doubling grid 2^-4 .. 2^4 used by the parameter
/// sweep.
const std::vector<int>& doubling_exponents();

/// Trial t of a seeded experiment uses base_seed + t, so any single trial can
/// be re-run in isolation.
inline std::uint64_t trial_seed(std::uint64_t base_seed, int trial) {
    return base_seed + static_cast<std::uint64_t>(trial);
}

/// How the neighbor graph is built for the regularized variant.
struct GraphOptions {
    int window = kDefaultWindow;
    double keep_fraction = kDefaultKeepFraction;
    WeightMode mode = WeightMode::cosine;
};

struct TrialRecord {
    std::string variant;
    double snr_db = 0.0;
    int trial = 0;
    double mean_sad = 0.0;
    double mean_rmse = 0.0;
    int iterations = 0;
    bool converged = false;
};

struct SummaryRow {
    std::string variant;
    double snr_db = 0.0;
    double mean_sad = 0.0;
    double std_sad = 0.0;
    double mean_rmse = 0.0;
    double std_rmse = 0.0;
};

struct SweepOutcome {
    std::vector<TrialRecord> trials;
    std::vector<SummaryRow> summary;  // per variant per noise level
};

struct SweepOptions {
    std::vector<double> snr_levels = default_snr_ladder();
    int trials = 5;
    std::uint64_t seed = 0;
    SolverConfig solver;        // k, tau, max_iter; lambda/alpha used when fixed
    GraphOptions graph;
    bool estimate_params = true;  // estimate lambda/alpha from each noisy input
    bool run_nmf = true;
    bool run_ssnmf = true;

    void validate() const;
};

/// Noise-robustness protocol: for every noise level and trial, inject noise
/// with the trial seed, run the enabled solver variants on the same degraded
/// cube, and score them against the ground truth. Variants: "nmf" (lambda =
/// alpha = 0, no graph) and "ssnmf" (graph plus lasso).
SweepOutcome run_sweep(const HyperspectralImage& clean, const GroundTruth& truth,
                       const SweepOptions& options);

struct ParamSweepRow {
    int exponent = 0;          // lambda = 2^exponent * baseline, same for alpha
    double lambda = 0.0;
    double alpha = 0.0;
    double mean_sad = 0.0;
    double std_sad = 0.0;
    double mean_rmse = 0.0;
    double std_rmse = 0.0;
};

/// Regularization-strength study on clean data: both parameters are scaled
/// together through the 9-point doubling grid, each point repeated over
/// seeded trials.
std::vector<ParamSweepRow> run_param_sweep(const HyperspectralImage& clean,
                                           const GroundTruth& truth,
                                           double baseline_lambda, double baseline_alpha,
                                           int trials, std::uint64_t seed,
                                           const SolverConfig& solver_base,
                                           const GraphOptions& graph_options);

struct ConvergenceOutcome {
    std::string variant;
    UnmixingResult result;
    double t_construct_graph = 0.0;
    double t_iteration = 0.0;
    double t_convergence = 0.0;  // graph build + iteration
};

/// One seeded run per variant, recording the objective trace and the
/// graph-build/iteration/total timing split.
std::vector<ConvergenceOutcome> run_convergence(const HyperspectralImage& image,
                                                const SolverConfig& solver_base,
                                                std::optional<double> lambda,
                                                std::optional<double> alpha,
                                                const GraphOptions& graph_options,
                                                bool run_nmf, bool run_ssnmf);

}  // namespace unmix
