#include "unmix/experiments.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include "unmix/params.hpp"

namespace unmix {

const std::vector<double>& default_snr_ladder() {
    static const std::vector<double> ladder = {
        std::numeric_limits<double>::infinity(), 30.0, 25.0, 20.0, 15.0, 10.0, 8.0};
    return ladder;
}

const std::vector<int>& doubling_exponents() {
    static const std::vector<int> exps = {-4, -3, -2, -1, 0, 1, 2, 3, 4};
    return exps;
}

void SweepOptions::validate() const {
    if (trials < 1) throw ParameterError("trial count must be >= 1");
    if (snr_levels.empty()) throw ParameterError("at least one noise level is required");
    for (double s : snr_levels) {
        if (!(s > 0.0)) throw ParameterError("noise levels must be positive or infinity");
    }
    if (!run_nmf && !run_ssnmf) throw ParameterError("no solver variant enabled");
}

namespace {

double now_seconds(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

struct Stats {
    double mean = 0.0;
    double stddev = 0.0;
};

Stats mean_std(const std::vector<double>& xs) {
    Stats s;
    if (xs.empty()) return s;
    double sum = 0.0;
    for (double x : xs) sum += x;
    s.mean = sum / static_cast<double>(xs.size());
    if (xs.size() > 1) {
        double acc = 0.0;
        for (double x : xs) acc += (x - s.mean) * (x - s.mean);
        s.stddev = std::sqrt(acc / static_cast<double>(xs.size() - 1));
    }
    return s;
}

}  // namespace

SweepOutcome run_sweep(const HyperspectralImage& clean, const GroundTruth& truth,
                       const SweepOptions& options) {
    options.validate();
    SweepOutcome outcome;

    for (double snr : options.snr_levels) {
        std::vector<double> sads_nmf, rmses_nmf, sads_ss, rmses_ss;
        for (int trial = 0; trial < options.trials; ++trial) {
            const std::uint64_t seed = trial_seed(options.seed, trial);
            const HyperspectralImage noisy = add_gaussian_noise(clean, snr, seed);

            if (options.run_nmf) {
                SolverConfig cfg = options.solver;
                cfg.lambda = 0.0;
                cfg.alpha = 0.0;
                cfg.seed = seed;
                const UnmixingResult res =
                    run(noisy, NeighborGraph::edgeless(noisy.pixels()), cfg);
                const EvalReport rep = evaluate(res, truth);
                outcome.trials.push_back({"nmf", snr, trial, rep.mean_sad, rep.mean_rmse,
                                          res.iterations, res.converged});
                sads_nmf.push_back(rep.mean_sad);
                rmses_nmf.push_back(rep.mean_rmse);
            }
            if (options.run_ssnmf) {
                SolverConfig cfg = options.solver;
                cfg.seed = seed;
                if (options.estimate_params) {
                    cfg.alpha = estimate_alpha0(noisy);
                    cfg.lambda = estimate_lambda0(noisy, seed);
                }
                const NeighborGraph graph =
                    build_neighbor_graph(noisy, options.graph.window,
                                         options.graph.keep_fraction, options.graph.mode);
                const UnmixingResult res = run(noisy, graph, cfg);
                const EvalReport rep = evaluate(res, truth);
                outcome.trials.push_back({"ssnmf", snr, trial, rep.mean_sad, rep.mean_rmse,
                                          res.iterations, res.converged});
                sads_ss.push_back(rep.mean_sad);
                rmses_ss.push_back(rep.mean_rmse);
            }
        }
        if (options.run_nmf) {
            const Stats ss = mean_std(sads_nmf), rs = mean_std(rmses_nmf);
            outcome.summary.push_back({"nmf", snr, ss.mean, ss.stddev, rs.mean, rs.stddev});
        }
        if (options.run_ssnmf) {
            const Stats ss = mean_std(sads_ss), rs = mean_std(rmses_ss);
            outcome.summary.push_back({"ssnmf", snr, ss.mean, ss.stddev, rs.mean, rs.stddev});
        }
    }
    return outcome;
}

std::vector<ParamSweepRow> run_param_sweep(const HyperspectralImage& clean,
                                           const GroundTruth& truth,
                                           double baseline_lambda, double baseline_alpha,
                                           int trials, std::uint64_t seed,
                                           const SolverConfig& solver_base,
                                           const GraphOptions& graph_options) {
    if (trials < 1) throw ParameterError("trial count must be >= 1");
    if (baseline_lambda < 0.0 || baseline_alpha < 0.0) {
        throw ParameterError("baseline lambda/alpha must be >= 0");
    }

    const NeighborGraph graph = build_neighbor_graph(
        clean, graph_options.window, graph_options.keep_fraction, graph_options.mode);

    std::vector<ParamSweepRow> rows;
    for (int e : doubling_exponents()) {
        const double factor = std::pow(2.0, e);
        SolverConfig cfg = solver_base;
        cfg.lambda = factor * baseline_lambda;
        cfg.alpha = factor * baseline_alpha;

        std::vector<double> sads, rmses;
        for (int trial = 0; trial < trials; ++trial) {
            cfg.seed = trial_seed(seed, trial);
            const UnmixingResult res = run(clean, graph, cfg);
            const EvalReport rep = evaluate(res, truth);
            sads.push_back(rep.mean_sad);
            rmses.push_back(rep.mean_rmse);
        }
        const Stats ss = mean_std(sads), rs = mean_std(rmses);
        rows.push_back({e, cfg.lambda, cfg.alpha, ss.mean, ss.stddev, rs.mean, rs.stddev});
    }
    return rows;
}

std::vector<ConvergenceOutcome> run_convergence(const HyperspectralImage& image,
                                                const SolverConfig& solver_base,
                                                std::optional<double> lambda,
                                                std::optional<double> alpha,
                                                const GraphOptions& graph_options,
                                                bool run_nmf, bool run_ssnmf) {
    std::vector<ConvergenceOutcome> outcomes;
    if (run_nmf) {
        ConvergenceOutcome out;
        out.variant = "nmf";
        SolverConfig cfg = solver_base;
        cfg.lambda = 0.0;
        cfg.alpha = 0.0;
        out.result = run(image, NeighborGraph::edgeless(image.pixels()), cfg);
        out.t_construct_graph = 0.0;
        out.t_iteration = out.result.wall_times.iterate;
        out.t_convergence = out.t_construct_graph + out.t_iteration;
        outcomes.push_back(std::move(out));
    }
    if (run_ssnmf) {
        ConvergenceOutcome out;
        out.variant = "ssnmf";
        SolverConfig cfg = solver_base;
        cfg.alpha = alpha ? *alpha : estimate_alpha0(image);
        cfg.lambda = lambda ? *lambda : estimate_lambda0(image, cfg.seed);

        const auto t0 = std::chrono::steady_clock::now();
        const NeighborGraph graph = build_neighbor_graph(
            image, graph_options.window, graph_options.keep_fraction, graph_options.mode);
        out.t_construct_graph = now_seconds(t0);

        out.result = run(image, graph, cfg);
        out.result.wall_times.graph_build = out.t_construct_graph;
        out.t_iteration = out.result.wall_times.iterate;
        out.t_convergence = out.t_construct_graph + out.t_iteration;
        outcomes.push_back(std::move(out));
    }
    return outcomes;
}

}  // namespace unmix
