// Command-line runner for the unmixing library: synthetic-scene generation,
// single unmixing runs, noise/parameter sweeps, convergence traces and graph
// export. Every command is deterministic for a fixed --seed and writes a
// manifest.json describing the run.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "unmix/core.hpp"
#include "unmix/data.hpp"
#include "unmix/eval.hpp"
#include "unmix/experiments.hpp"
#include "unmix/graph.hpp"
#include "unmix/params.hpp"
#include "unmix/solver.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace unmix;

namespace {

constexpr const char* kVersion = "0.1.0";

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string snr_label(double snr) {
    if (std::isinf(snr)) return "inf";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", snr);
    return buf;
}

double parse_snr(const std::string& text) {
    if (text == "inf" || text == "INF" || text == "Inf") {
        return std::numeric_limits<double>::infinity();
    }
    size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw ParameterError("bad SNR value '" + text + "'");
    return v;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << content;
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

void save_matrix_csv(const Matrix& m, const fs::path& path) {
    std::ostringstream out;
    for (long r = 0; r < m.rows(); ++r) {
        for (long c = 0; c < m.cols(); ++c) {
            if (c) out << ',';
            out << fmt(m(r, c));
        }
        out << '\n';
    }
    write_file(path, out.str());
}

Matrix load_matrix_csv(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw IoError("ragged CSV in '" + path.string() + "'");
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw IoError("empty CSV '" + path.string() + "'");
    Matrix m(rows.size(), rows.front().size());
    for (size_t r = 0; r < rows.size(); ++r) {
        for (size_t c = 0; c < rows[r].size(); ++c) m(r, c) = rows[r][c];
    }
    return m;
}

void write_manifest(const fs::path& dir, json manifest) {
    manifest["tool"] = "unmix";
    manifest["version"] = kVersion;
    write_file(dir / "manifest.json", manifest.dump(2) + "\n");
}

fs::path ensure_out_dir(const std::string& out) {
    fs::path dir = out.empty() ? fs::path(".") : fs::path(out);
    fs::create_directories(dir);
    return dir;
}

// Flag bundles shared by several subcommands.

struct SceneFlags {
    int height = 32, width = 32, bands = 40, blobs = 3, sparsity = 2;
    double smoothness = 2.0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--height", height, "Scene height in pixels")->capture_default_str();
        cmd->add_option("--width", width, "Scene width in pixels")->capture_default_str();
        cmd->add_option("--bands", bands, "Scene band count")->capture_default_str();
        cmd->add_option("--blobs", blobs, "Regions per endmember")->capture_default_str();
        cmd->add_option("--sparsity", sparsity, "Max active endmembers per pixel")
            ->capture_default_str();
        cmd->add_option("--smoothness", smoothness, "Blur radius in pixels")
            ->capture_default_str();
    }

    SceneSpec spec(int k, std::uint64_t seed) const {
        SceneSpec s;
        s.height = height;
        s.width = width;
        s.bands = bands;
        s.k = k;
        s.seed = seed;
        s.blob_count = blobs;
        s.mixing_sparsity = sparsity;
        s.smoothness = smoothness;
        return s;
    }

    json to_json(int k) const {
        return {{"height", height}, {"width", width}, {"bands", bands},
                {"k", k},           {"blobs", blobs}, {"sparsity", sparsity},
                {"smoothness", smoothness}};
    }
};

struct GraphFlags {
    int window = kDefaultWindow;
    double keep_frac = kDefaultKeepFraction;
    std::string weight_mode = "cosine";

    void attach(CLI::App* cmd) {
        cmd->add_option("--window", window, "Odd spatial window size m")
            ->capture_default_str();
        cmd->add_option("--keep-frac", keep_frac, "Fraction q of window candidates kept")
            ->capture_default_str();
        cmd->add_option("--weight-mode", weight_mode, "Edge weights: cosine or raw-sad")
            ->capture_default_str();
    }

    GraphOptions options() const {
        return {window, keep_frac, parse_weight_mode(weight_mode)};
    }

    json to_json() const {
        return {{"window", window}, {"keep_frac", keep_frac}, {"weight_mode", weight_mode}};
    }
};

struct SolverFlags {
    double tau = 1e-5;
    int max_iter = 500;

    void attach(CLI::App* cmd) {
        cmd->add_option("--tau", tau, "Relative objective-change stopping threshold")
            ->capture_default_str();
        cmd->add_option("--max-iter", max_iter, "Iteration cap")->capture_default_str();
    }
};

// Scene-or-cube input used by sweep/param-sweep/convergence.
struct InputFlags {
    std::string cube_path;
    std::string truth_endmembers;
    std::string truth_abundances;
    SceneFlags scene;

    void attach(CLI::App* cmd) {
        cmd->add_option("cube", cube_path, "Input cube (omit to synthesize a scene)");
        cmd->add_option("--truth-endmembers", truth_endmembers,
                        "Ground-truth endmember CSV (with a cube input)");
        cmd->add_option("--truth-abundances", truth_abundances,
                        "Ground-truth abundance cube (with a cube input)");
        scene.attach(cmd);
    }

    std::pair<HyperspectralImage, std::optional<GroundTruth>> resolve(
        int k, std::uint64_t seed, bool truth_required) const {
        if (!cube_path.empty()) {
            HyperspectralImage img = load_cube(cube_path);
            std::optional<GroundTruth> truth;
            if (!truth_endmembers.empty() || !truth_abundances.empty()) {
                if (truth_endmembers.empty() || truth_abundances.empty()) {
                    throw ParameterError(
                        "--truth-endmembers and --truth-abundances go together");
                }
                const HyperspectralImage ab = load_cube(truth_abundances);
                truth = GroundTruth(EndmemberMatrix(load_matrix_csv(truth_endmembers)),
                                    AbundanceMatrix(ab.data));
            } else if (truth_required) {
                throw ParameterError("missing ground truth for evaluation: pass "
                                     "--truth-endmembers/--truth-abundances or omit the "
                                     "cube to use a synthetic scene");
            }
            return {std::move(img), std::move(truth)};
        }
        auto [img, truth] = synthesize_scene(scene.spec(k, seed));
        return {std::move(img), std::optional<GroundTruth>(std::move(truth))};
    }

    json to_json(int k) const {
        if (!cube_path.empty()) {
            return {{"cube", cube_path},
                    {"truth_endmembers", truth_endmembers},
                    {"truth_abundances", truth_abundances}};
        }
        return {{"scene", scene.to_json(k)}};
    }
};

HyperspectralImage abundances_as_cube(const AbundanceMatrix& a, int height, int width) {
    return HyperspectralImage(height, width, a.data);
}

// ---------------------------------------------------------------- synth ----

struct SynthArgs {
    SceneFlags scene;
    int k = 4;
    std::uint64_t seed = 0;
    std::string out;
};

void cmd_synth(const SynthArgs& args) {
    const fs::path dir = ensure_out_dir(args.out);
    const auto t0 = std::chrono::steady_clock::now();
    auto [image, truth] = synthesize_scene(args.scene.spec(args.k, args.seed));

    save_cube(image, (dir / "scene.hscube").string());
    save_matrix_csv(truth.endmembers.data, dir / "truth_endmembers.csv");
    save_cube(abundances_as_cube(truth.abundances, image.height, image.width),
              (dir / "truth_abundances.hscube").string());

    const double total = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - t0).count();
    write_manifest(dir, {{"command", "synth"},
                         {"seed", args.seed},
                         {"scene", args.scene.to_json(args.k)},
                         {"wall_times", {{"total", total}}},
                         {"outputs", {"scene.hscube", "truth_endmembers.csv",
                                      "truth_abundances.hscube"}}});
    std::cout << "wrote scene " << image.height << "x" << image.width << "x" << image.bands
              << " (k=" << args.k << ") to " << dir.string() << "\n";
}

// ---------------------------------------------------------------- unmix ----

struct UnmixArgs {
    std::string cube_path;
    int k = 0;
    double lambda = -1.0;  // negative means "estimate"
    double alpha = -1.0;
    SolverFlags solver;
    GraphFlags graph;
    bool no_graph = false;
    std::uint64_t seed = 0;
    std::string out;
    std::string truth_endmembers;
    std::string truth_abundances;
    bool sad_x100 = false;
};

void cmd_unmix(const UnmixArgs& args) {
    const fs::path dir = ensure_out_dir(args.out);
    const HyperspectralImage image = load_cube(args.cube_path);

    SolverConfig cfg;
    cfg.k = args.k;
    cfg.tau = args.solver.tau;
    cfg.max_iter = args.solver.max_iter;
    cfg.seed = args.seed;

    json estimated;
    if (args.no_graph) {
        if (args.lambda > 0.0) {
            throw ParameterError("--lambda > 0 needs a graph; drop --no-graph");
        }
        cfg.lambda = 0.0;
    } else if (args.lambda >= 0.0) {
        cfg.lambda = args.lambda;
    } else {
        cfg.lambda = estimate_lambda0(image, args.seed);
        estimated["lambda0"] = cfg.lambda;
    }
    if (args.alpha >= 0.0) {
        cfg.alpha = args.alpha;
    } else {
        cfg.alpha = estimate_alpha0(image);
        estimated["alpha0"] = cfg.alpha;
    }

    NeighborGraph graph = NeighborGraph::edgeless(image.pixels());
    double graph_seconds = 0.0;
    if (!args.no_graph) {
        const auto t0 = std::chrono::steady_clock::now();
        const GraphOptions gopts = args.graph.options();
        graph = build_neighbor_graph(image, gopts.window, gopts.keep_fraction, gopts.mode);
        graph_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }

    UnmixingResult result = run(image, graph, cfg);
    result.wall_times.graph_build = graph_seconds;

    const std::string variant = (cfg.lambda == 0.0 && cfg.alpha == 0.0) ? "nmf" : "ssnmf";
    std::vector<std::string> outputs;
    auto emit = [&](const std::string& name) {
        outputs.push_back(name);
        return (dir / name).string();
    };

    save_matrix_csv(result.endmembers.data, emit(variant + "_endmembers.csv"));
    save_cube(abundances_as_cube(result.abundances, image.height, image.width),
              emit(variant + "_abundances.hscube"));
    {
        std::ofstream trace(dir / (variant + "_trace.csv"));
        write_trace_csv(result.objective_trace, trace);
        outputs.push_back(variant + "_trace.csv");
    }
    if (cfg.k <= 4) {
        render_pseudocolor(result.abundances, image.height, image.width,
                           emit(variant + "_pseudocolor.ppm"));
    }
    for (int kk = 0; kk < cfg.k; ++kk) {
        render_grayscale(result.abundances.data.row(kk).transpose(), image.height,
                         image.width,
                         emit(variant + "_abundance_" + std::to_string(kk + 1) + ".pgm"));
    }

    json eval_json;
    if (!args.truth_endmembers.empty() || !args.truth_abundances.empty()) {
        if (args.truth_endmembers.empty() || args.truth_abundances.empty()) {
            throw ParameterError("--truth-endmembers and --truth-abundances go together");
        }
        const HyperspectralImage ab = load_cube(args.truth_abundances);
        const GroundTruth truth(EndmemberMatrix(load_matrix_csv(args.truth_endmembers)),
                                AbundanceMatrix(ab.data));
        const EvalReport report = evaluate(result, truth);
        std::ofstream evalcsv(dir / (variant + "_eval.csv"));
        write_report_csv(report, evalcsv);
        outputs.push_back(variant + "_eval.csv");
        eval_json = {{"mean_sad", report.mean_sad}, {"mean_rmse", report.mean_rmse}};
        const double scale = args.sad_x100 ? 100.0 : 1.0;
        std::cout << "mean SAD" << (args.sad_x100 ? " (x100)" : "") << " = "
                  << report.mean_sad * scale << ", mean RMSE = " << report.mean_rmse
                  << "\n";
    }

    json manifest = {{"command", "unmix"},
                     {"cube", args.cube_path},
                     {"variant", variant},
                     {"seed", args.seed},
                     {"config",
                      {{"k", cfg.k},
                       {"lambda", cfg.lambda},
                       {"alpha", cfg.alpha},
                       {"tau", cfg.tau},
                       {"max_iter", cfg.max_iter},
                       {"no_graph", args.no_graph}}},
                     {"graph", args.graph.to_json()},
                     {"iterations", result.iterations},
                     {"converged", result.converged},
                     {"wall_times",
                      {{"graph_build", result.wall_times.graph_build},
                       {"iterate", result.wall_times.iterate}}},
                     {"outputs", outputs}};
    if (!estimated.empty()) manifest["estimated"] = estimated;
    if (!eval_json.empty()) manifest["eval"] = eval_json;
    write_manifest(dir, std::move(manifest));

    std::cout << variant << ": " << result.iterations << " iteration(s), "
              << (result.converged ? "converged" : "hit max-iter") << ", final objective "
              << (result.objective_trace.empty() ? 0.0
                                                 : result.objective_trace.back().total)
              << "\n";
}

// ---------------------------------------------------------------- sweep ----

struct SweepArgs {
    InputFlags input;
    int k = 4;
    double lambda = -1.0;
    double alpha = -1.0;
    SolverFlags solver;
    GraphFlags graph;
    std::vector<std::string> snr;
    int trials = 5;
    std::uint64_t seed = 0;
    std::string out;
    bool sad_x100 = false;
};

void cmd_sweep(const SweepArgs& args) {
    const fs::path dir = ensure_out_dir(args.out);
    auto [image, truth] = args.input.resolve(args.k, args.seed, true);
    if (!truth) throw ParameterError("missing ground truth for evaluation");

    SweepOptions opts;
    opts.trials = args.trials;
    opts.seed = args.seed;
    opts.solver.k = args.k;
    opts.solver.tau = args.solver.tau;
    opts.solver.max_iter = args.solver.max_iter;
    opts.graph = args.graph.options();
    if (!args.snr.empty()) {
        opts.snr_levels.clear();
        for (const std::string& s : args.snr) opts.snr_levels.push_back(parse_snr(s));
    }
    if (args.lambda >= 0.0 || args.alpha >= 0.0) {
        if (args.lambda < 0.0 || args.alpha < 0.0) {
            throw ParameterError("fix both --lambda and --alpha or neither");
        }
        opts.estimate_params = false;
        opts.solver.lambda = args.lambda;
        opts.solver.alpha = args.alpha;
    }

    const auto t0 = std::chrono::steady_clock::now();
    const SweepOutcome outcome = run_sweep(image, *truth, opts);
    const double total_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    {
        std::ostringstream csv;
        csv << "variant,snr_db,trial,mean_sad,mean_rmse,iterations,converged\n";
        for (const TrialRecord& t : outcome.trials) {
            csv << t.variant << ',' << snr_label(t.snr_db) << ',' << t.trial << ','
                << fmt(t.mean_sad) << ',' << fmt(t.mean_rmse) << ',' << t.iterations << ','
                << (t.converged ? 1 : 0) << '\n';
        }
        write_file(dir / "sweep_trials.csv", csv.str());
    }
    {
        std::ostringstream csv;
        csv << "variant,snr_db,mean_sad,std_sad,mean_rmse,std_rmse\n";
        for (const SummaryRow& r : outcome.summary) {
            csv << r.variant << ',' << snr_label(r.snr_db) << ',' << fmt(r.mean_sad) << ','
                << fmt(r.std_sad) << ',' << fmt(r.mean_rmse) << ',' << fmt(r.std_rmse)
                << '\n';
        }
        write_file(dir / "sweep_summary.csv", csv.str());
    }

    json levels = json::array();
    for (double s : opts.snr_levels) levels.push_back(snr_label(s));
    write_manifest(dir, {{"command", "sweep"},
                         {"seed", args.seed},
                         {"input", args.input.to_json(args.k)},
                         {"config",
                          {{"k", args.k},
                           {"trials", args.trials},
                           {"snr_levels", levels},
                           {"tau", args.solver.tau},
                           {"max_iter", args.solver.max_iter},
                           {"estimate_params", opts.estimate_params}}},
                         {"graph", args.graph.to_json()},
                         {"wall_times", {{"total", total_seconds}}},
                         {"outputs", {"sweep_trials.csv", "sweep_summary.csv"}}});

    const double scale = args.sad_x100 ? 100.0 : 1.0;
    std::cout << "variant      snr_db   mean_sad" << (args.sad_x100 ? " (x100)" : "")
              << "   mean_rmse\n";
    for (const SummaryRow& r : outcome.summary) {
        std::printf("%-12s %-8s %-10.4f %-10.4f\n", r.variant.c_str(),
                    snr_label(r.snr_db).c_str(), r.mean_sad * scale, r.mean_rmse);
    }
}

// ----------------------------------------------------------- param-sweep ----

struct ParamSweepArgs {
    InputFlags input;
    int k = 4;
    double lambda = -1.0;
    double alpha = -1.0;
    SolverFlags solver;
    GraphFlags graph;
    int trials = 10;
    std::uint64_t seed = 0;
    std::string out;
};

void cmd_param_sweep(const ParamSweepArgs& args) {
    const fs::path dir = ensure_out_dir(args.out);
    auto [image, truth] = args.input.resolve(args.k, args.seed, true);
    if (!truth) throw ParameterError("missing ground truth for evaluation");

    json estimated;
    double lambda_hat = args.lambda, alpha_hat = args.alpha;
    if (lambda_hat < 0.0) {
        lambda_hat = estimate_lambda0(image, args.seed);
        estimated["lambda0"] = lambda_hat;
    }
    if (alpha_hat < 0.0) {
        alpha_hat = estimate_alpha0(image);
        estimated["alpha0"] = alpha_hat;
    }

    SolverConfig base;
    base.k = args.k;
    base.tau = args.solver.tau;
    base.max_iter = args.solver.max_iter;

    const auto t0 = std::chrono::steady_clock::now();
    const auto rows = run_param_sweep(image, *truth, lambda_hat, alpha_hat, args.trials,
                                      args.seed, base, args.graph.options());
    const double total_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    std::ostringstream csv;
    csv << "exponent,lambda,alpha,mean_sad,std_sad,mean_rmse,std_rmse\n";
    for (const ParamSweepRow& r : rows) {
        csv << r.exponent << ',' << fmt(r.lambda) << ',' << fmt(r.alpha) << ','
            << fmt(r.mean_sad) << ',' << fmt(r.std_sad) << ',' << fmt(r.mean_rmse) << ','
            << fmt(r.std_rmse) << '\n';
    }
    write_file(dir / "param_sweep.csv", csv.str());

    json manifest = {{"command", "param-sweep"},
                     {"seed", args.seed},
                     {"input", args.input.to_json(args.k)},
                     {"config",
                      {{"k", args.k},
                       {"lambda_hat", lambda_hat},
                       {"alpha_hat", alpha_hat},
                       {"trials", args.trials},
                       {"tau", args.solver.tau},
                       {"max_iter", args.solver.max_iter}}},
                     {"graph", args.graph.to_json()},
                     {"wall_times", {{"total", total_seconds}}},
                     {"outputs", {"param_sweep.csv"}}};
    if (!estimated.empty()) manifest["estimated"] = estimated;
    write_manifest(dir, std::move(manifest));

    std::cout << "exponent  lambda      alpha       mean_sad   mean_rmse\n";
    for (const ParamSweepRow& r : rows) {
        std::printf("%-9d %-11.4g %-11.4g %-10.4f %-10.4f\n", r.exponent, r.lambda,
                    r.alpha, r.mean_sad, r.mean_rmse);
    }
}

// ----------------------------------------------------------- convergence ----

struct ConvergenceArgs {
    InputFlags input;
    int k = 4;
    double lambda = -1.0;
    double alpha = -1.0;
    SolverFlags solver;
    GraphFlags graph;
    std::string variants = "nmf,ssnmf";
    std::uint64_t seed = 0;
    std::string out;
};

void cmd_convergence(const ConvergenceArgs& args) {
    const fs::path dir = ensure_out_dir(args.out);
    auto [image, truth] = args.input.resolve(args.k, args.seed, false);
    (void)truth;

    const bool run_nmf = args.variants.find("nmf") != std::string::npos;
    const bool run_ssnmf = args.variants.find("ssnmf") != std::string::npos;
    if (!run_nmf && !run_ssnmf) throw ParameterError("no variant selected");

    SolverConfig base;
    base.k = args.k;
    base.tau = args.solver.tau;
    base.max_iter = args.solver.max_iter;
    base.seed = args.seed;

    const auto outcomes = run_convergence(
        image, base,
        args.lambda >= 0.0 ? std::optional<double>(args.lambda) : std::nullopt,
        args.alpha >= 0.0 ? std::optional<double>(args.alpha) : std::nullopt,
        args.graph.options(), run_nmf, run_ssnmf);

    std::vector<std::string> outputs;
    std::ostringstream timing;
    timing << "variant,t_construct_graph,t_iteration,t_convergence\n";
    for (const ConvergenceOutcome& o : outcomes) {
        const std::string name = "trace_" + o.variant + ".csv";
        std::ofstream trace(dir / name);
        write_trace_csv(o.result.objective_trace, trace);
        outputs.push_back(name);
        timing << o.variant << ',' << fmt(o.t_construct_graph) << ',' << fmt(o.t_iteration)
               << ',' << fmt(o.t_convergence) << '\n';
        std::cout << o.variant << ": " << o.result.iterations << " iteration(s), "
                  << (o.result.converged ? "converged" : "hit max-iter") << ", graph "
                  << o.t_construct_graph << " s, iterate " << o.t_iteration << " s\n";
    }
    write_file(dir / "timing.csv", timing.str());
    outputs.push_back("timing.csv");

    json wall = json::object();
    for (const ConvergenceOutcome& o : outcomes) {
        wall[o.variant] = {{"graph_build", o.t_construct_graph},
                           {"iterate", o.t_iteration},
                           {"total", o.t_convergence}};
    }
    write_manifest(dir, {{"command", "convergence"},
                         {"seed", args.seed},
                         {"wall_times", wall},
                         {"input", args.input.to_json(args.k)},
                         {"config",
                          {{"k", args.k},
                           {"variants", args.variants},
                           {"tau", args.solver.tau},
                           {"max_iter", args.solver.max_iter}}},
                         {"graph", args.graph.to_json()},
                         {"outputs", outputs}});
}

// ----------------------------------------------------------- graph-export ----

struct GraphExportArgs {
    std::string cube_path;
    GraphFlags graph;
    std::string out;
};

void cmd_graph_export(const GraphExportArgs& args) {
    const fs::path dir = ensure_out_dir(args.out);
    const HyperspectralImage image = load_cube(args.cube_path);
    const GraphOptions gopts = args.graph.options();

    const auto t0 = std::chrono::steady_clock::now();
    const NeighborGraph g =
        build_neighbor_graph(image, gopts.window, gopts.keep_fraction, gopts.mode);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    save_graph(g, (dir / "graph.txt").string());
    write_manifest(dir, {{"command", "graph-export"},
                         {"cube", args.cube_path},
                         {"graph", args.graph.to_json()},
                         {"wall_times", {{"graph_build", seconds}}},
                         {"outputs", {"graph.txt"}}});
    std::cout << "graph over " << g.n << " pixels, " << g.weights.nonZeros() / 2
              << " edges -> " << (dir / "graph.txt").string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hyperspectral unmixing via graph- and sparsity-regularized NMF"};
    app.require_subcommand(1);

    SynthArgs synth_args;
    CLI::App* synth =
        app.add_subcommand("synth", "Generate a synthetic scene with ground truth");
    synth_args.scene.attach(synth);
    synth->add_option("--k", synth_args.k, "Endmember count")->capture_default_str();
    synth->add_option("--seed", synth_args.seed, "RNG seed")->capture_default_str();
    synth->add_option("--out", synth_args.out, "Output directory")->capture_default_str();
    synth->callback([&] { cmd_synth(synth_args); });

    UnmixArgs unmix_args;
    CLI::App* unmix = app.add_subcommand("unmix", "Unmix a cube");
    unmix->add_option("cube", unmix_args.cube_path, "Input cube")->required();
    unmix->add_option("--k", unmix_args.k, "Endmember count")->required();
    unmix->add_option("--lambda", unmix_args.lambda, "Graph weight (estimated if omitted)");
    unmix->add_option("--alpha", unmix_args.alpha, "Lasso weight (estimated if omitted)");
    unmix_args.solver.attach(unmix);
    unmix_args.graph.attach(unmix);
    unmix->add_flag("--no-graph", unmix_args.no_graph, "Skip the graph (plain/lasso NMF)");
    unmix->add_option("--seed", unmix_args.seed, "RNG seed")->capture_default_str();
    unmix->add_option("--out", unmix_args.out, "Output directory")->capture_default_str();
    unmix->add_option("--truth-endmembers", unmix_args.truth_endmembers,
                      "Ground-truth endmember CSV (enables evaluation)");
    unmix->add_option("--truth-abundances", unmix_args.truth_abundances,
                      "Ground-truth abundance cube (enables evaluation)");
    unmix->add_flag("--sad-x100", unmix_args.sad_x100, "Print SAD scaled by 100");
    unmix->callback([&] { cmd_unmix(unmix_args); });

    SweepArgs sweep_args;
    CLI::App* sweep = app.add_subcommand("sweep", "Noise-robustness sweep over SNR levels");
    sweep_args.input.attach(sweep);
    sweep->add_option("--k", sweep_args.k, "Endmember count")->capture_default_str();
    sweep->add_option("--lambda", sweep_args.lambda,
                      "Fixed graph weight (estimated per trial if omitted)");
    sweep->add_option("--alpha", sweep_args.alpha,
                      "Fixed lasso weight (estimated per trial if omitted)");
    sweep_args.solver.attach(sweep);
    sweep_args.graph.attach(sweep);
    sweep->add_option("--snr", sweep_args.snr,
                      "SNR level in dB or 'inf' (repeatable; default full ladder)");
    sweep->add_option("--trials", sweep_args.trials, "Trials per level")
        ->capture_default_str();
    sweep->add_option("--seed", sweep_args.seed, "Base seed")->capture_default_str();
    sweep->add_option("--out", sweep_args.out, "Output directory")->capture_default_str();
    sweep->add_flag("--sad-x100", sweep_args.sad_x100, "Print SAD scaled by 100");
    sweep->callback([&] { cmd_sweep(sweep_args); });

    ParamSweepArgs param_args;
    CLI::App* psweep = app.add_subcommand(
        "param-sweep", "Performance across the 9-point doubling grid of lambda/alpha");
    param_args.input.attach(psweep);
    psweep->add_option("--k", param_args.k, "Endmember count")->capture_default_str();
    psweep->add_option("--lambda", param_args.lambda,
                       "Baseline lambda (estimated if omitted)");
    psweep->add_option("--alpha", param_args.alpha, "Baseline alpha (estimated if omitted)");
    param_args.solver.attach(psweep);
    param_args.graph.attach(psweep);
    psweep->add_option("--trials", param_args.trials, "Trials per grid point")
        ->capture_default_str();
    psweep->add_option("--seed", param_args.seed, "Base seed")->capture_default_str();
    psweep->add_option("--out", param_args.out, "Output directory")->capture_default_str();
    psweep->callback([&] { cmd_param_sweep(param_args); });

    ConvergenceArgs conv_args;
    CLI::App* conv = app.add_subcommand("convergence", "Objective traces and timing split");
    conv_args.input.attach(conv);
    conv->add_option("--k", conv_args.k, "Endmember count")->capture_default_str();
    conv->add_option("--lambda", conv_args.lambda, "Graph weight (estimated if omitted)");
    conv->add_option("--alpha", conv_args.alpha, "Lasso weight (estimated if omitted)");
    conv_args.solver.attach(conv);
    conv_args.graph.attach(conv);
    conv->add_option("--variants", conv_args.variants, "Comma list from {nmf, ssnmf}")
        ->capture_default_str();
    conv->add_option("--seed", conv_args.seed, "RNG seed")->capture_default_str();
    conv->add_option("--out", conv_args.out, "Output directory")->capture_default_str();
    conv->callback([&] { cmd_convergence(conv_args); });

    GraphExportArgs graph_args;
    CLI::App* gexp =
        app.add_subcommand("graph-export", "Write the neighbor graph edge list");
    gexp->add_option("cube", graph_args.cube_path, "Input cube")->required();
    graph_args.graph.attach(gexp);
    gexp->add_option("--out", graph_args.out, "Output directory")->capture_default_str();
    gexp->callback([&] { cmd_graph_export(graph_args); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
