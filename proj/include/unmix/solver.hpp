#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "unmix/core.hpp"
#include "unmix/graph.hpp"
#include "unmix/types.hpp"

namespace unmix {

enum class NormMode { l2_columns, l1_columns };

struct SolverConfig {
    int k = 2;                 // endmember count
    double lambda = 0.0;       // graph regularization weight
    double alpha = 0.0;        // lasso weight
    double tau = 1e-5;         // relative objective-change stopping threshold
    int max_iter = 500;
    std::uint64_t seed = 0;
    double epsilon = 1e-12;    // floor added to multiplicative denominators
    NormMode norm_mode = NormMode::l2_columns;

    void validate() const;
};

struct WallTimes {
    double graph_build = 0.0;  // seconds; filled by the caller that built the graph
    double iterate = 0.0;      // seconds spent in the update loop
};

struct UnmixingResult {
    EndmemberMatrix endmembers;
    AbundanceMatrix abundances;
    /// Objective after each completed iteration (updates + rescale); the
    /// stopping rule compares successive entries of this sequence.
    std::vector<Objective> objective_trace;
    /// Objective after the same iteration's update steps, before the rescale.
    /// The update rules never increase the objective, so each entry here is
    /// <= the previous objective_trace entry; the rescale that follows
    /// preserves the fit term but re-expresses the graph/lasso terms, so
    /// objective_trace itself is only non-increasing when lambda = alpha = 0.
    std::vector<Objective> pre_rescale_trace;
    int iterations = 0;
    bool converged = false;
    WallTimes wall_times;
};

/// Picks k pixel columns of Y: the first uniformly at random, each subsequent
/// one the most dissimilar candidate (max over a random batch of 100 of the
/// minimum SAD to the pixels already chosen). Deterministic for a fixed seed.
EndmemberMatrix init_endmembers(const HyperspectralImage& Y, int k, std::uint64_t seed);

/// k x n iid uniform(0,1) entries with every column scaled to unit l1 norm.
AbundanceMatrix init_abundances(int k, int n, std::uint64_t seed);

/// M'_lk = M_lk (Y A^T)_lk / ((M A A^T)_lk + epsilon).
EndmemberMatrix update_endmembers(const HyperspectralImage& Y, const EndmemberMatrix& M,
                                  const AbundanceMatrix& A, double epsilon = 1e-12);

/// A'_kn = A_kn (M^T Y + lambda A W)_kn / ((M^T M A + lambda A D + alpha)_kn + epsilon).
AbundanceMatrix update_abundances(const HyperspectralImage& Y, const EndmemberMatrix& M,
                                  const AbundanceMatrix& A, const NeighborGraph& graph,
                                  double lambda, double alpha, double epsilon = 1e-12);

/// Fixes the scaling ambiguity: each column of M is normalized (l2 by
/// default) and the matching row of A is scaled by the same factor, so the
/// product M A is preserved. All-zero columns are skipped with a warning.
std::pair<EndmemberMatrix, AbundanceMatrix> rescale(const EndmemberMatrix& M,
                                                    const AbundanceMatrix& A,
                                                    NormMode norm_mode = NormMode::l2_columns);

/// Full solve: initialize (endmembers from config.seed, abundances from
/// config.seed + 1), then iterate {update A, update M, rescale} until the
/// relative change of the post-rescale objective drops below tau or max_iter
/// is reached. Pass an edgeless graph when lambda = 0.
UnmixingResult run(const HyperspectralImage& Y, const NeighborGraph& graph,
                   const SolverConfig& config);

/// CSV rows "iter,total,fit,graph,lasso", one per completed iteration.
void write_trace_csv(const std::vector<Objective>& trace, std::ostream& out);

}  // namespace unmix
