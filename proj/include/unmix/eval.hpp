#pragma once

#include <iosfwd>
#include <vector>

#include "unmix/graph.hpp"
#include "unmix/solver.hpp"
#include "unmix/types.hpp"

namespace unmix {

/// Accuracy report against ground truth after optimal endmember matching.
/// assignment[j] is the ground-truth index matched to estimated endmember j;
/// the per-endmember arrays are indexed by ground-truth endmember.
struct EvalReport {
    std::vector<int> assignment;
    std::vector<double> sad_per_endmember;  // radians
    std::vector<double> rmse_per_map;
    double mean_sad = 0.0;
    double mean_rmse = 0.0;
};

/// Spectral angle between an estimated endmember and its ground truth
/// (same contract as graph sad(); scale-invariant).
inline double sad_metric(const Eigen::Ref<const Vector>& m,
                         const Eigen::Ref<const Vector>& m_hat) {
    return sad(m, m_hat);
}

/// sqrt( (1/N) ||z - z_hat||_2^2 ) between two abundance maps.
double rmse(const Eigen::Ref<const Vector>& z, const Eigen::Ref<const Vector>& z_hat);

/// Bijection between estimated and ground-truth endmembers minimizing the
/// total SAD (exhaustive optimal assignment; supports K <= 10).
std::vector<int> match_endmembers(const EndmemberMatrix& truth, const EndmemberMatrix& est);

EvalReport evaluate(const UnmixingResult& result, const GroundTruth& truth);

/// CSV with header "endmember,sad_rad,rmse" and a final "mean,..." row.
void write_report_csv(const EvalReport& report, std::ostream& out);

}  // namespace unmix
