#include "unmix/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <ostream>

#include "unmix/log.hpp"

namespace unmix {

double rmse(const Eigen::Ref<const Vector>& z, const Eigen::Ref<const Vector>& z_hat) {
    if (z.size() != z_hat.size()) throw ShapeError("abundance maps have different lengths");
    if (z.size() == 0) throw ShapeError("empty abundance map");
    return std::sqrt((z - z_hat).squaredNorm() / static_cast<double>(z.size()));
}

namespace {

// Angle for matching/reporting; an all-zero column (a pruned endmember)
// scores as maximally dissimilar for nonnegative spectra instead of failing.
double angle_or_worst(const Eigen::Ref<const Vector>& a, const Eigen::Ref<const Vector>& b) {
    if (a.norm() == 0.0 || b.norm() == 0.0) {
        warn("zero-norm endmember column scored as pi/2 in evaluation");
        return M_PI / 2.0;
    }
    return sad(a, b);
}

}  // namespace

std::vector<int> match_endmembers(const EndmemberMatrix& truth, const EndmemberMatrix& est) {
    const int k = truth.count();
    if (k != est.count()) throw ShapeError("endmember count mismatch");
    if (truth.bands() != est.bands()) throw ShapeError("endmember band count mismatch");
    if (k > 10) throw ParameterError("endmember matching supports K <= 10");

    Matrix cost(k, k);  // cost(t, j) = angle between truth t and estimate j
    for (int t = 0; t < k; ++t) {
        for (int j = 0; j < k; ++j) {
            cost(t, j) = angle_or_worst(truth.data.col(t), est.data.col(j));
        }
    }

    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> best = perm;
    double best_cost = std::numeric_limits<double>::infinity();
    do {
        double c = 0.0;
        for (int j = 0; j < k; ++j) c += cost(perm[j], j);
        if (c < best_cost) {
            best_cost = c;
            best = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;  // best[j] = truth index for estimated column j
}

EvalReport evaluate(const UnmixingResult& result, const GroundTruth& truth) {
    const int k = truth.endmembers.count();
    if (result.endmembers.count() != k) throw ShapeError("endmember count mismatch");
    if (result.endmembers.bands() != truth.endmembers.bands()) {
        throw ShapeError("band count mismatch");
    }
    if (result.abundances.pixels() != truth.abundances.pixels()) {
        throw ShapeError("pixel count mismatch");
    }

    EvalReport report;
    report.assignment = match_endmembers(truth.endmembers, result.endmembers);
    report.sad_per_endmember.assign(k, 0.0);
    report.rmse_per_map.assign(k, 0.0);
    for (int j = 0; j < k; ++j) {
        const int t = report.assignment[j];
        report.sad_per_endmember[t] =
            angle_or_worst(truth.endmembers.data.col(t), result.endmembers.data.col(j));
        report.rmse_per_map[t] = rmse(truth.abundances.data.row(t).transpose(),
                                      result.abundances.data.row(j).transpose());
    }
    report.mean_sad = std::accumulate(report.sad_per_endmember.begin(),
                                      report.sad_per_endmember.end(), 0.0) / k;
    report.mean_rmse = std::accumulate(report.rmse_per_map.begin(),
                                       report.rmse_per_map.end(), 0.0) / k;
    return report;
}

void write_report_csv(const EvalReport& report, std::ostream& out) {
    out << "endmember,sad_rad,rmse\n";
    char buf[96];
    for (size_t t = 0; t < report.sad_per_endmember.size(); ++t) {
        std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g", t + 1,
                      report.sad_per_endmember[t], report.rmse_per_map[t]);
        out << buf << '\n';
    }
    std::snprintf(buf, sizeof(buf), "mean,%.17g,%.17g", report.mean_sad, report.mean_rmse);
    out << buf << '\n';
}

}  // namespace unmix
