#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "unmix/eval.hpp"

using namespace unmix;

namespace {

UnmixingResult as_result(Matrix m, Matrix a) {
    UnmixingResult r;
    r.endmembers = EndmemberMatrix(std::move(m));
    r.abundances = AbundanceMatrix(std::move(a));
    return r;
}

}  // namespace

TEST_SUITE_BEGIN("eval");

TEST_CASE("sad_metric: scale invariance and orthogonality") {
    Vector v(3);
    v << 0.2, 0.5, 0.9;
    CHECK(sad_metric(v, Vector(2.0 * v)) == doctest::Approx(0.0).epsilon(1e-12));

    Vector e1(2), e2(2);
    e1 << 1.0, 0.0;
    e2 << 0.0, 1.0;
    CHECK(sad_metric(e1, e2) == doctest::Approx(3.14159265358979323846 / 2).epsilon(1e-14));

    std::mt19937_64 rng(41);
    const Vector a = oracle::random_matrix(6, 1, rng, 0.1, 1.0);
    const Vector b = oracle::random_matrix(6, 1, rng, 0.1, 1.0);
    const double expect = std::acos(a.dot(b) / (a.norm() * b.norm()));
    CHECK(sad_metric(a, b) == doctest::Approx(expect).epsilon(1e-13));
}

TEST_CASE("rmse: identical, unit offset, scalar oracle, symmetry") {
    Vector z = Vector::Constant(7, 0.4);
    CHECK(rmse(z, z) == 0.0);
    CHECK(rmse(Vector::Ones(11), Vector::Zero(11)) == doctest::Approx(1.0).epsilon(1e-14));

    std::mt19937_64 rng(43);
    const Vector a = oracle::random_matrix(9, 1, rng);
    const Vector b = oracle::random_matrix(9, 1, rng);
    double acc = 0.0;
    for (int i = 0; i < 9; ++i) acc += (a[i] - b[i]) * (a[i] - b[i]);
    CHECK(rmse(a, b) == doctest::Approx(std::sqrt(acc / 9.0)).epsilon(1e-12));
    CHECK(rmse(a, b) == rmse(b, a));

    CHECK_THROWS_AS(rmse(Vector::Ones(3), Vector::Ones(4)), ShapeError);
}

TEST_CASE("match_endmembers: identity, swap, planted permutation") {
    std::mt19937_64 rng(47);
    const Matrix truth = oracle::random_matrix(8, 4, rng, 0.1, 1.0);

    const auto ident = match_endmembers(EndmemberMatrix(truth), EndmemberMatrix(truth));
    for (int j = 0; j < 4; ++j) CHECK(ident[j] == j);

    Matrix swapped = truth;
    swapped.col(0).swap(swapped.col(2));
    const auto swap = match_endmembers(EndmemberMatrix(truth), EndmemberMatrix(swapped));
    CHECK(swap[0] == 2);
    CHECK(swap[2] == 0);
    CHECK(swap[1] == 1);
    CHECK(swap[3] == 3);

    // Noisy planted permutation is recovered.
    const int planted[4] = {1, 3, 0, 2};
    Matrix est(8, 4);
    std::uniform_real_distribution<double> jitter(0.0, 0.02);
    for (int j = 0; j < 4; ++j) {
        est.col(j) = truth.col(planted[j]);
        for (int i = 0; i < 8; ++i) est(i, j) += jitter(rng);
    }
    const auto got = match_endmembers(EndmemberMatrix(truth), EndmemberMatrix(est));
    for (int j = 0; j < 4; ++j) CHECK(got[j] == planted[j]);

    CHECK_THROWS_AS(match_endmembers(EndmemberMatrix(truth),
                                     EndmemberMatrix(Matrix::Ones(8, 3))),
                    ShapeError);
}

TEST_CASE("evaluate: exact match and permuted match are all-zero reports") {
    std::mt19937_64 rng(53);
    const Matrix m = oracle::random_matrix(6, 3, rng, 0.1, 1.0);
    const Matrix a = oracle::random_matrix(3, 10, rng);
    const GroundTruth truth{EndmemberMatrix(m), AbundanceMatrix(a)};

    const EvalReport same = evaluate(as_result(m, a), truth);
    CHECK(same.mean_sad == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(same.mean_rmse == doctest::Approx(0.0).epsilon(1e-12));

    // Consistently permuted estimate evaluates to zero as well.
    Matrix mp(6, 3), ap(3, 10);
    const int perm[3] = {2, 0, 1};
    for (int j = 0; j < 3; ++j) {
        mp.col(j) = m.col(perm[j]);
        ap.row(j) = a.row(perm[j]);
    }
    const EvalReport permuted = evaluate(as_result(mp, ap), truth);
    CHECK(permuted.mean_sad == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(permuted.mean_rmse == doctest::Approx(0.0).epsilon(1e-12));
    for (int j = 0; j < 3; ++j) CHECK(permuted.assignment[j] == perm[j]);
}

TEST_CASE("evaluate: planted noisy instance matches the scalar mean") {
    std::mt19937_64 rng(59);
    const Matrix m = oracle::random_matrix(6, 3, rng, 0.1, 1.0);
    const Matrix a = oracle::random_matrix(3, 12, rng);
    const GroundTruth truth{EndmemberMatrix(m), AbundanceMatrix(a)};

    Matrix me = m;
    Matrix ae = a;
    std::uniform_real_distribution<double> jitter(0.0, 0.03);
    for (long i = 0; i < me.size(); ++i) me(i) += jitter(rng);
    for (long i = 0; i < ae.size(); ++i) ae(i) += jitter(rng);

    const EvalReport rep = evaluate(as_result(me, ae), truth);
    double sad_acc = 0.0, rmse_acc = 0.0;
    for (int kk = 0; kk < 3; ++kk) {
        sad_acc += rep.sad_per_endmember[kk];
        rmse_acc += rep.rmse_per_map[kk];
        CHECK(rep.sad_per_endmember[kk] ==
              doctest::Approx(sad_metric(m.col(kk), me.col(kk))).epsilon(1e-12));
        CHECK(rep.rmse_per_map[kk] ==
              doctest::Approx(rmse(a.row(kk).transpose(), ae.row(kk).transpose()))
                  .epsilon(1e-12));
    }
    CHECK(rep.mean_sad == doctest::Approx(sad_acc / 3.0).epsilon(1e-12));
    CHECK(rep.mean_rmse == doctest::Approx(rmse_acc / 3.0).epsilon(1e-12));

    // The assignment is a bijection.
    std::vector<int> seen = rep.assignment;
    std::sort(seen.begin(), seen.end());
    for (int j = 0; j < 3; ++j) CHECK(seen[j] == j);
}

TEST_CASE("evaluate: pruned (all-zero) estimated endmember scores pi/2") {
    const Matrix m = Matrix::Identity(3, 3);
    Matrix me = m;
    me.col(1).setZero();
    Matrix a = Matrix::Ones(3, 4) / 3.0;
    const GroundTruth truth{EndmemberMatrix(m), AbundanceMatrix(a)};
    const EvalReport rep = evaluate(as_result(me, a), truth);
    const double worst = *std::max_element(rep.sad_per_endmember.begin(),
                                           rep.sad_per_endmember.end());
    CHECK(worst == doctest::Approx(3.14159265358979323846 / 2).epsilon(1e-12));
}

TEST_CASE("report CSV layout") {
    EvalReport rep;
    rep.assignment = {0, 1};
    rep.sad_per_endmember = {0.25, 0.5};
    rep.rmse_per_map = {0.125, 0.375};
    rep.mean_sad = 0.375;
    rep.mean_rmse = 0.25;
    std::stringstream out;
    write_report_csv(rep, out);
    CHECK(out.str() ==
          "endmember,sad_rad,rmse\n"
          "1,0.25,0.125\n"
          "2,0.5,0.375\n"
          "mean,0.375,0.25\n");
}

TEST_SUITE_END();
