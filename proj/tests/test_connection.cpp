#include "helpers.hpp"

#include "msd/connection.hpp"
#include "msd/io.hpp"
#include "msd/rng.hpp"

#include <cmath>

using namespace msd;
using namespace msd::test;

namespace {

std::vector<Mat> zeros(int d, int r, int c) { return std::vector<Mat>(d, Mat::Zero(r, c)); }

}  // namespace

TEST_SUITE("connection") {

TEST_CASE("zero blocks give the zero connection") {
    const ModuleDims dm{1, 2, 2};
    const Matrix2Connection w =
        build_semiflat(dm, 3, zeros(3, 1, 1), zeros(3, 2, 1), zeros(3, 2, 2), zeros(3, 1, 2),
                       zeros(3, 2, 2), zeros(3, 2, 2));
    CHECK(w.norm() == 0.0);
    CHECK(semiflat_defect(w) == 0.0);
    CHECK(frobenius_distance(w, zero_connection(dm, 3)) == 0.0);
}

TEST_CASE("scalar blocks always commute") {
    Rng rng(1, {3});
    const int d = 3;
    std::vector<Mat> A, B, C, D, E, U;
    for (int i = 0; i < d; ++i) {
        A.push_back(rng.gauss_matrix(1, 1));
        B.push_back(rng.gauss_matrix(1, 1));
        C.push_back(rng.gauss_matrix(1, 1));
        D.push_back(rng.gauss_matrix(1, 1));
        E.push_back(rng.gauss_matrix(1, 1));
    }
    for (int k = 0; k < 3; ++k) U.push_back(rng.gauss_matrix(1, 1));
    const Matrix2Connection w = build_semiflat({1, 1, 1}, d, A, B, C, D, E, U);
    CHECK(semiflat_defect(w) <= 1e-13);
}

TEST_CASE("non-commuting C blocks are rejected with the residual") {
    std::vector<Mat> C = {mat({{0, 1}, {0, 0}}), mat({{0, 0}, {1, 0}})};
    try {
        build_semiflat({0, 2, 1}, 2, zeros(2, 0, 0), zeros(2, 2, 0), C, zeros(2, 0, 1), zeros(2, 1, 1),
                       zeros(1, 2, 1));
        FAIL("expected a commutator violation");
    } catch (const NumericError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("1.41421") != std::string::npos);
    }
    CHECK(commutator(C[0], C[1]).norm() == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("derived blocks satisfy the curvature constraint") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const Matrix2Connection w = sample_generic({2, 3, 2}, 4, seed);
        const double scale = std::max(1.0, w.norm() * w.norm());
        CHECK(semiflat_defect(w) <= 1e-12 * scale);
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) CHECK_MAT_NEAR(w.gamma(i, j), -w.gamma(j, i), 0.0);
    }
}

TEST_CASE("restricted sampling") {
    const Matrix2Connection w = sample_restricted(3, 2, 42, 7);
    CHECK(w.d == 4);
    CHECK(w.dims == ModuleDims{3, 3, 3});
    for (int i = 0; i < w.d; ++i) {
        if (i != 0) CHECK(w.C[i].norm() == 0.0);
        if (i != 1) CHECK(w.E[i].norm() == 0.0);
    }
    CHECK(w.C[0].norm() > 0.0);
    CHECK(w.E[1].norm() > 0.0);
    const Matrix2Connection w2 = sample_restricted(3, 2, 42, 7);
    CHECK(frobenius_distance(w, w2) == 0.0);
    CHECK(frobenius_distance(w, sample_restricted(3, 2, 42, 8)) > 0.0);
    CHECK(semiflat_defect(w) <= 1e-10 * w.norm() * w.norm());
}

TEST_CASE("eval_gamma") {
    const Matrix2Connection w = sample_generic({1, 1, 1}, 3, 5);
    Rng rng(2, {3});
    const Vec u = rng.gauss_matrix(3, 1).col(0), v = rng.gauss_matrix(3, 1).col(0),
              x = rng.gauss_matrix(3, 1).col(0);
    CHECK_MAT_NEAR(eval_gamma(w, v, v).Z, Mat::Zero(2, 2), 1e-14);
    CHECK_MAT_NEAR(eval_gamma(w, Vec::Unit(3, 0), Vec::Unit(3, 2)).Z, w.gamma(0, 2), 0.0);
    CHECK_MAT_NEAR(eval_gamma(w, 2.0 * u + x, v).Z, 2.0 * eval_gamma(w, u, v).Z + eval_gamma(w, x, v).Z,
                   1e-13);
    Mat expand = Mat::Zero(2, 2);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != j) expand += 0.5 * w.gamma(i, j) * (u[i] * v[j] - u[j] * v[i]);
    CHECK_MAT_NEAR(eval_gamma(w, u, v).Z, expand, 1e-13);
    CHECK_THROWS_AS(eval_gamma(w, Vec::Zero(2), v), DimensionError);
}

TEST_CASE("direct sums and distances") {
    const Matrix2Connection w1 = sample_generic({1, 1, 1}, 2, 1), w2 = sample_generic({2, 1, 1}, 2, 2);
    const Matrix2Connection s = direct_sum(w1, w2);
    CHECK(s.dims == ModuleDims{3, 2, 2});
    CHECK(s.norm() * s.norm() == doctest::Approx(w1.norm() * w1.norm() + w2.norm() * w2.norm()));
    const Matrix2Connection z = direct_sum(w1, zero_connection({1, 1, 1}, 2));
    CHECK(z.norm() == doctest::Approx(w1.norm()));
    CHECK(frobenius_distance(w1, w1) == 0.0);
    CHECK(frobenius_distance(w1, zero_connection(w1.dims, 2)) == doctest::Approx(w1.norm()));
    const Matrix2Connection a = sample_generic({1, 2, 1}, 2, 3), b = sample_generic({1, 2, 1}, 2, 4),
                            c = sample_generic({1, 2, 1}, 2, 5);
    CHECK(frobenius_distance(a, c) <= frobenius_distance(a, b) + frobenius_distance(b, c) + 1e-12);
    CHECK_THROWS_AS(frobenius_distance(w1, w2), DimensionError);
}

TEST_CASE("upper ones matrices") {
    const Mat u31 = upper_ones(3, 1);
    CHECK_MAT_NEAR(u31, mat({{0, 1, 1}, {0, 0, 1}, {0, 0, 0}}), 0.0);
    CHECK_MAT_NEAR(u31 * u31, upper_ones(3, 2), 0.0);
    CHECK(upper_ones(3, 3).norm() == 0.0);
    // with ones on and above the k-th diagonal the power law fails from m = 4 on
    CHECK((upper_ones(4, 1) * upper_ones(4, 1))(0, 3) == 2.0);
    CHECK(upper_ones(4, 2)(0, 3) == 1.0);
}

TEST_CASE("polynomial connection integrand") {
    const Matrix2Connection w = polynomial_connection(2, 1, 0, 1.5, 1);
    CHECK(w.dims == ModuleDims{0, 3, 2});
    CHECK(w.d == 3);
    CHECK(w.gamma(0, 2)(2, 0) == doctest::Approx(1.5 * 2.0));
    CHECK(semiflat_defect(w) == 0.0);
    // F(s) gamma G(t)^{-1} at entry (0, b) for a = b = 1, c = 1
    const Matrix2Connection w11 = polynomial_connection(1, 1, 0, 1.0, 1);
    auto integrand = [&](double s, double t) {
        const Mat f = expm(s * w11.C[0]);
        const Mat ginv = expm(t * w11.E[1]).inverse();
        return (f * w11.gamma(0, 2) * ginv)(0, 1);
    };
    CHECK(integrand(1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(integrand(0.5, 0.25) == doctest::Approx(0.125).epsilon(1e-14));
    const Matrix2Connection w00 = polynomial_connection(0, 0, 0, 2.5, 1);
    CHECK(w00.gamma(0, 2)(0, 0) == 2.5);
    CHECK_THROWS_AS(polynomial_connection(1, 1, 1, 1.0, 1), DimensionError);
}

TEST_CASE("trivial curvature connection") {
    Rng rng(3, {3});
    std::vector<Mat> A = {rng.gauss_matrix(2, 2), rng.gauss_matrix(2, 2), rng.gauss_matrix(2, 2)};
    const Matrix2Connection w = trivial_curvature_connection(A);
    CHECK_MAT_NEAR(w.gamma(0, 1), commutator(A[0], A[1]), 1e-14);
    CHECK_MAT_NEAR(w.gamma(1, 2), commutator(A[1], A[2]), 1e-14);
    const Mat a = rng.gauss_matrix(2, 2);
    const Matrix2Connection c = trivial_curvature_connection({a, a * a, Mat::Identity(2, 2)});
    CHECK(c.gamma(0, 1).norm() <= 1e-13);
}

TEST_CASE("connection json round trip") {
    const Matrix2Connection w = sample_generic({2, 1, 3}, 3, 9);
    const Matrix2Connection r = connection_from_json(nlohmann::json::parse(connection_to_json(w).dump()));
    CHECK(frobenius_distance(w, r) == 0.0);
    nlohmann::json bad = nlohmann::json::parse(connection_to_json(w).dump());
    bad["d"] = 4;
    CHECK_THROWS_AS(connection_from_json(bad), DimensionError);
}

}
