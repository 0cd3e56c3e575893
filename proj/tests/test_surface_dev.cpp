#include "helpers.hpp"

#include "msd/path_dev.hpp"
#include "msd/rng.hpp"
#include "msd/surface_dev.hpp"
#include "msd/verify.hpp"
#include "msd/young.hpp"


using namespace msd;
using namespace msd::test;

namespace {

double loop_defect(const Matrix2Connection& w, const PLPath& loop, const GL1Element& h) {
    const GL0Element b = develop_pl_pair(w, loop), dh = delta(h);
    return std::max((b.F - dh.F).norm(), (b.G - dh.G).norm());
}

Matrix2Connection fixed_connection() {
    return build_semiflat({1, 1, 1}, 2, {mat({{0.3}}), mat({{-0.2}})}, {mat({{0.1}}), mat({{0.4}})},
                          {mat({{0.2}}), mat({{0.5}})}, {mat({{0.3}}), mat({{0.1}})},
                          {mat({{-0.1}}), mat({{0.2}})}, {mat({{0.7}})});
}

}  // namespace

TEST_SUITE("surface-dev") {

TEST_CASE("zero connection develops to zero") {
    const Matrix2Connection w = zero_connection({1, 2, 1}, 3);
    const Vec a = vec({1, 2, 3}), b = vec({-1, 0, 2}), c = vec({0.5, 0.5, 0.5});
    CHECK(develop_linear_square(w, a, b).H.norm() == 0.0);
    CHECK(develop_basic_square(w, a, b, c).H.norm() == 0.0);
}

TEST_CASE("abelian module: interior is the curvature flux") {
    // dims (0,1,1), alpha = beta = 0, gamma^{12} = 1
    std::vector<Mat> none(2, Mat(0, 0)), B(2, Mat(1, 0)), D(2, Mat(0, 1)), C(2, Mat::Zero(1, 1));
    const Matrix2Connection w = build_semiflat({0, 1, 1}, 2, none, B, C, D, C, {Mat::Ones(1, 1)});
    CHECK(develop_linear_square(w, vec({1, 0}), vec({0, 1})).H(0, 0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(develop_linear_square(w, vec({2, 1}), vec({0.5, 3})).H(0, 0) ==
          doctest::Approx(5.5).epsilon(1e-14));
    // triangulated cell: flux = signed area of the two triangles
    const Vec a = vec({1, 0}), b = vec({0, 1}), c = vec({1.5, 2});
    const double area = 0.5 * (a[0] * c[1] - a[1] * c[0]) + 0.5 * (c[0] * b[1] - c[1] * b[0]);
    CHECK(develop_basic_square(w, a, b, c).H(0, 0) == doctest::Approx(area).epsilon(1e-14));
}

TEST_CASE("planar cell reduces to the linear square") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const Matrix2Connection w = sample_generic({1, 2, 1}, 3, seed);
        Rng rng(seed, {5});
        const Vec a = rng.gauss_matrix(3, 1).col(0), b = rng.gauss_matrix(3, 1).col(0);
        const GL1Element lin = develop_linear_square(w, a, b);
        CHECK_MAT_NEAR(develop_basic_square(w, a, b, a + b).H, lin.H, 1e-9 * std::max(1.0, lin.H.norm()));
        CHECK_MAT_NEAR(develop_cell_rows(w, a, b, a + b, Diagonal::Main).H, lin.H,
                       1e-9 * std::max(1.0, lin.H.norm()));
    }
}

TEST_CASE("cell Stokes: both diagonals and both methods") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const Matrix2Connection w = sample_generic({2, 1, 2}, 3, 100 + seed);
        Rng rng(seed, {6});
        const Vec a = rng.gauss_matrix(3, 1).col(0), b = rng.gauss_matrix(3, 1).col(0),
                  c = rng.gauss_matrix(3, 1).col(0);
        const PLPath loop{{Vec::Zero(3), a, c, b, Vec::Zero(3)}};
        const GL1Element half = develop_basic_square(w, a, b, c);
        const GL1Element rows = develop_cell_rows(w, a, b, c, Diagonal::Main);
        const GL1Element anti = develop_cell_rows(w, a, b, c, Diagonal::Anti);
        const double scale = std::max(1.0, half.H.norm());
        CHECK(loop_defect(w, loop, half) <= 1e-9 * scale);
        CHECK(loop_defect(w, loop, anti) <= 1e-9 * scale);
        CHECK_MAT_NEAR(half.H, rows.H, 1e-9 * scale);
    }
}

TEST_CASE("trivial module reproduces the boundary holonomy") {
    Rng rng(7, {5});
    std::vector<Mat> A = {rng.gauss_matrix(3, 3), rng.gauss_matrix(3, 3)};
    const Matrix2Connection w = trivial_curvature_connection(A);
    const Vec a = vec({0.4, -0.2}), b = vec({0.1, 0.6});
    const PLPath loop{{Vec::Zero(2), a, Vec(a + b), b, Vec::Zero(2)}};
    CHECK_MAT_NEAR(develop_linear_square(w, a, b).H + Mat::Identity(3, 3), develop_pl_pair(w, loop).F,
                   1e-11);
}

TEST_CASE("flat closed form matches quadrature") {
    // A blocks as polynomials in one matrix
    Rng rng(8, {5});
    const Mat m = rng.gauss_matrix(2, 2);
    std::vector<Mat> A = {0.3 * m, Mat::Identity(2, 2) - 0.2 * m * m}, B, C, D, E;
    for (int i = 0; i < 2; ++i) {
        B.push_back(0.5 * rng.gauss_matrix(1, 2));
        C.push_back(0.5 * rng.gauss_matrix(1, 1));
        D.push_back(0.5 * rng.gauss_matrix(2, 2));
        E.push_back(Mat::Identity(2, 2) * (0.3 + 0.2 * i));
    }
    const Matrix2Connection w = build_semiflat({2, 1, 2}, 2, A, B, C, D, E, {rng.gauss_matrix(1, 2)});
    const Vec a = vec({0.7, -0.4}), b = vec({0.2, 0.9});
    CHECK_MAT_NEAR(develop_linear_square_flat(w, a, b).H, develop_linear_square(w, a, b).H, 1e-10);
    const Matrix2Connection generic = sample_generic({2, 1, 1}, 2, 1);
    CHECK_THROWS_AS(develop_linear_square_flat(generic, a, b), NumericError);
}

TEST_CASE("frozen linear-square value") {
    // regression value; the half-square, both row flows and the Young route agree with it
    const Matrix2Connection w = fixed_connection();
    const Vec a = vec({0.5, -0.25}), b = vec({0.125, 0.75});
    const GL1Element h = develop_linear_square(w, a, b);
    const Mat frozen = mat({{0.0, 0.067070028368532791}, {-0.052272606721533499, 0.35198870679446476}});
    CHECK_MAT_NEAR(h.H, frozen, 1e-14);
    CHECK_MAT_NEAR(develop_basic_square(w, a, b, a + b).H, frozen, 1e-12);
    CHECK_MAT_NEAR(develop_cell_rows(w, a, b, a + b, Diagonal::Anti).H, frozen, 1e-12);
    YoungOptions corner;
    corner.rule = YoungRule::CornerAverage;
    const GridSurface g = grid_from_function(128, 128, 2, [&](double s, double t) -> Vec { return a * s + b * t; });
    CHECK_MAT_NEAR(develop_young(w, g, corner).H, frozen, 1e-6);
}

TEST_CASE("grid development") {
    const Matrix2Connection w = with_norm_at_most(sample_generic({1, 1, 2}, 3, 5), 1.0);
    SUBCASE("constant grid gives the identity square") {
        GridSurface g(uniform_knots(3), uniform_knots(2), 3);
        for (int j = 0; j < g.nt(); ++j)
            for (int i = 0; i < g.ns(); ++i) g.set(i, j, vec({1, 2, 3}));
        const CellDevelopment cd = develop_grid(w, g);
        CHECK(cd.square.E.H.norm() == 0.0);
        CHECK_MAT_NEAR(cd.square.x.F, Mat::Identity(2, 2), 0.0);
    }
    SUBCASE("one cell equals the basic square") {
        Rng rng(1, {5});
        const GridSurface g = random_grid(1, 1, 3, rng);
        const Vec p = g.at(0, 0);
        const GL1Element e = develop_basic_square(w, g.at(1, 0) - p, g.at(0, 1) - p, g.at(1, 1) - p);
        CHECK_MAT_NEAR(develop_grid(w, g).square.E.H, e.H, 0.0);
    }
    SUBCASE("two cells against the Young route") {
        Rng rng(2, {5});
        const GridSurface g = random_grid(2, 1, 3, rng);
        YoungOptions yo;
        yo.rule = YoungRule::CornerAverage;
        const GL1Element exact = develop_grid(w, g).square.E;
        const GL1Element young = develop_young(w, refine_pl(g, 128), yo);
        CHECK_MAT_NEAR(young.H, exact.H, 1e-5);
    }
    SUBCASE("composition orders agree, Stokes holds") {
        Rng rng(3, {5});
        const GridSurface g = random_grid(3, 4, 3, rng);
        GridOptions cols;
        cols.order = ComposeOrder::ColumnsFirst;
        const CellDevelopment r = develop_grid(w, g), c = develop_grid(w, g, cols);
        CHECK_MAT_NEAR(r.square.E.H, c.square.E.H, 1e-12);
        CHECK(stokes_defect(w, g, r.square.E) <= 1e-12);
        GridOptions rows;
        rows.method = CellMethod::Rows;
        CHECK_MAT_NEAR(develop_grid(w, g, rows).square.E.H, r.square.E.H, 1e-12);
    }
    SUBCASE("dimension mismatch names both sides") {
        Rng rng(4, {5});
        try {
            develop_grid(w, random_grid(2, 2, 2, rng));
            FAIL("expected DimensionError");
        } catch (const DimensionError& e) {
            const std::string msg = e.what();
            CHECK(msg.find("2") != std::string::npos);
            CHECK(msg.find("3") != std::string::npos);
        }
    }
}

TEST_CASE("quadrature failure is reported") {
    const Matrix2Connection w = sample_generic({1, 1, 1}, 2, 3);
    QuadOptions q;
    q.tol = 1e-300;
    q.max_panels = 4;
    CHECK_THROWS_AS(develop_linear_square(w, vec({3, 1}), vec({-2, 4}), q), NumericError);
}

TEST_CASE("suite: grid Stokes and trivial module") {
    const SuiteResult s = run_grid_stokes(5, 20);
    INFO(s.summary());
    CHECK(s.pass());
    const SuiteResult t = run_trivial_module(5, 20);
    INFO(t.summary());
    CHECK(t.pass());
}

}
