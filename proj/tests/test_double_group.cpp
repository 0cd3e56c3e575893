#include "helpers.hpp"

#include "msd/double_group.hpp"
#include "msd/path_dev.hpp"
#include "msd/rng.hpp"
#include "msd/surface_dev.hpp"
#include "msd/verify.hpp"

using namespace msd;
using namespace msd::test;

TEST_SUITE("double-group") {

TEST_CASE("identity squares are valid") {
    Rng rng(1, {2});
    const ModuleDims d{1, 2, 1};
    const GL0Element x = random_GL0(d, rng);
    const Square h = h_identity(x), v = v_identity(x);
    CHECK(h.residual <= 1e-13);
    CHECK(v.residual <= 1e-13);
    const GL0Element e = GL0Element::identity(d);
    const Square he = h_identity(e), ve = v_identity(e);
    CHECK(square_distance(he, ve) == 0.0);
    CHECK(he.E.H.norm() == 0.0);
}

TEST_CASE("unrelated interior is rejected") {
    Rng rng(2, {2});
    const ModuleDims d{1, 1, 1};
    const GL0Element x = random_GL0(d, rng), y = random_GL0(d, rng), z = random_GL0(d, rng),
                     w = random_GL0(d, rng);
    CHECK_THROWS_AS(make_square(x, y, z, w, random_GL1(d, rng)), NumericError);
}

TEST_CASE("square from a developed linear cell satisfies the boundary law") {
    Rng rng(3, {2});
    const Matrix2Connection w = with_norm_at_most(sample_generic({1, 1, 2}, 3, 17), 1.0);
    GridSurface g = random_grid(1, 1, 3, rng);
    const Square s = develop_cell_square(w, g, 0, 0, GridOptions{}, nullptr, nullptr);
    CHECK(s.residual <= 1e-10);
}

TEST_CASE("composition, unit and inverse laws") {
    Rng rng(4, {2});
    const ModuleDims d{2, 1, 1};
    for (int k = 0; k < 10; ++k) {
        const Square s = random_square(random_GL0(d, rng), random_GL0(d, rng), rng);
        CHECK(square_distance(hcompose(h_identity(s.w), s), s) <= 1e-12);
        CHECK(square_distance(vcompose(v_identity(s.x), s), s) <= 1e-12);
        CHECK(square_distance(hcompose(s, h_inverse(s)), h_identity(s.w)) <= 1e-11);
        CHECK(square_distance(vcompose(s, v_inverse(s)), v_identity(s.x)) <= 1e-11);
        CHECK(square_distance(h_inverse(h_inverse(s)), s) <= 1e-12);
        CHECK(square_distance(v_inverse(v_inverse(s)), s) <= 1e-12);
        CHECK_MAT_NEAR(v_inverse(s).E.H, act(s.w.inverse(), star_inv(s.E)).H, 1e-13);
        CHECK_MAT_NEAR(h_inverse(s).E.H, act(s.x.inverse(), star_inv(s.E)).H, 1e-13);
        const Square s2 = random_square(random_GL0(d, rng), s.y, rng);
        const Square c = hcompose(s, s2);
        CHECK(c.residual <= 1e-10);
        CHECK(c.cells == 2);
    }
}

TEST_CASE("mismatched edges are rejected") {
    Rng rng(5, {2});
    const ModuleDims d{1, 1, 1};
    const Square s = random_square(random_GL0(d, rng), random_GL0(d, rng), rng);
    const Square t = random_square(random_GL0(d, rng), random_GL0(d, rng), rng);
    CHECK_THROWS_AS(hcompose(s, t), NumericError);
    CHECK_THROWS_AS(vcompose(s, t), NumericError);
}

TEST_CASE("suite: interchange law on 100 configurations") {
    const SuiteResult r = run_double_group_laws(11, 100);
    INFO(r.summary());
    CHECK(r.pass());
}

}
