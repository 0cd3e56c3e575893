#include "helpers.hpp"

#include "msd/path_dev.hpp"
#include "msd/rng.hpp"
#include "msd/verify.hpp"

using namespace msd;
using namespace msd::test;

namespace {

PLPath random_path(Rng& rng, int segments, int d) {
    PLPath p;
    for (int k = 0; k <= segments; ++k) p.vertices.push_back(rng.gauss_matrix(d, 1).col(0));
    return p;
}

}  // namespace

TEST_SUITE("path-dev") {

TEST_CASE("constant path develops to the identity") {
    const Matrix2Connection w = sample_generic({1, 1, 1}, 2, 1);
    const PLPath p{{vec({0.3, 0.4}), vec({0.3, 0.4}), vec({0.3, 0.4})}};
    const GL0Element g = develop_pl_pair(w, p);
    CHECK_MAT_NEAR(g.F, Mat::Identity(2, 2), 0.0);
    CHECK_MAT_NEAR(g.G, Mat::Identity(2, 2), 0.0);
}

TEST_CASE("single segment is one exponential") {
    const Matrix2Connection w = sample_generic({2, 1, 1}, 3, 2);
    const Vec v = vec({0.2, -0.5, 0.7});
    const GL0Element g = develop_pl_pair(w, PLPath{{Vec::Zero(3), v}});
    CHECK_MAT_NEAR(g.F, expm(w.alpha_of(v)), 1e-14);
    CHECK_MAT_NEAR(g.G, expm(w.beta_of(v)), 1e-14);
}

TEST_CASE("concatenation multiplies developments") {
    Rng rng(1, {4});
    const Matrix2Connection w = sample_generic({1, 2, 1}, 3, 3);
    for (int k = 0; k < 5; ++k) {
        const PLPath x = random_path(rng, 4, 3), y = random_path(rng, 3, 3);
        const GL0Element lhs = develop_pl_pair(w, concat(x, y));
        const GL0Element rhs = develop_pl_pair(w, x) * develop_pl_pair(w, y);
        CHECK_MAT_NEAR(lhs.F, rhs.F, 1e-10 * rhs.F.norm());
        CHECK_MAT_NEAR(lhs.G, rhs.G, 1e-10 * rhs.G.norm());
        const GL0Element back = develop_pl_pair(w, concat(x, reverse(x)));
        const GL0Element fx = develop_pl_pair(w, x);
        CHECK_MAT_NEAR(back.F, Mat::Identity(3, 3), 1e-12 * fx.F.norm() * fx.F.inverse().norm());
        // splitting a segment leaves the development unchanged
        const GL0Element split = develop_pl_pair(w, insert_midpoint(x, 1, 0.3));
        CHECK_MAT_NEAR(split.F, develop_pl_pair(w, x).F, 1e-10 * split.F.norm());
    }
}

TEST_CASE("segment cache returns identical results") {
    const Matrix2Connection w = sample_generic({1, 1, 1}, 2, 4);
    SegmentCache cache(w);
    const Vec v = vec({0.1, 0.2});
    const GL0Element a = cache.get(v), b = cache.get(v);
    CHECK(cache.size() == 1);
    CHECK(a.F == b.F);
    CHECK(a.F == develop_segment(w, v).F);
}

TEST_CASE("level-2 signature of one segment") {
    const Vec v = vec({1.0, -2.0, 0.5});
    const Sig2 s = signature_level2(PLPath{{Vec::Zero(3), v}});
    CHECK_MAT_NEAR(s.level2, 0.5 * v * v.transpose(), 1e-15);
    CHECK_MAT_NEAR(s.level1, v, 0.0);
    CHECK(s.area().norm() == 0.0);
}

TEST_CASE("parallelogram loop area") {
    const Vec a = vec({1.0, 0.5, 0.0}), b = vec({-0.3, 2.0, 1.0});
    const double s = 0.7, t = 1.3;
    const PLPath loop{{Vec::Zero(3), Vec(s * a), Vec(s * a + t * b), Vec(t * b), Vec::Zero(3)}};
    const Mat area = signature_level2(loop).area();
    const Mat expect = (a * b.transpose() - b * a.transpose()) * s * t;
    CHECK_MAT_NEAR(area, expect, 1e-14);
}

TEST_CASE("Chen identity") {
    Rng rng(2, {4});
    const PLPath x = random_path(rng, 5, 3), y = random_path(rng, 4, 3);
    const Sig2 sx = signature_level2(x), sy = signature_level2(y), sxy = signature_level2(concat(x, y));
    const Sig2 c = chen(sx, sy);
    CHECK_MAT_NEAR(sxy.level2, sx.level2 + sx.level1 * sy.level1.transpose() + sy.level2, 1e-13);
    CHECK_MAT_NEAR(c.level2, sxy.level2, 1e-13);
}

TEST_CASE("tail paths") {
    Rng rng(3, {4});
    const GridSurface g = random_grid(2, 2, 2, rng);
    CHECK(tail_path(g, 0, 0).vertices.size() == 1);
    const PLPath bottom = tail_path(g, 2, 0);
    REQUIRE(bottom.vertices.size() == 3);
    for (int i = 0; i < 3; ++i) CHECK(bottom.vertices[i] == g.at(i, 0));
    const PLPath full = tail_path(g, 2, 2);
    REQUIRE(full.vertices.size() == 5);
    const Vec expect[5] = {g.at(0, 0), g.at(0, 1), g.at(0, 2), g.at(1, 2), g.at(2, 2)};
    for (int k = 0; k < 5; ++k) CHECK(full.vertices[k] == expect[k]);
    const PLPath hat = hat_tail_path(g, 2, 2);
    const Vec hexpect[5] = {g.at(0, 0), g.at(1, 0), g.at(2, 0), g.at(2, 1), g.at(2, 2)};
    for (int k = 0; k < 5; ++k) CHECK(hat.vertices[k] == hexpect[k]);
    const PLPath loop = boundary_loop(g);
    CHECK(loop.vertices.size() == 9);
    CHECK(loop.vertices.front() == loop.vertices.back());
    CHECK(loop.vertices[2] == g.at(2, 0));
}

TEST_CASE("dimension mismatch") {
    const Matrix2Connection w = sample_generic({1, 1, 1}, 2, 1);
    CHECK_THROWS_AS(develop_pl_pair(w, PLPath{{Vec::Zero(3), Vec::Ones(3)}}), DimensionError);
}

}
