#include "helpers.hpp"

#include "msd/crossed_module.hpp"
#include "msd/rng.hpp"
#include "msd/verify.hpp"

using namespace msd;
using namespace msd::test;

TEST_SUITE("crossed-module") {

TEST_CASE("phi has an identity block") {
    const ModuleDims d{2, 1, 3};
    const Mat phi = d.phi();
    CHECK(phi.rows() == 5);
    CHECK(phi.cols() == 3);
    CHECK_MAT_NEAR(phi.topLeftCorner(2, 2), Mat::Identity(2, 2), 0.0);
    CHECK(phi.sum() == 2.0);
    CHECK_THROWS_AS((ModuleDims{-1, 0, 0}.validate()), DimensionError);
}

TEST_CASE("star product units and inverses") {
    Rng rng(1, {1});
    for (const ModuleDims& d : {ModuleDims{1, 1, 1}, ModuleDims{2, 1, 3}, ModuleDims{0, 2, 2}}) {
        const GL1Element h = random_GL1(d, rng), z = GL1Element::zero(d);
        CHECK_MAT_NEAR(star_mul(h, z).H, h.H, 0.0);
        CHECK_MAT_NEAR(star_mul(z, h).H, h.H, 0.0);
        CHECK_MAT_NEAR(star_inv(z).H, z.H, 0.0);
        CHECK_MAT_NEAR(star_mul(h, star_inv(h)).H, z.H, 1e-13);
    }
}

TEST_CASE("n = 0 degenerates to addition") {
    Rng rng(2, {1});
    const ModuleDims d{0, 2, 3};
    const GL1Element h = GL1Element::make(d, rng.gauss_matrix(2, 3));
    const GL1Element h2 = GL1Element::make(d, rng.gauss_matrix(2, 3));
    CHECK_MAT_NEAR(star_mul(h, h2).H, h.H + h2.H, 0.0);
    CHECK_MAT_NEAR(star_inv(h).H, -h.H, 0.0);
    const Gl1Element z = random_gl1(d, rng);
    CHECK(delta(z).X.norm() == 0.0);
    CHECK(delta(z).Y.norm() == 0.0);
    CHECK(star_commutator(z, random_gl1(d, rng)).Z.norm() == 0.0);
    CHECK_MAT_NEAR(star_exp(z).H, z.Z, 0.0);
}

TEST_CASE("star_exp closed forms") {
    const ModuleDims d{2, 1, 1};
    CHECK_MAT_NEAR(star_exp(Gl1Element::zero(d)).H, Mat::Zero(3, 3), 0.0);
    // R = 0: [[0,S],[T,U]] -> [[0,S],[T,U+TS/2]]
    Rng rng(3, {1});
    Mat z = rng.gauss_matrix(3, 3);
    z.topLeftCorner(2, 2).setZero();
    const Mat h = star_exp(Gl1Element{d, z}).H;
    Mat expect = z;
    expect.bottomRightCorner(1, 1) += 0.5 * z.bottomLeftCorner(1, 2) * z.topRightCorner(2, 1);
    CHECK_MAT_NEAR(h, expect, 1e-14);
}

TEST_CASE("delta of star_exp is the pair of exponentials") {
    Rng rng(4, {1});
    const ModuleDims d{2, 1, 3};
    for (int k = 0; k < 10; ++k) {
        const Gl1Element z = random_gl1(d, rng, 1.0);
        const GL0Element g = delta(star_exp(z));
        CHECK_MAT_NEAR(g.F, expm(z.Z * d.phi()), 1e-12);
        CHECK_MAT_NEAR(g.G, expm(d.phi() * z.Z), 1e-12);
    }
}

TEST_CASE("delta is a homomorphism, action laws, Peiffer relations") {
    Rng rng(5, {1});
    const ModuleDims d{2, 2, 1};
    const GL0Element e = GL0Element::identity(d);
    for (int k = 0; k < 10; ++k) {
        const GL1Element h = random_GL1(d, rng), h2 = random_GL1(d, rng);
        const GL0Element g = random_GL0(d, rng);
        const GL0Element dz = delta(star_mul(h, h2)), dd = delta(h) * delta(h2);
        CHECK_MAT_NEAR(dz.F, dd.F, 1e-13);
        CHECK_MAT_NEAR(dz.G, dd.G, 1e-13);
        CHECK_MAT_NEAR(act(e, h).H, h.H, 1e-14);
        CHECK_MAT_NEAR(act(g, GL1Element::zero(d)).H, Mat::Zero(4, 3), 0.0);
        const GL0Element lhs = delta(act(g, h)), rhs = g * delta(h) * g.inverse();
        CHECK_MAT_NEAR(lhs.F, rhs.F, 1e-12);
        CHECK_MAT_NEAR(lhs.G, rhs.G, 1e-12);
        CHECK_MAT_NEAR(act(delta(h), h2).H, star_mul(star_mul(h, h2), star_inv(h)).H, 1e-12);
    }
    delta(GL1Element::zero(d));
    CHECK_MAT_NEAR(delta(GL1Element::zero(d)).F, Mat::Identity(4, 4), 0.0);
    CHECK_MAT_NEAR(delta(GL1Element::zero(d)).G, Mat::Identity(3, 3), 0.0);
}

TEST_CASE("algebra-level Peiffer and commutator") {
    Rng rng(6, {1});
    const ModuleDims d{1, 2, 2};
    const Gl1Element z = random_gl1(d, rng), z2 = random_gl1(d, rng);
    CHECK_MAT_NEAR(star_commutator(z, z).Z, Mat::Zero(3, 3), 0.0);
    CHECK_MAT_NEAR(act(delta(z), z2).Z, star_commutator(z, z2).Z, 1e-14);
    // the commutator is the second-order term of the group commutator
    const double eps = 1e-4;
    const GL1Element a = star_exp(Gl1Element{d, eps * z.Z}), b = star_exp(Gl1Element{d, eps * z2.Z});
    const Mat grp = star_mul(star_mul(a, b), star_mul(star_inv(a), star_inv(b))).H / (eps * eps);
    CHECK_MAT_NEAR(grp, star_commutator(z, z2).Z, 1e-3);
}

TEST_CASE("GL0 validation") {
    const ModuleDims d{1, 1, 1};
    Mat f = Mat::Identity(2, 2), g = Mat::Identity(2, 2);
    f(0, 1) = 0.5;  // forbidden block
    CHECK_THROWS_AS(GL0Element::make(d, f, g), NumericError);
    const GL0Element p = GL0Element::project(d, f, g);
    CHECK(p.F(0, 1) == 0.0);
    CHECK(p.block_defect() == 0.0);
    CHECK_THROWS_AS(GL1Element::make(d, Mat::Zero(3, 2)), DimensionError);
}

TEST_CASE("frozen star product value") {
    // hand evaluation of H + H2 + H phi H2 for dims (1,1,1)
    const ModuleDims d{1, 1, 1};
    const GL1Element h = GL1Element::make(d, mat({{1, 2}, {3, 4}}));
    const GL1Element h2 = GL1Element::make(d, mat({{5, 6}, {7, 8}}));
    CHECK_MAT_NEAR(star_mul(h, h2).H, mat({{11, 14}, {25, 30}}), 0.0);
    CHECK_MAT_NEAR(star_inv(h).H, mat({{-0.5, -1.0}, {-1.5, -1.0}}), 1e-15);
}

}
