#include "helpers.hpp"

#include "msd/char_metric.hpp"
#include "msd/random_surface.hpp"
#include "msd/rng.hpp"
#include "msd/surface_dev.hpp"
#include "msd/verify.hpp"

#include <cmath>

using namespace msd;
using namespace msd::test;

namespace {

GridSurface bump(int n, double amp) {
    return grid_from_function(n, n, 1, [amp](double s, double t) {
        return vec({amp * std::sin(M_PI * s) * std::sin(M_PI * t)});
    });
}

MetricConfig small_config(std::uint64_t seed) {
    MetricConfig c;
    c.N_max = 2;
    c.K_conn = 3;
    c.K_ell = 3;
    c.seed = seed;
    return c;
}

}  // namespace

TEST_SUITE("char-metric") {

TEST_CASE("characteristic function trivial cases") {
    const Ensemble e = sample_fbs_ensemble(0.7, 8, 1, 5, 3);
    const Matrix2Connection w = sample_restricted(1, 1, 4);
    const Complex2 one = char_fn_estimate(e, w, Mat::Zero(2, 2));
    CHECK(one.re == 1.0);
    CHECK(one.im == 0.0);
    const Complex2 z = char_fn_estimate(e, zero_connection({1, 1, 1}, 3), sample_ell(1, 5));
    CHECK(z.re == 1.0);
    const Complex2 c = char_fn_estimate(e, w, sample_ell(1, 6));
    CHECK(c.abs() <= 1.0);
    CHECK_THROWS_AS(char_fn_estimate(e, w, Mat::Zero(3, 3)), DimensionError);
}

TEST_CASE("functionals lie in the unit ball with the right second moment") {
    for (int n : {1, 2, 3}) {
        const int draws = 4000;
        double m2 = 0.0, m4 = 0.0;
        for (int k = 0; k < draws; ++k) {
            const Mat l = sample_ell(n, 77, static_cast<std::uint64_t>(k));
            CHECK(l.rows() == 2 * n);
            const double r2 = l.squaredNorm();
            CHECK(r2 <= 1.0 + 1e-15);
            m2 += r2;
            m4 += r2 * r2;
        }
        m2 /= draws;
        const double se = std::sqrt((m4 / draws - m2 * m2) / draws);
        const double expect = 4.0 * n * n / (4.0 * n * n + 2.0);
        CHECK(std::abs(m2 - expect) <= 4.0 * se);
    }
    CHECK(sample_ell(2, 5, 1) == sample_ell(2, 5, 1));
}

TEST_CASE("level distances: identity, symmetry, variants") {
    const Ensemble a = sample_fbs_ensemble(0.6, 8, 1, 12, 1), b = sample_fbs_ensemble(0.9, 8, 1, 12, 2);
    const MetricConfig cfg = small_config(9);
    CHECK(dn_estimate(a, a, 1, cfg).dn == 0.0);
    const double ab = dn_estimate(a, b, 2, cfg).dn, ba = dn_estimate(b, a, 2, cfg).dn;
    CHECK(ab == ba);
    CHECK(ab > 0.0);
    MetricConfig lit = cfg;
    lit.variant = MetricVariant::Literal;
    const double la = dn_estimate(a, a, 1, lit).dn;
    CHECK(la >= 0.0);
    CHECK(dn_estimate(a, b, 1, lit).dn == doctest::Approx(dn_estimate(b, a, 1, lit).dn).epsilon(1e-14));
    // modulus of each term is at most 2
    CHECK(dn_estimate(a, b, 1, lit).dn <= 2.0);
}

TEST_CASE("metric: exchangeability, truncation, report") {
    const Ensemble a = sample_fbs_ensemble(0.6, 8, 1, 10, 3), b = sample_fbs_ensemble(0.85, 8, 1, 10, 4);
    const MetricConfig cfg = small_config(11);
    const MetricReport r = metric_estimate(a, b, cfg);
    Ensemble rev = a;
    std::reverse(rev.surfaces.begin(), rev.surfaces.end());
    CHECK(metric_estimate(rev, b, cfg).d == r.d);
    CHECK(r.d == doctest::Approx(r.levels[0].dn + r.levels[1].dn / 2.0));
    CHECK(truncation_bound(4) < 0.0367);
    CHECK(truncation_bound(4) == doctest::Approx(2.0 * (std::exp(1.0) - 1 - 1 - 0.5 - 1.0 / 6 - 1.0 / 24)));
    const auto j = report_to_json(r);
    CHECK(j["levels"].size() == 2);
    CHECK(j["config"]["variant"] == "inside");
    const Ensemble other = sample_fbs_ensemble(0.6, 8, 2, 3, 5);
    CHECK_THROWS_AS(metric_estimate(a, other, cfg), DimensionError);
}

TEST_CASE("permutation test on distinct laws") {
    const Ensemble a = sample_fbs_ensemble(0.55, 8, 1, 16, 6), b = sample_fbs_ensemble(0.95, 8, 1, 16, 7);
    MetricConfig cfg = small_config(13);
    const PermutationResult p = permutation_test(a, b, 1, cfg, 99);
    CHECK(p.null.size() == 99);
    CHECK(p.p_value > 0.0);
    CHECK(p.p_value <= 1.0);
    const PermutationResult same = permutation_test(a, a, 1, cfg, 19);
    CHECK(same.observed == 0.0);
    CHECK(same.p_value == 1.0);
}

TEST_CASE("separation demo") {
    const GridSurface zero(uniform_knots(8), uniform_knots(8), 1);
    const SeparationResult r = separation_demo(zero, bump(8, 1.0), 4);
    REQUIRE(r.found);
    CHECK(r.a + r.b <= 4);
    CHECK(r.gap > 1e-6);
    CHECK(std::abs(area_moment(bump(8, 1.0), r.a, r.b, r.coord)) > 1e-8);
    CHECK(r.gap == doctest::Approx(std::abs(area_moment(bump(8, 1.0), r.a, r.b, r.coord))).epsilon(1e-10));
    const SeparationResult same = separation_demo(bump(8, 1.0), bump(8, 1.0), 3);
    CHECK_FALSE(same.found);
    CHECK(same.max_gap == 0.0);
    CHECK_THROWS_AS(separation_demo(zero, grid_from_function(8, 8, 1, [](double s, double) { return vec({s}); }), 2),
                    DimensionError);
}

TEST_CASE("separation entry is odd in the surface") {
    const Matrix2Connection w = polynomial_connection(1, 1, 0, 1.0, 1);
    const double p = develop_surface(w, bump(8, 1.0), DevRoute::Exact).H(0, 1);
    const double m = develop_surface(w, bump(8, -1.0), DevRoute::Exact).H(0, 1);
    CHECK(p == doctest::Approx(-m).epsilon(1e-12));
}

TEST_CASE("suite: separation") {
    const SuiteResult r = run_separation(1);
    INFO(r.summary());
    CHECK(r.pass());
}

}
