#include "helpers.hpp"

#include "msd/grid.hpp"
#include "msd/rng.hpp"
#include "msd/surface_dev.hpp"
#include "msd/verify.hpp"

#include <filesystem>

using namespace msd;
using namespace msd::test;

TEST_SUITE("grid") {

TEST_CASE("validation") {
    CHECK_THROWS_AS(GridSurface({0.0, 0.5}, {0.0, 1.0}, 1).validate(), DimensionError);
    CHECK_THROWS_AS(GridSurface({0.0, 0.7, 0.7, 1.0}, {0.0, 1.0}, 1).validate(), DimensionError);
    GridSurface g(uniform_knots(2), uniform_knots(2), 1);
    g.values[3] = std::nan("");
    CHECK_THROWS_AS(g.validate(), NumericError);
}

TEST_CASE("refinement keeps the interpolant") {
    Rng rng(1, {7});
    GridSurface g = random_grid(3, 2, 2, rng);
    g.diagonal.assign(6, Diagonal::Main);
    g.diagonal[4] = Diagonal::Anti;
    const GridSurface f = refine_pl(g, 4);
    CHECK(f.cells_s() == 12);
    for (double u : {0.1, 0.37, 0.5, 0.81})
        for (double v : {0.05, 0.4, 0.66, 0.99}) CHECK_MAT_NEAR(f.interpolate(u, v), g.interpolate(u, v), 1e-13);
    const GridSurface back = subsample_pl(f, 4);
    for (std::size_t k = 0; k < g.values.size(); ++k) CHECK(back.values[k] == doctest::Approx(g.values[k]).epsilon(1e-14));
    CHECK(subsample_pl(g, 1).values == g.values);
    CHECK_THROWS_AS(subsample_pl(f, 5), DimensionError);
}

TEST_CASE("parametrize prepends the knots") {
    const GridSurface z(uniform_knots(2), uniform_knots(4), 2);
    const GridSurface p = parametrize(z);
    CHECK(p.d == 4);
    CHECK_MAT_NEAR(p.at(1, 3), vec({0.5, 0.75, 0, 0}), 0.0);
}

TEST_CASE("reflections and concatenation") {
    Rng rng(2, {7});
    const GridSurface g = random_grid(2, 3, 2, rng);
    const GridSurface rs = reflect_s(g), rt = reflect_t(g), tr = transpose(g);
    for (double u : {0.2, 0.6})
        for (double v : {0.3, 0.9}) {
            CHECK_MAT_NEAR(rs.interpolate(u, v), g.interpolate(1 - u, v), 1e-14);
            CHECK_MAT_NEAR(rt.interpolate(u, v), g.interpolate(u, 1 - v), 1e-14);
            CHECK_MAT_NEAR(tr.interpolate(v, u), g.interpolate(u, v), 1e-14);
        }
    const GridSurface fold = hconcat(g, rs);
    CHECK(fold.cells_s() == 4);
    CHECK_MAT_NEAR(fold.interpolate(0.25, 0.5), g.interpolate(0.5, 0.5), 1e-14);
    CHECK_THROWS_AS(hconcat(g, g), DimensionError);
    const GridSurface sub = subgrid(g, 1, 2, 0, 3);
    CHECK(sub.cells_s() == 1);
    CHECK_MAT_NEAR(sub.at(0, 2), g.at(1, 2), 0.0);
}

TEST_CASE("text round trip is exact") {
    Rng rng(3, {7});
    GridSurface g(std::vector<double>{0.0, 0.3, 1.0}, uniform_knots(3), 2);
    for (double& v : g.values) v = rng.gauss() / 3.0;
    g.diagonal.assign(6, Diagonal::Anti);
    const GridSurface r = grid_from_string(grid_to_string(g));
    CHECK(r.values == g.values);
    CHECK(r.s == g.s);
    CHECK(r.t == g.t);
    CHECK(r.diagonal == g.diagonal);
    const std::string path = (std::filesystem::temp_directory_path() / "msd_grid_test.csv").string();
    write_grid(g, path);
    CHECK(read_grid(path).values == g.values);
    CHECK_THROWS_AS(grid_from_string("2,2,1\n0,0\n"), DimensionError);
    CHECK_THROWS_AS(grid_from_string("2,2,1\n0,x\n0,0\n"), DimensionError);
}

TEST_CASE("suite: fold and reflection") {
    const SuiteResult r = run_fold_reflection(2, 4);
    INFO(r.summary());
    CHECK(r.pass());
}

}
