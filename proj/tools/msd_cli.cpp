// msd: sample, develop, verify and compare random surfaces.
// Exit codes: 0 ok, 1 numeric failure or failed check, 2 usage, input or dimension error.

#include "msd/char_metric.hpp"
#include "msd/io.hpp"
#include "msd/parallel.hpp"
#include "msd/path_dev.hpp"
#include "msd/random_surface.hpp"
#include "msd/surface_dev.hpp"
#include "msd/verify.hpp"
#include "msd/young.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdio>
#include <iostream>
#include <string>

namespace {

using nlohmann::ordered_json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void emit(const ordered_json& j, const std::string& out) {
    if (out.empty() || out == "-") std::cout << j.dump(2) << "\n";
    else msd::write_text(out, j.dump(2));
}

int sample_fbs(double hurst, int grid, int dim, int count, std::uint64_t seed, const std::string& dir) {
    if (!(hurst > 0.0 && hurst < 1.0)) throw UsageError("--hurst must lie in (0,1)");
    const msd::Ensemble ens = msd::sample_fbs_ensemble(hurst, grid, dim, count, seed);
    msd::EnsembleManifest meta;
    meta.hurst = hurst;
    meta.grid = grid;
    meta.dim = dim;
    meta.count = count;
    meta.seed = seed;
    msd::write_ensemble(dir, ens, meta);
    std::printf("wrote %d surfaces to %s\n", count, dir.c_str());
    return 0;
}

int develop(const std::string& surface, const std::string& connection, const std::string& route,
            const std::string& rule, const std::string& out) {
    const msd::GridSurface g = msd::read_grid(surface);
    const msd::Matrix2Connection w = msd::read_connection(connection);
    if (g.d != w.d) {
        throw msd::DimensionError("surface dimension " + std::to_string(g.d) +
                                  " does not match connection dimension " + std::to_string(w.d));
    }
    ordered_json j;
    j["route"] = route;
    j["dims"] = {{"n", w.dims.n}, {"m", w.dims.m}, {"p", w.dims.p}};
    j["grid"] = {{"cells_s", g.cells_s()}, {"cells_t", g.cells_t()}, {"dim", g.d}};
    msd::GL1Element h;
    ordered_json warnings = ordered_json::array();
    if (route == "exact") {
        const msd::CellDevelopment cd = msd::develop_grid(w, g);
        h = cd.square.E;
        for (const auto& s : cd.warnings) warnings.push_back(s);
        j["quadrature"] = {{"max_panels", cd.quad.panels},
                           {"error_estimate", cd.quad.error_estimate},
                           {"evaluations", cd.quad.evaluations}};
        j["composite_residual"] = cd.residual;
    } else {
        msd::YoungOptions opt;
        opt.rule = rule == "corner" ? msd::YoungRule::CornerAverage : msd::YoungRule::LeftPoint;
        j["rule"] = rule;
        h = msd::develop_young(w, g, opt);
    }
    const msd::GL0Element loop = msd::develop_pl_pair(w, msd::boundary_loop(g));
    j["H"] = msd::gl1_to_json(h);
    j["boundary"] = msd::gl0_to_json(loop);
    j["stokes_residual"] = msd::stokes_defect(w, g, h);
    j["warnings"] = warnings;
    emit(j, out);
    return 0;
}

int verify(const std::string& suite, std::uint64_t seed) {
    std::vector<msd::SuiteResult> results;
    try {
        results = msd::run_named_suite(suite, seed);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    bool ok = true;
    for (const auto& r : results) {
        std::printf("%s %s: %s\n", r.pass() ? "PASS" : "FAIL", r.name.c_str(), r.summary().c_str());
        ok = ok && r.pass();
    }
    return ok ? 0 : 1;
}

int metric(const std::string& a, const std::string& b, const msd::MetricConfig& cfg, const std::string& out) {
    const msd::Ensemble ea = msd::read_ensemble(a), eb = msd::read_ensemble(b);
    msd::MetricReport r = msd::metric_estimate(ea, eb, cfg);
    emit(msd::report_to_json(r), out);
    return 0;
}

int separate(const std::string& x, const std::string& y, int max_degree, const std::string& out) {
    const msd::GridSurface gx = msd::read_grid(x), gy = msd::read_grid(y);
    const msd::SeparationResult r = msd::separation_demo(gx, gy, max_degree);
    ordered_json j;
    j["found"] = r.found;
    j["max_degree"] = max_degree;
    j["scanned"] = r.scanned;
    j["max_gap"] = r.max_gap;
    if (r.found) {
        j["a"] = r.a;
        j["b"] = r.b;
        j["coord"] = r.coord;
        j["entry_x"] = r.entry_x;
        j["entry_y"] = r.entry_y;
        j["gap"] = r.gap;
        j["tol"] = r.tol;
        j["area_moment_x"] = msd::area_moment(gx, r.a, r.b, r.coord);
        j["area_moment_y"] = msd::area_moment(gy, r.a, r.b, r.coord);
    }
    emit(j, out);
    return r.found ? 0 : 1;
}

ordered_json failure(const char* kind, const std::string& msg) {
    ordered_json j;
    j["error"] = kind;
    j["message"] = msg;
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Matrix surface development of piecewise-linear and random surfaces"};
    app.require_subcommand(1);
    int threads = 0;
    app.add_option("--threads", threads, "worker threads (0 = logical cores)")->check(CLI::NonNegativeNumber);

    std::uint64_t seed = 0;
    std::string out;

    auto* s_fbs = app.add_subcommand("sample-fbs", "sample a fractional Brownian sheet ensemble");
    double hurst = 0.75;
    int grid = 32, dim = 1, count = 16;
    std::string dir;
    s_fbs->add_option("--hurst", hurst, "Hurst parameter")->required();
    s_fbs->add_option("--grid", grid, "cells per side")->required()->check(CLI::PositiveNumber);
    s_fbs->add_option("--dim", dim, "ambient dimension")->check(CLI::PositiveNumber);
    s_fbs->add_option("--count", count, "number of surfaces")->check(CLI::PositiveNumber);
    s_fbs->add_option("--seed", seed, "seed");
    s_fbs->add_option("--out", dir, "output directory")->required();

    auto* s_dev = app.add_subcommand("develop", "develop a grid surface");
    std::string surface, connection, route = "exact", rule = "left";
    s_dev->add_option("--surface", surface, "grid file")->required();
    s_dev->add_option("--connection", connection, "connection JSON")->required();
    s_dev->add_option("--route", route, "exact or young")->check(CLI::IsMember({"exact", "young"}));
    s_dev->add_option("--rule", rule, "young rule: left or corner")->check(CLI::IsMember({"left", "corner"}));
    s_dev->add_option("--out", out, "output JSON (default stdout)");

    auto* s_ver = app.add_subcommand("verify", "run invariant suites");
    std::string suite = "all";
    s_ver->add_option("--suite", suite, "algebra, stokes, fubini, functorial or all")
        ->check(CLI::IsMember({"algebra", "stokes", "fubini", "functorial", "all"}));
    s_ver->add_option("--seed", seed, "seed");

    auto* s_met = app.add_subcommand("metric", "surface development distance between two ensembles");
    std::string dir_a, dir_b, variant = "inside", mroute = "young", mrule = "corner";
    msd::MetricConfig cfg;
    double conn_scale = 1.0;
    s_met->add_option("--a", dir_a, "ensemble directory A")->required();
    s_met->add_option("--b", dir_b, "ensemble directory B")->required();
    s_met->add_option("--levels", cfg.N_max, "truncation level")->check(CLI::PositiveNumber);
    s_met->add_option("--mc-conn", cfg.K_conn, "connections per level")->check(CLI::PositiveNumber);
    s_met->add_option("--mc-ell", cfg.K_ell, "functionals per connection")->check(CLI::PositiveNumber);
    s_met->add_option("--seed", seed, "seed");
    s_met->add_option("--variant", variant, "inside or literal")->check(CLI::IsMember({"inside", "literal"}));
    s_met->add_option("--route", mroute, "young or exact")->check(CLI::IsMember({"young", "exact"}));
    s_met->add_option("--rule", mrule, "young rule: left or corner")->check(CLI::IsMember({"left", "corner"}));
    s_met->add_option("--conn-scale", conn_scale, "connection entry scale")->check(CLI::PositiveNumber);
    s_met->add_option("--out", out, "report JSON (default stdout)");

    auto* s_sep = app.add_subcommand("separate", "find a polynomial connection separating two surfaces");
    std::string fx, fy;
    int max_degree = 4;
    s_sep->add_option("--x", fx, "grid file X")->required();
    s_sep->add_option("--y", fy, "grid file Y")->required();
    s_sep->add_option("--max-degree", max_degree, "largest a+b scanned")->check(CLI::NonNegativeNumber);
    s_sep->add_option("--out", out, "output JSON (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        msd::set_thread_count(threads);
        if (*s_fbs) return sample_fbs(hurst, grid, dim, count, seed, dir);
        if (*s_dev) return develop(surface, connection, route, rule, out);
        if (*s_ver) return verify(suite, seed);
        if (*s_met) {
            cfg.seed = seed;
            cfg.variant = variant == "literal" ? msd::MetricVariant::Literal : msd::MetricVariant::Inside;
            cfg.route = mroute == "exact" ? msd::DevRoute::Exact : msd::DevRoute::Young;
            cfg.rule = mrule == "left" ? msd::YoungRule::LeftPoint : msd::YoungRule::CornerAverage;
            cfg.conn_scale = conn_scale;
            return metric(dir_a, dir_b, cfg, out);
        }
        if (*s_sep) return separate(fx, fy, max_degree, out);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const msd::DimensionError& e) {
        std::cerr << "dimension error: " << e.what() << "\n";
        return 2;
    } catch (const msd::NumericError& e) {
        std::cout << failure("numeric", e.what()).dump(2) << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
