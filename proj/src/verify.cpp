#include "msd/verify.hpp"

#include "msd/char_metric.hpp"
#include "msd/random_surface.hpp"
#include "msd/surface_dev.hpp"
#include "msd/young.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

namespace msd {

Gl1Element random_gl1(const ModuleDims& dims, Rng& rng, double scale) {
    return Gl1Element{dims, scale * rng.gauss_matrix(dims.v1(), dims.v0())};
}

Gl0Element random_gl0(const ModuleDims& dims, Rng& rng, double scale) {
    const int n = dims.n, m = dims.m, p = dims.p;
    const Mat A = scale * rng.gauss_matrix(n, n);
    Mat x = Mat::Zero(n + m, n + m), y = Mat::Zero(n + p, n + p);
    x.topLeftCorner(n, n) = A;
    x.bottomLeftCorner(m, n) = scale * rng.gauss_matrix(m, n);
    x.bottomRightCorner(m, m) = scale * rng.gauss_matrix(m, m);
    y.topLeftCorner(n, n) = A;
    y.topRightCorner(n, p) = scale * rng.gauss_matrix(n, p);
    y.bottomRightCorner(p, p) = scale * rng.gauss_matrix(p, p);
    return Gl0Element::make(dims, x, y);
}

GL1Element random_GL1(const ModuleDims& dims, Rng& rng, double scale) {
    return star_exp(random_gl1(dims, rng, scale));
}

GL0Element random_GL0(const ModuleDims& dims, Rng& rng, double scale) {
    const Gl0Element g = random_gl0(dims, rng, scale);
    return GL0Element::project(dims, expm(g.X), expm(g.Y));
}

Square random_square(const GL0Element& x, const GL0Element& w, Rng& rng, double scale) {
    const GL0Element y = random_GL0(x.dims, rng, scale);
    const GL1Element e = random_GL1(x.dims, rng, scale);
    const GL0Element z = w.inverse() * delta(e).inverse() * x * y;
    return make_square(x, y, z, w, e);
}

GridSurface random_grid(int cells_s, int cells_t, int d, Rng& rng, double scale) {
    GridSurface g(uniform_knots(cells_s), uniform_knots(cells_t), d);
    for (int j = 0; j < g.nt(); ++j)
        for (int i = 0; i < g.ns(); ++i) g.set(i, j, scale * rng.gauss_matrix(d, 1).col(0));
    return g;
}

bool SuiteResult::pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return !checks.empty();
}

std::string SuiteResult::summary() const {
    std::ostringstream os;
    os.precision(3);
    bool first = true;
    for (const auto& c : checks) {
        if (!first) os << "; ";
        first = false;
        os << c.name << " " << c.value << (c.pass ? " <= " : " > ") << c.limit;
    }
    os << " (" << seconds << " s)";
    return os.str();
}

namespace {

using Clock = std::chrono::steady_clock;

class Recorder {
public:
    explicit Recorder(std::string name) : t0_(Clock::now()) { res_.name = std::move(name); }

    // Tracks the worst value of a named check.
    void add(const std::string& name, double value, double limit) {
        for (auto& c : res_.checks) {
            if (c.name == name) {
                if (!(value <= c.value)) c.value = value;  // NaN sticks
                c.pass = c.value <= c.limit;
                return;
            }
        }
        res_.checks.push_back(Check{name, value, limit, value <= limit});
    }

    SuiteResult done() {
        res_.seconds = std::chrono::duration<double>(Clock::now() - t0_).count();
        return res_;
    }

private:
    Clock::time_point t0_;
    SuiteResult res_;
};

const std::vector<ModuleDims>& algebra_dims() {
    static const std::vector<ModuleDims> dims = {{1, 1, 1}, {2, 1, 3}, {0, 2, 2}, {3, 0, 0}};
    return dims;
}

double gl0_dist(const GL0Element& a, const GL0Element& b) {
    return std::max((a.F - b.F).norm(), (a.G - b.G).norm());
}

Matrix2Connection grid_connection(std::uint64_t seed, int k, int d) {
    static const std::vector<ModuleDims> dims = {{1, 1, 1}, {2, 1, 3}, {2, 2, 2}};
    return with_norm_at_most(sample_generic(dims[k % dims.size()], d, stream_seed(seed, {11, static_cast<std::uint64_t>(k)})), 1.0);
}

GridSurface suite_grid(std::uint64_t seed, int k) {
    Rng rng(seed, {12, static_cast<std::uint64_t>(k)});
    return random_grid(4, 4, 3, rng);
}

// A^i and C^i, E^i are polynomials in one matrix each, so the A blocks commute.
Matrix2Connection flat_connection(const ModuleDims& dims, int d, Rng& rng) {
    const int n = dims.n, m = dims.m, p = dims.p;
    const Mat ma = rng.gauss_matrix(n, n) / std::sqrt(std::max(1, n));
    const Mat mc = rng.gauss_matrix(m, m) / std::sqrt(std::max(1, m));
    const Mat me = rng.gauss_matrix(p, p) / std::sqrt(std::max(1, p));
    std::vector<Mat> A(d), B(d), C(d), D(d), E(d), U(Matrix2Connection::pair_count(d));
    for (int i = 0; i < d; ++i) {
        A[i] = 0.4 * (rng.gauss() * Mat::Identity(n, n) + rng.gauss() * ma + rng.gauss() * ma * ma);
        C[i] = 0.4 * (rng.gauss() * Mat::Identity(m, m) + rng.gauss() * mc);
        E[i] = 0.4 * (rng.gauss() * Mat::Identity(p, p) + rng.gauss() * me);
        B[i] = 0.4 * rng.gauss_matrix(m, n);
        D[i] = 0.4 * rng.gauss_matrix(n, p);
    }
    for (auto& u : U) u = 0.4 * rng.gauss_matrix(m, p);
    return build_semiflat(dims, d, A, B, C, D, E, U);
}

}  // namespace

SuiteResult run_algebra_laws(std::uint64_t seed, int instances) {
    Recorder rec("crossed-module laws");
    const double lim = 1e-10;
    for (const ModuleDims& dims : algebra_dims()) {
        Rng rng(seed, {1, static_cast<std::uint64_t>(dims.n * 100 + dims.m * 10 + dims.p)});
        const Mat phi = dims.phi();
        for (int k = 0; k < instances; ++k) {
            const GL1Element h1 = random_GL1(dims, rng), h2 = random_GL1(dims, rng),
                             h3 = random_GL1(dims, rng);
            const GL0Element g1 = random_GL0(dims, rng), g2 = random_GL0(dims, rng);
            const Gl1Element z1 = random_gl1(dims, rng), z2 = random_gl1(dims, rng);
            const Gl0Element x = random_gl0(dims, rng);
            const GL1Element zero = GL1Element::zero(dims);

            rec.add("star associativity",
                    (star_mul(star_mul(h1, h2), h3).H - star_mul(h1, star_mul(h2, h3)).H).norm(), lim);
            rec.add("star unit",
                    std::max((star_mul(h1, zero).H - h1.H).norm(), (star_mul(zero, h1).H - h1.H).norm()),
                    lim);
            const GL1Element inv = star_inv(h1);
            rec.add("star inverse",
                    std::max(star_mul(h1, inv).H.norm(), star_mul(inv, h1).H.norm()), lim);
            rec.add("delta homomorphism", gl0_dist(delta(star_mul(h1, h2)), delta(h1) * delta(h2)), lim);
            rec.add("left action", (act(g1 * g2, h1).H - act(g1, act(g2, h1)).H).norm(), lim);
            rec.add("first Peiffer (group)",
                    gl0_dist(delta(act(g1, h1)), g1 * delta(h1) * g1.inverse()), lim);
            rec.add("second Peiffer (group)",
                    (act(delta(h1), h2).H - star_mul(star_mul(h1, h2), star_inv(h1)).H).norm(), lim);

            const Gl0Element dz = delta(z1);
            const Gl0Element dxz = delta(act(x, z1));
            rec.add("first Peiffer (algebra)",
                    std::max((dxz.X - commutator(x.X, dz.X)).norm(), (dxz.Y - commutator(x.Y, dz.Y)).norm()),
                    lim);
            rec.add("second Peiffer (algebra)",
                    (act(delta(z1), z2).Z - star_commutator(z1, z2).Z).norm(), lim);

            const double s = 2.0 * rng.uniform() - 1.0, t = 2.0 * rng.uniform() - 1.0;
            const GL1Element es = star_exp(Gl1Element{dims, s * z1.Z});
            const GL1Element et = star_exp(Gl1Element{dims, t * z1.Z});
            const GL1Element est = star_exp(Gl1Element{dims, (s + t) * z1.Z});
            rec.add("star_exp one-parameter", (star_mul(es, et).H - est.H).norm(), lim);
            const GL0Element de = delta(star_exp(z1));
            rec.add("delta of star_exp",
                    std::max((de.F - expm(z1.Z * phi)).norm(), (de.G - expm(phi * z1.Z)).norm()), lim);
            // series oracle: sum_k Z (phi Z)^{k-1} / k!
            Mat term = z1.Z, series = z1.Z;
            for (int j = 2; j <= 40; ++j) {
                term = term * phi * z1.Z / j;
                series += term;
            }
            rec.add("star_exp series", (star_exp(z1).H - series).norm(), lim);
        }
    }
    return rec.done();
}

SuiteResult run_double_group_laws(std::uint64_t seed, int instances) {
    Recorder rec("double-group laws");
    const double lim = 1e-8;
    const auto& all = algebra_dims();
    for (int k = 0; k < instances; ++k) {
        const ModuleDims& dims = all[k % all.size()];
        Rng rng(seed, {2, static_cast<std::uint64_t>(k)});
        // 2x2 array: s1 s2 bottom, s3 s4 top
        const Square s1 = random_square(random_GL0(dims, rng), random_GL0(dims, rng), rng);
        const Square s2 = random_square(random_GL0(dims, rng), s1.y, rng);
        const Square s3 = random_square(s1.z, random_GL0(dims, rng), rng);
        const Square s4 = random_square(s2.z, s3.y, rng);
        const Square lhs = vcompose(hcompose(s1, s2), hcompose(s3, s4));
        const Square rhs = hcompose(vcompose(s1, s3), vcompose(s2, s4));
        rec.add("interchange", square_distance(lhs, rhs), lim);
        rec.add("composite boundary law", std::max(lhs.residual, rhs.residual), lim);

        rec.add("horizontal unit",
                std::max(square_distance(hcompose(h_identity(s1.w), s1), s1),
                         square_distance(hcompose(s1, h_identity(s1.y)), s1)),
                lim);
        rec.add("vertical unit",
                std::max(square_distance(vcompose(v_identity(s1.x), s1), s1),
                         square_distance(vcompose(s1, v_identity(s1.z)), s1)),
                lim);
        rec.add("horizontal inverse",
                std::max(square_distance(hcompose(s1, h_inverse(s1)), h_identity(s1.w)),
                         square_distance(hcompose(h_inverse(s1), s1), h_identity(s1.y))),
                lim);
        rec.add("vertical inverse",
                std::max(square_distance(vcompose(s1, v_inverse(s1)), v_identity(s1.x)),
                         square_distance(vcompose(v_inverse(s1), s1), v_identity(s1.z))),
                lim);
        rec.add("inverse involution",
                std::max(square_distance(h_inverse(h_inverse(s1)), s1),
                         square_distance(v_inverse(v_inverse(s1)), s1)),
                lim);

        const Square s5 = random_square(s2.x.inverse() * s2.x * random_GL0(dims, rng), s2.y, rng);
        rec.add("horizontal associativity",
                square_distance(hcompose(hcompose(s1, s2), s5), hcompose(s1, hcompose(s2, s5))), lim);
        const Square s6 = random_square(s3.z, random_GL0(dims, rng), rng);
        rec.add("vertical associativity",
                square_distance(vcompose(vcompose(s1, s3), s6), vcompose(s1, vcompose(s3, s6))), lim);
    }
    return rec.done();
}

SuiteResult run_grid_stokes(std::uint64_t seed, int grids) {
    Recorder rec("grid Stokes");
    for (int k = 0; k < grids; ++k) {
        const Matrix2Connection w = grid_connection(seed, k, 3);
        const GridSurface g = suite_grid(seed, k);
        const CellDevelopment cd = develop_grid(w, g);
        rec.add("stokes defect", stokes_defect(w, g, cd.square.E), 1e-6);
        rec.add("boundary residual", cd.residual, kSquareTol * 4);
    }
    return rec.done();
}

SuiteResult run_fubini(std::uint64_t seed, int grids, int refine) {
    Recorder rec("Fubini");
    YoungOptions yo;
    yo.rule = YoungRule::CornerAverage;
    for (int k = 0; k < grids; ++k) {
        const Matrix2Connection w = grid_connection(seed, k, 3);
        const GridSurface g = suite_grid(seed, k);
        const GridSurface fine = refine_pl(g, refine);
        const GL1Element h = develop_young(w, fine, yo);
        const GL1Element hh = develop_young_alt(w, fine, yo);
        rec.add("young H vs H-hat", (h.H - hh.H).norm(), 1e-6);
        GridOptions cols;
        cols.order = ComposeOrder::ColumnsFirst;
        const GL1Element er = develop_grid(w, g).square.E;
        const GL1Element ec = develop_grid(w, g, cols).square.E;
        rec.add("exact rows vs columns", (er.H - ec.H).norm(), 1e-6);
    }
    return rec.done();
}

SuiteResult run_linear_oracle(std::uint64_t seed, int cases, int cells) {
    Recorder rec("linear oracle");
    YoungOptions yo;
    yo.rule = YoungRule::CornerAverage;
    static const std::vector<ModuleDims> dims = {{1, 1, 1}, {2, 1, 3}, {2, 2, 2}, {0, 2, 2}};
    for (int k = 0; k < cases; ++k) {
        Rng rng(seed, {5, static_cast<std::uint64_t>(k)});
        const ModuleDims& dm = dims[k % dims.size()];
        const Matrix2Connection w =
            with_norm_at_most(sample_generic(dm, 3, stream_seed(seed, {6, static_cast<std::uint64_t>(k)})), 1.0);
        const Vec a = rng.gauss_matrix(3, 1).col(0), b = rng.gauss_matrix(3, 1).col(0);
        const GL1Element exact = develop_linear_square(w, a, b);
        const GridSurface g = grid_from_function(cells, cells, 3, [&](double s, double t) -> Vec {
            return a * s + b * t;
        });
        const GL1Element young = develop_young(w, g, yo);
        rec.add("young vs exact (relative)",
                (young.H - exact.H).norm() / std::max(exact.H.norm(), 1e-300), 1e-4);

        const Matrix2Connection wf = flat_connection(dm, 3, rng);
        rec.add("closed form vs quadrature",
                (develop_linear_square_flat(wf, a, b).H - develop_linear_square(wf, a, b).H).norm(), 1e-8);
    }
    return rec.done();
}

SuiteResult run_trivial_module(std::uint64_t seed, int cells) {
    Recorder rec("trivial module");
    for (int k = 0; k < cells; ++k) {
        Rng rng(seed, {7, static_cast<std::uint64_t>(k)});
        const int n = 1 + k % 3;
        std::vector<Mat> A(3);
        for (auto& x : A) x = 0.5 * rng.gauss_matrix(n, n);
        const Matrix2Connection w = trivial_curvature_connection(A);
        const Vec a = rng.gauss_matrix(3, 1).col(0), b = rng.gauss_matrix(3, 1).col(0),
                  c = rng.gauss_matrix(3, 1).col(0);
        const PLPath loop{{Vec::Zero(3), a, c, b, Vec::Zero(3)}};
        const Mat f = develop_pl_pair(w, loop).F;
        const Mat I = Mat::Identity(n, n);
        rec.add("basic square", (develop_basic_square(w, a, b, c).H + I - f).norm(), 1e-8);
        rec.add("row flow (main)", (develop_cell_rows(w, a, b, c, Diagonal::Main).H + I - f).norm(), 1e-8);
        const Mat f_lin = develop_pl_pair(w, PLPath{{Vec::Zero(3), a, Vec(a + b), b, Vec::Zero(3)}}).F;
        rec.add("linear square", (develop_linear_square(w, a, b).H + I - f_lin).norm(), 1e-8);
        GridSurface g = random_grid(3, 3, 3, rng, 0.5);
        g.diagonal.assign(9, Diagonal::Main);
        g.diagonal[4] = Diagonal::Anti;
        const Mat fg = develop_pl_pair(w, boundary_loop(g)).F;
        rec.add("grid", (develop_grid(w, g).square.E.H + I - fg).norm(), 1e-8);
        double gamma_defect = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                gamma_defect = std::max(gamma_defect, (w.gamma(i, j) - commutator(A[i], A[j])).norm());
        rec.add("gamma equals curvature", gamma_defect, 1e-12);
    }
    return rec.done();
}

SuiteResult run_fold_reflection(std::uint64_t seed, int grids) {
    Recorder rec("fold and reflection");
    for (int k = 0; k < grids; ++k) {
        const Matrix2Connection w = grid_connection(seed, 100 + k, 3);
        const GridSurface g = suite_grid(seed, 100 + k);
        const GL1Element fold = develop_grid(w, hconcat(g, reflect_s(g))).square.E;
        rec.add("fold interior norm", fold.H.norm(), 1e-6);
        const GL1Element vfold = develop_grid(w, vconcat(g, reflect_t(g))).square.E;
        rec.add("vertical fold interior norm", vfold.H.norm(), 1e-6);
        const GL1Element h = develop_grid(w, g).square.E;
        const GL1Element ht = develop_grid(w, transpose(g)).square.E;
        rec.add("diagonal reflection vs star inverse", (ht.H - star_inv(h).H).norm(), 1e-6);
    }
    return rec.done();
}

SuiteResult run_young_functorial(std::uint64_t seed, int grids, int refine) {
    Recorder rec("young functoriality");
    YoungOptions yo;
    yo.rule = YoungRule::CornerAverage;
    for (int k = 0; k < grids; ++k) {
        const Matrix2Connection w = grid_connection(seed, 200 + k, 3);
        const GridSurface g = refine_pl(suite_grid(seed, 200 + k), refine);
        const int mid = g.cells_s() / 2;
        const GridSurface left = subgrid(g, 0, mid, 0, g.cells_t());
        const GridSurface right = subgrid(g, mid, g.cells_s(), 0, g.cells_t());
        const GL1Element h = develop_young(w, g, yo);
        const GL1Element hl = develop_young(w, left, yo), hr = develop_young(w, right, yo);
        const GL0Element bottom = develop_pl_pair(w, row_path(left, 0, 0, left.cells_s()));
        const GL1Element composed = star_mul(act(bottom, hr), hl);
        rec.add("horizontal split", (h.H - composed.H).norm(), 1e-5);
        const GL0Element loop = develop_pl_pair(w, boundary_loop(g));
        const GL0Element dh = delta(h);
        rec.add("young Stokes", std::max((dh.F - loop.F).norm(), (dh.G - loop.G).norm()), 1e-5);
    }
    return rec.done();
}

SuiteResult run_separation(std::uint64_t seed) {
    Recorder rec("separation");
    (void)seed;
    const int N = 8;
    const GridSurface zero(uniform_knots(N), uniform_knots(N), 1);
    const GridSurface bump = grid_from_function(N, N, 1, [](double s, double t) {
        Vec v(1);
        v[0] = std::sin(M_PI * s) * std::sin(M_PI * t);
        return v;
    });
    const SeparationResult r = separation_demo(zero, bump, 4);
    rec.add("separator found at degree <= 4 (1 = no)", r.found && r.a + r.b <= 4 ? 0.0 : 1.0, 0.0);
    rec.add("development gap (negated)", -r.gap, -1e-6);
    if (r.found) {
        const double mom = area_moment(bump, r.a, r.b, r.coord);
        rec.add("area moment magnitude (negated)", -std::abs(mom), -1e-8);
    }
    const SeparationResult same = separation_demo(bump, bump, 4);
    rec.add("identical surfaces: separator found (1 = yes)", same.found ? 1.0 : 0.0, 0.0);
    rec.add("identical surfaces: max gap", same.max_gap, 0.0);
    GridSurface neg = bump;
    for (double& v : neg.values) v = -v;
    const Matrix2Connection w = polynomial_connection(0, 1, 0, 1.0, 1);
    const double ep = develop_surface(w, bump, DevRoute::Exact).H(0, 1);
    const double en = develop_surface(w, neg, DevRoute::Exact).H(0, 1);
    rec.add("sign flip", std::abs(ep + en), 1e-12 * std::max(1.0, std::abs(ep)));
    return rec.done();
}

SuiteResult run_fbs_statistics(std::uint64_t seed, int samples, int N) {
    Recorder rec("fBs statistics");
    const int q1 = N / 4, q3 = 3 * N / 4;
    for (double h : {0.6, 0.75, 0.9}) {
        const Ensemble ens = sample_fbs_ensemble(h, N, 1, samples, stream_seed(seed, {9, static_cast<std::uint64_t>(h * 100)}));
        double axis = 0.0;
        std::vector<double> prod(samples), v1(samples), v3(samples);
        for (int k = 0; k < samples; ++k) {
            const GridSurface& g = ens.surfaces[k];
            for (int i = 0; i < g.ns(); ++i) axis = std::max({axis, std::abs(g.at(i, 0, 0)), std::abs(g.at(0, i, 0))});
            const double x = g.at(q1, q1, 0), y = g.at(q3, q3, 0);
            prod[k] = x * y;
            v1[k] = x * x;
            v3[k] = y * y;
        }
        rec.add("axis values", axis, 0.0);
        auto zscore = [&](const std::vector<double>& v, double target) {
            double mean = 0.0, ss = 0.0;
            for (double x : v) mean += x;
            mean /= v.size();
            for (double x : v) ss += (x - mean) * (x - mean);
            const double se = std::sqrt(ss / (v.size() - 1) / v.size());
            return std::abs(mean - target) / se;
        };
        const double u1 = static_cast<double>(q1) / N, u3 = static_cast<double>(q3) / N;
        rec.add("cov((1/4,1/4),(3/4,3/4)) z-score", zscore(prod, fbm_cov(h, u1, u3) * fbm_cov(h, u1, u3)), 4.0);
        rec.add("var(1/4,1/4) z-score", zscore(v1, fbm_cov(h, u1, u1) * fbm_cov(h, u1, u1)), 4.0);
        rec.add("var(3/4,3/4) z-score", zscore(v3, fbm_cov(h, u3, u3) * fbm_cov(h, u3, u3)), 4.0);
        const double p = 1.0 / h + 0.1;
        for (int k = 0; k < 4; ++k) {
            const double fine = pvar_estimate(ens.surfaces[k], p);
            const double coarse = pvar_estimate(subsample_pl(ens.surfaces[k], 2), p);
            rec.add("p-variation finite (1 = no)", std::isfinite(fine) && fine > 0 ? 0.0 : 1.0, 0.0);
            rec.add("p-variation refinement change", std::abs(fine / coarse - 1.0), 0.2);
        }
    }
    return rec.done();
}

SuiteResult run_metric_behaviour(std::uint64_t seed, int samples, int N, int permutations) {
    Recorder rec("metric behaviour");
    const Ensemble a = sample_fbs_ensemble(0.6, N, 1, samples, stream_seed(seed, {10, 1}));
    const Ensemble b = sample_fbs_ensemble(0.9, N, 1, samples, stream_seed(seed, {10, 2}));
    const Ensemble c = sample_fbs_ensemble(0.75, N, 1, samples, stream_seed(seed, {10, 3}));
    MetricConfig cfg;
    cfg.seed = stream_seed(seed, {10, 4});

    const MetricReport aa = metric_estimate(a, a, cfg);
    rec.add("d(A,A)", aa.d, 0.0);
    const MetricReport ab = metric_estimate(a, b, cfg), ba = metric_estimate(b, a, cfg);
    rec.add("|d(A,B) - d(B,A)|", std::abs(ab.d - ba.d), 0.0);
    const MetricReport ac = metric_estimate(a, c, cfg), cb = metric_estimate(c, b, cfg);
    rec.add("triangle excess over MC error", ab.d - ac.d - cb.d - (ab.d_se + ac.d_se + cb.d_se), 0.0);

    Ensemble shuffled = a;
    std::reverse(shuffled.surfaces.begin(), shuffled.surfaces.end());
    rec.add("member order change", std::abs(metric_estimate(shuffled, b, cfg).d - ab.d), 0.0);

    const PermutationResult perm = permutation_test(a, b, 2, cfg, permutations);
    rec.add("permutation p-value (n=2)", perm.p_value, 0.05);
    rec.add("truncation bound (N_max=4)", truncation_bound(4), 0.0367);
    return rec.done();
}

std::vector<SuiteResult> run_named_suite(const std::string& name, std::uint64_t seed) {
    std::vector<SuiteResult> out;
    const bool all = name == "all";
    if (!all && name != "algebra" && name != "stokes" && name != "fubini" && name != "functorial")
        throw std::invalid_argument("unknown suite '" + name +
                                    "' (expected algebra, stokes, fubini, functorial or all)");
    if (all || name == "algebra") {
        out.push_back(run_algebra_laws(seed));
        out.push_back(run_double_group_laws(seed));
    }
    if (all || name == "stokes") {
        out.push_back(run_grid_stokes(seed));
        out.push_back(run_trivial_module(seed));
    }
    if (all || name == "fubini") out.push_back(run_fubini(seed));
    if (all || name == "functorial") {
        out.push_back(run_fold_reflection(seed));
        out.push_back(run_young_functorial(seed));
        out.push_back(run_linear_oracle(seed));
    }
    if (all) out.push_back(run_separation(seed));
    return out;
}

}  // namespace msd
