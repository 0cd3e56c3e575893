#include "msd/char_metric.hpp"

#include "msd/parallel.hpp"
#include "msd/rng.hpp"
#include "msd/surface_dev.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace msd {

void MetricConfig::validate() const {
    if (N_max < 1 || K_conn < 1 || K_ell < 1) {
        throw DimensionError("metric config: levels, connections and functionals must be >= 1");
    }
    if (!(conn_scale > 0.0)) throw DimensionError("metric config: connection scale must be > 0");
}

std::string to_string(MetricVariant v) { return v == MetricVariant::Inside ? "inside" : "literal"; }
std::string to_string(DevRoute r) { return r == DevRoute::Young ? "young" : "exact"; }

double Complex2::abs() const { return std::hypot(re, im); }

GL1Element develop_surface(const Matrix2Connection& w, const GridSurface& x, DevRoute route,
                           YoungRule rule) {
    const GridSurface xb = parametrize(x);
    if (route == DevRoute::Exact) return develop_grid(w, xb).square.E;
    YoungOptions opt;
    opt.rule = rule;
    return develop_young(w, xb, opt);
}

namespace {

// Sums cos/sin over sorted angles so the result does not depend on member order.
Complex2 mean_phase(std::vector<double> th) {
    std::sort(th.begin(), th.end());
    Complex2 out;
    for (double t : th) {
        out.re += std::cos(t);
        out.im += std::sin(t);
    }
    out.re /= static_cast<double>(th.size());
    out.im /= static_cast<double>(th.size());
    return out;
}

}  // namespace

Complex2 char_fn_estimate(const Ensemble& ens, const Matrix2Connection& w, const Mat& ell,
                          DevRoute route, YoungRule rule) {
    ens.validate();
    if (ell.rows() != w.dims.v1() || ell.cols() != w.dims.v0()) {
        throw DimensionError("char_fn_estimate: functional is " + std::to_string(ell.rows()) + "x" +
                             std::to_string(ell.cols()) + ", GL1 elements are " +
                             std::to_string(w.dims.v1()) + "x" + std::to_string(w.dims.v0()));
    }
    std::vector<double> th(ens.surfaces.size());
    parallel_for(th.size(), [&](std::size_t k) {
        try {
            th[k] = frobenius_inner(ell, develop_surface(w, ens.surfaces[k], route, rule).H);
        } catch (const NumericError& e) {
            throw NumericError("ensemble member " + std::to_string(k) + ": " + e.what());
        }
    });
    return mean_phase(th);
}

Mat sample_ell(int n, std::uint64_t seed, std::uint64_t stream) {
    if (n < 1) throw DimensionError("sample_ell: n must be >= 1");
    Rng rng(seed, {0xe11e11ULL, stream});
    Mat g = rng.gauss_matrix(2 * n, 2 * n);
    double nrm = g.norm();
    while (nrm == 0.0) {
        g = rng.gauss_matrix(2 * n, 2 * n);
        nrm = g.norm();
    }
    const double r = std::pow(rng.uniform(), 1.0 / (4.0 * n * n));
    return (r / nrm) * g;
}

Matrix2Connection level_connection(int n, int d_ambient, const MetricConfig& cfg, int c) {
    const std::uint64_t stream = (static_cast<std::uint64_t>(n) << 32) | static_cast<std::uint32_t>(c);
    return sample_restricted(n, d_ambient, cfg.seed, stream, cfg.conn_scale);
}

Mat level_functional(int n, const MetricConfig& cfg, int c, int l) {
    const std::uint64_t stream = (static_cast<std::uint64_t>(n) << 40) |
                                 (static_cast<std::uint64_t>(c) << 20) | static_cast<std::uint64_t>(l);
    return sample_ell(n, cfg.seed, stream);
}

ThetaTable theta_table(const std::vector<const GridSurface*>& surfaces, int n,
                       const MetricConfig& cfg) {
    cfg.validate();
    if (surfaces.empty()) throw DimensionError("theta_table: no surfaces");
    const int d_amb = surfaces.front()->d;
    for (const GridSurface* s : surfaces) {
        if (s->d != d_amb) {
            throw DimensionError("ensembles have different dimensions: " + std::to_string(d_amb) +
                                 " and " + std::to_string(s->d));
        }
    }
    ThetaTable t;
    t.K = cfg.K_conn * cfg.K_ell;
    t.members = static_cast<int>(surfaces.size());
    t.theta.assign(static_cast<std::size_t>(t.K) * t.members, 0.0);
    std::vector<Matrix2Connection> conns;
    std::vector<std::vector<Mat>> ells(cfg.K_conn);
    for (int c = 0; c < cfg.K_conn; ++c) {
        conns.push_back(level_connection(n, d_amb, cfg, c));
        for (int l = 0; l < cfg.K_ell; ++l) ells[c].push_back(level_functional(n, cfg, c, l));
    }
    const std::size_t jobs = static_cast<std::size_t>(cfg.K_conn) * t.members;
    parallel_for(jobs, [&](std::size_t job) {
        const int c = static_cast<int>(job / t.members);
        const int k = static_cast<int>(job % t.members);
        GL1Element h;
        try {
            h = develop_surface(conns[c], *surfaces[k], cfg.route, cfg.rule);
        } catch (const NumericError& e) {
            throw NumericError("level " + std::to_string(n) + ", connection " + std::to_string(c) +
                               ", member " + std::to_string(k) + ": " + e.what());
        }
        for (int l = 0; l < cfg.K_ell; ++l) {
            const int q = c * cfg.K_ell + l;
            t.theta[static_cast<std::size_t>(q) * t.members + k] = frobenius_inner(ells[c][l], h.H);
        }
    });
    return t;
}

LevelEstimate dn_from_table(const ThetaTable& t, const std::vector<int>& a, const std::vector<int>& b,
                            int n, MetricVariant variant) {
    if (a.empty() || b.empty()) throw DimensionError("dn: empty ensemble");
    std::vector<double> vals(t.K);
    for (int q = 0; q < t.K; ++q) {
        std::vector<double> ta, tb;
        for (int k : a) ta.push_back(t.at(q, k));
        for (int k : b) tb.push_back(t.at(q, k));
        if (variant == MetricVariant::Inside) {
            const Complex2 ca = mean_phase(ta), cb = mean_phase(tb);
            vals[q] = std::hypot(ca.re - cb.re, ca.im - cb.im);
        } else {
            std::sort(ta.begin(), ta.end());
            std::sort(tb.begin(), tb.end());
            double s = 0.0;
            for (double x : ta)
                for (double y : tb) s += std::abs(2.0 * std::sin(0.5 * (x - y)));
            vals[q] = s / (static_cast<double>(ta.size()) * tb.size());
        }
    }
    LevelEstimate out;
    out.n = n;
    out.dn = std::accumulate(vals.begin(), vals.end(), 0.0) / t.K;
    if (t.K > 1) {
        double ss = 0.0;
        for (double v : vals) ss += (v - out.dn) * (v - out.dn);
        out.se = std::sqrt(ss / (t.K - 1) / t.K);
    }
    return out;
}

namespace {

struct Pooled {
    std::vector<const GridSurface*> surfaces;
    std::vector<int> a, b;
};

Pooled pool(const Ensemble& ea, const Ensemble& eb) {
    ea.validate();
    eb.validate();
    if (ea.surfaces.front().d != eb.surfaces.front().d) {
        throw DimensionError("ensembles have different dimensions: " +
                             std::to_string(ea.surfaces.front().d) + " and " +
                             std::to_string(eb.surfaces.front().d));
    }
    Pooled p;
    for (const auto& s : ea.surfaces) {
        p.a.push_back(static_cast<int>(p.surfaces.size()));
        p.surfaces.push_back(&s);
    }
    for (const auto& s : eb.surfaces) {
        p.b.push_back(static_cast<int>(p.surfaces.size()));
        p.surfaces.push_back(&s);
    }
    return p;
}

}  // namespace

LevelEstimate dn_estimate(const Ensemble& a, const Ensemble& b, int n, const MetricConfig& cfg) {
    const Pooled p = pool(a, b);
    const ThetaTable t = theta_table(p.surfaces, n, cfg);
    return dn_from_table(t, p.a, p.b, n, cfg.variant);
}

PermutationResult permutation_test(const Ensemble& a, const Ensemble& b, int n,
                                   const MetricConfig& cfg, int permutations) {
    const Pooled p = pool(a, b);
    const ThetaTable t = theta_table(p.surfaces, n, cfg);
    PermutationResult out;
    out.observed = dn_from_table(t, p.a, p.b, n, cfg.variant).dn;
    const int na = static_cast<int>(p.a.size());
    std::vector<int> idx(p.surfaces.size());
    out.null.resize(permutations);
    int exceed = 0;
    for (int r = 0; r < permutations; ++r) {
        std::iota(idx.begin(), idx.end(), 0);
        Rng rng(cfg.seed, {0x9e3a11ULL, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(r)});
        for (int k = static_cast<int>(idx.size()) - 1; k > 0; --k) {
            const int j = std::min(k, static_cast<int>(rng.uniform() * (k + 1)));
            std::swap(idx[k], idx[j]);
        }
        const std::vector<int> pa(idx.begin(), idx.begin() + na), pb(idx.begin() + na, idx.end());
        out.null[r] = dn_from_table(t, pa, pb, n, cfg.variant).dn;
        if (out.null[r] >= out.observed) ++exceed;
    }
    out.p_value = (1.0 + exceed) / (1.0 + permutations);
    return out;
}

double truncation_bound(int N_max) {
    // 2 * sum_{n > N} 1/n!, summed until terms vanish
    double term = 1.0;
    for (int k = 1; k <= N_max; ++k) term /= k;
    double sum = 0.0;
    for (int k = N_max + 1; k < N_max + 40; ++k) {
        term /= k;
        sum += term;
    }
    return 2.0 * sum;
}

MetricReport metric_estimate(const Ensemble& a, const Ensemble& b, const MetricConfig& cfg) {
    cfg.validate();
    const Pooled p = pool(a, b);
    MetricReport r;
    r.cfg = cfg;
    r.label_a = a.label;
    r.label_b = b.label;
    r.count_a = static_cast<int>(a.surfaces.size());
    r.count_b = static_cast<int>(b.surfaces.size());
    double fact = 1.0, var = 0.0;
    for (int n = 1; n <= cfg.N_max; ++n) {
        fact *= n;
        const ThetaTable t = theta_table(p.surfaces, n, cfg);
        const LevelEstimate le = dn_from_table(t, p.a, p.b, n, cfg.variant);
        r.levels.push_back(le);
        r.d += le.dn / fact;
        var += (le.se / fact) * (le.se / fact);
    }
    r.d_se = std::sqrt(var);
    r.truncation = truncation_bound(cfg.N_max);
    return r;
}

nlohmann::ordered_json report_to_json(const MetricReport& r) {
    nlohmann::ordered_json j;
    auto levels = nlohmann::ordered_json::array();
    for (const auto& le : r.levels) levels.push_back({{"n", le.n}, {"dn", le.dn}, {"se", le.se}});
    j["levels"] = levels;
    j["d"] = r.d;
    j["d_se"] = r.d_se;
    j["truncation_bound"] = r.truncation;
    j["ensembles"] = {{"a", {{"label", r.label_a}, {"count", r.count_a}}},
                      {"b", {{"label", r.label_b}, {"count", r.count_b}}}};
    j["config"] = {{"levels", r.cfg.N_max},     {"mc_conn", r.cfg.K_conn},
                   {"mc_ell", r.cfg.K_ell},     {"seed", r.cfg.seed},
                   {"variant", to_string(r.cfg.variant)}, {"route", to_string(r.cfg.route)},
                   {"rule", r.cfg.rule == YoungRule::LeftPoint ? "left" : "corner"},
                   {"conn_scale", r.cfg.conn_scale}};
    return j;
}

namespace {

void check_same_boundary(const GridSurface& x, const GridSurface& y) {
    if (x.d != y.d || x.s != y.s || x.t != y.t) {
        throw DimensionError("separation_demo: surfaces need the same knots and dimension (d=" +
                             std::to_string(x.d) + " vs d=" + std::to_string(y.d) + ")");
    }
    double worst = 0.0;
    for (int i = 0; i < x.ns(); ++i) {
        worst = std::max(worst, (x.at(i, 0) - y.at(i, 0)).norm());
        worst = std::max(worst, (x.at(i, x.nt() - 1) - y.at(i, y.nt() - 1)).norm());
    }
    for (int j = 0; j < x.nt(); ++j) {
        worst = std::max(worst, (x.at(0, j) - y.at(0, j)).norm());
        worst = std::max(worst, (x.at(x.ns() - 1, j) - y.at(y.ns() - 1, j)).norm());
    }
    if (worst > 1e-10) {
        throw DimensionError("separation_demo: boundaries differ by " + std::to_string(worst));
    }
}

}  // namespace

SeparationResult separation_demo(const GridSurface& x, const GridSurface& y, int max_degree) {
    if (max_degree < 0) throw DimensionError("separation_demo: negative degree cap");
    check_same_boundary(x, y);
    SeparationResult out;
    for (int total = 0; total <= max_degree; ++total) {
        for (int a = 0; a <= total; ++a) {
            const int b = total - a;
            for (int coord = 0; coord < x.d; ++coord) {
                const Matrix2Connection w = polynomial_connection(a, b, coord, 1.0, x.d);
                const double hx = develop_surface(w, x, DevRoute::Exact).H(0, b);
                const double hy = develop_surface(w, y, DevRoute::Exact).H(0, b);
                const double gap = std::abs(hx - hy);
                const double tol = 1e-9 * std::max({1.0, std::abs(hx), std::abs(hy)}) + 1e-12;
                ++out.scanned;
                out.max_gap = std::max(out.max_gap, gap);
                if (gap > tol) {
                    out.found = true;
                    out.a = a;
                    out.b = b;
                    out.coord = coord;
                    out.entry_x = hx;
                    out.entry_y = hy;
                    out.gap = gap;
                    out.tol = tol;
                    return out;
                }
            }
        }
    }
    return out;
}

double area_moment(const GridSurface& x, int a, int b, int coord) {
    if (coord < 0 || coord >= x.d) throw DimensionError("area_moment: coordinate out of range");
    const GridSurface xb = parametrize(x);
    double sum = 0.0;
    for (int j = 0; j < xb.cells_t(); ++j) {
        for (int i = 0; i < xb.cells_s(); ++i) {
            const double area = cell_area(xb, i, j)(0, coord + 2);
            double w = 0.0;
            for (int di = 0; di <= 1; ++di)
                for (int dj = 0; dj <= 1; ++dj)
                    w += std::pow(xb.s[i + di], a) * std::pow(xb.t[j + dj], b);
            sum += 0.25 * w * area;
        }
    }
    return sum;
}

}  // namespace msd
