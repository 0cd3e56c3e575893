#include "msd/surface_dev.hpp"

#include "msd/parallel.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <sstream>

namespace msd {

void QuadInfo::merge(const QuadInfo& o) {
    panels = std::max(panels, o.panels);
    error_estimate += o.error_estimate;
    evaluations += o.evaluations;
}

namespace {

using MatFn = std::function<Mat(double)>;

constexpr std::array<double, 4> kGlX = {0.1834346424956498, 0.5255324099163290,
                                        0.7966664774136267, 0.9602898564975363};
constexpr std::array<double, 4> kGlW = {0.3626837833783620, 0.3137066458778873,
                                        0.2223810344533745, 0.1012285362903763};

Mat gauss_legendre(const MatFn& f, int panels, long& evals) {
    Mat sum;
    const double h = 1.0 / panels;
    for (int k = 0; k < panels; ++k) {
        const double mid = (k + 0.5) * h;
        for (int q = 0; q < 4; ++q) {
            for (int sgn : {-1, 1}) {
                Mat v = f(mid + sgn * 0.5 * h * kGlX[q]) * (0.5 * h * kGlW[q]);
                if (sum.size() == 0) sum = std::move(v);
                else sum += v;
            }
        }
    }
    evals += 8L * panels;
    return sum;
}

// int_0^1 f by panel doubling.
Mat integrate(const MatFn& f, const QuadOptions& q, QuadInfo* info) {
    long evals = 0;
    int panels = 1;
    Mat prev = gauss_legendre(f, panels, evals);
    double diff = 0.0;
    while (panels < q.max_panels) {
        panels *= 2;
        Mat cur = gauss_legendre(f, panels, evals);
        diff = (cur - prev).norm();
        prev = std::move(cur);
        if (diff <= q.tol * std::max(1.0, prev.norm())) {
            if (info) info->merge(QuadInfo{panels, diff, evals});
            return prev;
        }
    }
    std::ostringstream msg;
    msg << "interior quadrature did not converge at " << panels << " panels: estimate norm "
        << prev.norm() << ", last change " << diff;
    throw NumericError(msg.str());
}

// Interior block of H from the row flow dH/dt = (I + H phi) Q_t, given F_t and G_1.
GL1Element solve_flow(const ModuleDims& dims, const MatFn& Q, const MatFn& Ft, const Mat& F1,
                      const Mat& G1, const QuadOptions& q, QuadInfo* info) {
    const int n = dims.n, m = dims.m, p = dims.p;
    Mat U = Mat::Zero(m, p);
    if (m > 0 && p > 0) {
        MatFn integrand = [&](double t) -> Mat {
            const Mat qt = Q(t);
            Mat out = qt.bottomRightCorner(m, p);
            if (n > 0) out += Ft(t).bottomLeftCorner(m, n) * qt.topRightCorner(n, p);
            return out;
        };
        U = integrate(integrand, q, info);
    }
    const Mat R = F1.topLeftCorner(n, n) - Mat::Identity(n, n);
    const Mat T = F1.bottomLeftCorner(m, n);
    const Mat S = G1.topRightCorner(n, p);
    return GL1Element::make(dims, join_blocks(dims, R, S, T, U));
}

struct Gens {
    Mat al, be;
};

Gens gens(const Matrix2Connection& w, const Vec& v) { return {w.alpha_of(v), w.beta_of(v)}; }

Mat gam(const Matrix2Connection& w, const Vec& u, const Vec& v) { return eval_gamma(w, u, v).Z; }

void check_vec(const Matrix2Connection& w, const Vec& v, const char* where) {
    if (v.size() != w.d) {
        throw DimensionError(std::string(where) + ": vector length " + std::to_string(v.size()) +
                             " vs connection dimension " + std::to_string(w.d));
    }
}

// Generic boundary holonomy builder: product of exp(c_k(t) M_k).
using Coef = std::function<double(double)>;
struct Factor {
    const Mat* m;
    Coef c;
};

Mat product(const std::vector<Factor>& fs, double t, int size) {
    Mat out = Mat::Identity(size, size);
    for (const Factor& f : fs) {
        const double c = f.c(t);
        if (c != 0.0) out = out * expm(c * *f.m);
    }
    return out;
}

Coef one() {
    return [](double) { return 1.0; };
}
Coef minus_one() {
    return [](double) { return -1.0; };
}
Coef lin(double k) {
    return [k](double t) { return k * t; };
}
Coef rest(double k) {
    return [k](double t) { return k * (1.0 - t); };
}

}  // namespace

GL1Element develop_linear_square(const Matrix2Connection& w, const Vec& a, const Vec& b,
                                 const QuadOptions& q, QuadInfo* info) {
    check_vec(w, a, "develop_linear_square");
    check_vec(w, b, "develop_linear_square");
    const Gens ga = gens(w, a), gb = gens(w, b);
    const Mat J = integral_via_expm(ga.al, gam(w, a, b), ga.be, 1.0);
    MatFn Q = [&](double t) -> Mat { return expm(t * gb.al) * J * expm(-t * gb.be); };
    const std::vector<Factor> fa = {{&ga.al, one()}, {&gb.al, lin(1)}, {&ga.al, minus_one()},
                                    {&gb.al, lin(-1)}};
    const std::vector<Factor> fb = {{&ga.be, one()}, {&gb.be, lin(1)}, {&ga.be, minus_one()},
                                    {&gb.be, lin(-1)}};
    const int v1 = w.dims.v1(), v0 = w.dims.v0();
    MatFn Ft = [&](double t) { return product(fa, t, v1); };
    return solve_flow(w.dims, Q, Ft, Ft(1.0), product(fb, 1.0, v0), q, info);
}

GL1Element develop_linear_square_flat(const Matrix2Connection& w, const Vec& a, const Vec& b) {
    check_vec(w, a, "develop_linear_square_flat");
    check_vec(w, b, "develop_linear_square_flat");
    const ModuleDims& dims = w.dims;
    const int n = dims.n, v1 = dims.v1(), v0 = dims.v0();
    const Gens ga = gens(w, a), gb = gens(w, b);
    const Mat Aa = ga.al.topLeftCorner(n, n), Ab = gb.al.topLeftCorner(n, n);
    const double flat = commutator(Aa, Ab).norm();
    if (flat > 1e-10 * (1.0 + Aa.norm() * Ab.norm())) {
        throw NumericError("develop_linear_square_flat: A blocks do not commute (defect " +
                           std::to_string(flat) + ")");
    }
    const Mat phi = dims.phi();
    const Mat J = integral_via_expm(ga.al, gam(w, a, b), ga.be, 1.0);
    const Mat omega1 = integral_via_expm(gb.al, J, gb.be, 1.0);

    // I1 = int_{t1<t2} Q_{t1} phi Q_{t2}
    Mat m1 = Mat::Zero(v1 + 2 * v0, v1 + 2 * v0);
    m1.block(0, 0, v1, v1) = gb.al;
    m1.block(0, v1, v1, v0) = J;
    m1.block(v1, v1, v0, v0) = gb.be;
    m1.block(v1, v1 + v0, v0, v0) = phi * J;
    m1.block(v1 + v0, v1 + v0, v0, v0) = gb.be;
    const Mat I1 = expm(m1).block(0, v1 + v0, v1, v0) * expm(-gb.be);

    // I2 = int_{t1<t2} Q_{t2} phi Q_{t1}
    Mat m2 = Mat::Zero(2 * v1 + v0, 2 * v1 + v0);
    m2.block(0, 0, v1, v1) = -gb.al;
    m2.block(0, v1, v1, v1) = J * phi;
    m2.block(v1, v1, v1, v1) = -gb.al;
    m2.block(v1, 2 * v1, v1, v0) = J;
    m2.block(2 * v1, 2 * v1, v0, v0) = -gb.be;
    const Mat I2 = expm(gb.al) * expm(m2).block(0, 2 * v1, v1, v0);

    return GL1Element::make(dims, omega1 + 0.5 * (I1 - I2) + 0.5 * omega1 * phi * omega1);
}

namespace {

// Upper-left half: X = bb t + cc min(s, t).
GL1Element develop_half_upper(const Matrix2Connection& w, const Vec& bb, const Vec& cc,
                              const QuadOptions& q, QuadInfo* info) {
    const Gens gbb = gens(w, bb), gcc = gens(w, cc), gsum = gens(w, bb + cc);
    const Mat g = gam(w, cc, bb);
    MatFn Q = [&](double t) -> Mat {
        return expm(t * gbb.al) * integral_via_expm(gcc.al, g, gcc.be, t) * expm(-t * gbb.be);
    };
    const std::vector<Factor> fa = {{&gsum.al, lin(1)}, {&gcc.al, lin(-1)}, {&gbb.al, lin(-1)}};
    const std::vector<Factor> fb = {{&gsum.be, lin(1)}, {&gcc.be, lin(-1)}, {&gbb.be, lin(-1)}};
    MatFn Ft = [&](double t) { return product(fa, t, w.dims.v1()); };
    return solve_flow(w.dims, Q, Ft, Ft(1.0), product(fb, 1.0, w.dims.v0()), q, info);
}

// Lower-right half: Y = t c + (s - t)_+ a.
GL1Element develop_half_lower(const Matrix2Connection& w, const Vec& a, const Vec& c,
                              const QuadOptions& q, QuadInfo* info) {
    const Vec cp = c - a;
    const Gens ga = gens(w, a), gc = gens(w, c), gcp = gens(w, cp);
    const Mat g = gam(w, a, cp);
    MatFn Q = [&](double t) -> Mat {
        return expm(t * gc.al) * integral_via_expm(ga.al, g, ga.be, 1.0 - t) * expm(-t * gc.be);
    };
    const std::vector<Factor> fa = {{&ga.al, one()}, {&gcp.al, lin(1)}, {&ga.al, rest(-1)},
                                    {&gc.al, lin(-1)}};
    const std::vector<Factor> fb = {{&ga.be, one()}, {&gcp.be, lin(1)}, {&ga.be, rest(-1)},
                                    {&gc.be, lin(-1)}};
    MatFn Ft = [&](double t) { return product(fa, t, w.dims.v1()); };
    return solve_flow(w.dims, Q, Ft, Ft(1.0), product(fb, 1.0, w.dims.v0()), q, info);
}

}  // namespace

GL1Element develop_basic_square(const Matrix2Connection& w, const Vec& a, const Vec& b,
                                const Vec& c, const QuadOptions& q, QuadInfo* info) {
    check_vec(w, a, "develop_basic_square");
    check_vec(w, b, "develop_basic_square");
    check_vec(w, c, "develop_basic_square");
    const GL1Element hx = develop_half_upper(w, b, c - b, q, info);
    const GL1Element hy = develop_half_lower(w, a, c, q, info);
    return star_mul(hy, hx);
}

GL1Element develop_cell_rows(const Matrix2Connection& w, const Vec& a, const Vec& b, const Vec& c,
                             Diagonal diag, const QuadOptions& q, QuadInfo* info) {
    check_vec(w, a, "develop_cell_rows");
    check_vec(w, b, "develop_cell_rows");
    check_vec(w, c, "develop_cell_rows");
    const int v1 = w.dims.v1(), v0 = w.dims.v0();
    const Gens ga = gens(w, a), gb = gens(w, b);
    if (diag == Diagonal::Main) {
        const Vec cc = c - b, cp = c - a;
        const Gens gcc = gens(w, cc), gcp = gens(w, cp);
        const Mat g1 = gam(w, cc, b), g2 = gam(w, a, cp);
        MatFn Q = [&](double t) -> Mat {
            Mat inner = integral_via_expm(gcc.al, g1, gcc.be, t) +
                        expm(t * gcc.al) * integral_via_expm(ga.al, g2, ga.be, 1.0 - t) *
                            expm(-t * gcc.be);
            return expm(t * gb.al) * inner * expm(-t * gb.be);
        };
        const std::vector<Factor> fa = {{&ga.al, one()}, {&gcp.al, lin(1)}, {&ga.al, rest(-1)},
                                        {&gcc.al, lin(-1)}, {&gb.al, lin(-1)}};
        const std::vector<Factor> fb = {{&ga.be, one()}, {&gcp.be, lin(1)}, {&ga.be, rest(-1)},
                                        {&gcc.be, lin(-1)}, {&gb.be, lin(-1)}};
        MatFn Ft = [&](double t) { return product(fa, t, v1); };
        return solve_flow(w.dims, Q, Ft, Ft(1.0), product(fb, 1.0, v0), q, info);
    }
    const Vec u = c - b, v = c - a;
    const Gens gu = gens(w, u), gv = gens(w, v);
    const Mat g1 = gam(w, a, b), g2 = gam(w, u, v);
    MatFn Q = [&](double t) -> Mat {
        Mat inner = integral_via_expm(ga.al, g1, ga.be, 1.0 - t) +
                    expm((1.0 - t) * ga.al) * integral_via_expm(gu.al, g2, gu.be, t) *
                        expm(-(1.0 - t) * ga.be);
        return expm(t * gb.al) * inner * expm(-t * gb.be);
    };
    const std::vector<Factor> fa = {{&ga.al, one()}, {&gv.al, lin(1)}, {&gu.al, lin(-1)},
                                    {&ga.al, rest(-1)}, {&gb.al, lin(-1)}};
    const std::vector<Factor> fb = {{&ga.be, one()}, {&gv.be, lin(1)}, {&gu.be, lin(-1)},
                                    {&ga.be, rest(-1)}, {&gb.be, lin(-1)}};
    MatFn Ft = [&](double t) { return product(fa, t, v1); };
    return solve_flow(w.dims, Q, Ft, Ft(1.0), product(fb, 1.0, v0), q, info);
}

Square develop_cell_square(const Matrix2Connection& w, const GridSurface& g, int i, int j,
                           const GridOptions& opt, SegmentCache* cache, QuadInfo* info) {
    const Vec p00 = g.at(i, j);
    const Vec a = g.at(i + 1, j) - p00, b = g.at(i, j + 1) - p00, c = g.at(i + 1, j + 1) - p00;
    auto seg = [&](const Vec& dx) { return cache ? cache->get(dx) : develop_segment(w, dx); };
    const GL0Element x = seg(a), y = seg(c - a), z = seg(c - b), wl = seg(b);
    const Diagonal diag = g.cell_diagonal(i, j);
    GL1Element e = (diag == Diagonal::Main && opt.method == CellMethod::HalfSquares)
                       ? develop_basic_square(w, a, b, c, opt.quad, info)
                       : develop_cell_rows(w, a, b, c, diag, opt.quad, info);
    return make_square(x, y, z, wl, e, opt.tol);
}

CellDevelopment develop_grid(const Matrix2Connection& w, const GridSurface& g,
                             const GridOptions& opt) {
    g.validate();
    if (g.d != w.d) {
        throw DimensionError("develop_grid: surface dimension " + std::to_string(g.d) +
                             " vs connection dimension " + std::to_string(w.d));
    }
    CellDevelopment out;
    const int cs = g.cells_s(), ct = g.cells_t();
    SegmentCache cache(w);
    if (cs < 1 || ct < 1) {
        // degenerate grid: identity square on the single boundary path
        const GL0Element e = GL0Element::identity(w.dims);
        if (cs >= 1) {
            const GL0Element x = develop_pl_pair(w, row_path(g, 0, 0, cs), &cache);
            out.square = v_identity(x);
        } else if (ct >= 1) {
            const GL0Element y = develop_pl_pair(w, column_path(g, 0, 0, ct), &cache);
            out.square = h_identity(y);
        } else {
            out.square = h_identity(e);
        }
        return out;
    }

    std::vector<Square> cells(static_cast<std::size_t>(cs) * ct);
    std::vector<QuadInfo> infos(cells.size());
    parallel_for(cells.size(), [&](std::size_t k) {
        const int i = static_cast<int>(k % cs), j = static_cast<int>(k / cs);
        cells[k] = develop_cell_square(w, g, i, j, opt, &cache, &infos[k]);
    });
    for (const QuadInfo& qi : infos) out.quad.merge(qi);
    auto cell = [&](int i, int j) -> const Square& { return cells[static_cast<std::size_t>(j) * cs + i]; };

    if (opt.order == ComposeOrder::RowsFirst) {
        Square total;
        for (int j = 0; j < ct; ++j) {
            Square row = cell(0, j);
            for (int i = 1; i < cs; ++i) row = hcompose(row, cell(i, j), opt.tol);
            total = (j == 0) ? row : vcompose(total, row, opt.tol);
        }
        out.square = std::move(total);
    } else {
        Square total;
        for (int i = 0; i < cs; ++i) {
            Square col = cell(i, 0);
            for (int j = 1; j < ct; ++j) col = vcompose(col, cell(i, j), opt.tol);
            total = (i == 0) ? col : hcompose(total, col, opt.tol);
        }
        out.square = std::move(total);
    }
    out.residual = out.square.residual;

    // det G(tail) = exp(tr beta(X_ij - X_00))
    Vec tr(w.d);
    for (int k = 0; k < w.d; ++k) tr[k] = w.A[k].trace() + w.E[k].trace();
    const Vec x0 = g.at(0, 0);
    for (int j = 0; j < g.nt(); ++j) {
        for (int i = 0; i < g.ns(); ++i) {
            const double det = std::exp(tr.dot(g.at(i, j) - x0));
            if (det < opt.det_floor) {
                std::ostringstream msg;
                msg << "det G below floor " << opt.det_floor << " at node (" << i << "," << j
                    << "): " << det;
                out.warnings.push_back(msg.str());
            }
        }
    }
    return out;
}

double stokes_defect(const Matrix2Connection& w, const GridSurface& g, const GL1Element& e) {
    const GL0Element loop = develop_pl_pair(w, boundary_loop(g));
    const GL0Element de = delta(e);
    return std::sqrt((de.F - loop.F).squaredNorm() + (de.G - loop.G).squaredNorm());
}

}  // namespace msd
