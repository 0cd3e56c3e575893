#include "msd/young.hpp"

#include "msd/crossed_module.hpp"
#include "msd/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace msd {

Vec increment2d(const GridSurface& g, int i1, int i2, int j1, int j2) {
    if (!(0 <= i1 && i1 < i2 && i2 < g.ns() && 0 <= j1 && j1 < j2 && j2 < g.nt())) {
        throw DimensionError("increment2d: need 0 <= i1 < i2 < ns and 0 <= j1 < j2 < nt");
    }
    return g.at(i2, j2) - g.at(i1, j2) - g.at(i2, j1) + g.at(i1, j1);
}

namespace {

std::vector<int> dyadic_breaks(int cells, int block) {
    std::vector<int> b;
    for (int k = 0; k < cells; k += block) b.push_back(k);
    b.push_back(cells);
    return b;
}

}  // namespace

double pvar_estimate(const GridSurface& g, double p) {
    if (!(p >= 1.0)) throw DimensionError("pvar_estimate: p must be >= 1");
    const int cs = g.cells_s(), ct = g.cells_t();
    if (cs < 1 || ct < 1) return 0.0;
    std::set<int> bs_sizes, bt_sizes;
    for (int b = 1; b < 2 * cs; b *= 2) bs_sizes.insert(std::min(b, cs));
    for (int b = 1; b < 2 * ct; b *= 2) bt_sizes.insert(std::min(b, ct));
    double best = 0.0;
    for (int bs : bs_sizes) {
        const auto is = dyadic_breaks(cs, bs);
        for (int bt : bt_sizes) {
            const auto js = dyadic_breaks(ct, bt);
            double sum = 0.0;
            for (std::size_t a = 0; a + 1 < is.size(); ++a)
                for (std::size_t c = 0; c + 1 < js.size(); ++c)
                    sum += std::pow(increment2d(g, is[a], is[a + 1], js[c], js[c + 1]).norm(), p);
            best = std::max(best, std::pow(sum, 1.0 / p));
        }
    }
    return best;
}

Mat cell_area(const GridSurface& g, int i, int j) {
    const Vec p[4] = {g.at(i, j), g.at(i + 1, j), g.at(i + 1, j + 1), g.at(i, j + 1)};
    Mat a = Mat::Zero(g.d, g.d);
    for (int k = 0; k < 4; ++k) {
        const Vec& x = p[k];
        const Vec& y = p[(k + 1) % 4];
        a += 0.5 * (x * y.transpose() - y * x.transpose());
    }
    return a;
}

AreaGrid area_process(const GridSurface& g) {
    AreaGrid out{g.ns(), g.nt(), g.d, {}};
    out.A.assign(static_cast<std::size_t>(g.ns()) * g.nt(), Mat::Zero(g.d, g.d));
    for (int j = 1; j < g.nt(); ++j) {
        Mat row = Mat::Zero(g.d, g.d);
        for (int i = 1; i < g.ns(); ++i) {
            row += cell_area(g, i - 1, j - 1);
            out.A[static_cast<std::size_t>(j) * g.ns() + i] = out.at(i, j - 1) + row;
        }
    }
    return out;
}

AreaGrid area_process_direct(const GridSurface& g) {
    AreaGrid out{g.ns(), g.nt(), g.d, {}};
    out.A.assign(static_cast<std::size_t>(g.ns()) * g.nt(), Mat::Zero(g.d, g.d));
    for (int j = 1; j < g.nt(); ++j) {
        for (int i = 1; i < g.ns(); ++i) {
            PLPath loop = row_path(g, 0, 0, i);
            for (int k = 1; k <= j; ++k) loop.vertices.push_back(g.at(i, k));
            for (int k = i - 1; k >= 0; --k) loop.vertices.push_back(g.at(k, j));
            for (int k = j - 1; k >= 0; --k) loop.vertices.push_back(g.at(0, k));
            out.A[static_cast<std::size_t>(j) * g.ns() + i] = signature_level2(loop).area();
        }
    }
    return out;
}

TailGrid tail_holonomies(const Matrix2Connection& w, const GridSurface& g, TailKind kind,
                         double det_floor) {
    if (g.d != w.d) {
        throw DimensionError("tail_holonomies: surface dimension " + std::to_string(g.d) +
                             " vs connection dimension " + std::to_string(w.d));
    }
    const int ns = g.ns(), nt = g.nt();
    TailGrid out{ns, nt, {}, {}};
    out.F.resize(static_cast<std::size_t>(ns) * nt);
    out.Ginv.resize(out.F.size());
    SegmentCache cache(w);
    auto idx = [ns](int i, int j) { return static_cast<std::size_t>(j) * ns + i; };
    auto step = [&](std::size_t from, std::size_t to, const Vec& dx) {
        const GL0Element fwd = cache.get(dx);
        const GL0Element back = cache.get(-dx);
        out.F[to] = out.F[from] * fwd.F;
        out.Ginv[to] = back.G * out.Ginv[from];
    };
    out.F[0] = Mat::Identity(w.dims.v1(), w.dims.v1());
    out.Ginv[0] = Mat::Identity(w.dims.v0(), w.dims.v0());
    if (kind == TailKind::Standard) {
        for (int j = 1; j < nt; ++j) step(idx(0, j - 1), idx(0, j), g.at(0, j) - g.at(0, j - 1));
        parallel_for(static_cast<std::size_t>(nt), [&](std::size_t jj) {
            const int j = static_cast<int>(jj);
            for (int i = 1; i < ns; ++i) step(idx(i - 1, j), idx(i, j), g.at(i, j) - g.at(i - 1, j));
        });
    } else {
        for (int i = 1; i < ns; ++i) step(idx(i - 1, 0), idx(i, 0), g.at(i, 0) - g.at(i - 1, 0));
        parallel_for(static_cast<std::size_t>(ns), [&](std::size_t ii) {
            const int i = static_cast<int>(ii);
            for (int j = 1; j < nt; ++j) step(idx(i, j - 1), idx(i, j), g.at(i, j) - g.at(i, j - 1));
        });
    }
    // det G(tail) depends only on the endpoint
    Vec tr(w.d);
    for (int k = 0; k < w.d; ++k) tr[k] = w.A[k].trace() + w.E[k].trace();
    const Vec x0 = g.at(0, 0);
    for (int j = 0; j < nt; ++j) {
        for (int i = 0; i < ns; ++i) {
            const double det = std::exp(tr.dot(g.at(i, j) - x0));
            if (det < det_floor) {
                std::ostringstream msg;
                msg << "det G(tail) = " << det << " below floor " << det_floor << " at node (" << i
                    << "," << j << ")";
                throw NumericError(msg.str());
            }
        }
    }
    return out;
}

IntegrandGrid integrand_grid(const Matrix2Connection& w, const GridSurface& g, double det_floor) {
    const TailGrid tails = tail_holonomies(w, g, TailKind::Standard, det_floor);
    const int pairs = Matrix2Connection::pair_count(w.d);
    IntegrandGrid out{g.ns(), g.nt(), pairs, {}};
    out.T.resize(static_cast<std::size_t>(g.ns()) * g.nt() * pairs);
    std::vector<Mat> gam(pairs);
    for (int k = 0; k < w.d; ++k)
        for (int l = k + 1; l < w.d; ++l) gam[w.pair_index(k, l)] = w.gamma(k, l);
    for (int j = 0; j < g.nt(); ++j)
        for (int i = 0; i < g.ns(); ++i)
            for (int k = 0; k < pairs; ++k)
                out.T[(static_cast<std::size_t>(j) * g.ns() + i) * pairs + k] =
                    tails.f(i, j) * gam[k] * tails.ginv(i, j);
    return out;
}

ZGrid young_Z(const Matrix2Connection& w, const IntegrandGrid& T, const AreaGrid& A,
              YoungRule rule) {
    if (T.ns != A.ns || T.nt != A.nt || A.d != w.d || T.pairs != Matrix2Connection::pair_count(w.d)) {
        throw DimensionError("young_Z: integrand and area grids do not match");
    }
    const int ns = T.ns, nt = T.nt;
    ZGrid out{ns, nt, {}};
    out.Z.assign(static_cast<std::size_t>(ns) * nt, Mat::Zero(w.dims.v1(), w.dims.v0()));
    for (int j = 1; j < nt; ++j) {
        Mat row = Mat::Zero(w.dims.v1(), w.dims.v0());
        for (int i = 1; i < ns; ++i) {
            // cell area from the prefix sums
            const Mat box = A.at(i, j) - A.at(i - 1, j) - A.at(i, j - 1) + A.at(i - 1, j - 1);
            for (int k = 0; k < w.d; ++k)
                for (int l = k + 1; l < w.d; ++l)
                    if (box(k, l) != 0.0) {
                        const int q = w.pair_index(k, l);
                        if (rule == YoungRule::LeftPoint) {
                            row += box(k, l) * T.at(i - 1, j - 1, q);
                        } else {
                            row += 0.25 * box(k, l) *
                                   (T.at(i - 1, j - 1, q) + T.at(i, j - 1, q) + T.at(i - 1, j, q) + T.at(i, j, q));
                        }
                    }
            out.Z[static_cast<std::size_t>(j) * ns + i] = out.at(i, j - 1) + row;
        }
    }
    return out;
}

namespace {

Mat contract_gamma(const Matrix2Connection& w, const std::vector<Mat>& gam, const Mat& area) {
    Mat out = Mat::Zero(w.dims.v1(), w.dims.v0());
    for (int k = 0; k < w.d; ++k)
        for (int l = k + 1; l < w.d; ++l)
            if (area(k, l) != 0.0) out += area(k, l) * gam[w.pair_index(k, l)];
    return out;
}

Mat cell_increment(const Matrix2Connection& w, const std::vector<Mat>& gam, const TailGrid& tails,
                   const GridSurface& g, int i, int j, YoungRule rule) {
    const Mat gc = contract_gamma(w, gam, cell_area(g, i, j));
    if (rule == YoungRule::LeftPoint) return tails.f(i, j) * gc * tails.ginv(i, j);
    Mat sum = tails.f(i, j) * gc * tails.ginv(i, j);
    sum += tails.f(i + 1, j) * gc * tails.ginv(i + 1, j);
    sum += tails.f(i, j + 1) * gc * tails.ginv(i, j + 1);
    sum += tails.f(i + 1, j + 1) * gc * tails.ginv(i + 1, j + 1);
    return 0.25 * sum;
}

std::vector<Mat> gammas(const Matrix2Connection& w) {
    std::vector<Mat> gam(Matrix2Connection::pair_count(w.d));
    for (int k = 0; k < w.d; ++k)
        for (int l = k + 1; l < w.d; ++l) gam[w.pair_index(k, l)] = w.gamma(k, l);
    return gam;
}

void check_dims(const Matrix2Connection& w, const GridSurface& g, const char* where) {
    g.validate();
    if (g.d != w.d) {
        throw DimensionError(std::string(where) + ": surface dimension " + std::to_string(g.d) +
                             " vs connection dimension " + std::to_string(w.d));
    }
}

void require_finite(const GL1Element& h, const std::vector<Mat>& dz, const char* where) {
    if (all_finite(h.H)) return;
    double worst = 0.0;
    for (const Mat& m : dz) worst = std::max(worst, m.norm());
    throw NumericError(std::string(where) + ": development is not finite (largest strip increment norm " +
                       std::to_string(worst) + ")");
}

}  // namespace

GL1Element develop_young(const Matrix2Connection& w, const GridSurface& g, const YoungOptions& opt) {
    check_dims(w, g, "develop_young");
    GL1Element h = GL1Element::zero(w.dims);
    if (g.cells_s() < 1 || g.cells_t() < 1) return h;
    const TailGrid tails = tail_holonomies(w, g, TailKind::Standard, opt.det_floor);
    const auto gam = gammas(w);
    const int cs = g.cells_s(), ct = g.cells_t();
    std::vector<Mat> dz(ct);
    parallel_for(static_cast<std::size_t>(ct), [&](std::size_t jj) {
        const int j = static_cast<int>(jj);
        Mat row = Mat::Zero(w.dims.v1(), w.dims.v0());
        for (int i = 0; i < cs; ++i) row += cell_increment(w, gam, tails, g, i, j, opt.rule);
        dz[jj] = std::move(row);
    });
    for (int j = 0; j < ct; ++j) h = star_mul(h, star_exp(Gl1Element{w.dims, dz[j]}));
    require_finite(h, dz, "develop_young");
    return h;
}

GL1Element develop_young_alt(const Matrix2Connection& w, const GridSurface& g,
                             const YoungOptions& opt) {
    check_dims(w, g, "develop_young_alt");
    GL1Element h = GL1Element::zero(w.dims);
    if (g.cells_s() < 1 || g.cells_t() < 1) return h;
    const TailGrid tails = tail_holonomies(w, g, TailKind::Hat, opt.det_floor);
    const auto gam = gammas(w);
    const int cs = g.cells_s(), ct = g.cells_t();
    std::vector<Mat> dz(cs);
    parallel_for(static_cast<std::size_t>(cs), [&](std::size_t ii) {
        const int i = static_cast<int>(ii);
        Mat col = Mat::Zero(w.dims.v1(), w.dims.v0());
        for (int j = 0; j < ct; ++j) col += cell_increment(w, gam, tails, g, i, j, opt.rule);
        dz[ii] = std::move(col);
    });
    for (int i = 0; i < cs; ++i) h = star_mul(star_exp(Gl1Element{w.dims, dz[i]}), h);
    require_finite(h, dz, "develop_young_alt");
    return h;
}

}  // namespace msd
