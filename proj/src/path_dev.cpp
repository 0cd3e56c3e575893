#include "msd/path_dev.hpp"

namespace msd {

void PLPath::validate() const {
    if (vertices.empty()) throw DimensionError("PLPath: needs at least one vertex");
    const auto d = vertices.front().size();
    for (const Vec& v : vertices) {
        if (v.size() != d) throw DimensionError("PLPath: vertices of different lengths");
        if (!v.allFinite()) throw NumericError("PLPath: non-finite vertex");
    }
}

PLPath reverse(const PLPath& p) {
    return PLPath{std::vector<Vec>(p.vertices.rbegin(), p.vertices.rend())};
}

PLPath concat(const PLPath& x, const PLPath& y) {
    if (x.vertices.empty()) return y;
    if (y.vertices.empty()) return x;
    if (x.dim() != y.dim()) throw DimensionError("concat: path dimensions differ");
    PLPath out = x;
    const Vec shift = x.vertices.back() - y.vertices.front();
    for (std::size_t k = 1; k < y.vertices.size(); ++k) out.vertices.push_back(y.vertices[k] + shift);
    return out;
}

PLPath insert_midpoint(const PLPath& p, int k, double u) {
    if (k < 0 || k + 1 >= static_cast<int>(p.vertices.size())) {
        throw DimensionError("insert_midpoint: segment index out of range");
    }
    PLPath out = p;
    const Vec mid = (1 - u) * p.vertices[k] + u * p.vertices[k + 1];
    out.vertices.insert(out.vertices.begin() + k + 1, mid);
    return out;
}

GL0Element develop_segment(const Matrix2Connection& w, const Vec& dx) {
    return GL0Element::project(w.dims, expm(w.alpha_of(dx)), expm(w.beta_of(dx)));
}

GL0Element SegmentCache::get(const Vec& dx) {
    std::vector<double> key(dx.data(), dx.data() + dx.size());
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = map_.find(key);
        if (it != map_.end()) return it->second;
    }
    GL0Element val = develop_segment(*w_, dx);
    std::lock_guard<std::mutex> lock(mu_);
    return map_.emplace(std::move(key), std::move(val)).first->second;
}

std::size_t SegmentCache::size() const {
    std::lock_guard<std::mutex> lock(mu_);
    return map_.size();
}

GL0Element develop_pl_pair(const Matrix2Connection& w, const PLPath& path, SegmentCache* cache) {
    path.validate();
    if (path.dim() != w.d) {
        throw DimensionError("develop_pl_pair: path dimension " + std::to_string(path.dim()) +
                             " vs connection dimension " + std::to_string(w.d));
    }
    GL0Element out = GL0Element::identity(w.dims);
    for (std::size_t k = 0; k + 1 < path.vertices.size(); ++k) {
        const Vec dx = path.vertices[k + 1] - path.vertices[k];
        if (dx.isZero(0.0)) continue;
        out = out * (cache ? cache->get(dx) : develop_segment(w, dx));
    }
    return out;
}

Sig2 chen(const Sig2& x, const Sig2& y) {
    return Sig2{x.level1 + y.level1, x.level2 + x.level1 * y.level1.transpose() + y.level2};
}

Sig2 signature_level2(const PLPath& path) {
    path.validate();
    const int d = path.dim();
    Sig2 out{Vec::Zero(d), Mat::Zero(d, d)};
    for (std::size_t k = 0; k + 1 < path.vertices.size(); ++k) {
        const Vec dx = path.vertices[k + 1] - path.vertices[k];
        out.level2 += out.level1 * dx.transpose() + 0.5 * dx * dx.transpose();
        out.level1 += dx;
    }
    return out;
}

namespace {

void check_node(const GridSurface& g, int i, int j, const char* where) {
    if (i < 0 || i >= g.ns() || j < 0 || j >= g.nt()) {
        throw DimensionError(std::string(where) + ": node (" + std::to_string(i) + "," +
                             std::to_string(j) + ") outside " + std::to_string(g.ns()) + "x" +
                             std::to_string(g.nt()) + " grid");
    }
}

}  // namespace

PLPath row_path(const GridSurface& g, int j, int i0, int i1) {
    check_node(g, i0, j, "row_path");
    check_node(g, i1, j, "row_path");
    PLPath p;
    const int step = i1 >= i0 ? 1 : -1;
    for (int i = i0;; i += step) {
        p.vertices.push_back(g.at(i, j));
        if (i == i1) break;
    }
    return p;
}

PLPath column_path(const GridSurface& g, int i, int j0, int j1) {
    check_node(g, i, j0, "column_path");
    check_node(g, i, j1, "column_path");
    PLPath p;
    const int step = j1 >= j0 ? 1 : -1;
    for (int j = j0;; j += step) {
        p.vertices.push_back(g.at(i, j));
        if (j == j1) break;
    }
    return p;
}

PLPath tail_path(const GridSurface& g, int i, int j) {
    check_node(g, i, j, "tail_path");
    PLPath p = column_path(g, 0, 0, j);
    for (int k = 1; k <= i; ++k) p.vertices.push_back(g.at(k, j));
    return p;
}

PLPath hat_tail_path(const GridSurface& g, int i, int j) {
    check_node(g, i, j, "hat_tail_path");
    PLPath p = row_path(g, 0, 0, i);
    for (int k = 1; k <= j; ++k) p.vertices.push_back(g.at(i, k));
    return p;
}

PLPath boundary_loop(const GridSurface& g) {
    const int I = g.ns() - 1, J = g.nt() - 1;
    PLPath p = row_path(g, 0, 0, I);
    for (int j = 1; j <= J; ++j) p.vertices.push_back(g.at(I, j));
    for (int i = I - 1; i >= 0; --i) p.vertices.push_back(g.at(i, J));
    for (int j = J - 1; j >= 0; --j) p.vertices.push_back(g.at(0, j));
    return p;
}

}  // namespace msd
