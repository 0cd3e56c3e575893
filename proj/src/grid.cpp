#include "msd/grid.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace msd {

GridSurface::GridSurface(std::vector<double> s_knots, std::vector<double> t_knots, int dim)
    : s(std::move(s_knots)), t(std::move(t_knots)), d(dim) {
    values.assign(s.size() * t.size() * static_cast<std::size_t>(d), 0.0);
}

Vec GridSurface::at(int i, int j) const {
    Vec v(d);
    const std::size_t base = (static_cast<std::size_t>(j) * ns() + i) * d;
    for (int k = 0; k < d; ++k) v[k] = values[base + k];
    return v;
}

void GridSurface::set(int i, int j, const Vec& v) {
    if (v.size() != d) throw DimensionError("GridSurface::set: vector length mismatch");
    const std::size_t base = (static_cast<std::size_t>(j) * ns() + i) * d;
    for (int k = 0; k < d; ++k) values[base + k] = v[k];
}

Diagonal GridSurface::cell_diagonal(int i, int j) const {
    if (diagonal.empty()) return Diagonal::Main;
    return diagonal[static_cast<std::size_t>(j) * cells_s() + i];
}

namespace {

void check_knots(const std::vector<double>& k, const char* name) {
    if (k.size() < 1) throw DimensionError(std::string("GridSurface: empty ") + name + " knots");
    if (k.front() != 0.0 || k.back() != 1.0) {
        if (k.size() > 1) {
            throw DimensionError(std::string("GridSurface: ") + name +
                                 " knots must start at 0 and end at 1");
        }
    }
    for (std::size_t i = 1; i < k.size(); ++i) {
        if (!(k[i] > k[i - 1])) {
            throw DimensionError(std::string("GridSurface: ") + name +
                                 " knots not strictly increasing");
        }
    }
}

// Locates u in knots: returns cell index c and local coordinate in [0,1].
std::pair<int, double> locate(const std::vector<double>& k, double u) {
    const int cells = static_cast<int>(k.size()) - 1;
    if (cells <= 0) return {0, 0.0};
    auto it = std::upper_bound(k.begin(), k.end(), u);
    int c = static_cast<int>(it - k.begin()) - 1;
    c = std::clamp(c, 0, cells - 1);
    const double loc = (u - k[c]) / (k[c + 1] - k[c]);
    return {c, std::clamp(loc, 0.0, 1.0)};
}

void append_double(std::string& out, double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    out.append(buf, res.ptr);
}

}  // namespace

void GridSurface::validate() const {
    check_knots(s, "s");
    check_knots(t, "t");
    if (d < 1) throw DimensionError("GridSurface: dimension must be >= 1");
    if (values.size() != s.size() * t.size() * static_cast<std::size_t>(d)) {
        throw DimensionError("GridSurface: value count does not match knots and dimension");
    }
    for (double v : values) {
        if (!std::isfinite(v)) throw NumericError("GridSurface: non-finite value");
    }
    if (!diagonal.empty() &&
        diagonal.size() != static_cast<std::size_t>(std::max(0, cells_s()) * std::max(0, cells_t()))) {
        throw DimensionError("GridSurface: diagonal flag count does not match cells");
    }
}

Vec GridSurface::interpolate(double u, double v) const {
    if (ns() == 1 && nt() == 1) return at(0, 0);
    const auto [i, a] = locate(s, u);
    const auto [j, b] = locate(t, v);
    if (ns() == 1) return (1 - b) * at(0, j) + b * at(0, j + 1);
    if (nt() == 1) return (1 - a) * at(i, 0) + a * at(i + 1, 0);
    const Vec p00 = at(i, j), p10 = at(i + 1, j), p01 = at(i, j + 1), p11 = at(i + 1, j + 1);
    if (cell_diagonal(i, j) == Diagonal::Main) {
        if (b >= a) return p00 + b * (p01 - p00) + a * (p11 - p01);
        return p00 + a * (p10 - p00) + b * (p11 - p10);
    }
    if (a + b <= 1.0) return p00 + a * (p10 - p00) + b * (p01 - p00);
    return p11 + (1 - a) * (p01 - p11) + (1 - b) * (p10 - p11);
}

std::vector<double> uniform_knots(int cells) {
    if (cells < 0) throw DimensionError("uniform_knots: negative cell count");
    std::vector<double> k(cells + 1);
    for (int i = 0; i <= cells; ++i) k[i] = static_cast<double>(i) / std::max(1, cells);
    if (cells > 0) k.back() = 1.0;
    return k;
}

GridSurface grid_from_function(int cells_s, int cells_t, int d,
                               const std::function<Vec(double, double)>& f) {
    GridSurface g(uniform_knots(cells_s), uniform_knots(cells_t), d);
    for (int j = 0; j < g.nt(); ++j)
        for (int i = 0; i < g.ns(); ++i) g.set(i, j, f(g.s[i], g.t[j]));
    return g;
}

namespace {

std::vector<double> refine_knots(const std::vector<double>& k, int factor) {
    if (k.size() < 2) return k;
    std::vector<double> out;
    out.reserve((k.size() - 1) * factor + 1);
    for (std::size_t c = 0; c + 1 < k.size(); ++c) {
        for (int r = 0; r < factor; ++r) {
            out.push_back(k[c] + (k[c + 1] - k[c]) * static_cast<double>(r) / factor);
        }
    }
    out.push_back(k.back());
    return out;
}

}  // namespace

GridSurface refine_pl(const GridSurface& g, int factor) {
    if (factor < 1) throw DimensionError("refine_pl: factor must be >= 1");
    if (factor == 1) return g;
    GridSurface out(refine_knots(g.s, factor), refine_knots(g.t, factor), g.d);
    const int fs = g.ns() > 1 ? factor : 1;
    const int ft = g.nt() > 1 ? factor : 1;
    for (int j = 0; j < out.nt(); ++j) {
        for (int i = 0; i < out.ns(); ++i) {
            // evaluate inside the owning coarse cell to avoid knot round-off
            const int ci = std::min(i / fs, std::max(0, g.cells_s() - 1));
            const int cj = std::min(j / ft, std::max(0, g.cells_t() - 1));
            const double a = g.ns() > 1 ? static_cast<double>(i - ci * fs) / fs : 0.0;
            const double b = g.nt() > 1 ? static_cast<double>(j - cj * ft) / ft : 0.0;
            const double u = g.ns() > 1 ? g.s[ci] + a * (g.s[ci + 1] - g.s[ci]) : 0.0;
            const double v = g.nt() > 1 ? g.t[cj] + b * (g.t[cj + 1] - g.t[cj]) : 0.0;
            Vec val;
            if (g.ns() > 1 && g.nt() > 1) {
                const Vec p00 = g.at(ci, cj), p10 = g.at(ci + 1, cj), p01 = g.at(ci, cj + 1),
                          p11 = g.at(ci + 1, cj + 1);
                if (g.cell_diagonal(ci, cj) == Diagonal::Main) {
                    val = (b >= a) ? Vec(p00 + b * (p01 - p00) + a * (p11 - p01))
                                   : Vec(p00 + a * (p10 - p00) + b * (p11 - p10));
                } else {
                    val = (a + b <= 1.0) ? Vec(p00 + a * (p10 - p00) + b * (p01 - p00))
                                         : Vec(p11 + (1 - a) * (p01 - p11) + (1 - b) * (p10 - p11));
                }
            } else {
                val = g.interpolate(u, v);
            }
            out.set(i, j, val);
        }
    }
    if (!g.diagonal.empty()) {
        out.diagonal.resize(static_cast<std::size_t>(out.cells_s()) * out.cells_t());
        for (int j = 0; j < out.cells_t(); ++j)
            for (int i = 0; i < out.cells_s(); ++i)
                out.diagonal[static_cast<std::size_t>(j) * out.cells_s() + i] =
                    g.cell_diagonal(i / factor, j / factor);
    }
    return out;
}

GridSurface subsample_pl(const GridSurface& g, int factor) {
    if (factor < 1) throw DimensionError("subsample_pl: factor must be >= 1");
    if (g.cells_s() % factor != 0 || g.cells_t() % factor != 0) {
        throw DimensionError("subsample_pl: factor " + std::to_string(factor) +
                             " does not divide cell counts " + std::to_string(g.cells_s()) + "x" +
                             std::to_string(g.cells_t()));
    }
    if (factor == 1) return g;
    std::vector<double> s, t;
    for (int i = 0; i < g.ns(); i += factor) s.push_back(g.s[i]);
    for (int j = 0; j < g.nt(); j += factor) t.push_back(g.t[j]);
    GridSurface out(s, t, g.d);
    for (int j = 0; j < out.nt(); ++j)
        for (int i = 0; i < out.ns(); ++i) out.set(i, j, g.at(i * factor, j * factor));
    return out;
}

GridSurface parametrize(const GridSurface& g) {
    GridSurface out(g.s, g.t, g.d + 2);
    out.diagonal = g.diagonal;
    for (int j = 0; j < g.nt(); ++j) {
        for (int i = 0; i < g.ns(); ++i) {
            out.at(i, j, 0) = g.s[i];
            out.at(i, j, 1) = g.t[j];
            for (int k = 0; k < g.d; ++k) out.at(i, j, k + 2) = g.at(i, j, k);
        }
    }
    return out;
}

namespace {

std::vector<double> mirrored(const std::vector<double>& k) {
    std::vector<double> out(k.size());
    for (std::size_t i = 0; i < k.size(); ++i) out[i] = 1.0 - k[k.size() - 1 - i];
    if (!out.empty()) {
        out.front() = 0.0;
        out.back() = k.size() > 1 ? 1.0 : out.back();
    }
    return out;
}

Diagonal flipped(Diagonal d) {
    return d == Diagonal::Main ? Diagonal::Anti : Diagonal::Main;
}

}  // namespace

GridSurface reflect_s(const GridSurface& g) {
    GridSurface out(mirrored(g.s), g.t, g.d);
    for (int j = 0; j < g.nt(); ++j)
        for (int i = 0; i < g.ns(); ++i) out.set(i, j, g.at(g.ns() - 1 - i, j));
    out.diagonal.resize(static_cast<std::size_t>(out.cells_s()) * out.cells_t());
    for (int j = 0; j < out.cells_t(); ++j)
        for (int i = 0; i < out.cells_s(); ++i)
            out.diagonal[static_cast<std::size_t>(j) * out.cells_s() + i] =
                flipped(g.cell_diagonal(g.cells_s() - 1 - i, j));
    return out;
}

GridSurface reflect_t(const GridSurface& g) {
    GridSurface out(g.s, mirrored(g.t), g.d);
    for (int j = 0; j < g.nt(); ++j)
        for (int i = 0; i < g.ns(); ++i) out.set(i, j, g.at(i, g.nt() - 1 - j));
    out.diagonal.resize(static_cast<std::size_t>(out.cells_s()) * out.cells_t());
    for (int j = 0; j < out.cells_t(); ++j)
        for (int i = 0; i < out.cells_s(); ++i)
            out.diagonal[static_cast<std::size_t>(j) * out.cells_s() + i] =
                flipped(g.cell_diagonal(i, g.cells_t() - 1 - j));
    return out;
}

GridSurface transpose(const GridSurface& g) {
    GridSurface out(g.t, g.s, g.d);
    for (int j = 0; j < g.nt(); ++j)
        for (int i = 0; i < g.ns(); ++i) out.set(j, i, g.at(i, j));
    if (!g.diagonal.empty()) {
        out.diagonal.resize(g.diagonal.size());
        for (int j = 0; j < g.cells_t(); ++j)
            for (int i = 0; i < g.cells_s(); ++i)
                out.diagonal[static_cast<std::size_t>(i) * out.cells_s() + j] =
                    g.cell_diagonal(i, j);
    }
    return out;
}

namespace {

std::vector<Diagonal> full_flags(const GridSurface& g) {
    std::vector<Diagonal> f(static_cast<std::size_t>(g.cells_s()) * g.cells_t(), Diagonal::Main);
    if (!g.diagonal.empty()) f = g.diagonal;
    return f;
}

}  // namespace

GridSurface hconcat(const GridSurface& left, const GridSurface& right) {
    if (left.d != right.d || left.t != right.t) {
        throw DimensionError("hconcat: grids have different t knots or dimension");
    }
    for (int j = 0; j < left.nt(); ++j) {
        if ((left.at(left.ns() - 1, j) - right.at(0, j)).norm() > 1e-12) {
            throw DimensionError("hconcat: shared column values differ");
        }
    }
    std::vector<double> s;
    for (double x : left.s) s.push_back(0.5 * x);
    for (std::size_t i = 1; i < right.s.size(); ++i) s.push_back(0.5 + 0.5 * right.s[i]);
    s.back() = 1.0;
    GridSurface out(s, left.t, left.d);
    for (int j = 0; j < out.nt(); ++j) {
        for (int i = 0; i < left.ns(); ++i) out.set(i, j, left.at(i, j));
        for (int i = 1; i < right.ns(); ++i) out.set(left.ns() - 1 + i, j, right.at(i, j));
    }
    const auto fl = full_flags(left), fr = full_flags(right);
    out.diagonal.resize(static_cast<std::size_t>(out.cells_s()) * out.cells_t());
    for (int j = 0; j < out.cells_t(); ++j) {
        for (int i = 0; i < left.cells_s(); ++i)
            out.diagonal[static_cast<std::size_t>(j) * out.cells_s() + i] =
                fl[static_cast<std::size_t>(j) * left.cells_s() + i];
        for (int i = 0; i < right.cells_s(); ++i)
            out.diagonal[static_cast<std::size_t>(j) * out.cells_s() + left.cells_s() + i] =
                fr[static_cast<std::size_t>(j) * right.cells_s() + i];
    }
    return out;
}

GridSurface vconcat(const GridSurface& bottom, const GridSurface& top) {
    return transpose(hconcat(transpose(bottom), transpose(top)));
}

GridSurface subgrid(const GridSurface& g, int i0, int i1, int j0, int j1) {
    if (!(0 <= i0 && i0 < i1 && i1 < g.ns() && 0 <= j0 && j0 < j1 && j1 < g.nt())) {
        throw DimensionError("subgrid: index range out of bounds");
    }
    std::vector<double> s, t;
    for (int i = i0; i <= i1; ++i) s.push_back((g.s[i] - g.s[i0]) / (g.s[i1] - g.s[i0]));
    for (int j = j0; j <= j1; ++j) t.push_back((g.t[j] - g.t[j0]) / (g.t[j1] - g.t[j0]));
    s.back() = 1.0;
    t.back() = 1.0;
    GridSurface out(s, t, g.d);
    for (int j = j0; j <= j1; ++j)
        for (int i = i0; i <= i1; ++i) out.set(i - i0, j - j0, g.at(i, j));
    if (!g.diagonal.empty()) {
        out.diagonal.resize(static_cast<std::size_t>(out.cells_s()) * out.cells_t());
        for (int j = j0; j < j1; ++j)
            for (int i = i0; i < i1; ++i)
                out.diagonal[static_cast<std::size_t>(j - j0) * out.cells_s() + (i - i0)] =
                    g.cell_diagonal(i, j);
    }
    return out;
}

std::string grid_to_string(const GridSurface& g) {
    std::string out;
    out += std::to_string(g.nt()) + "," + std::to_string(g.ns()) + "," + std::to_string(g.d) + "\n";
    const bool uniform_s = g.s == uniform_knots(g.cells_s());
    const bool uniform_t = g.t == uniform_knots(g.cells_t());
    if (!uniform_s) {
        out += "#s";
        for (double x : g.s) {
            out += ',';
            append_double(out, x);
        }
        out += '\n';
    }
    if (!uniform_t) {
        out += "#t";
        for (double x : g.t) {
            out += ',';
            append_double(out, x);
        }
        out += '\n';
    }
    if (!g.diagonal.empty()) {
        out += "#diag";
        for (Diagonal dg : g.diagonal) out += (dg == Diagonal::Main) ? ",0" : ",1";
        out += '\n';
    }
    for (int j = 0; j < g.nt(); ++j) {
        for (int i = 0; i < g.ns(); ++i) {
            for (int k = 0; k < g.d; ++k) {
                if (i > 0 || k > 0) out += ',';
                append_double(out, g.at(i, j, k));
            }
        }
        out += '\n';
    }
    return out;
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream ss(line);
    while (std::getline(ss, cur, ',')) out.push_back(cur);
    return out;
}

double parse_double(const std::string& tok) {
    std::size_t b = 0, e = tok.size();
    while (b < e && std::isspace(static_cast<unsigned char>(tok[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(tok[e - 1]))) --e;
    double v = 0.0;
    auto res = std::from_chars(tok.data() + b, tok.data() + e, v);
    if (res.ec != std::errc() || res.ptr != tok.data() + e) {
        throw DimensionError("grid file: cannot parse number '" + tok + "'");
    }
    return v;
}

}  // namespace

GridSurface grid_from_string(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw DimensionError("grid file: empty");
    const auto head = split_csv(line);
    if (head.size() != 3) throw DimensionError("grid file: header must be rows,cols,dim");
    const int rows = static_cast<int>(parse_double(head[0]));
    const int cols = static_cast<int>(parse_double(head[1]));
    const int dim = static_cast<int>(parse_double(head[2]));
    if (rows < 1 || cols < 1 || dim < 1) throw DimensionError("grid file: bad header");
    std::vector<double> s = uniform_knots(cols - 1), t = uniform_knots(rows - 1);
    std::vector<Diagonal> diag;
    std::vector<std::string> data;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            auto toks = split_csv(line);
            std::vector<double> vals;
            for (std::size_t k = 1; k < toks.size(); ++k) vals.push_back(parse_double(toks[k]));
            if (toks[0] == "#s") s = vals;
            else if (toks[0] == "#t") t = vals;
            else if (toks[0] == "#diag") {
                for (double v : vals) diag.push_back(v != 0.0 ? Diagonal::Anti : Diagonal::Main);
            }
            continue;
        }
        data.push_back(line);
    }
    if (static_cast<int>(data.size()) != rows) {
        throw DimensionError("grid file: expected " + std::to_string(rows) + " data rows, got " +
                             std::to_string(data.size()));
    }
    if (static_cast<int>(s.size()) != cols || static_cast<int>(t.size()) != rows) {
        throw DimensionError("grid file: knot lines do not match header");
    }
    GridSurface g(s, t, dim);
    g.diagonal = diag;
    for (int j = 0; j < rows; ++j) {
        const auto toks = split_csv(data[j]);
        if (static_cast<int>(toks.size()) != cols * dim) {
            throw DimensionError("grid file: row " + std::to_string(j) + " has " +
                                 std::to_string(toks.size()) + " values, expected " +
                                 std::to_string(cols * dim));
        }
        for (int i = 0; i < cols; ++i)
            for (int k = 0; k < dim; ++k) g.at(i, j, k) = parse_double(toks[i * dim + k]);
    }
    g.validate();
    return g;
}

void write_grid(const GridSurface& g, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    f << grid_to_string(g);
}

GridSurface read_grid(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return grid_from_string(ss.str());
}

}  // namespace msd
