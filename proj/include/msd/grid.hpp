#pragma once

#include "msd/matrix.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace msd {

enum class Diagonal : std::uint8_t {
    Main = 0,  // cell split along (0,0)-(1,1)
    Anti = 1,  // cell split along (1,0)-(0,1)
};

// Samples X_{i,j} in R^d at knots (s_i, t_j); i runs along s, j along t.
// The implied surface is the piecewise-linear interpolant over triangulated cells.
class GridSurface {
public:
    std::vector<double> s;  // strictly increasing, s.front() = 0, s.back() = 1
    std::vector<double> t;
    int d = 0;
    std::vector<double> values;      // (i, j, k) at (j * ns + i) * d + k
    std::vector<Diagonal> diagonal;  // per cell (j * (ns-1) + i); empty means all Main

    GridSurface() = default;
    GridSurface(std::vector<double> s_knots, std::vector<double> t_knots, int dim);

    int ns() const { return static_cast<int>(s.size()); }
    int nt() const { return static_cast<int>(t.size()); }
    int cells_s() const { return ns() - 1; }
    int cells_t() const { return nt() - 1; }

    Vec at(int i, int j) const;
    void set(int i, int j, const Vec& v);
    double& at(int i, int j, int k) { return values[(static_cast<std::size_t>(j) * ns() + i) * d + k]; }
    double at(int i, int j, int k) const {
        return values[(static_cast<std::size_t>(j) * ns() + i) * d + k];
    }
    Diagonal cell_diagonal(int i, int j) const;

    // Value of the triangulated PL interpolant at (u, v) in [0,1]^2.
    Vec interpolate(double u, double v) const;

    void validate() const;
};

std::vector<double> uniform_knots(int cells);

GridSurface grid_from_function(int cells_s, int cells_t, int d,
                               const std::function<Vec(double, double)>& f);

// Samples the PL interpolant at `factor` times finer uniform subdivisions of every cell.
GridSurface refine_pl(const GridSurface& g, int factor);

// Keeps every `factor`-th knot in each direction.
GridSurface subsample_pl(const GridSurface& g, int factor);

// Prepends (s_i, t_j) to each node value.
GridSurface parametrize(const GridSurface& g);

// X^{-h}_{s,t} = X_{1-s,t}, with mirrored triangulation.
GridSurface reflect_s(const GridSurface& g);
// X^{-v}_{s,t} = X_{s,1-t}, with mirrored triangulation.
GridSurface reflect_t(const GridSurface& g);
// X^_{s,t} = X_{t,s}.
GridSurface transpose(const GridSurface& g);
// Horizontal concatenation on [0,1/2] and [1/2,1]; requires matching shared column.
GridSurface hconcat(const GridSurface& left, const GridSurface& right);
// Vertical concatenation on [0,1/2] and [1/2,1].
GridSurface vconcat(const GridSurface& bottom, const GridSurface& top);
// Restriction to knot index ranges [i0,i1] x [j0,j1], knots rescaled to [0,1].
GridSurface subgrid(const GridSurface& g, int i0, int i1, int j0, int j1);

// Text format: "rows,cols,dim" header (rows = t knots, cols = s knots), optional
// "#s,..." / "#t,..." / "#diag,..." lines, then one line per row j holding cols*dim values.
void write_grid(const GridSurface& g, const std::string& path);
GridSurface read_grid(const std::string& path);
std::string grid_to_string(const GridSurface& g);
GridSurface grid_from_string(const std::string& text);

}  // namespace msd
