#pragma once

#include "msd/connection.hpp"
#include "msd/double_group.hpp"
#include "msd/grid.hpp"
#include "msd/path_dev.hpp"

#include <string>
#include <vector>

namespace msd {

struct QuadOptions {
    double tol = 1e-10;        // successive panel doublings must agree to tol * max(1, |U|)
    int max_panels = 1 << 14;
};

struct QuadInfo {
    int panels = 0;
    double error_estimate = 0.0;
    long evaluations = 0;

    void merge(const QuadInfo& o);
};

// Linear surface X = a s + b t on [0,1]^2.
GL1Element develop_linear_square(const Matrix2Connection& w, const Vec& a, const Vec& b,
                                 const QuadOptions& q = {}, QuadInfo* info = nullptr);

// Closed form for connections with commuting A blocks along a, b; throws NumericError otherwise.
GL1Element develop_linear_square_flat(const Matrix2Connection& w, const Vec& a, const Vec& b);

// Cell with corners X(0,0)=0, X(1,0)=a, X(0,1)=b, X(1,1)=c split along (0,0)-(1,1).
// Composed from two half-squares: H = H(lower-right) * H(upper-left).
GL1Element develop_basic_square(const Matrix2Connection& w, const Vec& a, const Vec& b,
                                const Vec& c, const QuadOptions& q = {}, QuadInfo* info = nullptr);

// Same cell data, one row ODE over the whole cell; handles both diagonals.
GL1Element develop_cell_rows(const Matrix2Connection& w, const Vec& a, const Vec& b, const Vec& c,
                             Diagonal diag, const QuadOptions& q = {}, QuadInfo* info = nullptr);

enum class CellMethod { HalfSquares, Rows };
enum class ComposeOrder { RowsFirst, ColumnsFirst };

struct GridOptions {
    CellMethod method = CellMethod::HalfSquares;  // anti-diagonal cells always use Rows
    ComposeOrder order = ComposeOrder::RowsFirst;
    QuadOptions quad;
    double tol = kSquareTol;
    double det_floor = 1e-10;
};

struct CellDevelopment {
    Square square;
    double residual = 0.0;
    QuadInfo quad;
    std::vector<std::string> warnings;
};

// Square of a single grid cell (edges from segment developments, interior from the cell).
Square develop_cell_square(const Matrix2Connection& w, const GridSurface& g, int i, int j,
                           const GridOptions& opt, SegmentCache* cache, QuadInfo* info);

CellDevelopment develop_grid(const Matrix2Connection& w, const GridSurface& g,
                             const GridOptions& opt = {});

// sqrt(|dF|^2 + |dG|^2) between delta(E) and the development of the boundary loop.
double stokes_defect(const Matrix2Connection& w, const GridSurface& g, const GL1Element& e);

}  // namespace msd
