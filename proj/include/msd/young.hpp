#pragma once

#include "msd/connection.hpp"
#include "msd/grid.hpp"
#include "msd/path_dev.hpp"

#include <vector>

namespace msd {

// X_{i2,j2} - X_{i1,j2} - X_{i2,j1} + X_{i1,j1}
Vec increment2d(const GridSurface& g, int i1, int i2, int j1, int j2);

// Largest (sum |box increment|^p)^{1/p} over dyadic block partitions of the grid.
// A lower bound for the controlled p-variation.
double pvar_estimate(const GridSurface& g, double p);

struct AreaGrid {
    int ns = 0, nt = 0, d = 0;
    std::vector<Mat> A;  // node (i,j) at j*ns+i, antisymmetric d x d

    const Mat& at(int i, int j) const { return A[static_cast<std::size_t>(j) * ns + i]; }
};

// Signed area of the boundary loop of cell (i,j).
Mat cell_area(const GridSurface& g, int i, int j);
// Prefix sums of cell areas.
AreaGrid area_process(const GridSurface& g);
// Per-node loop signature; quadratic cost, used as an oracle.
AreaGrid area_process_direct(const GridSurface& g);

enum class TailKind { Standard, Hat };  // (0,0)->(0,t)->(s,t)  vs  (0,0)->(s,0)->(s,t)

// F(tail) and G(tail)^{-1} at every node.
struct TailGrid {
    int ns = 0, nt = 0;
    std::vector<Mat> F, Ginv;

    const Mat& f(int i, int j) const { return F[static_cast<std::size_t>(j) * ns + i]; }
    const Mat& ginv(int i, int j) const { return Ginv[static_cast<std::size_t>(j) * ns + i]; }
};

// Throws NumericError naming the node when det G(tail) < det_floor.
TailGrid tail_holonomies(const Matrix2Connection& w, const GridSurface& g, TailKind kind,
                         double det_floor = 1e-10);

// T^{kl} = F gamma^{kl} G^{-1} per node; pair index as in the connection.
struct IntegrandGrid {
    int ns = 0, nt = 0, pairs = 0;
    std::vector<Mat> T;  // (j*ns+i)*pairs + k

    const Mat& at(int i, int j, int k) const {
        return T[(static_cast<std::size_t>(j) * ns + i) * pairs + k];
    }
};

IntegrandGrid integrand_grid(const Matrix2Connection& w, const GridSurface& g,
                             double det_floor = 1e-10);

struct ZGrid {
    int ns = 0, nt = 0;
    std::vector<Mat> Z;

    const Mat& at(int i, int j) const { return Z[static_cast<std::size_t>(j) * ns + i]; }
};

enum class YoungRule {
    LeftPoint,      // integrand at the lower-left node of each cell
    CornerAverage,  // mean of the four corner integrands
};

// 2D Young sum Z_{i,j} = sum over cells below and left of (i,j) of T(cell) (cell area);
// T(cell) is the lower-left node value or the four-corner mean.
ZGrid young_Z(const Matrix2Connection& w, const IntegrandGrid& T, const AreaGrid& A,
              YoungRule rule = YoungRule::LeftPoint);

struct YoungOptions {
    YoungRule rule = YoungRule::LeftPoint;
    double det_floor = 1e-10;
};

// H <- H * exp_*(dZ_j) along t.
GL1Element develop_young(const Matrix2Connection& w, const GridSurface& g,
                         const YoungOptions& opt = {});
// H^ <- exp_*(dZ^_i) * H^ along s, with the (0,0)->(s,0)->(s,t) tail.
GL1Element develop_young_alt(const Matrix2Connection& w, const GridSurface& g,
                             const YoungOptions& opt = {});

}  // namespace msd
