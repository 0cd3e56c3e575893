#pragma once

#include "msd/connection.hpp"
#include "msd/grid.hpp"

#include <map>
#include <mutex>
#include <vector>

namespace msd {

struct PLPath {
    std::vector<Vec> vertices;

    int dim() const { return vertices.empty() ? 0 : static_cast<int>(vertices.front().size()); }
    void validate() const;
};

PLPath reverse(const PLPath& p);
// x then y; y is translated so that it starts where x ends.
PLPath concat(const PLPath& x, const PLPath& y);
// Splits segment k at parameter u in (0,1).
PLPath insert_midpoint(const PLPath& p, int k, double u = 0.5);

// Insert-only map from increments to their segment developments.
class SegmentCache {
public:
    explicit SegmentCache(const Matrix2Connection& w) : w_(&w) {}
    GL0Element get(const Vec& dx);
    std::size_t size() const;

private:
    const Matrix2Connection* w_;
    mutable std::mutex mu_;
    std::map<std::vector<double>, GL0Element> map_;
};

// (exp(alpha(dx)), exp(beta(dx)))
GL0Element develop_segment(const Matrix2Connection& w, const Vec& dx);

// Left-to-right product of segment developments.
GL0Element develop_pl_pair(const Matrix2Connection& w, const PLPath& path,
                           SegmentCache* cache = nullptr);

struct Sig2 {
    Vec level1;
    Mat level2;

    Mat area() const { return 0.5 * (level2 - level2.transpose()); }
};

Sig2 signature_level2(const PLPath& path);
// Chen: S(x * y) from S(x), S(y).
Sig2 chen(const Sig2& x, const Sig2& y);

// X_{0,0..j} then X_{0..i,j}.
PLPath tail_path(const GridSurface& g, int i, int j);
// X_{0..i,0} then X_{i,0..j}.
PLPath hat_tail_path(const GridSurface& g, int i, int j);
// Counterclockwise boundary loop of the full grid starting at X_{0,0}.
PLPath boundary_loop(const GridSurface& g);
// Node values along row j from column i0 to i1 (either direction).
PLPath row_path(const GridSurface& g, int j, int i0, int i1);
// Node values along column i from row j0 to j1.
PLPath column_path(const GridSurface& g, int i, int j0, int j1);

}  // namespace msd
