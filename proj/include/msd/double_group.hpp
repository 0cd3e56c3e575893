#pragma once

#include "msd/crossed_module.hpp"

namespace msd {

// Edges: x bottom (left to right), y right (bottom to top),
// z top (left to right), w left (bottom to top).
// Boundary law: delta(E) = x y z^{-1} w^{-1}.
struct Square {
    GL0Element x, y, z, w;
    GL1Element E;
    double residual = 0.0;  // achieved boundary-law defect
    int cells = 1;          // number of elementary squares composed into this one

    const ModuleDims& dims() const { return E.dims; }
};

constexpr double kSquareTol = 1e-8;

// Frobenius defect of delta(E) against x y z^{-1} w^{-1} (max over the two components).
double boundary_residual(const GL0Element& x, const GL0Element& y, const GL0Element& z,
                         const GL0Element& w, const GL1Element& e);

Square make_square(const GL0Element& x, const GL0Element& y, const GL0Element& z,
                   const GL0Element& w, const GL1Element& e, double tol = kSquareTol);

// (x x', y', z z', w; (x |> E') * E), requires S.y = S2.w.
Square hcompose(const Square& s, const Square& s2, double tol = kSquareTol);
// (x, y y', z', w w'; E * (w |> E')), requires S.z = S2.x.
Square vcompose(const Square& s, const Square& s2, double tol = kSquareTol);

Square h_identity(const GL0Element& x);  // (e, x, e, x; 0)
Square v_identity(const GL0Element& x);  // (x, e, x, e; 0)
Square h_inverse(const Square& s);       // (x^-1, w, z^-1, y; x^-1 |> E^-*)
Square v_inverse(const Square& s);       // (z, y^-1, x, w^-1; w^-1 |> E^-*)

double edge_distance(const GL0Element& a, const GL0Element& b);
double square_distance(const Square& a, const Square& b);

}  // namespace msd
