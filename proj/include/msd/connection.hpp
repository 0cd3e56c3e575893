#pragma once

#include "msd/crossed_module.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace msd {

// Translation-invariant matrix 2-connection on R^d.
// Coordinates are 0-based here; for parametrized surfaces slot 0 is s and slot 1 is t.
// Free data: A^i (n x n), B^i (m x n), C^i (m x m), D^i (n x p), E^i (p x p), U^{ij} (m x p).
// R, S, T are derived so that delta(gamma^{ij}) = ([alpha^i, alpha^j], [beta^i, beta^j]).
class Matrix2Connection {
public:
    ModuleDims dims;
    int d = 0;
    std::vector<Mat> A, B, C, D, E;  // per coordinate
    std::vector<Mat> U;              // per pair i<j, lexicographic
    std::vector<Mat> R, S, T;        // derived, per pair

    static int pair_count(int d) { return d * (d - 1) / 2; }
    int pair_index(int i, int j) const;  // requires i < j

    Mat alpha(int i) const;  // [[A,0],[B,C]]
    Mat beta(int i) const;   // [[A,D],[0,E]]
    Mat gamma(int i, int j) const;  // [[R,S],[T,U]], antisymmetric in (i,j)

    Mat alpha_of(const Vec& v) const;  // sum_i alpha^i v^i
    Mat beta_of(const Vec& v) const;

    double norm() const;  // Frobenius norm over alpha, beta, gamma components
};

Matrix2Connection build_semiflat(const ModuleDims& dims, int d, std::vector<Mat> A,
                                 std::vector<Mat> B, std::vector<Mat> C, std::vector<Mat> D,
                                 std::vector<Mat> E, std::vector<Mat> U);

Matrix2Connection zero_connection(const ModuleDims& dims, int d);

// Dims (n,n,n) on R^{d_ambient+2}; C nonzero only at s (slot 0), E only at t (slot 1).
// Free entries are independent standard normals times `scale`.
Matrix2Connection sample_restricted(int n, int d_ambient, std::uint64_t seed,
                                    std::uint64_t stream = 0, double scale = 1.0);

// Random connection with arbitrary dims: Gaussian A, B, D, U; each C^i (and E^i) is a
// random polynomial in one shared random matrix, so the commutator constraints hold.
Matrix2Connection sample_generic(const ModuleDims& dims, int d, std::uint64_t seed,
                                 double scale = 1.0);

// Scales the free blocks by one factor so that norm() <= bound.
Matrix2Connection with_norm_at_most(const Matrix2Connection& w, double bound);

// sum_{i<j} gamma^{ij} (u^i v^j - u^j v^i)
Gl1Element eval_gamma(const Matrix2Connection& w, const Vec& u, const Vec& v);

Matrix2Connection direct_sum(const Matrix2Connection& w1, const Matrix2Connection& w2);
// Block-diagonal GL1 matrix in the direct-sum block ordering.
GL1Element direct_sum(const GL1Element& h1, const GL1Element& h2);

// U_{m,k}: ones where j >= i + k.
Mat upper_ones(int m, int k);

// Dims (0, a+1, b+1) on R^{d_ambient+2}: alpha^s = U_{a+1,1}, beta^t = -U_{b+1,1},
// gamma^{s,x_i} has c a! b! at entry (a+1, 1). `coord` is the 0-based ambient index.
Matrix2Connection polynomial_connection(int a, int b, int coord, double c, int d_ambient);

// Dims (n,0,0): alpha = beta from the A^i, gamma^{ij} = [A^i, A^j].
Matrix2Connection trivial_curvature_connection(const std::vector<Mat>& A);

double frobenius_distance(const Matrix2Connection& w1, const Matrix2Connection& w2);

// Largest deviation of delta(gamma^{ij}) from the curvature pair.
double semiflat_defect(const Matrix2Connection& w);

}  // namespace msd
