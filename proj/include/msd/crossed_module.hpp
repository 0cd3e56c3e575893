#pragma once

#include "msd/matrix.hpp"

#include <string>

namespace msd {

// V1 = R^{n+m} --phi--> V0 = R^{n+p}, phi = [[I_n,0],[0,0]].
struct ModuleDims {
    int n = 0;
    int m = 0;
    int p = 0;

    int v1() const { return n + m; }
    int v0() const { return n + p; }
    Mat phi() const;  // (n+p) x (n+m)
    void validate() const;
    std::string str() const;
    bool operator==(const ModuleDims&) const = default;
};

constexpr double kBlockTol = 1e-10;

// Group element of GL0: invertible chain map pair.
// F = [[A,0],[B,C]] on V1, G = [[A,D],[0,E]] on V0.
struct GL0Element {
    ModuleDims dims;
    Mat F;
    Mat G;

    static GL0Element identity(const ModuleDims& dims);
    // Checks block pattern and shared A within kBlockTol; throws otherwise.
    static GL0Element make(const ModuleDims& dims, Mat f, Mat g);
    // Zeroes the forbidden blocks and copies A from F into G.
    static GL0Element project(const ModuleDims& dims, Mat f, Mat g);

    GL0Element operator*(const GL0Element& o) const;
    GL0Element inverse() const;
    double block_defect() const;
};

// Group element of GL1: H = [[A-I, D],[B, U]], (n+m) x (n+p).
struct GL1Element {
    ModuleDims dims;
    Mat H;

    static GL1Element zero(const ModuleDims& dims);
    static GL1Element make(const ModuleDims& dims, Mat h);
};

// Lie algebra gl0: pair (X, Y) with the gl0 zero pattern.
struct Gl0Element {
    ModuleDims dims;
    Mat X;
    Mat Y;

    static Gl0Element zero(const ModuleDims& dims);
    static Gl0Element make(const ModuleDims& dims, Mat x, Mat y);
};

// Lie algebra gl1: any (n+m) x (n+p) matrix.
struct Gl1Element {
    ModuleDims dims;
    Mat Z;

    static Gl1Element zero(const ModuleDims& dims);
    static Gl1Element make(const ModuleDims& dims, Mat z);
};

// H * H2 = H + H2 + H phi H2
GL1Element star_mul(const GL1Element& h, const GL1Element& h2);
// -(I + H phi)^{-1} H
GL1Element star_inv(const GL1Element& h);
// Lie exponential of the star group, closed block form.
GL1Element star_exp(const Gl1Element& z);

// (H phi + I, phi H + I)
GL0Element delta(const GL1Element& h);
// (Z phi, phi Z)
Gl0Element delta(const Gl1Element& z);

// F x G^{-1}
GL1Element act(const GL0Element& g, const GL1Element& h);
Gl1Element act(const GL0Element& g, const Gl1Element& z);
// X Z - Z Y
Gl1Element act(const Gl0Element& x, const Gl1Element& z);

// Z phi Z2 - Z2 phi Z
Gl1Element star_commutator(const Gl1Element& z, const Gl1Element& z2);

// Sum_{k>=1} R^{k-1}/k! and Sum_{k>=2} R^{k-2}/k! from one bordered exponential.
struct PhiSeries {
    Mat phi1;
    Mat phi2;
};
PhiSeries phi_series(const Mat& r);

// Block views of an (n+m) x (n+p) matrix.
struct Blocks {
    Mat R, S, T, U;
};
Blocks split_blocks(const ModuleDims& dims, const Mat& h);
Mat join_blocks(const ModuleDims& dims, const Mat& r, const Mat& s, const Mat& t, const Mat& u);

void require_same_dims(const ModuleDims& a, const ModuleDims& b, const char* where);

}  // namespace msd
