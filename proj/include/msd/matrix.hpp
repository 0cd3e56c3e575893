#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace msd {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

// Shape or dimension disagreement between inputs.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Numerical failure: non-finite data, singular systems, quadrature that
// did not converge, boundary residuals above tolerance.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

bool all_finite(const Mat& m);

// e^M by scaling and squaring with a diagonal Pade approximant.
Mat expm(const Mat& m);

// int_0^s e^{rA} C e^{-rB} dr, read off one augmented exponential.
Mat integral_via_expm(const Mat& a, const Mat& c, const Mat& b, double s);

double frobenius_inner(const Mat& m1, const Mat& m2);

struct LuResult {
    Mat x;
    double rcond = 0.0;  // reciprocal condition estimate (1-norm)
};

// Solves A X = B by partially pivoted LU.
LuResult lu_solve(const Mat& a, const Mat& b);
Mat inverse(const Mat& a, double* rcond = nullptr);

Mat block_diag(const Mat& a, const Mat& b);
Mat commutator(const Mat& a, const Mat& b);

}  // namespace msd
