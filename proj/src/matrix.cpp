#include "msd/matrix.hpp"

#include <cmath>

namespace msd {

namespace {

constexpr int kPadeOrder = 8;

double pade_coeff(int k) {
    // c_k = (2q-k)! q! / ((2q)! k! (q-k)!)
    double c = 1.0;
    for (int j = 1; j <= k; ++j) {
        c *= static_cast<double>(kPadeOrder - j + 1) /
             (static_cast<double>(2 * kPadeOrder - j + 1) * j);
    }
    return c;
}

}  // namespace

bool all_finite(const Mat& m) {
    return m.allFinite();
}

Mat expm(const Mat& m) {
    if (m.rows() != m.cols()) {
        throw DimensionError("expm: matrix is " + std::to_string(m.rows()) + "x" +
                             std::to_string(m.cols()) + ", not square");
    }
    if (!m.allFinite()) throw NumericError("expm: non-finite entries");
    const Eigen::Index n = m.rows();
    if (n == 0) return Mat(0, 0);

    const double norm1 = m.cwiseAbs().colwise().sum().maxCoeff();
    int squarings = 0;
    if (norm1 > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm1 / 0.5)));
    const Mat a = m / std::ldexp(1.0, squarings);

    const Mat id = Mat::Identity(n, n);
    Mat num = id;
    Mat den = id;
    Mat power = id;
    for (int k = 1; k <= kPadeOrder; ++k) {
        power = power * a;
        const double c = pade_coeff(k);
        num += c * power;
        den += ((k % 2) ? -c : c) * power;
    }
    Mat r = den.partialPivLu().solve(num);
    for (int i = 0; i < squarings; ++i) r = r * r;
    if (!r.allFinite()) throw NumericError("expm: overflow");
    return r;
}

Mat integral_via_expm(const Mat& a, const Mat& c, const Mat& b, double s) {
    if (a.rows() != a.cols() || b.rows() != b.cols() || c.rows() != a.rows() ||
        c.cols() != b.rows()) {
        throw DimensionError("integral_via_expm: A is " + std::to_string(a.rows()) + "x" +
                             std::to_string(a.cols()) + ", C is " + std::to_string(c.rows()) +
                             "x" + std::to_string(c.cols()) + ", B is " +
                             std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    }
    const Eigen::Index n = a.rows(), m = b.rows();
    Mat big = Mat::Zero(n + m, n + m);
    big.topLeftCorner(n, n) = -a * s;
    big.topRightCorner(n, m) = c * s;
    big.bottomRightCorner(m, m) = -b * s;
    const Mat e = expm(big);
    // top-right block is e^{-sA} int_0^s e^{rA} C e^{-rB} dr
    return expm(a * s) * e.topRightCorner(n, m);
}

double frobenius_inner(const Mat& m1, const Mat& m2) {
    if (m1.rows() != m2.rows() || m1.cols() != m2.cols()) {
        throw DimensionError("frobenius_inner: shapes " + std::to_string(m1.rows()) + "x" +
                             std::to_string(m1.cols()) + " and " + std::to_string(m2.rows()) +
                             "x" + std::to_string(m2.cols()));
    }
    return m1.cwiseProduct(m2).sum();
}

LuResult lu_solve(const Mat& a, const Mat& b) {
    if (a.rows() != a.cols() || b.rows() != a.rows()) {
        throw DimensionError("lu_solve: shape mismatch");
    }
    LuResult out;
    if (a.rows() == 0) {
        out.x = Mat(0, b.cols());
        out.rcond = 1.0;
        return out;
    }
    Eigen::PartialPivLU<Mat> lu(a);
    out.rcond = lu.rcond();
    if (!(out.rcond > 0.0) || !std::isfinite(out.rcond)) {
        throw NumericError("lu_solve: singular matrix");
    }
    out.x = lu.solve(b);
    return out;
}

Mat inverse(const Mat& a, double* rcond) {
    LuResult r = lu_solve(a, Mat::Identity(a.rows(), a.cols()));
    if (rcond) *rcond = r.rcond;
    return std::move(r.x);
}

Mat block_diag(const Mat& a, const Mat& b) {
    Mat out = Mat::Zero(a.rows() + b.rows(), a.cols() + b.cols());
    out.topLeftCorner(a.rows(), a.cols()) = a;
    out.bottomRightCorner(b.rows(), b.cols()) = b;
    return out;
}

Mat commutator(const Mat& a, const Mat& b) {
    return a * b - b * a;
}

}  // namespace msd
