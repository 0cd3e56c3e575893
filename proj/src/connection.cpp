#include "msd/connection.hpp"

#include "msd/rng.hpp"

#include <cmath>
#include <sstream>

namespace msd {

int Matrix2Connection::pair_index(int i, int j) const {
    if (!(0 <= i && i < j && j < d)) {
        throw DimensionError("pair_index: need 0 <= i < j < d, got (" + std::to_string(i) + "," +
                             std::to_string(j) + ") with d=" + std::to_string(d));
    }
    return i * d - i * (i + 1) / 2 + (j - i - 1);
}

Mat Matrix2Connection::alpha(int i) const {
    const int n = dims.n, m = dims.m;
    Mat out = Mat::Zero(n + m, n + m);
    out.topLeftCorner(n, n) = A[i];
    out.bottomLeftCorner(m, n) = B[i];
    out.bottomRightCorner(m, m) = C[i];
    return out;
}

Mat Matrix2Connection::beta(int i) const {
    const int n = dims.n, p = dims.p;
    Mat out = Mat::Zero(n + p, n + p);
    out.topLeftCorner(n, n) = A[i];
    out.topRightCorner(n, p) = D[i];
    out.bottomRightCorner(p, p) = E[i];
    return out;
}

Mat Matrix2Connection::gamma(int i, int j) const {
    if (i == j) return Mat::Zero(dims.v1(), dims.v0());
    if (i > j) return -gamma(j, i);
    const int k = pair_index(i, j);
    return join_blocks(dims, R[k], S[k], T[k], U[k]);
}

Mat Matrix2Connection::alpha_of(const Vec& v) const {
    if (v.size() != d) {
        throw DimensionError("alpha_of: vector length " + std::to_string(v.size()) + " vs d=" +
                             std::to_string(d));
    }
    const int n = dims.n, m = dims.m;
    Mat out = Mat::Zero(n + m, n + m);
    for (int i = 0; i < d; ++i) {
        if (v[i] == 0.0) continue;
        out.topLeftCorner(n, n) += v[i] * A[i];
        out.bottomLeftCorner(m, n) += v[i] * B[i];
        out.bottomRightCorner(m, m) += v[i] * C[i];
    }
    return out;
}

Mat Matrix2Connection::beta_of(const Vec& v) const {
    if (v.size() != d) {
        throw DimensionError("beta_of: vector length " + std::to_string(v.size()) + " vs d=" +
                             std::to_string(d));
    }
    const int n = dims.n, p = dims.p;
    Mat out = Mat::Zero(n + p, n + p);
    for (int i = 0; i < d; ++i) {
        if (v[i] == 0.0) continue;
        out.topLeftCorner(n, n) += v[i] * A[i];
        out.topRightCorner(n, p) += v[i] * D[i];
        out.bottomRightCorner(p, p) += v[i] * E[i];
    }
    return out;
}

double Matrix2Connection::norm() const {
    double s = 0.0;
    for (int i = 0; i < d; ++i) s += alpha(i).squaredNorm() + beta(i).squaredNorm();
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) s += gamma(i, j).squaredNorm();
    return std::sqrt(s);
}

namespace {

void check_shape(const Mat& x, int r, int c, const char* name, int idx) {
    if (x.rows() != r || x.cols() != c) {
        std::ostringstream msg;
        msg << "build_semiflat: block " << name << "[" << idx << "] is " << x.rows() << "x"
            << x.cols() << ", expected " << r << "x" << c;
        throw DimensionError(msg.str());
    }
    if (!x.allFinite()) {
        throw NumericError(std::string("build_semiflat: non-finite entries in ") + name);
    }
}

}  // namespace

Matrix2Connection build_semiflat(const ModuleDims& dims, int d, std::vector<Mat> A,
                                 std::vector<Mat> B, std::vector<Mat> C, std::vector<Mat> D,
                                 std::vector<Mat> E, std::vector<Mat> U) {
    dims.validate();
    if (d < 0) throw DimensionError("build_semiflat: negative d");
    const int n = dims.n, m = dims.m, p = dims.p;
    const std::size_t du = static_cast<std::size_t>(d);
    const std::size_t np = static_cast<std::size_t>(Matrix2Connection::pair_count(d));
    if (A.size() != du || B.size() != du || C.size() != du || D.size() != du ||
        E.size() != du) {
        throw DimensionError("build_semiflat: expected " + std::to_string(d) +
                             " blocks per coordinate");
    }
    if (U.size() != np) {
        throw DimensionError("build_semiflat: expected " + std::to_string(np) + " U blocks, got " +
                             std::to_string(U.size()));
    }
    for (int i = 0; i < d; ++i) {
        check_shape(A[i], n, n, "A", i);
        check_shape(B[i], m, n, "B", i);
        check_shape(C[i], m, m, "C", i);
        check_shape(D[i], n, p, "D", i);
        check_shape(E[i], p, p, "E", i);
    }
    for (std::size_t k = 0; k < np; ++k) check_shape(U[k], m, p, "U", static_cast<int>(k));

    for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j) {
            const double rc = commutator(C[i], C[j]).norm();
            const double re = commutator(E[i], E[j]).norm();
            if (rc > 1e-10 || re > 1e-10) {
                std::ostringstream msg;
                msg << "build_semiflat: commutator violation at pair (" << i << "," << j
                    << "): ||[C^i,C^j]||_F = " << rc << ", ||[E^i,E^j]||_F = " << re;
                throw NumericError(msg.str());
            }
        }
    }

    Matrix2Connection w;
    w.dims = dims;
    w.d = d;
    w.A = std::move(A);
    w.B = std::move(B);
    w.C = std::move(C);
    w.D = std::move(D);
    w.E = std::move(E);
    w.U = std::move(U);
    w.R.resize(np);
    w.S.resize(np);
    w.T.resize(np);
    for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j) {
            const int k = w.pair_index(i, j);
            w.R[k] = commutator(w.A[i], w.A[j]);
            w.S[k] = w.A[i] * w.D[j] - w.A[j] * w.D[i] + w.D[i] * w.E[j] - w.D[j] * w.E[i];
            w.T[k] = w.B[i] * w.A[j] - w.B[j] * w.A[i] + w.C[i] * w.B[j] - w.C[j] * w.B[i];
        }
    }
    return w;
}

Matrix2Connection zero_connection(const ModuleDims& dims, int d) {
    const int n = dims.n, m = dims.m, p = dims.p;
    std::vector<Mat> A(d, Mat::Zero(n, n)), B(d, Mat::Zero(m, n)), C(d, Mat::Zero(m, m)),
        D(d, Mat::Zero(n, p)), E(d, Mat::Zero(p, p));
    std::vector<Mat> U(Matrix2Connection::pair_count(d), Mat::Zero(m, p));
    return build_semiflat(dims, d, A, B, C, D, E, U);
}

Matrix2Connection sample_restricted(int n, int d_ambient, std::uint64_t seed,
                                    std::uint64_t stream, double scale) {
    if (n < 1) throw DimensionError("sample_restricted: n must be >= 1");
    if (d_ambient < 0) throw DimensionError("sample_restricted: negative ambient dimension");
    const int d = d_ambient + 2;
    const ModuleDims dims{n, n, n};
    Rng rng(seed, {0x5e5721c7ULL, stream});
    std::vector<Mat> A(d), B(d), C(d), D(d), E(d);
    for (int i = 0; i < d; ++i) {
        A[i] = scale * rng.gauss_matrix(n, n);
        B[i] = scale * rng.gauss_matrix(n, n);
        D[i] = scale * rng.gauss_matrix(n, n);
        C[i] = (i == 0) ? Mat(scale * rng.gauss_matrix(n, n)) : Mat(Mat::Zero(n, n));
        E[i] = (i == 1) ? Mat(scale * rng.gauss_matrix(n, n)) : Mat(Mat::Zero(n, n));
    }
    std::vector<Mat> U(Matrix2Connection::pair_count(d));
    for (auto& u : U) u = scale * rng.gauss_matrix(n, n);
    return build_semiflat(dims, d, A, B, C, D, E, U);
}

Matrix2Connection sample_generic(const ModuleDims& dims, int d, std::uint64_t seed,
                                 double scale) {
    dims.validate();
    const int n = dims.n, m = dims.m, p = dims.p;
    Rng rng(seed, {0x6e6e71cULL});
    const Mat mc = rng.gauss_matrix(m, m) / std::sqrt(std::max(1, m));
    const Mat me = rng.gauss_matrix(p, p) / std::sqrt(std::max(1, p));
    std::vector<Mat> A(d), B(d), C(d), D(d), E(d);
    for (int i = 0; i < d; ++i) {
        A[i] = scale * rng.gauss_matrix(n, n);
        B[i] = scale * rng.gauss_matrix(m, n);
        D[i] = scale * rng.gauss_matrix(n, p);
        const double c0 = rng.gauss(), c1 = rng.gauss(), c2 = rng.gauss();
        C[i] = scale * (c0 * Mat::Identity(m, m) + c1 * mc + c2 * mc * mc);
        const double e0 = rng.gauss(), e1 = rng.gauss(), e2 = rng.gauss();
        E[i] = scale * (e0 * Mat::Identity(p, p) + e1 * me + e2 * me * me);
    }
    std::vector<Mat> U(Matrix2Connection::pair_count(d));
    for (auto& u : U) u = scale * rng.gauss_matrix(m, p);
    return build_semiflat(dims, d, A, B, C, D, E, U);
}

Matrix2Connection with_norm_at_most(const Matrix2Connection& w, double bound) {
    const double nrm = w.norm();
    if (nrm <= bound || nrm == 0.0) return w;
    // alpha, beta, U scale by lambda and R, S, T by lambda^2, so the norm drops at least by lambda.
    const double lambda = bound / nrm;
    auto scaled = [lambda](std::vector<Mat> v) {
        for (auto& x : v) x *= lambda;
        return v;
    };
    return build_semiflat(w.dims, w.d, scaled(w.A), scaled(w.B), scaled(w.C), scaled(w.D),
                          scaled(w.E), scaled(w.U));
}

Gl1Element eval_gamma(const Matrix2Connection& w, const Vec& u, const Vec& v) {
    if (u.size() != w.d || v.size() != w.d) {
        throw DimensionError("eval_gamma: vector lengths " + std::to_string(u.size()) + " and " +
                             std::to_string(v.size()) + " vs d=" + std::to_string(w.d));
    }
    Mat out = Mat::Zero(w.dims.v1(), w.dims.v0());
    for (int i = 0; i < w.d; ++i) {
        for (int j = i + 1; j < w.d; ++j) {
            const double c = u[i] * v[j] - u[j] * v[i];
            if (c != 0.0) out += c * w.gamma(i, j);
        }
    }
    return {w.dims, std::move(out)};
}

Matrix2Connection direct_sum(const Matrix2Connection& w1, const Matrix2Connection& w2) {
    if (w1.d != w2.d) {
        throw DimensionError("direct_sum: d mismatch " + std::to_string(w1.d) + " vs " +
                             std::to_string(w2.d));
    }
    const ModuleDims dims{w1.dims.n + w2.dims.n, w1.dims.m + w2.dims.m, w1.dims.p + w2.dims.p};
    const int d = w1.d;
    std::vector<Mat> A(d), B(d), C(d), D(d), E(d);
    for (int i = 0; i < d; ++i) {
        A[i] = block_diag(w1.A[i], w2.A[i]);
        B[i] = block_diag(w1.B[i], w2.B[i]);
        C[i] = block_diag(w1.C[i], w2.C[i]);
        D[i] = block_diag(w1.D[i], w2.D[i]);
        E[i] = block_diag(w1.E[i], w2.E[i]);
    }
    std::vector<Mat> U(w1.U.size());
    for (std::size_t k = 0; k < U.size(); ++k) U[k] = block_diag(w1.U[k], w2.U[k]);
    return build_semiflat(dims, d, A, B, C, D, E, U);
}

GL1Element direct_sum(const GL1Element& h1, const GL1Element& h2) {
    const ModuleDims dims{h1.dims.n + h2.dims.n, h1.dims.m + h2.dims.m, h1.dims.p + h2.dims.p};
    const Blocks b1 = split_blocks(h1.dims, h1.H);
    const Blocks b2 = split_blocks(h2.dims, h2.H);
    return {dims, join_blocks(dims, block_diag(b1.R, b2.R), block_diag(b1.S, b2.S),
                              block_diag(b1.T, b2.T), block_diag(b1.U, b2.U))};
}

Mat upper_ones(int m, int k) {
    Mat out = Mat::Zero(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = i + k; j < m; ++j) out(i, j) = 1.0;
    return out;
}

Matrix2Connection polynomial_connection(int a, int b, int coord, double c, int d_ambient) {
    if (a < 0 || b < 0) throw DimensionError("polynomial_connection: negative degree");
    if (coord < 0 || coord >= d_ambient) {
        throw DimensionError("polynomial_connection: coordinate " + std::to_string(coord) +
                             " outside ambient dimension " + std::to_string(d_ambient));
    }
    const int d = d_ambient + 2;
    const ModuleDims dims{0, a + 1, b + 1};
    const int m = a + 1, p = b + 1;
    std::vector<Mat> A(d, Mat(0, 0)), B(d, Mat(m, 0)), C(d, Mat::Zero(m, m)), D(d, Mat(0, p)),
        E(d, Mat::Zero(p, p));
    C[0] = upper_ones(m, 1);
    E[1] = -upper_ones(p, 1);
    std::vector<Mat> U(Matrix2Connection::pair_count(d), Mat::Zero(m, p));
    double fact = c;
    for (int k = 2; k <= a; ++k) fact *= k;
    for (int k = 2; k <= b; ++k) fact *= k;
    U[1 + coord](a, 0) = fact;  // pair (s, x_coord) sits at index coord + 1
    return build_semiflat(dims, d, A, B, C, D, E, U);
}

Matrix2Connection trivial_curvature_connection(const std::vector<Mat>& A) {
    if (A.empty()) throw DimensionError("trivial_curvature_connection: no coordinates");
    const int n = static_cast<int>(A[0].rows());
    if (n < 1) throw DimensionError("trivial_curvature_connection: n must be >= 1");
    const int d = static_cast<int>(A.size());
    std::vector<Mat> B(d, Mat(0, n)), C(d, Mat(0, 0)), D(d, Mat(n, 0)), E(d, Mat(0, 0));
    std::vector<Mat> U(Matrix2Connection::pair_count(d), Mat(0, 0));
    return build_semiflat({n, 0, 0}, d, A, B, C, D, E, U);
}

double frobenius_distance(const Matrix2Connection& w1, const Matrix2Connection& w2) {
    require_same_dims(w1.dims, w2.dims, "frobenius_distance");
    if (w1.d != w2.d) {
        throw DimensionError("frobenius_distance: d mismatch " + std::to_string(w1.d) + " vs " +
                             std::to_string(w2.d));
    }
    double s = 0.0;
    for (int i = 0; i < w1.d; ++i) {
        s += (w1.alpha(i) - w2.alpha(i)).squaredNorm();
        s += (w1.beta(i) - w2.beta(i)).squaredNorm();
    }
    for (int i = 0; i < w1.d; ++i)
        for (int j = i + 1; j < w1.d; ++j) s += (w1.gamma(i, j) - w2.gamma(i, j)).squaredNorm();
    return std::sqrt(s);
}

double semiflat_defect(const Matrix2Connection& w) {
    double worst = 0.0;
    for (int i = 0; i < w.d; ++i) {
        for (int j = i + 1; j < w.d; ++j) {
            const Gl0Element dg = delta(Gl1Element{w.dims, w.gamma(i, j)});
            worst = std::max(worst, (dg.X - commutator(w.alpha(i), w.alpha(j))).norm());
            worst = std::max(worst, (dg.Y - commutator(w.beta(i), w.beta(j))).norm());
        }
    }
    return worst;
}

}  // namespace msd
