#include "msd/crossed_module.hpp"

#include <cmath>

namespace msd {

Mat ModuleDims::phi() const {
    Mat out = Mat::Zero(v0(), v1());
    out.topLeftCorner(n, n).setIdentity();
    return out;
}

void ModuleDims::validate() const {
    if (n < 0 || m < 0 || p < 0) throw DimensionError("ModuleDims: negative count in " + str());
    if (v1() == 0 && v0() == 0) throw DimensionError("ModuleDims: both spaces empty");
}

std::string ModuleDims::str() const {
    return "(" + std::to_string(n) + "," + std::to_string(m) + "," + std::to_string(p) + ")";
}

void require_same_dims(const ModuleDims& a, const ModuleDims& b, const char* where) {
    if (!(a == b)) {
        throw DimensionError(std::string(where) + ": dims " + a.str() + " vs " + b.str());
    }
}

namespace {

void require_shape(const Mat& x, Eigen::Index r, Eigen::Index c, const char* what) {
    if (x.rows() != r || x.cols() != c) {
        throw DimensionError(std::string(what) + ": expected " + std::to_string(r) + "x" +
                             std::to_string(c) + ", got " + std::to_string(x.rows()) + "x" +
                             std::to_string(x.cols()));
    }
}

double max_abs(const Mat& x) {
    return x.size() == 0 ? 0.0 : x.cwiseAbs().maxCoeff();
}

// Largest violation of the GL0/gl0 pattern.
double pattern_defect(const ModuleDims& d, const Mat& f, const Mat& g) {
    const int n = d.n, m = d.m, p = d.p;
    double defect = max_abs(f.topRightCorner(n, m));
    defect = std::max(defect, max_abs(g.bottomLeftCorner(p, n)));
    defect = std::max(defect, max_abs(f.topLeftCorner(n, n) - g.topLeftCorner(n, n)));
    return defect;
}

void project_pattern(const ModuleDims& d, Mat& f, Mat& g) {
    const int n = d.n, m = d.m, p = d.p;
    f.topRightCorner(n, m).setZero();
    g.bottomLeftCorner(p, n).setZero();
    g.topLeftCorner(n, n) = f.topLeftCorner(n, n);
}

}  // namespace

GL0Element GL0Element::identity(const ModuleDims& dims) {
    return {dims, Mat::Identity(dims.v1(), dims.v1()), Mat::Identity(dims.v0(), dims.v0())};
}

GL0Element GL0Element::make(const ModuleDims& dims, Mat f, Mat g) {
    require_shape(f, dims.v1(), dims.v1(), "GL0Element F");
    require_shape(g, dims.v0(), dims.v0(), "GL0Element G");
    if (!f.allFinite() || !g.allFinite()) throw NumericError("GL0Element: non-finite entries");
    const double defect = pattern_defect(dims, f, g);
    if (defect > kBlockTol) {
        throw NumericError("GL0Element: block pattern violated by " + std::to_string(defect));
    }
    project_pattern(dims, f, g);
    return {dims, std::move(f), std::move(g)};
}

GL0Element GL0Element::project(const ModuleDims& dims, Mat f, Mat g) {
    require_shape(f, dims.v1(), dims.v1(), "GL0Element F");
    require_shape(g, dims.v0(), dims.v0(), "GL0Element G");
    project_pattern(dims, f, g);
    return {dims, std::move(f), std::move(g)};
}

GL0Element GL0Element::operator*(const GL0Element& o) const {
    require_same_dims(dims, o.dims, "GL0 product");
    return {dims, F * o.F, G * o.G};
}

GL0Element GL0Element::inverse() const {
    GL0Element out{dims, msd::inverse(F), msd::inverse(G)};
    project_pattern(dims, out.F, out.G);
    return out;
}

double GL0Element::block_defect() const {
    return pattern_defect(dims, F, G);
}

GL1Element GL1Element::zero(const ModuleDims& dims) {
    return {dims, Mat::Zero(dims.v1(), dims.v0())};
}

GL1Element GL1Element::make(const ModuleDims& dims, Mat h) {
    require_shape(h, dims.v1(), dims.v0(), "GL1Element");
    if (!h.allFinite()) throw NumericError("GL1Element: non-finite entries");
    return {dims, std::move(h)};
}

Gl0Element Gl0Element::zero(const ModuleDims& dims) {
    return {dims, Mat::Zero(dims.v1(), dims.v1()), Mat::Zero(dims.v0(), dims.v0())};
}

Gl0Element Gl0Element::make(const ModuleDims& dims, Mat x, Mat y) {
    require_shape(x, dims.v1(), dims.v1(), "Gl0Element X");
    require_shape(y, dims.v0(), dims.v0(), "Gl0Element Y");
    const double defect = pattern_defect(dims, x, y);
    if (defect > kBlockTol) {
        throw NumericError("Gl0Element: block pattern violated by " + std::to_string(defect));
    }
    project_pattern(dims, x, y);
    return {dims, std::move(x), std::move(y)};
}

Gl1Element Gl1Element::zero(const ModuleDims& dims) {
    return {dims, Mat::Zero(dims.v1(), dims.v0())};
}

Gl1Element Gl1Element::make(const ModuleDims& dims, Mat z) {
    require_shape(z, dims.v1(), dims.v0(), "Gl1Element");
    return {dims, std::move(z)};
}

// H phi keeps the first n columns of H.
static Mat right_phi(const ModuleDims& d, const Mat& h) {
    Mat out = Mat::Zero(d.v1(), d.v1());
    out.leftCols(d.n) = h.leftCols(d.n);
    return out;
}

// phi H keeps the first n rows of H.
static Mat left_phi(const ModuleDims& d, const Mat& h) {
    Mat out = Mat::Zero(d.v0(), d.v0());
    out.topRows(d.n) = h.topRows(d.n);
    return out;
}

GL1Element star_mul(const GL1Element& h, const GL1Element& h2) {
    require_same_dims(h.dims, h2.dims, "star_mul");
    const int n = h.dims.n;
    Mat out = h.H + h2.H;
    out.noalias() += h.H.leftCols(n) * h2.H.topRows(n);
    return {h.dims, std::move(out)};
}

GL1Element star_inv(const GL1Element& h) {
    const ModuleDims& d = h.dims;
    Mat ihp = right_phi(d, h.H);
    ihp.diagonal().array() += 1.0;
    LuResult r = lu_solve(ihp, h.H);
    if (r.rcond < 1e-14) throw NumericError("star_inv: I + H phi is singular");
    return {d, -r.x};
}

PhiSeries phi_series(const Mat& r) {
    const Eigen::Index n = r.rows();
    Mat big = Mat::Zero(3 * n, 3 * n);
    big.topLeftCorner(n, n) = r;
    big.block(0, n, n, n).setIdentity();
    big.block(n, 2 * n, n, n).setIdentity();
    const Mat e = expm(big);
    return {e.block(0, n, n, n), e.block(0, 2 * n, n, n)};
}

GL1Element star_exp(const Gl1Element& z) {
    const ModuleDims& d = z.dims;
    const Blocks b = split_blocks(d, z.Z);
    const PhiSeries ps = phi_series(b.R);
    Mat r = expm(b.R);
    r.diagonal().array() -= 1.0;
    const Mat s = ps.phi1 * b.S;
    const Mat t = b.T * ps.phi1;
    const Mat u = b.U + b.T * ps.phi2 * b.S;
    return {d, join_blocks(d, r, s, t, u)};
}

GL0Element delta(const GL1Element& h) {
    const ModuleDims& d = h.dims;
    Mat f = right_phi(d, h.H);
    f.diagonal().array() += 1.0;
    Mat g = left_phi(d, h.H);
    g.diagonal().array() += 1.0;
    return {d, std::move(f), std::move(g)};
}

Gl0Element delta(const Gl1Element& z) {
    return {z.dims, right_phi(z.dims, z.Z), left_phi(z.dims, z.Z)};
}

GL1Element act(const GL0Element& g, const GL1Element& h) {
    require_same_dims(g.dims, h.dims, "act");
    const Mat ginv_t = lu_solve(g.G.transpose(), (g.F * h.H).transpose()).x;
    return {h.dims, ginv_t.transpose()};
}

Gl1Element act(const GL0Element& g, const Gl1Element& z) {
    require_same_dims(g.dims, z.dims, "act");
    const Mat ginv_t = lu_solve(g.G.transpose(), (g.F * z.Z).transpose()).x;
    return {z.dims, ginv_t.transpose()};
}

Gl1Element act(const Gl0Element& x, const Gl1Element& z) {
    require_same_dims(x.dims, z.dims, "act");
    return {z.dims, x.X * z.Z - z.Z * x.Y};
}

Gl1Element star_commutator(const Gl1Element& z, const Gl1Element& z2) {
    require_same_dims(z.dims, z2.dims, "star_commutator");
    const int n = z.dims.n;
    Mat out = z.Z.leftCols(n) * z2.Z.topRows(n);
    out.noalias() -= z2.Z.leftCols(n) * z.Z.topRows(n);
    return {z.dims, std::move(out)};
}

Blocks split_blocks(const ModuleDims& d, const Mat& h) {
    require_shape(h, d.v1(), d.v0(), "split_blocks");
    const int n = d.n, m = d.m, p = d.p;
    return {h.topLeftCorner(n, n), h.topRightCorner(n, p), h.bottomLeftCorner(m, n),
            h.bottomRightCorner(m, p)};
}

Mat join_blocks(const ModuleDims& d, const Mat& r, const Mat& s, const Mat& t, const Mat& u) {
    const int n = d.n, m = d.m, p = d.p;
    Mat h(n + m, n + p);
    h.topLeftCorner(n, n) = r;
    h.topRightCorner(n, p) = s;
    h.bottomLeftCorner(m, n) = t;
    h.bottomRightCorner(m, p) = u;
    return h;
}

}  // namespace msd
