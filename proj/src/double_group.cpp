#include "msd/double_group.hpp"

#include <cmath>
#include <sstream>

namespace msd {

double boundary_residual(const GL0Element& x, const GL0Element& y, const GL0Element& z,
                         const GL0Element& w, const GL1Element& e) {
    const GL0Element loop = x * y * z.inverse() * w.inverse();
    const GL0Element de = delta(e);
    const double rf = (de.F - loop.F).norm() / std::max(1.0, loop.F.norm());
    const double rg = (de.G - loop.G).norm() / std::max(1.0, loop.G.norm());
    return std::max(rf, rg);
}

double edge_distance(const GL0Element& a, const GL0Element& b) {
    const double df = (a.F - b.F).norm() / std::max(1.0, a.F.norm());
    const double dg = (a.G - b.G).norm() / std::max(1.0, a.G.norm());
    return std::max(df, dg);
}

double square_distance(const Square& a, const Square& b) {
    double d = (a.E.H - b.E.H).norm();
    d = std::max(d, edge_distance(a.x, b.x));
    d = std::max(d, edge_distance(a.y, b.y));
    d = std::max(d, edge_distance(a.z, b.z));
    d = std::max(d, edge_distance(a.w, b.w));
    return d;
}

namespace {

Square checked(Square s, double tol) {
    s.residual = boundary_residual(s.x, s.y, s.z, s.w, s.E);
    const double allowed = tol * std::sqrt(static_cast<double>(s.cells));
    if (!(s.residual <= allowed)) {
        std::ostringstream msg;
        msg << "square boundary residual " << s.residual << " exceeds " << allowed;
        throw NumericError(msg.str());
    }
    return s;
}

}  // namespace

Square make_square(const GL0Element& x, const GL0Element& y, const GL0Element& z,
                   const GL0Element& w, const GL1Element& e, double tol) {
    require_same_dims(x.dims, e.dims, "make_square");
    require_same_dims(y.dims, e.dims, "make_square");
    require_same_dims(z.dims, e.dims, "make_square");
    require_same_dims(w.dims, e.dims, "make_square");
    return checked(Square{x, y, z, w, e, 0.0, 1}, tol);
}

Square hcompose(const Square& s, const Square& s2, double tol) {
    require_same_dims(s.dims(), s2.dims(), "hcompose");
    const int cells = s.cells + s2.cells;
    const double allowed = tol * std::sqrt(static_cast<double>(cells));
    const double mismatch = edge_distance(s.y, s2.w);
    if (!(mismatch <= allowed)) {
        throw NumericError("hcompose: right edge and left edge differ by " +
                             std::to_string(mismatch));
    }
    GL1Element e = star_mul(act(s.x, s2.E), s.E);
    return checked(Square{s.x * s2.x, s2.y, s.z * s2.z, s.w, std::move(e), 0.0, cells}, tol);
}

Square vcompose(const Square& s, const Square& s2, double tol) {
    require_same_dims(s.dims(), s2.dims(), "vcompose");
    const int cells = s.cells + s2.cells;
    const double allowed = tol * std::sqrt(static_cast<double>(cells));
    const double mismatch = edge_distance(s.z, s2.x);
    if (!(mismatch <= allowed)) {
        throw NumericError("vcompose: top edge and bottom edge differ by " +
                             std::to_string(mismatch));
    }
    GL1Element e = star_mul(s.E, act(s.w, s2.E));
    return checked(Square{s.x, s.y * s2.y, s2.z, s.w * s2.w, std::move(e), 0.0, cells}, tol);
}

Square h_identity(const GL0Element& x) {
    const GL0Element e = GL0Element::identity(x.dims);
    return Square{e, x, e, x, GL1Element::zero(x.dims), 0.0, 1};
}

Square v_identity(const GL0Element& x) {
    const GL0Element e = GL0Element::identity(x.dims);
    return Square{x, e, x, e, GL1Element::zero(x.dims), 0.0, 1};
}

Square h_inverse(const Square& s) {
    const GL0Element xi = s.x.inverse();
    Square out{xi, s.w, s.z.inverse(), s.y, act(xi, star_inv(s.E)), 0.0, s.cells};
    out.residual = boundary_residual(out.x, out.y, out.z, out.w, out.E);
    return out;
}

Square v_inverse(const Square& s) {
    const GL0Element wi = s.w.inverse();
    Square out{s.z, s.y.inverse(), s.x, wi, act(wi, star_inv(s.E)), 0.0, s.cells};
    out.residual = boundary_residual(out.x, out.y, out.z, out.w, out.E);
    return out;
}

}  // namespace msd
