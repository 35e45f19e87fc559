#include "hypoindex/frame_calculus.hpp"

#include <cmath>

#include "hypoindex/error.hpp"

namespace hypoindex {

namespace {

using CVec3 = Eigen::Vector3cd;

constexpr std::complex<double> kI{0.0, 1.0};

Point3 shifted(const Point3& p, int axis, double delta) {
    Point3 q = p;
    q[static_cast<std::size_t>(axis)] += delta;
    return q;
}

Vec3 central_difference(const VectorFn& w, const Point3& p, int axis, double h) {
    return (w(shifted(p, axis, h)) - w(shifted(p, axis, -h))) / (2.0 * h);
}

}  // namespace

Vec3 VectorFieldExpr::operator()(const Point3& p) const {
    return {components[0](p), components[1](p), components[2](p)};
}

VectorFn VectorFieldExpr::as_function() const {
    return [fields = *this](const Point3& p) { return fields(p); };
}

VectorFieldExpr VectorFieldExpr::parse(std::string_view text) {
    VectorFieldExpr v;
    std::size_t start = 0;
    for (int i = 0; i < 3; ++i) {
        const std::size_t comma = text.find(',', start);
        const bool last = i == 2;
        if (last != (comma == std::string_view::npos)) {
            throw ExpressionError("vector field needs exactly 3 comma-separated components",
                                  comma == std::string_view::npos ? text.size() : comma);
        }
        const std::size_t end = last ? text.size() : comma;
        try {
            v.components[static_cast<std::size_t>(i)] = parse_field(text.substr(start, end - start));
        } catch (const ExpressionError& e) {
            throw ExpressionError("component " + std::to_string(i) + ": syntax error", start + e.position());
        }
        start = end + 1;
    }
    return v;
}

Eigen::Matrix3d jacobian(const VectorFn& w, const Point3& p, double h) {
    if (!(h > 0.0)) throw DomainError("jacobian: step must be positive");
    Eigen::Matrix3d jac;
    for (int axis = 0; axis < 3; ++axis) {
        const Vec3 coarse = central_difference(w, p, axis, h);
        const Vec3 fine = central_difference(w, p, axis, h / 2.0);
        jac.col(axis) = (4.0 * fine - coarse) / 3.0;
    }
    return jac;
}

Vec3 lie_bracket(const VectorFn& v, const VectorFn& w, const Point3& p, double h) {
    const Vec3 dw_v = jacobian(w, p, h) * v(p);
    const Vec3 dv_w = jacobian(v, p, h) * w(p);
    return dw_v - dv_w;
}

Vec3 lie_bracket(const VectorFieldExpr& v, const VectorFieldExpr& w, const Point3& p, double h) {
    return lie_bracket(v.as_function(), w.as_function(), p, h);
}

double frame_determinant(const VectorFieldExpr& x, const VectorFieldExpr& y, const Point3& p, double h) {
    Eigen::Matrix3d rows;
    rows.row(0) = x(p).transpose();
    rows.row(1) = y(p).transpose();
    rows.row(2) = lie_bracket(x, y, p, h).transpose();
    return rows.determinant();
}

bool bracket_span_check(const VectorFieldExpr& x, const VectorFieldExpr& y, std::span<const Point3> points,
                        double tol, double h) {
    for (const auto& p : points) {
        if (!(std::abs(frame_determinant(x, y, p, h)) > tol)) return false;
    }
    return true;
}

std::vector<Point3> chart_grid(int n) {
    if (n < 1) throw DomainError("chart_grid: need at least one point per axis");
    std::vector<Point3> points;
    points.reserve(static_cast<std::size_t>(n * n * n));
    auto coord = [n](int i) { return n == 1 ? 0.0 : -1.0 + 2.0 * i / (n - 1); };
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) points.push_back({coord(i), coord(j), coord(k)});
        }
    }
    return points;
}

RotatedCoefficients rotate_presentation(const LocalPresentation& pres, const RotationField& rot, const Point3& p,
                                        double h) {
    const VectorFn x = pres.x.as_function();
    const VectorFn y = pres.y.as_function();
    const ScalarField theta = rot.theta;
    const VectorFn a = [x, y, theta](const Point3& q) {
        const double th = theta(q);
        return Vec3(std::cos(th) * x(q) + std::sin(th) * y(q));
    };
    const VectorFn b = [x, y, theta](const Point3& q) {
        const double th = theta(q);
        return Vec3(-std::sin(th) * x(q) + std::cos(th) * y(q));
    };

    const Vec3 xp = x(p), yp = y(p), ap = a(p), bp = b(p);
    const Vec3 zp = lie_bracket(x, y, p, h);
    const Vec3 cp = lie_bracket(a, b, p, h);

    // -V^2 = -V^i V^j d_i d_j - ((DV) V)^j d_j, so the first-order part of P in
    // coordinates is -(DX)X - (DY)Y + i alpha X + i beta Y + i gamma Z.
    const CVec3 first_order = (-(jacobian(x, p, h) * xp) - jacobian(y, p, h) * yp).cast<std::complex<double>>() +
                              kI * pres.alpha(p) * xp.cast<std::complex<double>>() +
                              kI * pres.beta(p) * yp.cast<std::complex<double>>() +
                              kI * pres.gamma(p) * zp.cast<std::complex<double>>();
    // Whatever -A^2 - B^2 does not already account for must be
    // i alpha' A + i beta' B + i gamma' C.
    const CVec3 remainder =
        first_order + (jacobian(a, p, h) * ap + jacobian(b, p, h) * bp).cast<std::complex<double>>();

    Eigen::Matrix3cd frame;
    frame.col(0) = ap.cast<std::complex<double>>();
    frame.col(1) = bp.cast<std::complex<double>>();
    frame.col(2) = cp.cast<std::complex<double>>();
    if (std::abs(frame.determinant()) < 1e-12) {
        throw NumericError("rotate_presentation: rotated frame (A, B, [A,B]) is singular at the sample point");
    }
    const CVec3 coeffs = frame.partialPivLu().solve(remainder);

    RotatedCoefficients out;
    out.alpha = coeffs(0) / kI;
    out.beta = coeffs(1) / kI;
    out.gamma = coeffs(2) / kI;
    out.delta = pres.delta(p);
    const Eigen::Matrix3d second = xp * xp.transpose() + yp * yp.transpose();
    const Eigen::Matrix3d rotated = ap * ap.transpose() + bp * bp.transpose();
    out.second_order_residual = (second - rotated).cwiseAbs().maxCoeff();
    return out;
}

}  // namespace hypoindex
