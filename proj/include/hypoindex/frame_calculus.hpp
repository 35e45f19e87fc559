#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "hypoindex/expression.hpp"

namespace hypoindex {

inline constexpr double kDefaultStep = 1e-3;

using Vec3 = Eigen::Vector3d;
using VectorFn = std::function<Vec3(const Point3&)>;

/// a dx + b dy + c dz with expression coefficients.
struct VectorFieldExpr {
    std::array<ScalarField, 3> components;

    Vec3 operator()(const Point3& p) const;
    VectorFn as_function() const;

    /// Parses "a, b, c" (three comma-separated expressions).
    static VectorFieldExpr parse(std::string_view text);
};

/// Complex coefficient stored as real and imaginary fields.
struct ComplexField {
    ScalarField re;
    ScalarField im;

    std::complex<double> operator()(const Point3& p) const { return {re(p), im(p)}; }
};

/// P = -X^2 - Y^2 + i alpha X + i beta Y + i gamma [X,Y] + delta.
struct LocalPresentation {
    VectorFieldExpr x;
    VectorFieldExpr y;
    ComplexField alpha;
    ComplexField beta;
    ComplexField gamma;
    ComplexField delta;
};

/// Pointwise rotation (a b; c d) = (cos th, sin th; -sin th, cos th) in SO(2).
struct RotationField {
    ScalarField theta;
};

/// Jacobian d W^i / d x^j at p by central differences with one Richardson step.
Eigen::Matrix3d jacobian(const VectorFn& w, const Point3& p, double h = kDefaultStep);

/// [V, W](p) = (DW) V - (DV) W, accurate to O(h^4) on smooth fields.
Vec3 lie_bracket(const VectorFn& v, const VectorFn& w, const Point3& p, double h = kDefaultStep);
Vec3 lie_bracket(const VectorFieldExpr& v, const VectorFieldExpr& w, const Point3& p, double h = kDefaultStep);

/// det of the rows X(p), Y(p), [X,Y](p).
double frame_determinant(const VectorFieldExpr& x, const VectorFieldExpr& y, const Point3& p, double h = kDefaultStep);

/// True iff X, Y and [X,Y] span R^3 (|det| > tol) at every point.
bool bracket_span_check(const VectorFieldExpr& x, const VectorFieldExpr& y, std::span<const Point3> points,
                        double tol, double h = kDefaultStep);

/// n^3 grid points covering the chart cube [-1,1]^3.
std::vector<Point3> chart_grid(int n);

struct RotatedCoefficients {
    std::complex<double> alpha;
    std::complex<double> beta;
    std::complex<double> gamma;
    std::complex<double> delta;
    /// max |X X^T + Y Y^T - A A^T - B B^T| at p: the rotated frame must carry
    /// the same second-order part.
    double second_order_residual = 0.0;
};

/// Coefficients of the same operator in the rotated frame A = aX + bY,
/// B = cX + dY, C = [A,B], read off at p by solving the first-order part
/// against (A, B, C). Throws NumericError when (A, B, C) is singular at p.
RotatedCoefficients rotate_presentation(const LocalPresentation& pres, const RotationField& rot, const Point3& p,
                                        double h = kDefaultStep);

}  // namespace hypoindex
