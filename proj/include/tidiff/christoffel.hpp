#pragma once

#include "tidiff/material.hpp"
#include "tidiff/types.hpp"

#include <array>
#include <iosfwd>
#include <vector>

namespace tidiff {

/// Wave mode labels. The numeric value is the branch index used throughout:
/// 1 is the + root of the quadratic factor, 2 the - root, 3 the SH factor.
enum class Mode { qP = 1, qSV = 2, qSH = 3 };

inline int branch_of(Mode m) { return static_cast<int>(m); }
const char* mode_name(Mode m);
Mode parse_mode(const std::string& s);

/// Kelvin-Christoffel matrix of a TI medium (symmetry axis e3), valid for complex xi.
template <class T>
Eigen::Matrix<T, 3, 3> christoffel_matrix(const Eigen::Matrix<T, 3, 1>& x, const NondimMaterial& m) {
    const T x1 = x(0), x2 = x(1), x3 = x(2);
    const double c = m.A13 + m.B1;
    Eigen::Matrix<T, 3, 3> L;
    L(0, 0) = m.A11 * x1 * x1 + m.B3 * x2 * x2 + m.B1 * x3 * x3;
    L(1, 1) = m.B3 * x1 * x1 + m.A11 * x2 * x2 + m.B1 * x3 * x3;
    L(2, 2) = m.B1 * (x1 * x1 + x2 * x2) + m.A33 * x3 * x3;
    L(0, 1) = L(1, 0) = (m.A11 - m.B3) * x1 * x2;
    L(0, 2) = L(2, 0) = c * x1 * x3;
    L(1, 2) = L(2, 1) = c * x2 * x3;
    return L;
}

/// Partial derivative of the Christoffel matrix with respect to xi_j (j = 0,1,2).
template <class T>
Eigen::Matrix<T, 3, 3> christoffel_derivative(int j, const Eigen::Matrix<T, 3, 1>& x,
                                              const NondimMaterial& m) {
    const T x1 = x(0), x2 = x(1), x3 = x(2);
    const double c = m.A13 + m.B1, e = m.A11 - m.B3;
    const T z = T(0);
    Eigen::Matrix<T, 3, 3> D;
    if (j == 0)
        D << 2.0 * m.A11 * x1, e * x2, c * x3,
             e * x2, 2.0 * m.B3 * x1, z,
             c * x3, z, 2.0 * m.B1 * x1;
    else if (j == 1)
        D << 2.0 * m.B3 * x2, e * x1, z,
             e * x1, 2.0 * m.A11 * x2, c * x3,
             z, c * x3, 2.0 * m.B1 * x2;
    else
        D << 2.0 * m.B1 * x3, z, c * x1,
             z, 2.0 * m.B1 * x3, c * x2,
             c * x1, c * x2, 2.0 * m.A33 * x3;
    return D;
}

/// Quadratic factor of det(L - lambda I) carrying the qP and qSV sheets.
template <class T>
T delta12(const Eigen::Matrix<T, 3, 1>& x, T lambda, const NondimMaterial& m) {
    const T u = x(0) * x(0) + x(1) * x(1), v = x(2) * x(2);
    const double c = m.A13 + m.B1;
    return (m.A11 * u + m.B1 * v - lambda) * (m.B1 * u + m.A33 * v - lambda) - c * c * u * v;
}

/// Linear factor of det(L - lambda I) carrying the qSH sheet.
template <class T>
T delta3(const Eigen::Matrix<T, 3, 1>& x, T lambda, const NondimMaterial& m) {
    return m.B3 * (x(0) * x(0) + x(1) * x(1)) + m.B1 * x(2) * x(2) - lambda;
}

/// Closed-form eigenvalues ordered by branch (see Mode), valid for complex xi.
template <class T>
std::array<T, 3> branch_eigenvalues(const Eigen::Matrix<T, 3, 1>& x, const NondimMaterial& m) {
    const T u = x(0) * x(0) + x(1) * x(1), v = x(2) * x(2);
    const double c = m.A13 + m.B1;
    const T F = (m.A11 - m.B1) * u + (m.B1 - m.A33) * v;
    const T root = std::sqrt(F * F + 4.0 * c * c * u * v);
    const T base = (m.B1 + m.A11) * u + (m.B1 + m.A33) * v;
    return {0.5 * (base + root), 0.5 * (base - root), m.B3 * u + m.B1 * v};
}

struct Eigensystem {
    std::array<double, 3> lambda;  ///< by branch; lambda[0] >= lambda[1]
    std::array<Vec3, 3> p;         ///< unit polarizations by branch
};

Mat3 christoffel_matrix(const Vec3& xi, const NondimMaterial& m);
Eigensystem eigensystem(const Vec3& xi, const NondimMaterial& m);

/// Projector p p^T of the qP/qSV polarization with eigenvalue lambda at a possibly
/// complex xi (lambda must be an eigenvalue of the quadratic factor). Unconjugated
/// normalization V V^T / (V^T V), so it is analytic in xi.
CMat3 projector12(const CVec3& xi, cplx lambda, const NondimMaterial& m);
/// Projector of the qSH polarization.
CMat3 projector3(const CVec3& xi);

/// Green's function of (L - I): sum over branches of p p^T / (lambda - 1).
/// Throws OnSlownessSurface if some |lambda - 1| < tol.
CMat3 transfer_tensor(const Vec3& xi, const NondimMaterial& m, double tol = 1e-10);

/// Wave number lambda(n)^(-1/2) of the given mode along unit n.
double slowness(const Vec3& n, Mode mode, const NondimMaterial& m);

/// Gradient of sqrt(lambda(xi)) at unit n: the group velocity / wave-surface point.
/// Throws DegenerateDirection where the quadratic-factor branches coincide.
Vec3 ray_direction(const Vec3& n, Mode mode, const NondimMaterial& m);

/// Label of a qP/qSV polarization by its angle to the propagation direction.
Mode classify_polarization(const Vec3& n, const Vec3& p);

struct CurvePoint {
    Mode mode;
    double xi1, xi3;  ///< slowness point (lambda = 1)
    double x1, x3;    ///< wave-surface point
};

/// Slowness and wave curves in the xi2 = 0 section, n_points directions per mode.
std::vector<CurvePoint> sample_curves(Mode mode, const NondimMaterial& m, int n_points);

/// Writes rows in the format `mode,xi1,xi3,x1,x3`.
void write_curves_csv(std::ostream& os, const std::vector<CurvePoint>& pts, bool header = true);

}  // namespace tidiff
