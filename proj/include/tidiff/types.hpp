#pragma once

#include <Eigen/Dense>
#include <complex>

namespace tidiff {

using cplx = std::complex<double>;

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using CVec2 = Eigen::Vector2cd;
using CMat2 = Eigen::Matrix2cd;
using CVec3 = Eigen::Vector3cd;
using CMat3 = Eigen::Matrix3cd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cplx kI{0.0, 1.0};

/// Square root with the limiting-absorption rule: a negative real argument
/// is read as lying just above the cut, so the result is +i*sqrt(|z|).
inline cplx csqrt(cplx z) {
    if (z.imag() == 0.0 && z.real() < 0.0) return {0.0, std::sqrt(-z.real())};
    return std::sqrt(z);
}

/// cos and sin of an angle in degrees, exact at multiples of 90.
inline void sincos_deg(double deg, double& s, double& c) {
    double r = std::fmod(deg, 360.0);
    if (r < 0) r += 360.0;
    if (r == 0.0) { s = 0; c = 1; return; }
    if (r == 90.0) { s = 1; c = 0; return; }
    if (r == 180.0) { s = 0; c = -1; return; }
    if (r == 270.0) { s = -1; c = 0; return; }
    const double a = r * kPi / 180.0;
    s = std::sin(a);
    c = std::cos(a);
}

inline double deg2rad(double d) { return d * kPi / 180.0; }
inline double rad2deg(double r) { return r * 180.0 / kPi; }

}  // namespace tidiff
