#pragma once

#include "tidiff/christoffel.hpp"
#include "tidiff/material.hpp"
#include "tidiff/types.hpp"

#include <string>

namespace tidiff {

/// Orientation of the symmetry axis relative to the crack.
/// The crack occupies x3' = 0, x1' < 0 in the crack frame; its edge is the x2' axis.
enum class CrackCase {
    AxisPerp,     ///< symmetry axis along the crack normal
    AxisInPlane,  ///< symmetry axis along x1', in the crack plane and normal to the edge
};

const char* case_name(CrackCase c);
CrackCase parse_case(const std::string& s);

/// Rotation Q with xi' = Q xi (medium to crack frame).
Mat3 rotation_matrix(CrackCase c);

/// Stress operator blocks: sigma_ij = Sigma^(i)_jk(i xi) u_k in the medium frame,
/// returned without the factor i. Index i is 0-based.
template <class T>
Eigen::Matrix<T, 3, 3> sigma_matrix(int i, const Eigen::Matrix<T, 3, 1>& x, const NondimMaterial& m) {
    const T x1 = x(0), x2 = x(1), x3 = x(2), z = T(0);
    Eigen::Matrix<T, 3, 3> S;
    if (i == 0)
        S << m.A11 * x1, m.A12 * x2, m.A13 * x3,
             m.B3 * x2, m.B3 * x1, z,
             m.B1 * x3, z, m.B1 * x1;
    else if (i == 1)
        S << m.B3 * x2, m.B3 * x1, z,
             m.A12 * x1, m.A11 * x2, m.A13 * x3,
             z, m.B1 * x3, m.B1 * x2;
    else
        S << m.B1 * x3, z, m.B1 * x1,
             z, m.B1 * x3, m.B1 * x2,
             m.A13 * x1, m.A13 * x2, m.A33 * x3;
    return S;
}

/// Displacement-to-traction operator on the crack plane: the traction (medium components)
/// on the face with normal e3' is i*S(xi')*u for a plane wave u*exp(i xi'.x').
CMat3 S_operator(const CVec3& xi_crack, CrackCase c, const NondimMaterial& m);

struct IncidentWave {
    CrackCase crack_case;
    Mode mode;
    double phi_in = 0, theta_in = 0;  ///< degrees
    Vec3 n_in;                        ///< unit direction, crack frame
    double k = 0;                     ///< wave number lambda(n)^(-1/2)
    Vec3 k_in;                        ///< wave vector, crack frame
    Vec3 p_hat;                       ///< polarization, medium frame
    CVec3 t_hat;                      ///< traction amplitude i S(k') p, medium frame
    double xi2 = 0;                   ///< transform parameter, -k'_2
    Vec3 group_velocity;              ///< crack frame
    /// Label of the polarization by its angle to n (qSH stays qSH).
    Mode polarization_label;
    /// Vertical energy flux is nonzero, so the wave reaches one crack face.
    bool reaches_face = true;

    double k1() const { return k_in(0); }
};

/// Plane wave of the given mode along n' = (sin(phi)cos(theta), cos(phi), sin(phi)sin(theta)).
/// Throws UnsupportedIncidence for AxisInPlane with phi != 90 or theta outside [0, 360).
IncidentWave incident_wave(CrackCase c, Mode mode, double phi_deg, double theta_deg,
                           const NondimMaterial& m);

}  // namespace tidiff
