#pragma once

#include <Eigen/Dense>
#include <string>

namespace tidiff {

/// Transversely isotropic material in SI units (moduli in Pa, rho in kg/m^3).
/// The symmetry axis is e3 of the medium frame.
struct TIMaterial {
    std::string name;
    double rho = 0;
    double A11d = 0, A12d = 0, A13d = 0, A33d = 0, B1d = 0;

    /// B3 = (A11 - A12)/2, the in-plane shear modulus.
    double B3d() const { return 0.5 * (A11d - A12d); }
};

/// Dimensionless moduli, scaled by rho*c0^2 with c0 = sqrt(B1d/rho), so B1 = 1.
struct NondimMaterial {
    std::string name;
    double A11 = 0, A12 = 0, A13 = 0, A33 = 0, B1 = 1, B3 = 0;
    double c0 = 1;            ///< reference speed, m/s
    double k0_per_omega = 1;  ///< 1/c0, s/m

    double B4() const { return A13 * A13 + 2 * A13 * B1 - A11 * A33; }
    /// Same material with A11 and A33 exchanged (used by the in-plane axis case).
    NondimMaterial swapped() const;
};

/// Throws StabilityViolation naming the first failed inequality.
void check_stability(const TIMaterial& m);

NondimMaterial nondimensionalize(const TIMaterial& m);

/// Dimensionless material from moduli already scaled so that B1 = 1.
NondimMaterial make_nondim(double A11, double A12, double A13, double A33,
                           const std::string& name = "");

/// 6x6 stiffness in Voigt order (11,22,33,23,31,12) with 2*B1, 2*B3 on the shear diagonal.
Eigen::Matrix<double, 6, 6> voigt_matrix(const NondimMaterial& m);

/// Reads keys name, rho, A11, A12, A13, A33, B1 from JSON text. Throws ParseError.
TIMaterial parse_material_json(const std::string& text);
TIMaterial load_material_file(const std::string& path);

/// Stable 64-bit FNV-1a hash of the material definition, as 16 hex digits.
std::string material_hash(const TIMaterial& m);

}  // namespace tidiff
