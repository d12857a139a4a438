#pragma once

#include "tidiff/crackgeom.hpp"
#include "tidiff/material.hpp"
#include "tidiff/types.hpp"

#include <array>
#include <iosfwd>
#include <vector>

namespace tidiff {

/// Branch points of the xi3-roots on the xi1 plane at fixed xi2.
struct BranchData {
    CrackCase crack_case;
    double xi2 = 0;
    /// kappa_0..kappa_4 (AxisPerp) or kappa_0..kappa_3 (AxisInPlane, kappa[4] unused).
    /// Each is real or purely imaginary.
    std::array<cplx, 5> kappa{};
    int count = 5;
    double C0 = 0, C3 = 0, Dconst = 0;  ///< NaN when the quartic does not split (isotropy)
    /// Material in the orientation the closed forms are written for: the in-plane case
    /// exchanges A11 and A33.
    NondimMaterial eff;
    NondimMaterial material;  ///< as given
};

/// Throws OrderingViolation when the branch-point ordering needed by the factorization
/// fails (and enforce_ordering is set).
BranchData branch_points(CrackCase c, double xi2, const NondimMaterial& m,
                         bool enforce_ordering = true);

/// Checks the ordering chain; returns an empty string when it holds.
std::string ordering_failure(const BranchData& bd);

/// gamma_0 = (kappa_0^2 + xi^2)^(1/2); gamma_l = gamma_l^+ gamma_l^- for l >= 1.
cplx gamma(int ell, cplx xi1, const BranchData& bd);
/// gamma_l^+ = (kappa_l + xi)^(1/2), analytic in the upper half-plane.
cplx gamma_plus(int ell, cplx xi1, const BranchData& bd);

/// The two building blocks of the quadratic-sheet roots; n = 1 or 2.
cplx xi3_half(int n, cplx xi1, const BranchData& bd);

struct Xi3Root {
    int alpha = 0;
    cplx value;
    cplx d1, d2;  ///< first and second xi1-derivatives along the sheet
    bool near_branch_point = false;
};

/// Root xi3'^(alpha)(xi1) of the dispersion relation, on the physical sheet
/// (upper half-plane under absorption). alpha = 1,2 lie on the quadratic factor, 3 on SH.
Xi3Root xi3_root(int alpha, cplx xi1, const BranchData& bd, double branch_tol = 1e-4);

/// d xi3/d xi1 and d^2 xi3/d xi1^2 on the sheet through (xi1, xi2, xi3) (crack frame),
/// by implicit differentiation of the dispersion polynomial at lambda = 1.
std::pair<cplx, cplx> sheet_derivatives(int alpha, cplx xi1, cplx xi3, const BranchData& bd);

/// Dispersion polynomial (quadratic factor for alpha = 1,2, SH factor for 3) at lambda = 1.
cplx dispersion_value(int alpha, cplx xi1, cplx xi3, const BranchData& bd);

/// Minimum distance from xi1 to the branch points +-kappa_l and +-i kappa_0.
double branch_distance(cplx xi1, const BranchData& bd);

/// Rayleigh function R(xi1; xi2).
cplx rayleigh_function(cplx xi1, const BranchData& bd);

struct RayleighData {
    double kappa_R = 0;  ///< pole on the real xi1 axis
    double k_R = 0;      ///< sqrt(kappa_R^2 + xi2^2), independent of xi2
};

enum class RootMethod { Bisection, Newton };

/// Throws NoRayleighRoot when no real root is bracketed.
RayleighData rayleigh_pole(const BranchData& bd, RootMethod method = RootMethod::Bisection,
                           double tol = 1e-14);

struct MuEigen {
    cplx mu1, mu2, mu3;
    CMat2 P;  ///< [[xi1, xi2], [xi2, -xi1]]; P^2 = (xi1^2 + xi2^2) I
};

MuEigen mu_eigenvalues(cplx xi1, const BranchData& bd);

/// Closed-form block matrix built from the mu eigenvalues: blockdiag(P^-1 diag(mu1,mu2) P, mu3)
/// for AxisPerp, diag(mu1, mu2, mu3) for AxisInPlane.
CMat3 mu_block(cplx xi1, const BranchData& bd);

struct GreenTraction {
    CMat3 t;    ///< transform of the displacement Green tensor contracted with S (one face)
    CMat3 tau;  ///< traction-traction kernel on the crack plane
};

/// Residue sums for x3 -> 0+ (x3_sign = +1) or 0- (x3_sign = -1).
/// Throws PoleCoalescence within tol of a branch point.
GreenTraction green_traction_residue(cplx xi1, int x3_sign, const BranchData& bd,
                                     double tol = 1e-6);

/// Root loci export, rows `alpha,xi1,re_xi3,im_xi3`.
void write_root_loci_csv(std::ostream& os, const BranchData& bd, const std::vector<double>& xi1_grid,
                         bool header = true);

}  // namespace tidiff
