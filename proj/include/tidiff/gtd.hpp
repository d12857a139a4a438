#pragma once

#include "tidiff/codsolver.hpp"
#include "tidiff/errors.hpp"

#include <iosfwd>
#include <optional>
#include <vector>

namespace tidiff {

struct GtdTolerances {
    double shadow = 1e-2;  ///< |k1_diff + k1_in|
    double cusp = 1e-3;    ///< |d^2 xi3 / d xi1^2|
    double cone = 1e-3;    ///< |d lambda / d xi3|
};

struct ZoneFlags {
    bool shadow = false, cusp = false, cone = false;
    bool any() const { return shadow || cusp || cone; }
};

/// Radial slowness rho^(alpha)(vartheta) of the diffracted cone at fixed xi2, from the
/// closed-form quadratic in rho^2. alpha = 1 takes the + root, 2 the - root, 3 the SH sheet.
/// Throws EvanescentMode when rho is not real and positive.
double rho(int alpha, double vartheta_deg, double xi2, CrackCase c, const NondimMaterial& m);
/// d rho / d vartheta (per radian), analytic.
double rho_derivative(int alpha, double vartheta_deg, double xi2, CrackCase c, const NondimMaterial& m);
/// Observation angle theta = vartheta - atan(rho'/rho), degrees in [0, 360).
double ray_angle(int alpha, double vartheta_deg, double xi2, CrackCase c, const NondimMaterial& m);

struct DiffractedWave {
    int alpha = 0;
    double vartheta = 0;   ///< degrees
    double rho = 0, drho = 0;
    double theta = 0;      ///< degrees
    Vec3 k_diff;           ///< crack frame, -(rho cos, k2_in, rho sin)
    cplx xi3_dot, xi3_ddot;
    cplx lambda_xi3;       ///< d lambda / d xi3' at k_diff
    double stationarity = 0;  ///< -cos(theta) + xi3_dot |sin(theta)|, zero at the critical point
    ZoneFlags flags;
};

DiffractedWave diffracted_wave(int alpha, double vartheta_deg, const CODSolution& sol,
                               const GtdTolerances& tol = {});

struct DiffractionCoefficient {
    int alpha = 0, beta = 0;
    DiffractedWave wave;
    CVec3 D;               ///< medium-frame components
    double magnitude = 0;  ///< |D|
    CMat3 G;               ///< i Pi S^T / lambda_xi3 at k_diff
    CVec3 dU;              ///< crack-opening transform at k1_diff
    ZoneFlags flags;
};

/// Raised when the observation is in a transition zone; the coefficient is still attached.
class TransitionZone : public Error {
public:
    TransitionZone(const std::string& what, DiffractionCoefficient c)
        : Error(what), coefficient(std::move(c)) {}
    DiffractionCoefficient coefficient;
};

/// Far field u ~ r_perp^(-1/2) D exp(i k_diff . x) of diffracted mode alpha.
/// Throws EvanescentMode, OnCrackFace (theta at 0 or 180 deg), TransitionZone.
DiffractionCoefficient diffraction_coefficient(int alpha, const CODSolution& sol, double vartheta_deg,
                                               const GtdTolerances& tol = {});

enum class Regularization { Cusp, CuspAndCone };

/// D times sqrt(2 pi i |sin theta| xi3''), and for CuspAndCone additionally times lambda_xi3,
/// evaluated in a form that stays finite at cusps (and conical points).
DiffractionCoefficient regularized_coefficient(Regularization level, int alpha, const CODSolution& sol,
                                               double vartheta_deg);

/// Factor that maps a raw coefficient to the regularized one.
cplx regularization_factor(Regularization level, const DiffractedWave& w);

struct SweepRow {
    double vartheta = 0;
    double theta = 0;
    bool evanescent = false;
    bool on_face = false;
    ZoneFlags flags;
    std::optional<DiffractionCoefficient> coef;
};

/// Evaluates diffraction_coefficient over the grid; threads > 1 splits the grid.
std::vector<SweepRow> sweep(int alpha, const CODSolution& sol, const std::vector<double>& vartheta_grid,
                            const GtdTolerances& tol = {}, int threads = 1);

/// Rows `alpha,beta,vartheta_deg,theta_deg,reD1,...,magD,flag_shadow,flag_cusp,flag_cone,evanescent`.
/// Absent coefficients are written as zeros (evanescent) or nan (on the crack face).
void write_sweep_csv(std::ostream& os, int alpha, int beta, const std::vector<SweepRow>& rows,
                     bool header = true);

}  // namespace tidiff
