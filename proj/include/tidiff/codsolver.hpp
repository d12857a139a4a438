#pragma once

#include "tidiff/crackgeom.hpp"
#include "tidiff/spectral.hpp"
#include "tidiff/wienerhopf.hpp"

#include <array>
#include <memory>
#include <vector>

namespace tidiff {

struct SolveOptions {
    int nodes = 200;                  ///< tanh-sinh nodes on the cut
    double g_condition_limit = 1e8;   ///< SingularGSystem above this condition number
};

/// Fourier-domain crack-opening displacement and minus-traction for one incident plane wave,
/// both as medium-frame 3-vectors at fixed xi2 = -k2'. Sign convention: the opening is
/// u(x3 = 0+) - u(x3 = 0-) of the scattered field.
class CODSolution {
public:
    CrackCase crack_case() const { return inc_.crack_case; }
    const IncidentWave& incident() const { return inc_; }
    const BranchData& branch() const { return mu_->branch(); }
    const MuFactors& mu() const { return *mu_; }
    /// Constant of the tangential system (AxisPerp); zero otherwise and at xi2 = 0.
    const CVec2& g() const { return g_; }
    double g_condition() const { return g_cond_; }

    /// Transform of the crack-opening displacement, analytic in the upper half-plane.
    CVec3 delta_u(cplx xi1) const;
    /// Transform of the traction on the crack line ahead of the edge, analytic below.
    CVec3 t_minus(cplx xi1) const;

    /// Same solution with g replaced (for sensitivity checks).
    CODSolution with_g(const CVec2& g) const;

private:
    friend CODSolution solve(const IncidentWave&, const NondimMaterial&, const SolveOptions&);
    CODSolution() = default;

    cplx scalar_du(int i, cplx xi) const;
    cplx scalar_tm(int i, cplx xi) const;
    bool tangential_coupled() const;

    IncidentWave inc_;
    std::shared_ptr<const MuFactors> mu_;
    std::array<cplx, 3> mu_minus_k1_{};  ///< mu_i^-(-k1)
    CVec2 g_ = CVec2::Zero();
    double g_cond_ = 1.0;
};

/// Builds factor tables only for the components the incident traction actually drives.
/// Throws OrderingViolation, NoRayleighRoot, SingularGSystem.
CODSolution solve(const IncidentWave& inc, const NondimMaterial& m, const SolveOptions& opt = {});

struct ResidueConditions {
    CVec2 r_plus, r_minus;  ///< residues at xi1 = +i|xi2| and -i|xi2|
};

/// Residues of the apparent P^-1 poles of the tangential solution at xi1 = +-i|xi2|.
/// Requires AxisPerp and xi2 != 0.
ResidueConditions residue_conditions(const CODSolution& sol);

/// Real grid of n points on [-3 kappa_max, 3 kappa_max] minus neighbourhoods of radius delta
/// around -k1, the branch points and the Rayleigh poles.
std::vector<double> residual_grid(const CODSolution& sol, int n = 400, double delta = 1e-3);

/// Max over the grid of |i t/(xi+k1) - T^-(xi) - tau(xi) dU(xi)| / max(|lhs|, |rhs|).
double functional_residual(const CODSolution& sol, const std::vector<double>& grid);

}  // namespace tidiff
