#include "oracles.hpp"

#include "tidiff/codsolver.hpp"

#include <gtest/gtest.h>

using namespace tidiff;

TEST(CodSolver, FunctionalEquationHolds) {
    const NondimMaterial m = oracle::steel();
    for (Mode mode : {Mode::qP, Mode::qSV, Mode::qSH})
        for (double phi : {90.0, 50.0}) {
            const CODSolution s = solve(incident_wave(CrackCase::AxisPerp, mode, phi, 110, m), m);
            EXPECT_LT(functional_residual(s, residual_grid(s)), 1e-10) << mode_name(mode) << " phi " << phi;
        }
}

TEST(CodSolver, GVanishesForNormalIncidence) {
    const NondimMaterial m = oracle::steel();
    const CODSolution s = solve(incident_wave(CrackCase::AxisPerp, Mode::qP, 90, 120, m), m);
    EXPECT_EQ(s.g().norm(), 0.0);
    EXPECT_THROW(residue_conditions(s), std::invalid_argument);
}

TEST(CodSolver, ResidueConditionsFixG) {
    const NondimMaterial m = oracle::steel();
    const CODSolution s = solve(incident_wave(CrackCase::AxisPerp, Mode::qSV, 60, 45, m), m);
    EXPECT_GT(s.g().norm(), 0.0);
    EXPECT_LT(s.g_condition(), 1e3);
    const ResidueConditions rc = residue_conditions(s);
    EXPECT_LT(std::max(rc.r_plus.norm(), rc.r_minus.norm()), 1e-12);
    // any other g leaves poles in the solution
    const CODSolution bad = s.with_g(s.g() + CVec2(1e-3, 0));
    const ResidueConditions rb = residue_conditions(bad);
    EXPECT_GT(std::max(rb.r_plus.norm(), rb.r_minus.norm()), 1e-6);
}

TEST(CodSolver, OpeningDecaysLikeEdgeCondition) {
    // a square-root edge gives dU ~ xi^(-3/2)
    const NondimMaterial m = oracle::steel();
    const CODSolution s = solve(incident_wave(CrackCase::AxisInPlane, Mode::qP, 90, 120, m), m);
    const double r = s.delta_u(4e3).norm() / s.delta_u(1e3).norm();
    EXPECT_NEAR(r, 0.125, 0.125 * 0.02);
}

TEST(CodSolver, IsotropicShearNeedsNoFactorTable) {
    const NondimMaterial m = oracle::isotropic();
    const CODSolution s = solve(incident_wave(CrackCase::AxisPerp, Mode::qSH, 90, 60, m), m);
    EXPECT_EQ(s.mu().table(), nullptr);
    EXPECT_TRUE(std::isfinite(s.delta_u(0.3).norm()));
}

TEST(CodSolver, ResidualGridAvoidsSingularPoints) {
    const NondimMaterial m = oracle::steel();
    const CODSolution s = solve(incident_wave(CrackCase::AxisPerp, Mode::qP, 90, 120, m), m);
    for (double x : residual_grid(s, 400, 1e-3)) {
        EXPECT_GT(branch_distance(x, s.branch()), 1e-3);
        EXPECT_GT(std::abs(x + s.incident().k1()), 1e-3);
    }
}
