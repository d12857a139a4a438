#include "oracles.hpp"

#include "tidiff/spectral.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace tidiff;

TEST(Spectral, BranchPointsAxisPerp) {
    const BranchData bd = branch_points(CrackCase::AxisPerp, 0.0, oracle::steel());
    EXPECT_NEAR(bd.kappa[1].real(), 0.70204, 1e-5);
    EXPECT_NEAR(bd.kappa[2].real(), 1.0, 1e-12);
    EXPECT_NEAR(bd.kappa[3].real(), 1.24832, 1e-5);
    EXPECT_NEAR(bd.kappa[4].real(), 1.25478, 1e-5);
    EXPECT_NEAR(bd.C0, 0.14550, 1e-5);
    EXPECT_NEAR(bd.Dconst, 3.67763, 1e-5);
    EXPECT_NEAR(rayleigh_pole(bd).kappa_R, 1.36726, 1e-5);
}

TEST(Spectral, BranchPointsAxisInPlane) {
    const BranchData bd = branch_points(CrackCase::AxisInPlane, 0.0, oracle::steel());
    EXPECT_NEAR(bd.kappa[1].real(), 0.77430, 1e-5);
    EXPECT_NEAR(bd.C3, 1.30226, 1e-5);
    EXPECT_NEAR(bd.C0, 0.21485, 1e-5);
    EXPECT_NEAR(rayleigh_pole(bd).kappa_R, 1.40625, 1e-5);
}

TEST(Spectral, BranchPointsTurnImaginary) {
    const BranchData bd = branch_points(CrackCase::AxisPerp, 0.9, oracle::steel());
    EXPECT_EQ(bd.kappa[1].real(), 0.0);
    EXPECT_GT(bd.kappa[1].imag(), 0.0);
    EXPECT_TRUE(ordering_failure(bd).empty());
}

TEST(Spectral, IsotropicHasNoSeparatedQuarticRoots) {
    EXPECT_THROW(branch_points(CrackCase::AxisPerp, 0.0, oracle::isotropic()), OrderingViolation);
    const BranchData bd = branch_points(CrackCase::AxisPerp, 0.0, oracle::isotropic(), false);
    EXPECT_TRUE(std::isnan(bd.C0));
}

TEST(Spectral, RayleighMethodsAgreeAndKRIsInvariant) {
    const NondimMaterial m = oracle::steel();
    const double k0 = rayleigh_pole(branch_points(CrackCase::AxisPerp, 0.0, m)).k_R;
    for (double xi2 : {0.2, 0.7}) {
        const BranchData bd = branch_points(CrackCase::AxisPerp, xi2, m);
        const RayleighData a = rayleigh_pole(bd, RootMethod::Bisection);
        const RayleighData b = rayleigh_pole(bd, RootMethod::Newton);
        EXPECT_NEAR(a.kappa_R, b.kappa_R, 1e-12);
        EXPECT_NEAR(a.k_R, k0, 1e-12);
    }
}

TEST(Spectral, RootsArePhysical) {
    const BranchData bd = branch_points(CrackCase::AxisPerp, 0.3, oracle::steel());
    for (int i = 0; i < 200; ++i) {
        const double x = -3 + 6 * (i + 0.5) / 200;
        for (int a = 1; a <= 3; ++a) {
            const Xi3Root r = xi3_root(a, x, bd);
            EXPECT_GE(r.value.imag(), -1e-14);
            // between kappa_2 and kappa_3 the qSV fold has two real roots of either sign
            const bool fold = a == 2 && std::abs(x) > bd.kappa[2].real() && std::abs(x) < bd.kappa[3].real();
            if (r.value.imag() < 1e-12 && !fold) {
                EXPECT_GE(r.value.real(), -1e-14) << "propagating root points away";
            }
            EXPECT_LT(std::abs(dispersion_value(a, x, r.value, bd)), 1e-12);
        }
    }
    EXPECT_TRUE(xi3_root(3, bd.kappa[4] + 1e-6, bd).near_branch_point);
}

TEST(Spectral, SheetDerivativesMatchFiniteDifferences) {
    const NondimMaterial m = oracle::steel();
    for (CrackCase c : {CrackCase::AxisPerp, CrackCase::AxisInPlane}) {
        const double xi2 = c == CrackCase::AxisPerp ? 0.2 : 0.0;
        const BranchData bd = branch_points(c, xi2, m);
        for (int a = 1; a <= 3; ++a) {
            const double x = 0.25;
            const cplx z = xi3_root(a, x, bd).value;
            auto track = [&](double xx) {
                cplx best = 0;
                for (cplx cand : oracle::sheet_candidates(a, xx, xi2, c, m))
                    if (std::abs(cand - z) < std::abs(best - z)) best = cand;
                return best;
            };
            const double h = 1e-4;
            const cplx d1 = (track(x + h) - track(x - h)) / (2 * h);
            const cplx d2 = (track(x + h) - 2.0 * z + track(x - h)) / (h * h);
            const auto d = sheet_derivatives(a, x, z, bd);
            EXPECT_NEAR(std::abs(d.first - d1), 0.0, 1e-7);
            EXPECT_NEAR(std::abs(d.second - d2), 0.0, 1e-5);
        }
    }
}

TEST(Spectral, GammaFactorsSplit) {
    const BranchData bd = branch_points(CrackCase::AxisPerp, 0.3, oracle::steel());
    const cplx x(0.4, 0.2);
    for (int l = 1; l <= 4; ++l) EXPECT_LT(std::abs(gamma(l, x, bd) - gamma_plus(l, x, bd) * gamma_plus(l, -x, bd)), 1e-14);
}

TEST(Spectral, GreenResidueRefusesBranchPoints) {
    const BranchData bd = branch_points(CrackCase::AxisPerp, 0.0, oracle::steel());
    EXPECT_THROW(green_traction_residue(bd.kappa[2] + 1e-9, +1, bd), PoleCoalescence);
}

TEST(Spectral, MuBlockIsSymmetric) {
    // tau is the kernel of a reciprocal problem
    for (CrackCase c : {CrackCase::AxisPerp, CrackCase::AxisInPlane}) {
        const BranchData bd = branch_points(c, c == CrackCase::AxisPerp ? 0.4 : 0.0, oracle::steel());
        const CMat3 B = mu_block(cplx(0.9, 0.3), bd);
        EXPECT_LT((B - B.transpose()).norm(), 1e-13);
    }
}

TEST(Spectral, RootLociCsv) {
    const BranchData bd = branch_points(CrackCase::AxisPerp, 0.0, oracle::steel());
    std::ostringstream os;
    write_root_loci_csv(os, bd, {0.1, 0.5});
    const std::string s = os.str();
    EXPECT_EQ(s.substr(0, s.find('\n')), "alpha,xi1,re_xi3,im_xi3");
    EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 7);
}
