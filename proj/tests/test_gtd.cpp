#include "oracles.hpp"

#include "tidiff/gtd.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace tidiff;

TEST(Gtd, RhoShClosedForms) {
    const NondimMaterial m = oracle::steel();
    for (double vt : {10.0, 75.0, 200.0}) {
        const double s = std::sin(deg2rad(vt)), c = std::cos(deg2rad(vt));
        EXPECT_NEAR(rho(3, vt, 0.0, CrackCase::AxisPerp, m), 1 / std::sqrt(m.B3 * c * c + m.B1 * s * s), 1e-14);
        EXPECT_NEAR(rho(3, vt, 0.0, CrackCase::AxisInPlane, m), 1 / std::sqrt(m.B1 * c * c + m.B3 * s * s), 1e-14);
    }
}

TEST(Gtd, DiffractedVectorsLieOnSlownessSurface) {
    const NondimMaterial m = oracle::steel();
    const oracle::Stiffness C(m);
    for (CrackCase c : {CrackCase::AxisPerp, CrackCase::AxisInPlane}) {
        const double xi2 = c == CrackCase::AxisPerp ? 0.3 : 0.0;
        const Mat3 Q = rotation_matrix(c);
        for (int a = 1; a <= 3; ++a)
            for (double vt = 3; vt < 360; vt += 7) {
                double r;
                try {
                    r = rho(a, vt, xi2, c, m);
                } catch (const EvanescentMode&) {
                    continue;
                }
                const Vec3 k(-r * std::cos(deg2rad(vt)), xi2, -r * std::sin(deg2rad(vt)));
                const Mat3 L = C.christoffel<double>(Q.transpose() * k);
                EXPECT_NEAR(oracle::det3<double>(L - Mat3::Identity()), 0.0, 1e-10);
            }
    }
}

TEST(Gtd, RhoDerivativeMatchesFiniteDifference) {
    const NondimMaterial m = oracle::steel();
    for (int a = 1; a <= 3; ++a)
        for (double vt : {20.0, 95.0, 250.0}) {
            const double h = 1e-5;
            const double fd = (rho(a, vt + h, 0.2, CrackCase::AxisPerp, m) - rho(a, vt - h, 0.2, CrackCase::AxisPerp, m)) /
                              (2 * deg2rad(h));
            EXPECT_NEAR(rho_derivative(a, vt, 0.2, CrackCase::AxisPerp, m), fd, 1e-7);
        }
}

TEST(Gtd, RayAngleProperties) {
    const NondimMaterial iso = oracle::isotropic();
    EXPECT_NEAR(ray_angle(3, 33.0, 0.0, CrackCase::AxisPerp, iso), 33.0, 1e-12);
    const NondimMaterial m = oracle::steel();
    // qSH ellipse: theta - vartheta is odd about the principal axes
    for (double vt : {20.0, 50.0}) {
        const double d1 = ray_angle(3, vt, 0.0, CrackCase::AxisPerp, m) - vt;
        const double d2 = ray_angle(3, 360 - vt, 0.0, CrackCase::AxisPerp, m) - (360 - vt);
        EXPECT_NEAR(d1, -d2, 1e-12);
    }
    // qSV folds: theta(vartheta) is not monotonic
    int sign_changes = 0;
    double prev = 0;
    for (int i = 0; i <= 3600; ++i) {
        const double vt = 0.05 + 0.1 * i;
        const double d = std::remainder(ray_angle(1, vt + 0.01, 0.0, CrackCase::AxisPerp, m) -
                                            ray_angle(1, vt, 0.0, CrackCase::AxisPerp, m), 360.0);
        if (i > 0 && (d > 0) != (prev > 0)) ++sign_changes;
        prev = d;
    }
    EXPECT_GE(sign_changes, 8);
}

TEST(Gtd, RefusesObservationOnCrackFace) {
    const NondimMaterial m = oracle::isotropic();
    const CODSolution s = solve(incident_wave(CrackCase::AxisPerp, Mode::qSH, 90, 60, m), m);
    EXPECT_THROW(diffraction_coefficient(3, s, 0.0), OnCrackFace);
    EXPECT_THROW(diffraction_coefficient(3, s, 180.0), OnCrackFace);
}

TEST(Gtd, SignFlipsAcrossCrackPlaneForShear) {
    const NondimMaterial m = oracle::steel();
    const CODSolution s = solve(incident_wave(CrackCase::AxisPerp, Mode::qSH, 90, 90, m), m);
    for (double vt : {20.0, 70.0, 140.0}) {
        const CVec3 a = diffraction_coefficient(3, s, vt).D;
        const CVec3 b = diffraction_coefficient(3, s, 360 - vt).D;
        EXPECT_LT((a + b).norm(), 1e-12 * a.norm());
    }
}

TEST(Gtd, NormalIncidenceProfileIsSymmetricAboutCrackPlane) {
    // the half-plane has no x1 -> -x1 symmetry; only vartheta -> 360 - vartheta survives
    const NondimMaterial m = oracle::steel();
    const CODSolution s = solve(incident_wave(CrackCase::AxisPerp, Mode::qP, 90, 90, m), m);
    for (int a = 1; a <= 2; ++a)
        for (double vt : {20.0, 70.0, 140.0}) {
            const double x = diffraction_coefficient(a, s, vt).magnitude;
            EXPECT_NEAR(x, diffraction_coefficient(a, s, 360 - vt).magnitude, 1e-12 * x);
        }
    const double p = diffraction_coefficient(2, s, 40).magnitude;
    EXPECT_GT(std::abs(p - diffraction_coefficient(2, s, 140).magnitude), 1e-3 * p);
}

TEST(Gtd, ShadowBoundaryGrowthIsSimplePole) {
    const NondimMaterial m = oracle::steel();
    const CODSolution s = solve(incident_wave(CrackCase::AxisPerp, Mode::qP, 90, 120, m), m);
    const auto shadows = oracle::shadow_angles(2, s);
    ASSERT_FALSE(shadows.empty());
    const double vs = shadows.front();
    std::vector<double> prod;
    for (double d : {1e-3, 1e-4, 1e-5}) {
        try {
            diffraction_coefficient(2, s, vs + d);
            FAIL() << "expected a shadow flag";
        } catch (const TransitionZone& tz) {
            EXPECT_TRUE(tz.coefficient.flags.shadow);
            prod.push_back(tz.coefficient.magnitude * std::abs(tz.coefficient.wave.k_diff(0) + s.incident().k1()));
        }
    }
    EXPECT_NEAR(prod[2] / prod[1], 1.0, 1e-3);
    EXPECT_NEAR(prod[1] / prod[0], 1.0, 1e-2);
}

TEST(Gtd, RegularizationDividesBack) {
    const NondimMaterial m = oracle::steel();
    const CODSolution s = solve(incident_wave(CrackCase::AxisInPlane, Mode::qP, 90, 150, m), m);
    for (int a = 1; a <= 3; ++a)
        for (double vt : {35.0, 100.0, 220.0}) {
            DiffractionCoefficient d;
            try {
                d = diffraction_coefficient(a, s, vt);
            } catch (const Error&) {
                continue;
            }
            for (Regularization l : {Regularization::Cusp, Regularization::CuspAndCone}) {
                const DiffractionCoefficient r = regularized_coefficient(l, a, s, vt);
                EXPECT_LE((r.D / regularization_factor(l, r.wave) - d.D).norm(), 1e-12 * d.magnitude);
            }
        }
}

TEST(Gtd, SweepIsPointwiseAndThreadIndependent) {
    const NondimMaterial m = oracle::steel();
    const CODSolution s = solve(incident_wave(CrackCase::AxisPerp, Mode::qSV, 75, 130, m), m);
    std::vector<double> coarse, fine;
    for (int i = 0; i < 180; ++i) coarse.push_back(2.0 * i + 0.3);
    for (int i = 0; i < 360; ++i) fine.push_back(1.0 * i + 0.3);
    const auto a = sweep(1, s, coarse);
    const auto b = sweep(1, s, fine, {}, 4);
    const auto c = sweep(1, s, coarse, {}, 3);
    for (std::size_t i = 0; i < a.size(); ++i) {
        ASSERT_EQ(a[i].evanescent, b[2 * i].evanescent);
        ASSERT_EQ(a[i].evanescent, c[i].evanescent);
        if (!a[i].coef) continue;
        EXPECT_EQ(a[i].coef->D, b[2 * i].coef->D);
        EXPECT_EQ(a[i].coef->D, c[i].coef->D);
    }
}

TEST(Gtd, EvanescentRowsAreAbsentAndWrittenAsZero) {
    // for kappa_1(0) < |xi2| < 1 the second quadratic sheet has no real point
    const NondimMaterial m = oracle::steel();
    const IncidentWave inc = incident_wave(CrackCase::AxisPerp, Mode::qSH, 45, 110, m);
    ASSERT_GT(std::abs(inc.xi2), 0.71);
    ASSERT_LT(std::abs(inc.xi2), 1.0);
    const CODSolution s = solve(inc, m);
    const auto rows = sweep(2, s, {10.0, 50.0, 130.0});
    for (const auto& r : rows) {
        EXPECT_TRUE(r.evanescent);
        EXPECT_FALSE(r.coef.has_value());
    }
    EXPECT_THROW(diffraction_coefficient(2, s, 50.0), EvanescentMode);
    EXPECT_NO_THROW(diffraction_coefficient(1, s, 50.0));
    std::ostringstream os;
    write_sweep_csv(os, 2, 3, rows);
    std::string header, line;
    std::istringstream in(os.str());
    std::getline(in, header);
    EXPECT_EQ(header,
              "alpha,beta,vartheta_deg,theta_deg,reD1,imD1,reD2,imD2,reD3,imD3,magD,flag_shadow,flag_cusp,flag_cone,"
              "evanescent");
    std::getline(in, line);
    EXPECT_NE(line.find("0.0000000000e+00,0,0,0,1"), std::string::npos) << line;
}
