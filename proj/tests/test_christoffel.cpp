#include "oracles.hpp"

#include "tidiff/christoffel.hpp"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

using namespace tidiff;

TEST(Christoffel, MatchesStiffnessContraction) {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> n;
    for (const auto& m : {oracle::steel(), oracle::other_ti()}) {
        const oracle::Stiffness C(m);
        for (int i = 0; i < 50; ++i) {
            const Vec3 x(n(rng), n(rng), n(rng));
            EXPECT_LT((christoffel_matrix(x, m) - C.christoffel<double>(x)).norm(), 1e-13);
        }
    }
}

TEST(Christoffel, IsotropicSlowness) {
    const NondimMaterial m = oracle::isotropic();
    for (double a : {0.0, 0.4, 1.3}) {
        const Vec3 dir(std::sin(a), 0, std::cos(a));
        EXPECT_NEAR(slowness(dir, Mode::qP, m), 1 / std::sqrt(3.0), 1e-14);
        EXPECT_NEAR(slowness(dir, Mode::qSV, m), 1.0, 1e-14);
        EXPECT_NEAR(slowness(dir, Mode::qSH, m), 1.0, 1e-14);
    }
}

TEST(Christoffel, BranchOrderAndLabels) {
    const NondimMaterial m = oracle::steel();
    const Vec3 x(0.3, 0.2, 0.7);
    const Eigensystem e = eigensystem(x, m);
    EXPECT_GE(e.lambda[0], e.lambda[1]);
    EXPECT_EQ(classify_polarization(x.normalized(), e.p[0]), Mode::qP);
    EXPECT_EQ(classify_polarization(x.normalized(), e.p[1]), Mode::qSV);
    EXPECT_EQ(parse_mode("qSH"), Mode::qSH);
    EXPECT_STREQ(mode_name(Mode::qSV), "qSV");
    EXPECT_THROW(parse_mode("SV"), ParseError);
}

TEST(Christoffel, AxisDirectionsAreComplete) {
    const NondimMaterial m = oracle::steel();
    for (const Vec3& x : {Vec3(0, 0, 1.3), Vec3(0.8, 0, 0), Vec3(0, -0.5, 0)}) {
        const Eigensystem e = eigensystem(x, m);
        Mat3 sum = Mat3::Zero();
        for (int b = 0; b < 3; ++b) sum += e.p[b] * e.p[b].transpose();
        EXPECT_LT((sum - Mat3::Identity()).norm(), 1e-14);
    }
}

TEST(Christoffel, ComplexProjectorIsAnalyticEigenprojector) {
    const NondimMaterial m = oracle::steel();
    const oracle::Stiffness C(m);
    const CVec3 x(cplx(0.4, 0.1), 0.2, cplx(0.3, -0.6));
    const auto lams = branch_eigenvalues<cplx>(x, m);
    for (int b = 0; b < 2; ++b) {
        const CMat3 P = projector12(x, lams[b], m);
        EXPECT_LT((P * P - P).norm(), 1e-12);
        EXPECT_NEAR(std::abs(P.trace() - 1.0), 0.0, 1e-12);
        const CMat3 L = C.christoffel<cplx>(x);
        EXPECT_LT((L * P - lams[b] * P).norm(), 1e-12);
    }
    const CMat3 P3 = projector3(x);
    EXPECT_LT((C.christoffel<cplx>(x) * P3 - lams[2] * P3).norm(), 1e-12);
}

TEST(Christoffel, TransferTensorInvertsLminusI) {
    const NondimMaterial m = oracle::steel();
    const Vec3 x(0.3, -0.2, 0.5);
    const CMat3 G = transfer_tensor(x, m);
    EXPECT_LT((G * (christoffel_matrix(x, m) - Mat3::Identity()).cast<cplx>() - CMat3::Identity()).norm(), 1e-12);
    const Vec3 n = Vec3(1, 0, 1).normalized();
    EXPECT_THROW(transfer_tensor(n * slowness(n, Mode::qP, m), m), OnSlownessSurface);
}

TEST(Christoffel, RayDirectionIsGradient) {
    const NondimMaterial m = oracle::steel();
    const Vec3 n = Vec3(0.5, 0.1, 0.8).normalized();
    for (Mode mode : {Mode::qP, Mode::qSV, Mode::qSH}) {
        const Vec3 r = ray_direction(n, mode, m);
        // Euler: grad(sqrt(lambda)) . n = sqrt(lambda) = phase speed
        EXPECT_NEAR(r.dot(n), 1 / slowness(n, mode, m), 1e-13);
        auto f = [&](const Vec3& x) { return x.norm() / slowness(x.normalized(), mode, m); };
        for (int j = 0; j < 3; ++j) {
            const double h = 1e-6;
            Vec3 e = Vec3::Zero();
            e(j) = h;
            EXPECT_NEAR(r(j), (f(n + e) - f(n - e)) / (2 * h), 1e-8);
        }
    }
}

TEST(Christoffel, CurvesLieOnSurfaceAndCount) {
    const NondimMaterial m = oracle::steel();
    const oracle::Stiffness C(m);
    for (Mode mode : {Mode::qP, Mode::qSV, Mode::qSH}) {
        const auto pts = sample_curves(mode, m, 360);
        ASSERT_EQ(pts.size(), 360u);
        for (const auto& p : pts)
            EXPECT_NEAR(oracle::det3<double>(C.christoffel<double>(Vec3(p.xi1, 0, p.xi3)) - Mat3::Identity()), 0.0,
                        1e-12);
    }
    EXPECT_THROW(sample_curves(Mode::qP, m, 4), std::invalid_argument);
    std::ostringstream os;
    write_curves_csv(os, sample_curves(Mode::qP, m, 8));
    EXPECT_EQ(os.str().substr(0, 17), "mode,xi1,xi3,x1,x");
}

TEST(Christoffel, SteelQsvSlownessHasInflections) {
    // cusps of the wave curve sit at inflections of the slowness curve
    const auto pts = sample_curves(Mode::qSV, oracle::steel(), 4000);
    int changes = 0;
    double prev = 0;
    const std::size_t N = pts.size();
    for (std::size_t i = 0; i < N; ++i) {
        const auto& a = pts[(i + N - 1) % N];
        const auto& b = pts[i];
        const auto& c = pts[(i + 1) % N];
        const double cross = (b.xi1 - a.xi1) * (c.xi3 - b.xi3) - (b.xi3 - a.xi3) * (c.xi1 - b.xi1);
        if (i > 0 && (cross > 0) != (prev > 0)) ++changes;
        prev = cross;
    }
    EXPECT_EQ(changes, 8);
}
