#include "tidiff/spectral.hpp"

#include "tidiff/christoffel.hpp"
#include "tidiff/errors.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

namespace tidiff {

namespace {

const double kNaN = std::numeric_limits<double>::quiet_NaN();

// Constants of the quartic discriminant for the given (effective) orientation.
void quartic_constants(const NondimMaterial& e, double& C0, double& C3, double& D) {
    const double a11 = e.A11, a33 = e.A33, A13 = e.A13, B1 = e.B1;
    const double D2 = (a11 * a33 - A13 * A13) * ((2 * B1 + A13) * (2 * B1 + A13) - a11 * a33);
    const double inner2 = A13 * A13 - a11 * a33 + B1 * (a11 + 2 * A13 + a33);
    if (!(D2 > 0) || !(inner2 >= 0)) {
        C0 = C3 = D = kNaN;
        return;
    }
    D = std::sqrt(D2);
    const double t1 = 2 * std::sqrt(a33 * B1) * (B1 + A13) * std::sqrt(inner2);
    const double t2 = A13 * (2 * B1 + A13) * (B1 + a33) + a33 * (2 * B1 * B1 + a11 * B1 - a11 * a33);
    C0 = (t1 - t2) >= 0 ? std::sqrt(t1 - t2) / D : kNaN;
    C3 = (t1 + t2) >= 0 ? std::sqrt(t1 + t2) / D : kNaN;
}

}  // namespace

std::string ordering_failure(const BranchData& bd) {
    char buf[200];
    if (std::isnan(bd.C0) || std::isnan(bd.C3))
        return "the dispersion quartic has no separated branch points (C0 or C3 undefined)";
    const int last = bd.crack_case == CrackCase::AxisPerp ? 4 : 3;
    for (int l = 1; l < last; ++l) {
        const cplx a = bd.kappa[l], b = bd.kappa[l + 1];
        if (a.real() > b.real() + 1e-14 || b.imag() > a.imag() + 1e-14) {
            std::snprintf(buf, sizeof buf, "branch points kappa_%d = (%g,%g) and kappa_%d = (%g,%g) are out of order",
                          l, a.real(), a.imag(), l + 1, b.real(), b.imag());
            return buf;
        }
    }
    if (bd.kappa[1].imag() > bd.kappa[0].real() + 1e-14) return "Im kappa_1 exceeds kappa_0";
    if (bd.crack_case == CrackCase::AxisInPlane) {
        const bool real = bd.kappa[1].imag() == 0 && bd.kappa[2].imag() == 0 && bd.kappa[3].imag() == 0;
        if (real && !(bd.kappa[1].real() < bd.kappa[2].real() && bd.kappa[2].real() < bd.kappa[3].real()))
            return "axis-in-plane case needs kappa_1 < kappa_2 < kappa_3";
    }
    return {};
}

BranchData branch_points(CrackCase c, double xi2, const NondimMaterial& m, bool enforce_ordering) {
    BranchData bd;
    bd.crack_case = c;
    bd.xi2 = xi2;
    bd.material = m;
    bd.eff = c == CrackCase::AxisPerp ? m : m.swapped();
    quartic_constants(bd.eff, bd.C0, bd.C3, bd.Dconst);
    const double s = xi2 * xi2;
    bd.kappa[0] = std::sqrt(bd.C0 * bd.C0 + s);
    bd.kappa[1] = csqrt(1.0 / bd.eff.A11 - s);
    bd.kappa[2] = csqrt(1.0 / bd.eff.B1 - s);
    bd.kappa[3] = csqrt(bd.C3 * bd.C3 - s);
    bd.kappa[4] = csqrt(1.0 / bd.eff.B3 - s);
    bd.count = c == CrackCase::AxisPerp ? 5 : 4;
    if (enforce_ordering) {
        const std::string why = ordering_failure(bd);
        if (!why.empty()) throw OrderingViolation(why);
    }
    return bd;
}

cplx gamma(int ell, cplx xi1, const BranchData& bd) {
    if (ell == 0) return std::sqrt(bd.kappa[0] * bd.kappa[0] + xi1 * xi1);
    const cplx k = bd.kappa[ell];
    return csqrt(k + xi1) * csqrt(k - xi1);
}

cplx gamma_plus(int ell, cplx xi1, const BranchData& bd) { return csqrt(bd.kappa[ell] + xi1); }

cplx xi3_half(int n, cplx xi1, const BranchData& bd) {
    const NondimMaterial& e = bd.eff;
    const cplx g = gamma(n == 1 ? 3 : 0, xi1, bd);
    const double sgn = n == 1 ? -1.0 : 1.0;  // (-1)^n
    const cplx N = e.B4() * (xi1 * xi1 + bd.xi2 * bd.xi2) + e.B1 + e.A33 -
                   sgn * 2 * e.B1 * std::sqrt(e.A11 * e.A33) * gamma(1, xi1, bd) * gamma(2, xi1, bd);
    return g / (2 * std::sqrt(e.B1 * e.A33)) * std::sqrt(N / (g * g));
}

double branch_distance(cplx xi1, const BranchData& bd) {
    double d = std::min(std::abs(xi1 - kI * bd.kappa[0]), std::abs(xi1 + kI * bd.kappa[0]));
    const int last = bd.crack_case == CrackCase::AxisPerp ? 4 : 3;
    for (int l = 1; l <= last; ++l) {
        if (std::isnan(std::abs(bd.kappa[l]))) continue;
        d = std::min({d, std::abs(xi1 - bd.kappa[l]), std::abs(xi1 + bd.kappa[l])});
    }
    return d;
}

namespace {

// Medium-frame invariants u = xi1_m^2 + xi2_m^2, v = xi3_m^2 in terms of crack-frame
// p = xi1', q = xi3' (with xi2' fixed). For AxisPerp u = p^2 + xi2^2, v = q^2; for the
// in-plane axis u = q^2 + xi2^2, v = p^2.
struct SheetPoly {
    cplx F, Fu, Fv, Fuu, Fvv, Fuv;
};

SheetPoly sheet_poly(int alpha, cplx u, cplx v, const NondimMaterial& m) {
    SheetPoly s;
    if (alpha == 3) {
        s.F = m.B3 * u + m.B1 * v - 1.0;
        s.Fu = m.B3;
        s.Fv = m.B1;
        s.Fuu = s.Fvv = s.Fuv = 0.0;
        return s;
    }
    const double c2 = (m.A13 + m.B1) * (m.A13 + m.B1);
    const cplx X = m.A11 * u + m.B1 * v - 1.0, Y = m.B1 * u + m.A33 * v - 1.0;
    s.F = X * Y - c2 * u * v;
    s.Fu = m.A11 * Y + m.B1 * X - c2 * v;
    s.Fv = m.B1 * Y + m.A33 * X - c2 * u;
    s.Fuu = 2 * m.A11 * m.B1;
    s.Fvv = 2 * m.B1 * m.A33;
    s.Fuv = m.A11 * m.A33 + m.B1 * m.B1 - c2;
    return s;
}

}  // namespace

cplx dispersion_value(int alpha, cplx xi1, cplx xi3, const BranchData& bd) {
    const Mat3 Q = rotation_matrix(bd.crack_case);
    const CVec3 xm = Q.transpose().cast<cplx>() * CVec3(xi1, bd.xi2, xi3);
    if (alpha == 3) return delta3<cplx>(xm, 1.0, bd.material);
    return delta12<cplx>(xm, 1.0, bd.material);
}

std::pair<cplx, cplx> sheet_derivatives(int alpha, cplx p, cplx q, const BranchData& bd) {
    const bool perp = bd.crack_case == CrackCase::AxisPerp;
    const double s2 = bd.xi2 * bd.xi2;
    const cplx u = perp ? p * p + s2 : q * q + s2;
    const cplx v = perp ? q * q : p * p;
    const SheetPoly s = sheet_poly(alpha, u, v, bd.material);
    // derivatives with respect to the squares P = p^2 and Qs = q^2
    const cplx FP = perp ? s.Fu : s.Fv, FQ = perp ? s.Fv : s.Fu;
    const cplx FPP = perp ? s.Fuu : s.Fvv, FQQ = perp ? s.Fvv : s.Fuu, FPQ = s.Fuv;
    const cplx Fp = 2.0 * p * FP, Fq = 2.0 * q * FQ;
    const cplx Fpp = 2.0 * FP + 4.0 * p * p * FPP;
    const cplx Fqq = 2.0 * FQ + 4.0 * q * q * FQQ;
    const cplx Fpq = 4.0 * p * q * FPQ;
    const cplx d1 = -Fp / Fq;
    const cplx d2 = -(Fpp + 2.0 * Fpq * d1 + Fqq * d1 * d1) / Fq;
    return {d1, d2};
}

Xi3Root xi3_root(int alpha, cplx xi1, const BranchData& bd, double branch_tol) {
    Xi3Root r;
    r.alpha = alpha;
    if (alpha == 3) {
        const NondimMaterial& m = bd.material;
        r.value = bd.crack_case == CrackCase::AxisPerp ? std::sqrt(m.B3 / m.B1) * gamma(4, xi1, bd)
                                                        : std::sqrt(m.B1 / m.B3) * gamma(2, xi1, bd);
    } else {
        const cplx a = xi3_half(1, xi1, bd), b = xi3_half(2, xi1, bd);
        r.value = alpha == 1 ? a + b : a - b;
    }
    r.near_branch_point = branch_distance(xi1, bd) < branch_tol;
    const auto d = sheet_derivatives(alpha, xi1, r.value, bd);
    r.d1 = d.first;
    r.d2 = d.second;
    return r;
}

cplx rayleigh_function(cplx xi1, const BranchData& bd) {
    const NondimMaterial& e = bd.eff;
    return (e.A13 * e.A13 - e.A11 * e.A33) * (xi1 * xi1 + bd.xi2 * bd.xi2) + e.A33 +
           std::sqrt(e.A11 * e.A33) * gamma(1, xi1, bd) / gamma(2, xi1, bd);
}

namespace {

// R along the real axis as a function of s = sqrt(xi1^2 + xi2^2), for s above both
// branch points, where it is real.
double rayleigh_real(double s, const NondimMaterial& e) {
    const double s2 = s * s;
    return (e.A13 * e.A13 - e.A11 * e.A33) * s2 + e.A33 +
           std::sqrt(e.A11 * e.A33) * std::sqrt((s2 - 1.0 / e.A11) / (s2 - 1.0 / e.B1));
}

cplx rayleigh_derivative(cplx x, const BranchData& bd) {
    const NondimMaterial& e = bd.eff;
    const cplx g1 = gamma(1, x, bd), g2 = gamma(2, x, bd);
    const cplx dg1 = -x / g1, dg2 = -x / g2;
    return 2.0 * (e.A13 * e.A13 - e.A11 * e.A33) * x +
           std::sqrt(e.A11 * e.A33) * (dg1 * g2 - g1 * dg2) / (g2 * g2);
}

}  // namespace

RayleighData rayleigh_pole(const BranchData& bd, RootMethod method, double tol) {
    const NondimMaterial& e = bd.eff;
    const double lo0 = std::max(1.0 / std::sqrt(e.A11), 1.0 / std::sqrt(e.B1));
    RayleighData rd;
    if (method == RootMethod::Bisection) {
        double lo = lo0 * (1 + 1e-12), hi = lo0 * 2;
        int grow = 0;
        while (rayleigh_real(hi, e) > 0 && grow++ < 60) hi *= 1.5;
        if (!(rayleigh_real(lo, e) > 0) || !(rayleigh_real(hi, e) < 0))
            throw NoRayleighRoot("Rayleigh function has no sign change above the shear branch point");
        for (int it = 0; it < 200 && hi - lo > tol * hi; ++it) {
            const double mid = 0.5 * (lo + hi);
            (rayleigh_real(mid, e) > 0 ? lo : hi) = mid;
        }
        rd.k_R = 0.5 * (lo + hi);
    } else {
        // Newton on R(xi1) itself at the actual xi2, from above the branch points
        const double s2 = bd.xi2 * bd.xi2;
        cplx x = std::sqrt(cplx(1.2 * 1.2 * lo0 * lo0 - s2));
        bool ok = false;
        for (int it = 0; it < 100; ++it) {
            const cplx dx = rayleigh_function(x, bd) / rayleigh_derivative(x, bd);
            cplx xn = x - dx;
            // stay on the real axis above the branch points
            while (xn.real() * xn.real() + s2 <= lo0 * lo0) xn = 0.5 * (xn + x);
            x = cplx(xn.real(), 0.0);
            if (std::abs(dx) < tol * std::abs(x)) { ok = true; break; }
        }
        if (!ok || std::abs(rayleigh_function(x, bd)) > 1e-8)
            throw NoRayleighRoot("Newton iteration for the Rayleigh pole did not converge");
        rd.k_R = std::sqrt(x.real() * x.real() + s2);
    }
    const double kr2 = rd.k_R * rd.k_R - bd.xi2 * bd.xi2;
    if (!(kr2 > 0)) throw NoRayleighRoot("Rayleigh pole leaves the real axis at this xi2");
    rd.kappa_R = std::sqrt(kr2);
    return rd;
}

MuEigen mu_eigenvalues(cplx xi1, const BranchData& bd) {
    const NondimMaterial& e = bd.eff;
    const NondimMaterial& m = bd.material;
    const bool perp = bd.crack_case == CrackCase::AxisPerp;
    const cplx big = kI * rayleigh_function(xi1, bd) / (4 * e.A33 * xi3_half(1, xi1, bd));
    const cplx small = 0.5 * csqrt(-m.B1 * m.B3) * gamma(perp ? 4 : 2, xi1, bd);
    const cplx third = std::sqrt(e.A33 / e.A11) * gamma(2, xi1, bd) / gamma(1, xi1, bd) * big;
    MuEigen r;
    if (perp) {
        r.mu1 = big;
        r.mu2 = small;
        r.mu3 = third;
    } else {
        r.mu1 = small;
        r.mu2 = third;
        r.mu3 = big;
    }
    r.P << xi1, bd.xi2, bd.xi2, -xi1;
    return r;
}

CMat3 mu_block(cplx xi1, const BranchData& bd) {
    const MuEigen mu = mu_eigenvalues(xi1, bd);
    CMat3 T = CMat3::Zero();
    if (bd.crack_case == CrackCase::AxisInPlane) {
        T.diagonal() << mu.mu1, mu.mu2, mu.mu3;
        return T;
    }
    const cplx det = xi1 * xi1 + bd.xi2 * bd.xi2;  // P^2 = det * I
    CMat2 D = CMat2::Zero();
    D(0, 0) = mu.mu1;
    D(1, 1) = mu.mu2;
    T.topLeftCorner<2, 2>() = mu.P * D * mu.P / det;
    T(2, 2) = mu.mu3;
    return T;
}

GreenTraction green_traction_residue(cplx xi1, int x3_sign, const BranchData& bd, double tol) {
    if (branch_distance(xi1, bd) < tol)
        throw PoleCoalescence("xi1 is within tolerance of a branch point; residues coalesce");
    const NondimMaterial& m = bd.material;
    const Mat3 Q = rotation_matrix(bd.crack_case);
    const CMat3 Qt = Q.transpose().cast<cplx>();
    const double sg = x3_sign > 0 ? 1.0 : -1.0;
    GreenTraction g{CMat3::Zero(), CMat3::Zero()};
    for (int alpha = 1; alpha <= 3; ++alpha) {
        const cplx r = xi3_root(alpha, xi1, bd).value;
        const CVec3 xc(xi1, bd.xi2, -sg * r);
        const CVec3 xm = Qt * xc;
        const CMat3 Pi = alpha == 3 ? projector3(xm) : projector12(xm, 1.0, m);
        cplx dl = 0;
        for (int j = 0; j < 3; ++j)
            if (Q(2, j) != 0.0) dl += Q(2, j) * (Pi * christoffel_derivative<cplx>(j, xm, m)).trace();
        if (std::abs(dl) < tol)
            throw PoleCoalescence("vanishing xi3-derivative of the eigenvalue at a residue");
        const CMat3 S = S_operator(xc, bd.crack_case, m);
        g.t += sg * kI * (kI * Pi * S.transpose()) / dl;
        g.tau += -sg * kI * (-(S * Pi * S.transpose())) / dl;
    }
    return g;
}

void write_root_loci_csv(std::ostream& os, const BranchData& bd, const std::vector<double>& grid,
                         bool header) {
    if (header) os << "alpha,xi1,re_xi3,im_xi3\n";
    char buf[128];
    for (int alpha = 1; alpha <= 3; ++alpha)
        for (double x : grid) {
            const cplx v = xi3_root(alpha, x, bd).value;
            std::snprintf(buf, sizeof buf, "%d,%.10e,%.12e,%.12e\n", alpha, x, v.real(), v.imag());
            os << buf;
        }
}

}  // namespace tidiff
