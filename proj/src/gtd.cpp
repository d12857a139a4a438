#include "tidiff/gtd.hpp"

#include "tidiff/christoffel.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <thread>

namespace tidiff {

namespace {

// rho^2 = w and dw/dvartheta.
struct RhoSquared {
    double w = 0, dw = 0;
};

RhoSquared rho_squared(int alpha, double vartheta_deg, double xi2, CrackCase cc, const NondimMaterial& m) {
    double s, c;
    sincos_deg(vartheta_deg, s, c);
    const double c2 = c * c, s2 = s * s, cs = c * s;
    const double k2 = xi2 * xi2;
    const bool perp = cc == CrackCase::AxisPerp;
    RhoSquared r;
    if (alpha == 3) {
        const double num = perp ? 1.0 - m.B3 * k2 : 1.0;
        const double den = perp ? m.B3 * c2 + m.B1 * s2 : m.B1 * c2 + m.B3 * s2;
        const double dden = perp ? 2 * cs * (m.B1 - m.B3) : 2 * cs * (m.B3 - m.B1);
        r.w = num / den;
        r.dw = -num * dden / (den * den);
        return r;
    }
    const double B4 = m.B4();
    const double as = perp ? m.B1 * m.A33 : m.B1 * m.A11;
    const double ac = perp ? m.A11 * m.B1 : m.A33 * m.B1;
    const double D1 = as * s2 * s2 - B4 * c2 * s2 + ac * c2 * c2;
    const double dD1 = 4 * as * s2 * cs - 2 * B4 * cs * (c2 - s2) - 4 * ac * c2 * cs;
    double X, Y, D3;
    if (perp) {
        X = 2 * m.A11 * k2 * m.B1 - m.B1 - m.A11;
        Y = B4 * k2 + m.A33 + m.B1;
        D3 = (m.A11 * k2 - 1) * (m.B1 * k2 - 1);
    } else {
        X = -(m.B1 + m.A33);
        Y = m.A11 + m.B1;
        D3 = 1.0;
    }
    const double D2 = X * c2 - Y * s2;
    const double dD2 = -2 * cs * (X + Y);
    const double disc = D2 * D2 - 4 * D1 * D3;
    if (disc < 0) throw EvanescentMode("diffracted wave vector is complex for this angle");
    const double sg = alpha == 1 ? 1.0 : -1.0;
    r.w = (-D2 + sg * std::sqrt(disc)) / (2 * D1);
    r.dw = -(dD1 * r.w * r.w + dD2 * r.w) / (2 * D1 * r.w + D2);
    return r;
}

}  // namespace

double rho(int alpha, double vartheta_deg, double xi2, CrackCase c, const NondimMaterial& m) {
    const RhoSquared r = rho_squared(alpha, vartheta_deg, xi2, c, m);
    if (!(r.w > 0)) throw EvanescentMode("diffracted wave vector is complex for this angle");
    return std::sqrt(r.w);
}

double rho_derivative(int alpha, double vartheta_deg, double xi2, CrackCase c, const NondimMaterial& m) {
    const RhoSquared r = rho_squared(alpha, vartheta_deg, xi2, c, m);
    if (!(r.w > 0)) throw EvanescentMode("diffracted wave vector is complex for this angle");
    return r.dw / (2 * std::sqrt(r.w));
}

namespace {

double wrap_deg(double d) {
    d = std::fmod(d, 360.0);
    if (d < 0) d += 360.0;
    return d;
}

}  // namespace

double ray_angle(int alpha, double vartheta_deg, double xi2, CrackCase c, const NondimMaterial& m) {
    const double r = rho(alpha, vartheta_deg, xi2, c, m);
    const double rp = rho_derivative(alpha, vartheta_deg, xi2, c, m);
    return wrap_deg(vartheta_deg - rad2deg(std::atan(rp / r)));
}

DiffractedWave diffracted_wave(int alpha, double vartheta_deg, const CODSolution& sol,
                               const GtdTolerances& tol) {
    const IncidentWave& inc = sol.incident();
    const BranchData& bd = sol.branch();
    const NondimMaterial& m = bd.material;
    DiffractedWave w;
    w.alpha = alpha;
    w.vartheta = vartheta_deg;
    w.rho = rho(alpha, vartheta_deg, inc.xi2, inc.crack_case, m);
    w.drho = rho_derivative(alpha, vartheta_deg, inc.xi2, inc.crack_case, m);
    const double th = deg2rad(vartheta_deg) - std::atan(w.drho / w.rho);
    w.theta = wrap_deg(rad2deg(th));
    double s, c;
    sincos_deg(vartheta_deg, s, c);
    w.k_diff = Vec3(-w.rho * c, inc.xi2, -w.rho * s);

    const double sth = std::sin(th);
    const double sg = sth > 0 ? 1.0 : -1.0;
    // the critical point lies on the root that is physical on the observation side
    const auto d = sheet_derivatives(alpha, w.k_diff(0), sg * w.rho * s, bd);
    w.xi3_dot = d.first;
    w.xi3_ddot = d.second;
    w.stationarity = std::abs(-std::cos(th) + w.xi3_dot * std::abs(sth));

    const Mat3 Q = rotation_matrix(inc.crack_case);
    const CVec3 xm = (Q.transpose() * w.k_diff).cast<cplx>();
    const CMat3 Pi = alpha == 3 ? projector3(xm) : projector12(xm, 1.0, m);
    cplx dl = 0;
    for (int j = 0; j < 3; ++j)
        if (Q(2, j) != 0.0) dl += Q(2, j) * (Pi * christoffel_derivative<cplx>(j, xm, m)).trace();
    w.lambda_xi3 = dl;

    w.flags.shadow = std::abs(w.k_diff(0) + inc.k1()) < tol.shadow;
    w.flags.cusp = std::abs(w.xi3_ddot) < tol.cusp;
    w.flags.cone = std::abs(w.lambda_xi3) < tol.cone;
    return w;
}

namespace {

void check_face(const DiffractedWave& w) {
    if (std::abs(std::sin(deg2rad(w.theta))) < 1e-12)
        throw OnCrackFace("observation direction lies in the crack plane");
}

// Fills G and dU; the prefactor is applied by the caller.
DiffractionCoefficient bare_coefficient(int alpha, const CODSolution& sol, const DiffractedWave& w) {
    const IncidentWave& inc = sol.incident();
    const Mat3 Q = rotation_matrix(inc.crack_case);
    const CVec3 kc = w.k_diff.cast<cplx>();
    const CVec3 xm = Q.transpose().cast<cplx>() * kc;
    const NondimMaterial& m = sol.branch().material;
    const CMat3 Pi = alpha == 3 ? projector3(xm) : projector12(xm, 1.0, m);
    const CMat3 S = S_operator(kc, inc.crack_case, m);
    DiffractionCoefficient dc;
    dc.alpha = alpha;
    dc.beta = branch_of(inc.mode);
    dc.wave = w;
    dc.flags = w.flags;
    dc.G = kI * Pi * S.transpose() / w.lambda_xi3;
    dc.dU = sol.delta_u(w.k_diff(0));
    return dc;
}

}  // namespace

DiffractionCoefficient diffraction_coefficient(int alpha, const CODSolution& sol, double vartheta_deg,
                                               const GtdTolerances& tol) {
    const DiffractedWave w = diffracted_wave(alpha, vartheta_deg, sol, tol);
    check_face(w);
    DiffractionCoefficient dc = bare_coefficient(alpha, sol, w);
    const double sth = std::sin(deg2rad(w.theta));
    const double sg = sth > 0 ? 1.0 : -1.0;
    const cplx pre = -sg * kI / (2 * kPi) * std::sqrt(2.0 * kPi * kI / (std::abs(sth) * w.xi3_ddot));
    dc.D = pre * (dc.G * dc.dU);
    dc.magnitude = dc.D.norm();
    if (w.flags.any()) {
        std::string which;
        if (w.flags.shadow) which += " shadow";
        if (w.flags.cusp) which += " cusp";
        if (w.flags.cone) which += " cone";
        throw TransitionZone("observation in a transition zone:" + which, dc);
    }
    return dc;
}

cplx regularization_factor(Regularization level, const DiffractedWave& w) {
    const double sth = std::abs(std::sin(deg2rad(w.theta)));
    cplx f = std::sqrt(2.0 * kPi * kI * sth * w.xi3_ddot);
    if (level == Regularization::CuspAndCone) f *= w.lambda_xi3;
    return f;
}

DiffractionCoefficient regularized_coefficient(Regularization level, int alpha, const CODSolution& sol,
                                               double vartheta_deg) {
    const DiffractedWave w = diffracted_wave(alpha, vartheta_deg, sol);
    check_face(w);
    DiffractionCoefficient dc = bare_coefficient(alpha, sol, w);
    const double sg = std::sin(deg2rad(w.theta)) > 0 ? 1.0 : -1.0;
    // sqrt(2 pi i/(|s| x)) sqrt(2 pi i |s| x) = 2 pi i sgn(x) for real x, so the cusp factor cancels
    const double sx = w.xi3_ddot.real() < 0 ? -1.0 : 1.0;
    const CMat3 G = level == Regularization::CuspAndCone ? CMat3(dc.G * w.lambda_xi3) : dc.G;
    dc.D = sg * sx * (G * dc.dU);
    dc.magnitude = dc.D.norm();
    return dc;
}

std::vector<SweepRow> sweep(int alpha, const CODSolution& sol, const std::vector<double>& grid,
                            const GtdTolerances& tol, int threads) {
    std::vector<SweepRow> rows(grid.size());
    auto work = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            SweepRow& r = rows[i];
            r.vartheta = grid[i];
            try {
                r.coef = diffraction_coefficient(alpha, sol, grid[i], tol);
                r.theta = r.coef->wave.theta;
            } catch (const TransitionZone& tz) {
                r.coef = tz.coefficient;
                r.flags = tz.coefficient.flags;
                r.theta = r.coef->wave.theta;
            } catch (const EvanescentMode&) {
                r.evanescent = true;
            } catch (const OnCrackFace&) {
                r.on_face = true;
                r.theta = wrap_deg(std::round(ray_angle(alpha, grid[i], sol.incident().xi2,
                                                        sol.crack_case(), sol.branch().material)));
            }
        }
    };
    threads = std::max(1, std::min<int>(threads, static_cast<int>(grid.size())));
    if (threads == 1) {
        work(0, grid.size());
        return rows;
    }
    std::vector<std::thread> pool;
    const std::size_t chunk = (grid.size() + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        const std::size_t lo = t * chunk, hi = std::min(grid.size(), lo + chunk);
        if (lo < hi) pool.emplace_back(work, lo, hi);
    }
    for (auto& th : pool) th.join();
    return rows;
}

void write_sweep_csv(std::ostream& os, int alpha, int beta, const std::vector<SweepRow>& rows,
                     bool header) {
    if (header)
        os << "alpha,beta,vartheta_deg,theta_deg,reD1,imD1,reD2,imD2,reD3,imD3,magD,"
              "flag_shadow,flag_cusp,flag_cone,evanescent\n";
    char buf[512];
    for (const auto& r : rows) {
        CVec3 D = CVec3::Zero();
        double mag = 0;
        if (r.coef) {
            D = r.coef->D;
            mag = r.coef->magnitude;
        } else if (r.on_face) {
            const double nan = std::nan("");
            D = CVec3::Constant(cplx(nan, nan));
            mag = nan;
        }
        std::snprintf(buf, sizeof buf,
                      "%d,%d,%.6f,%.6f,%.10e,%.10e,%.10e,%.10e,%.10e,%.10e,%.10e,%d,%d,%d,%d\n", alpha,
                      beta, r.vartheta, r.theta, D(0).real(), D(0).imag(), D(1).real(), D(1).imag(),
                      D(2).real(), D(2).imag(), mag, r.flags.shadow, r.flags.cusp, r.flags.cone,
                      r.evanescent);
        os << buf;
    }
}

}  // namespace tidiff
