#include "tidiff/christoffel.hpp"

#include "tidiff/errors.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace tidiff {

const char* mode_name(Mode m) {
    switch (m) {
        case Mode::qP: return "qP";
        case Mode::qSV: return "qSV";
        case Mode::qSH: return "qSH";
    }
    return "?";
}

Mode parse_mode(const std::string& s) {
    if (s == "qP" || s == "1") return Mode::qP;
    if (s == "qSV" || s == "2") return Mode::qSV;
    if (s == "qSH" || s == "3") return Mode::qSH;
    throw ParseError("unknown mode '" + s + "' (expected qP, qSV or qSH)");
}

Mat3 christoffel_matrix(const Vec3& xi, const NondimMaterial& m) {
    return christoffel_matrix<double>(xi, m);
}

namespace {

constexpr double kDegenerate = 1e-9;

// Two closed-form eigenvectors of the quadratic factor for eigenvalue lam at
// unit direction n. Either may vanish; they are parallel otherwise.
void quadratic_vectors(const Vec3& n, double lam, const NondimMaterial& m, Vec3& vp, Vec3& va) {
    const double c = m.A13 + m.B1;
    const double u = n(0) * n(0) + n(1) * n(1), v = n(2) * n(2);
    const double a = m.A11 * u + m.B1 * v, d = m.B1 * u + m.A33 * v;
    vp << c * n(0) * n(2), c * n(1) * n(2), lam - a;
    va << (lam - d) * n(0), (lam - d) * n(1), c * u * n(2);
}

// Returns false when both closed forms vanish.
bool quadratic_polarization(const Vec3& n, double lam, const NondimMaterial& m, Vec3& p) {
    Vec3 vp, va;
    quadratic_vectors(n, lam, m, vp, va);
    const double np = vp.norm(), na = va.norm();
    if (std::max(np, na) < kDegenerate) return false;
    if (np >= na) {
        p = vp / np;
    } else {
        p = va / na;
        // keep the sign of the first form whenever it is defined
        if (np > kDegenerate && p.dot(vp) < 0) p = -p;
    }
    return true;
}

}  // namespace

Eigensystem eigensystem(const Vec3& xi, const NondimMaterial& m) {
    const double r = xi.norm();
    const Vec3 n = xi / r;
    const auto lam = branch_eigenvalues<double>(n, m);
    Eigensystem es;
    for (int b = 0; b < 3; ++b) es.lambda[b] = lam[b] * r * r;

    const double perp = std::hypot(n(0), n(1));
    bool ok3 = perp > kDegenerate;
    es.p[2] = ok3 ? Vec3(-n(1) / perp, n(0) / perp, 0.0) : Vec3(0, 1, 0);

    bool ok1 = quadratic_polarization(n, lam[0], m, es.p[0]);
    bool ok2 = quadratic_polarization(n, lam[1], m, es.p[1]);
    if (!ok1 && ok2) es.p[0] = es.p[1].cross(es.p[2]);
    if (!ok2 && ok1) es.p[1] = es.p[2].cross(es.p[0]);
    if (!ok1 && !ok2) {
        es.p[0] = Vec3(0, 0, 1);
        es.p[1] = es.p[2].cross(es.p[0]);
    }
    return es;
}

CMat3 projector12(const CVec3& xi, cplx lambda, const NondimMaterial& m) {
    // work at unit scale; the projector is invariant under real rescaling of xi
    const double r = xi.norm();
    const CVec3 x = xi / r;
    const cplx lam = lambda / (r * r);
    const double c = m.A13 + m.B1;
    const cplx u = x(0) * x(0) + x(1) * x(1), v = x(2) * x(2);
    const cplx a = m.A11 * u + m.B1 * v, d = m.B1 * u + m.A33 * v;
    CVec3 vp, va;
    vp << c * x(0) * x(2), c * x(1) * x(2), lam - a;
    va << (lam - d) * x(0), (lam - d) * x(1), c * u * x(2);
    const cplx sp = vp.transpose() * vp, sa = va.transpose() * va;
    if (std::max(std::abs(sp), std::abs(sa)) < 1e-24) {
        CVec3 w(x(0), x(1), 0.0);
        if (w.norm() < 1e-12) w = CVec3(1, 0, 0);
        return w * w.transpose() / cplx(w.transpose() * w);
    }
    if (std::abs(sp) >= std::abs(sa)) return vp * vp.transpose() / sp;
    return va * va.transpose() / sa;
}

CMat3 projector3(const CVec3& xi) {
    CVec3 w(-xi(1), xi(0), 0.0);
    if (w.norm() < 1e-12 * xi.norm()) w = CVec3(0, 1, 0);
    return w * w.transpose() / cplx(w.transpose() * w);
}

CMat3 transfer_tensor(const Vec3& xi, const NondimMaterial& m, double tol) {
    const Eigensystem es = eigensystem(xi, m);
    CMat3 G = CMat3::Zero();
    for (int b = 0; b < 3; ++b) {
        const double d = es.lambda[b] - 1.0;
        if (std::abs(d) < tol) {
            char buf[96];
            std::snprintf(buf, sizeof buf, "branch %d has lambda - 1 = %.3e", b + 1, d);
            throw OnSlownessSurface(buf);
        }
        G += (es.p[b] * es.p[b].transpose()).cast<cplx>() / d;
    }
    return G;
}

double slowness(const Vec3& n, Mode mode, const NondimMaterial& m) {
    const auto lam = branch_eigenvalues<double>(n, m);
    return 1.0 / std::sqrt(lam[branch_of(mode) - 1]);
}

Vec3 ray_direction(const Vec3& n, Mode mode, const NondimMaterial& m) {
    const double u = n(0) * n(0) + n(1) * n(1), v = n(2) * n(2);
    const auto lam = branch_eigenvalues<double>(n, m);
    const int b = branch_of(mode);
    double lu, lv;
    if (b == 3) {
        lu = m.B3;
        lv = m.B1;
    } else {
        const double c2 = (m.A13 + m.B1) * (m.A13 + m.B1);
        const double F = (m.A11 - m.B1) * u + (m.B1 - m.A33) * v;
        const double E = F * F + 4 * c2 * u * v;
        const double scale = (m.A11 + m.A33 + m.B1) * (u + v);
        if (E < 1e-20 * scale * scale)
            throw DegenerateDirection("quasi-longitudinal and quasi-shear sheets touch");
        const double s = b == 1 ? 1.0 : -1.0, rE = std::sqrt(E);
        lu = 0.5 * ((m.B1 + m.A11) + s * (F * (m.A11 - m.B1) + 2 * c2 * v) / rE);
        lv = 0.5 * ((m.B1 + m.A33) + s * (F * (m.B1 - m.A33) + 2 * c2 * u) / rE);
    }
    const Vec3 grad(2 * n(0) * lu, 2 * n(1) * lu, 2 * n(2) * lv);
    return grad / (2 * std::sqrt(lam[b - 1]));
}

Mode classify_polarization(const Vec3& n, const Vec3& p) {
    const Vec3 nu = n.normalized();
    return std::abs(p.dot(nu)) >= p.cross(nu).norm() ? Mode::qP : Mode::qSV;
}

std::vector<CurvePoint> sample_curves(Mode mode, const NondimMaterial& m, int n_points) {
    if (n_points < 8) throw std::invalid_argument("sample_curves needs at least 8 points");
    std::vector<CurvePoint> out;
    out.reserve(n_points);
    for (int i = 0; i < n_points; ++i) {
        const double a = 2 * kPi * i / n_points;
        const Vec3 n(std::cos(a), 0.0, std::sin(a));
        const double k = slowness(n, mode, m);
        const Vec3 x = ray_direction(n, mode, m);
        out.push_back({mode, k * n(0), k * n(2), x(0), x(2)});
    }
    return out;
}

void write_curves_csv(std::ostream& os, const std::vector<CurvePoint>& pts, bool header) {
    if (header) os << "mode,xi1,xi3,x1,x3\n";
    char buf[160];
    for (const auto& p : pts) {
        std::snprintf(buf, sizeof buf, "%s,%.12e,%.12e,%.12e,%.12e\n", mode_name(p.mode), p.xi1,
                      p.xi3, p.x1, p.x3);
        os << buf;
    }
}

}  // namespace tidiff
