#include "tidiff/crackgeom.hpp"

#include "tidiff/errors.hpp"

#include <cmath>

namespace tidiff {

const char* case_name(CrackCase c) {
    return c == CrackCase::AxisPerp ? "axis-perp" : "axis-in-plane";
}

CrackCase parse_case(const std::string& s) {
    if (s == "axis-perp" || s == "perp" || s == "AxisPerp") return CrackCase::AxisPerp;
    if (s == "axis-in-plane" || s == "inplane" || s == "AxisInPlane") return CrackCase::AxisInPlane;
    throw ParseError("unknown crack case '" + s + "' (expected axis-perp or axis-in-plane)");
}

Mat3 rotation_matrix(CrackCase c) {
    if (c == CrackCase::AxisPerp) return Mat3::Identity();
    Mat3 Q;
    Q << 0, 0, 1,
        -1, 0, 0,
         0, -1, 0;
    return Q;
}

CMat3 S_operator(const CVec3& xi_crack, CrackCase c, const NondimMaterial& m) {
    const Mat3 Q = rotation_matrix(c);
    const CVec3 xm = Q.transpose().cast<cplx>() * xi_crack;
    const Vec3 nu = Q.transpose() * Vec3(0, 0, 1);
    CMat3 S = CMat3::Zero();
    for (int i = 0; i < 3; ++i)
        if (nu(i) != 0.0) S += nu(i) * sigma_matrix<cplx>(i, xm, m);
    return S;
}

IncidentWave incident_wave(CrackCase c, Mode mode, double phi_deg, double theta_deg,
                           const NondimMaterial& m) {
    if (!(theta_deg >= 0.0 && theta_deg < 360.0))
        throw UnsupportedIncidence("incidence angle theta must lie in [0, 360) degrees");
    if (c == CrackCase::AxisInPlane && phi_deg != 90.0)
        throw UnsupportedIncidence(
            "axis-in-plane case is solved only for incidence normal to the edge (phi = 90)");
    double sp, cp, st, ct;
    sincos_deg(phi_deg, sp, cp);
    sincos_deg(theta_deg, st, ct);

    IncidentWave w;
    w.crack_case = c;
    w.mode = mode;
    w.phi_in = phi_deg;
    w.theta_in = theta_deg;
    w.n_in = Vec3(sp * ct, cp, sp * st);

    const Mat3 Q = rotation_matrix(c);
    const Vec3 nm = Q.transpose() * w.n_in;
    const Eigensystem es = eigensystem(nm, m);
    const int b = branch_of(mode) - 1;
    w.k = 1.0 / std::sqrt(es.lambda[b]);
    w.k_in = w.k * w.n_in;
    w.p_hat = es.p[b];
    w.t_hat = kI * (S_operator(w.k_in.cast<cplx>(), c, m) * w.p_hat.cast<cplx>());
    w.xi2 = w.k_in(1) == 0.0 ? 0.0 : -w.k_in(1);
    w.group_velocity = Q * ray_direction(nm, mode, m);
    w.polarization_label = mode == Mode::qSH ? Mode::qSH : classify_polarization(nm, w.p_hat);
    w.reaches_face = std::abs(w.group_velocity(2)) > 1e-12;
    return w;
}

}  // namespace tidiff
