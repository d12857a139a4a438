#include "tidiff/codsolver.hpp"

#include "tidiff/errors.hpp"

#include <cmath>
#include <cstdio>

namespace tidiff {

namespace {

CMat2 pmat(cplx xi, double xi2) {
    CMat2 P;
    P << xi, xi2, xi2, -xi;
    return P;
}

CVec2 diag_mul(cplx a, cplx b, const CVec2& v) { return CVec2(a * v(0), b * v(1)); }

// Solves the consistent 4x2 system A g = b by Gaussian elimination with full pivoting.
CVec2 full_pivot_solve(Eigen::Matrix<cplx, 4, 2> A, Eigen::Matrix<cplx, 4, 1> b) {
    int rows[4] = {0, 1, 2, 3}, cols[2] = {0, 1};
    for (int k = 0; k < 2; ++k) {
        int pr = k, pc = k;
        double best = -1;
        for (int r = k; r < 4; ++r)
            for (int c = k; c < 2; ++c)
                if (std::abs(A(rows[r], cols[c])) > best) {
                    best = std::abs(A(rows[r], cols[c]));
                    pr = r;
                    pc = c;
                }
        std::swap(rows[k], rows[pr]);
        std::swap(cols[k], cols[pc]);
        for (int r = k + 1; r < 4; ++r) {
            const cplx f = A(rows[r], cols[k]) / A(rows[k], cols[k]);
            for (int c = k; c < 2; ++c) A(rows[r], cols[c]) -= f * A(rows[k], cols[c]);
            b(rows[r]) -= f * b(rows[k]);
        }
    }
    CVec2 y;
    y(1) = b(rows[1]) / A(rows[1], cols[1]);
    y(0) = (b(rows[0]) - A(rows[0], cols[1]) * y(1)) / A(rows[0], cols[0]);
    CVec2 g;
    g(cols[0]) = y(0);
    g(cols[1]) = y(1);
    return g;
}

}  // namespace

bool CODSolution::tangential_coupled() const {
    return inc_.crack_case == CrackCase::AxisPerp && inc_.xi2 != 0.0;
}

cplx CODSolution::scalar_du(int i, cplx xi) const {
    const cplx t = inc_.t_hat(i - 1);
    if (t == 0.0) return 0.0;
    return -kI * t / ((xi + inc_.k1()) * mu_->plus(i, xi) * mu_minus_k1_[i - 1]);
}

cplx CODSolution::scalar_tm(int i, cplx xi) const {
    const cplx t = inc_.t_hat(i - 1);
    if (t == 0.0) return 0.0;
    return kI * t * (1.0 - mu_->minus(i, xi) / mu_minus_k1_[i - 1]) / (xi + inc_.k1());
}

CVec3 CODSolution::delta_u(cplx xi) const {
    CVec3 out;
    out(2) = scalar_du(3, xi);
    if (!tangential_coupled()) {
        out(0) = scalar_du(1, xi);
        out(1) = scalar_du(2, xi);
        return out;
    }
    const double xi2 = inc_.xi2;
    const CVec2 tau = inc_.t_hat.head<2>();
    const CMat2 P = pmat(xi, xi2);
    const CVec2 inner =
        -kI * diag_mul(1.0 / mu_minus_k1_[0], 1.0 / mu_minus_k1_[1], P * tau) / (xi + inc_.k1()) + g_;
    const CVec2 v = diag_mul(1.0 / mu_->plus(1, xi), 1.0 / mu_->plus(2, xi), inner);
    out.head<2>() = P * v / (xi * xi + xi2 * xi2);
    return out;
}

CVec3 CODSolution::t_minus(cplx xi) const {
    CVec3 out;
    out(2) = scalar_tm(3, xi);
    if (!tangential_coupled()) {
        out(0) = scalar_tm(1, xi);
        out(1) = scalar_tm(2, xi);
        return out;
    }
    const double xi2 = inc_.xi2;
    const CVec2 tau = inc_.t_hat.head<2>();
    const CMat2 P = pmat(xi, xi2);
    const cplx m1 = mu_->minus(1, xi), m2 = mu_->minus(2, xi);
    const CVec2 inner = kI * diag_mul(1.0 / m1 - 1.0 / mu_minus_k1_[0], 1.0 / m2 - 1.0 / mu_minus_k1_[1],
                                      P * tau) / (xi + inc_.k1()) + g_;
    out.head<2>() = P * diag_mul(m1, m2, inner) / (xi * xi + xi2 * xi2);
    return out;
}

CODSolution CODSolution::with_g(const CVec2& g) const {
    CODSolution s = *this;
    s.g_ = g;
    return s;
}

namespace {

struct GSystem {
    Eigen::Matrix<cplx, 4, 2> A;
    Eigen::Matrix<cplx, 4, 1> b;
};

// Rows 0-1: residue at +i|xi2| of dU; rows 2-3: residue at -i|xi2| of T^-. Each reads A g - b.
GSystem g_system(const IncidentWave& inc, const MuFactors& mu, const std::array<cplx, 3>& mk) {
    const double xi2 = inc.xi2;
    const cplx q = kI * std::abs(xi2), k1 = inc.k1();
    const CVec2 tau = inc.t_hat.head<2>();
    GSystem s;
    const CMat2 Pq = pmat(q, xi2), Pm = pmat(-q, xi2);
    CMat2 A1 = Pq;
    A1.col(0) /= mu.plus(1, q);
    A1.col(1) /= mu.plus(2, q);
    const CVec2 c1 = -kI * diag_mul(1.0 / mk[0], 1.0 / mk[1], Pq * tau) / (q + k1);
    const cplx m1 = mu.minus(1, -q), m2 = mu.minus(2, -q);
    CMat2 A2 = Pm;
    A2.col(0) *= m1;
    A2.col(1) *= m2;
    const CVec2 c2 = kI * diag_mul(1.0 / m1 - 1.0 / mk[0], 1.0 / m2 - 1.0 / mk[1], Pm * tau) / (-q + k1);
    s.A.topRows<2>() = A1;
    s.A.bottomRows<2>() = A2;
    s.b.head<2>() = -A1 * c1;
    s.b.tail<2>() = -A2 * c2;
    return s;
}

}  // namespace

CODSolution solve(const IncidentWave& inc, const NondimMaterial& m, const SolveOptions& opt) {
    CODSolution s;
    s.inc_ = inc;
    const BranchData bd = branch_points(inc.crack_case, inc.xi2, m, false);
    const bool perp = inc.crack_case == CrackCase::AxisPerp;
    const int small = perp ? 2 : 1;
    auto driven = [&](int i) {
        if (perp && inc.xi2 != 0.0 && i < 3) return inc.t_hat(0) != 0.0 || inc.t_hat(1) != 0.0;
        return inc.t_hat(i - 1) != 0.0;
    };
    bool need_table = false;
    for (int i = 1; i <= 3; ++i)
        if (i != small && driven(i)) need_table = true;

    std::shared_ptr<const FactorTable> table;
    if (need_table) {
        const std::string why = ordering_failure(bd);
        if (!why.empty()) throw OrderingViolation(why);
        table = std::make_shared<FactorTable>(bd, rayleigh_pole(bd), opt.nodes);
    }
    s.mu_ = std::make_shared<MuFactors>(bd, table);
    for (int i = 1; i <= 3; ++i)
        s.mu_minus_k1_[i - 1] = driven(i) ? s.mu_->minus(i, -inc.k1()) : cplx(1.0);

    if (s.tangential_coupled() && driven(1)) {
        const GSystem sys = g_system(inc, *s.mu_, s.mu_minus_k1_);
        Eigen::JacobiSVD<Eigen::Matrix<cplx, 4, 2>> svd(sys.A);
        const auto sv = svd.singularValues();
        s.g_cond_ = sv(0) / sv(1);
        if (!(s.g_cond_ < opt.g_condition_limit)) {
            char buf[96];
            std::snprintf(buf, sizeof buf, "g system condition number %.3e", s.g_cond_);
            throw SingularGSystem(buf);
        }
        s.g_ = full_pivot_solve(sys.A, sys.b);
    }
    return s;
}

ResidueConditions residue_conditions(const CODSolution& sol) {
    const IncidentWave& inc = sol.incident();
    if (inc.crack_case != CrackCase::AxisPerp || inc.xi2 == 0.0)
        throw std::invalid_argument("residue conditions exist only for AxisPerp with xi2 != 0");
    std::array<cplx, 3> mk;
    for (int i = 1; i <= 3; ++i) mk[i - 1] = sol.mu().minus(i, -inc.k1());
    const GSystem sys = g_system(inc, sol.mu(), mk);
    const Eigen::Matrix<cplx, 4, 1> r = sys.A * sol.g() - sys.b;
    return {r.head<2>(), r.tail<2>()};
}

std::vector<double> residual_grid(const CODSolution& sol, int n, double delta) {
    const BranchData& bd = sol.branch();
    double kmax = 0;
    for (int l = 1; l < bd.count; ++l)
        if (std::isfinite(bd.kappa[l].real())) kmax = std::max(kmax, bd.kappa[l].real());
    std::vector<double> bad = {-sol.incident().k1()};
    if (const FactorTable* T = sol.mu().table()) {
        bad.push_back(T->rayleigh().kappa_R);
        bad.push_back(-T->rayleigh().kappa_R);
    }
    std::vector<double> grid;
    const double L = 3 * kmax;
    for (int i = 0; i < n; ++i) {
        const double x = -L + 2 * L * (i + 0.5) / n;
        bool ok = branch_distance(x, bd) > delta;
        for (double b : bad) ok = ok && std::abs(x - b) > delta;
        if (ok) grid.push_back(x);
    }
    return grid;
}

double functional_residual(const CODSolution& sol, const std::vector<double>& grid) {
    const IncidentWave& inc = sol.incident();
    double worst = 0;
    for (double x : grid) {
        const CVec3 lhs = kI * inc.t_hat / (x + inc.k1()) - sol.t_minus(x);
        const CMat3 tau = green_traction_residue(x, +1, sol.branch()).tau;
        const CVec3 rhs = tau * sol.delta_u(x);
        const double scale = std::max({lhs.norm(), rhs.norm(), 1e-300});
        worst = std::max(worst, (lhs - rhs).norm() / scale);
    }
    return worst;
}

}  // namespace tidiff
