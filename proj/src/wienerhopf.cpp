#include "tidiff/wienerhopf.hpp"

#include "tidiff/errors.hpp"

#include <algorithm>
#include <cmath>

namespace tidiff {

TanhSinhRule tanh_sinh_rule(int nodes, double hmax) {
    const int N = std::max(nodes / 2, 1);
    const double h = hmax / N;
    TanhSinhRule r;
    for (int k = -N; k <= N; ++k) {
        const double u = k * h;
        const double s = 0.5 * kPi * std::sinh(u);
        const double gap = 2.0 / (std::exp(2 * std::abs(s)) + 1.0);
        if (gap < 1e-15) continue;
        const double ch = std::cosh(s);
        r.x.push_back(std::tanh(s));
        r.gap.push_back(s < 0 ? -gap : gap);
        r.w.push_back(h * 0.5 * kPi * std::cosh(u) / (ch * ch));
    }
    return r;
}

FactorTable::FactorTable(const BranchData& bd, const RayleighData& rd, int nodes)
    : bd_(bd), rd_(rd), nodes_(nodes) {
    const std::string why = ordering_failure(bd);
    if (!why.empty()) throw OrderingViolation(why);
    const NondimMaterial& e = bd.eff;
    l0_ = e.A11 * e.A33 - e.A13 * e.A13;
    l1_ = std::sqrt((2 * e.B1 * std::sqrt(e.A11 * e.A33) - e.A13 * e.A13 - 2 * e.B1 * e.A13 +
                     e.A11 * e.A33) / (4 * e.B1 * e.A33));
    a_ = -bd.kappa[2];
    b_ = -bd.kappa[1];

    const TanhSinhRule rule = tanh_sinh_rule(nodes);
    const cplx half = 0.5 * (b_ - a_);
    for (std::size_t i = 0; i < rule.x.size(); ++i) {
        // measure from the nearer end so endpoint gaps keep full precision
        const double g = rule.gap[i];
        const cplx t = g > 0 ? b_ - half * g : a_ + half * (-g);
        t_.push_back(t);
        w_.push_back(rule.w[i] * half);
        s_.push_back(g > 0 ? 1.0 - 0.5 * g : -0.5 * g);
    }
    for (int k = 0; k < 2; ++k) {
        auto& J = jump_[k];
        J.resize(t_.size());
        // unwrap from the -kappa_1 end, where the jump vanishes
        double prev = 0.0;
        for (std::size_t n = t_.size(); n-- > 0;) {
            cplx v = jump_sample(static_cast<KFactor>(k), t_[n]);
            double im = v.imag();
            im += 2 * kPi * std::round((prev - im) / (2 * kPi));
            J[n] = cplx(v.real(), im);
            prev = im;
        }
    }
}

cplx FactorTable::K0_star(cplx t, cplx r) const {
    const NondimMaterial& e = bd_.eff;
    const double kr2 = rd_.kappa_R * rd_.kappa_R;
    const cplx R = (e.A13 * e.A13 - e.A11 * e.A33) * (t * t + bd_.xi2 * bd_.xi2) + e.A33 +
                   std::sqrt(e.A11 * e.A33) * r;
    return R / (l0_ * (kr2 - t * t));
}

cplx FactorTable::K1_star(cplx t, cplx r) const {
    const NondimMaterial& e = bd_.eff;
    const cplx g3 = gamma(3, t, bd_);
    const cplx g12 = r * (bd_.kappa[2] * bd_.kappa[2] - t * t);  // gamma1*gamma2 on this sheet
    const cplx N = e.B4() * (t * t + bd_.xi2 * bd_.xi2) + e.B1 + e.A33 +
                   2 * e.B1 * std::sqrt(e.A11 * e.A33) * g12;
    const cplx x31 = g3 / (2 * std::sqrt(e.B1 * e.A33)) * std::sqrt(N / (g3 * g3));
    return x31 / (l1_ * g3);
}

cplx FactorTable::jump_sample(KFactor k, cplx t) const {
    const cplx r = gamma(1, t, bd_) / gamma(2, t, bd_);
    const cplx hi = k == KFactor::K0 ? K0_star(t, r) : K1_star(t, r);
    const cplx lo = k == KFactor::K0 ? K0_star(t, -r) : K1_star(t, -r);
    return std::log(hi / lo);
}

cplx FactorTable::K(KFactor k, cplx xi) const {
    if (k == KFactor::K0) {
        const double kr2 = rd_.kappa_R * rd_.kappa_R;
        return rayleigh_function(xi, bd_) / (l0_ * (kr2 - xi * xi));
    }
    return xi3_half(1, xi, bd_) / (l1_ * gamma(3, xi, bd_));
}

double FactorTable::cut_distance(cplx xi) const {
    const cplx d = b_ - a_;
    const double s = std::clamp(std::real((xi - a_) * std::conj(d)) / std::norm(d), 0.0, 1.0);
    return std::abs(xi - (a_ + s * d));
}

bool FactorTable::on_cut(cplx xi) const {
    const cplx d = b_ - a_;
    const double s = std::real((xi - a_) * std::conj(d)) / std::norm(d);
    return cut_distance(xi) <= 1e-14 * (1.0 + std::abs(xi)) && s > 0.0 && s < 1.0;
}

cplx FactorTable::K_plus(KFactor k, cplx xi) const {
    if (on_cut(xi)) throw OnCut("K+ requested on its own branch cut");
    const auto& J = jump_[static_cast<int>(k)];
    const cplx d = b_ - a_;
    const double s = std::real((xi - a_) * std::conj(d)) / std::norm(d);
    const double dist = std::abs(xi - (a_ + std::clamp(s, 0.0, 1.0) * d));
    const bool near = dist < 0.25 * std::abs(d);
    if (near && xi.imag() == 0.0 && cut_distance(-xi) > dist) return K(k, xi) / K_plus(k, -xi);
    cplx sum = 0;
    if (near) {
        // subtract the jump at the nearest cut point and integrate that constant exactly
        const cplx Js = jump_at(k, std::clamp(s, s_.front(), s_.back()));
        for (std::size_t n = 0; n < t_.size(); ++n) sum += w_[n] * (J[n] - Js) / (t_[n] - xi);
        sum += Js * std::log((b_ - xi) / (a_ - xi));
    } else {
        for (std::size_t n = 0; n < t_.size(); ++n) sum += w_[n] * J[n] / (t_[n] - xi);
    }
    return std::exp(sum / (2.0 * kPi * kI));
}

cplx FactorTable::jump_at(KFactor k, double s) const {
    const auto& J = jump_[static_cast<int>(k)];
    std::size_t n = std::lower_bound(s_.begin(), s_.end(), s) - s_.begin();
    if (n == s_.size() || (n > 0 && s - s_[n - 1] < s_[n] - s)) n = n == 0 ? 0 : n - 1;
    if (s_[n] == s) return J[n];
    const cplx v = jump_sample(k, a_ + s * (b_ - a_));
    double im = v.imag();
    im += 2 * kPi * std::round((J[n].imag() - im) / (2 * kPi));
    return cplx(v.real(), im);
}

cplx FactorTable::on_cut_K_plus(KFactor k, cplx xi) const {
    return K(k, xi) / K_plus(k, -xi);
}

cplx FactorTable::K_plus_any(KFactor k, cplx xi) const {
    return on_cut(xi) ? on_cut_K_plus(k, xi) : K_plus(k, xi);
}

MuFactors::MuFactors(const BranchData& bd, std::shared_ptr<const FactorTable> table)
    : bd_(bd), table_(std::move(table)) {}

bool MuFactors::needs_table(int i) const {
    const int small = bd_.crack_case == CrackCase::AxisPerp ? 2 : 1;
    return i != small;
}

cplx MuFactors::big_plus(cplx xi) const {
    if (!table_) throw std::logic_error("factor table required for this mu factor");
    const NondimMaterial& e = bd_.eff;
    const FactorTable& T = *table_;
    const cplx pre = std::sqrt(kI * T.l0() / (4 * T.l1() * e.A33));
    return pre * T.K_plus_any(KFactor::K0, xi) /
           (gamma_plus(3, xi, bd_) * T.K_plus_any(KFactor::K1, xi)) * (T.rayleigh().kappa_R + xi);
}

cplx MuFactors::plus(int i, cplx xi) const {
    const bool perp = bd_.crack_case == CrackCase::AxisPerp;
    const NondimMaterial& e = bd_.eff;
    const NondimMaterial& m = bd_.material;
    const int big = perp ? 1 : 3, small = perp ? 2 : 1;
    if (i == small)
        return std::pow(cplx(-m.B1 * m.B3 / 4, 0.0), 0.25) * gamma_plus(perp ? 4 : 2, xi, bd_);
    const cplx b = big_plus(xi);
    if (i == big) return b;
    return std::pow(e.A33 / e.A11, 0.25) * gamma_plus(2, xi, bd_) / gamma_plus(1, xi, bd_) * b;
}

cplx MuFactors::full(int i, cplx xi) const {
    const MuEigen mu = mu_eigenvalues(xi, bd_);
    return i == 1 ? mu.mu1 : i == 2 ? mu.mu2 : mu.mu3;
}

}  // namespace tidiff
