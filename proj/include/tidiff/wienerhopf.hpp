#pragma once

#include "tidiff/spectral.hpp"

#include <memory>
#include <vector>

namespace tidiff {

enum class KFactor { K0 = 0, K1 = 1 };

/// Tanh-sinh rule on [-1, 1]: returns nodes as (1 - |x|) with sign, to keep endpoint
/// distances exact, plus weights. Nodes closer than 1e-15 to an end are dropped.
struct TanhSinhRule {
    std::vector<double> x;      ///< abscissae in (-1, 1)
    std::vector<double> gap;    ///< 1 - |x|, computed without cancellation
    std::vector<double> w;
};
TanhSinhRule tanh_sinh_rule(int nodes, double hmax = 3.2);

/// Plus-factors of the scalar kernels
///   K0 = R / (l0 (kappa_R^2 - xi^2)),   K1 = xi3_half(1) / (l1 gamma_3),
/// both tending to 1 at infinity. ln K+ is a Cauchy integral of the jump of ln K across
/// the straight cut from -kappa_2 to -kappa_1, integrated by tanh-sinh. Imaginary kappa_1
/// tilts the cut toward the real axis: real points near it use K+(xi) = K(xi)/K+(-xi),
/// complex points near it use singularity subtraction.
class FactorTable {
public:
    /// Throws OrderingViolation if the branch points are not ordered as the cut layout assumes.
    FactorTable(const BranchData& bd, const RayleighData& rd, int nodes = 200);

    const BranchData& branch() const { return bd_; }
    const RayleighData& rayleigh() const { return rd_; }
    double l0() const { return l0_; }
    double l1() const { return l1_; }
    int nodes() const { return nodes_; }
    cplx cut_start() const { return a_; }  ///< -kappa_2
    cplx cut_end() const { return b_; }    ///< -kappa_1
    const std::vector<cplx>& cut_nodes() const { return t_; }
    const std::vector<cplx>& jump(KFactor k) const { return jump_[static_cast<int>(k)]; }

    /// The unfactored kernel with the limiting-absorption branches.
    cplx K(KFactor k, cplx xi) const;
    /// Throws OnCut when xi lies on the cut segment (use on_cut_K_plus there).
    cplx K_plus(KFactor k, cplx xi) const;
    /// K+(xi) = K(xi)/K+(-xi), for xi on the cut segment.
    cplx on_cut_K_plus(KFactor k, cplx xi) const;
    /// Dispatches between the two forms.
    cplx K_plus_any(KFactor k, cplx xi) const;
    cplx K_minus_any(KFactor k, cplx xi) const { return K_plus_any(k, -xi); }
    bool on_cut(cplx xi) const;
    double cut_distance(cplx xi) const;

    /// Jump value ln K*(t, r) - ln K*(t, -r) for r = gamma1/gamma2 (principal log).
    cplx jump_sample(KFactor k, cplx t) const;

private:
    cplx K0_star(cplx t, cplx r) const;
    cplx K1_star(cplx t, cplx r) const;
    /// Jump at fraction s of the cut, unwrapped against the nearest table node.
    cplx jump_at(KFactor k, double s) const;

    BranchData bd_;
    RayleighData rd_;
    double l0_ = 0, l1_ = 0;
    int nodes_ = 0;
    cplx a_, b_;
    std::vector<cplx> t_, w_;
    std::vector<double> s_;  ///< node position as a fraction of the cut, ascending
    std::vector<cplx> jump_[2];
};

/// Plus/minus factors of the three mu eigenvalues; mu_i = mu_i^+ mu_i^-, mu^-(xi) = mu^+(-xi).
class MuFactors {
public:
    /// table may be null if only the factor that needs no Cauchy integral is used.
    MuFactors(const BranchData& bd, std::shared_ptr<const FactorTable> table);

    /// True if mu_i (1-based) is factored through the K tables.
    bool needs_table(int i) const;
    cplx plus(int i, cplx xi) const;
    cplx minus(int i, cplx xi) const { return plus(i, -xi); }
    cplx full(int i, cplx xi) const;

    const BranchData& branch() const { return bd_; }
    const FactorTable* table() const { return table_.get(); }

private:
    cplx big_plus(cplx xi) const;

    BranchData bd_;
    std::shared_ptr<const FactorTable> table_;
};

}  // namespace tidiff
