// Command-line front end: material validation, curve export, factorization diagnostics and
// diffraction-coefficient sweeps.

#include "tidiff/christoffel.hpp"
#include "tidiff/codsolver.hpp"
#include "tidiff/gtd.hpp"
#include "tidiff/material.hpp"
#include "tidiff/spectral.hpp"
#include "tidiff/wienerhopf.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace tidiff;

namespace {

constexpr const char* kMaterialHelp = "Material JSON file or name under $TIDIFF_MATERIAL_DIR";

/// Looks the path up as given, then in $TIDIFF_MATERIAL_DIR (with and without a .json suffix).
std::string resolve_material(const std::string& arg) {
    if (fs::exists(arg)) return arg;
    if (const char* dir = std::getenv("TIDIFF_MATERIAL_DIR")) {
        for (const std::string& name : {arg, arg + ".json"}) {
            const fs::path p = fs::path(dir) / name;
            if (fs::exists(p)) return p.string();
        }
    }
    return arg;
}

struct Grid {
    double start = 0, stop = 360, step = 1;
    std::vector<double> values() const {
        std::vector<double> v;
        const long n = static_cast<long>(std::floor((stop - start) / step + 1e-9));
        for (long i = 0; i <= n; ++i) v.push_back(start + i * step);
        return v;
    }
};

Grid parse_grid(const std::string& s) {
    Grid g;
    char c1 = 0, c2 = 0;
    std::istringstream in(s);
    if (!(in >> g.start >> c1 >> g.stop >> c2 >> g.step) || c1 != ':' || c2 != ':' || !in.eof())
        throw CLI::ValidationError("--grid", "expected start:stop:step, got '" + s + "'");
    if (!(g.step > 0)) throw CLI::ValidationError("--grid", "step must be positive");
    if (g.stop < g.start) throw CLI::ValidationError("--grid", "stop must not precede start");
    return g;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
    return f;
}

int cmd_validate(const std::string& path) {
    const TIMaterial t = load_material_file(resolve_material(path));
    try {
        check_stability(t);
    } catch (const StabilityViolation& e) {
        std::printf("FAIL stability: %s\n", e.what());
        return 1;
    }
    std::printf("ok   stability\n");
    const NondimMaterial m = nondimensionalize(t);
    for (CrackCase c : {CrackCase::AxisPerp, CrackCase::AxisInPlane}) {
        // xi2 of a propagating incident wave stays below the largest in-plane slowness
        std::vector<double> xi2s = {0.0};
        if (c == CrackCase::AxisPerp) {
            const double top = branch_points(c, 0.0, m, false).kappa[4].real();
            for (int i = 1; i <= 25; ++i) xi2s.push_back(0.99 * top * i / 25);
        }
        for (double xi2 : xi2s) {
            const BranchData bd = branch_points(c, xi2, m, false);
            const std::string why = ordering_failure(bd);
            if (!why.empty()) {
                std::printf("FAIL ordering (%s, xi2=%.4f): %s\n", case_name(c), xi2, why.c_str());
                return 1;
            }
            try {
                rayleigh_pole(bd);
            } catch (const NoRayleighRoot& e) {
                std::printf("FAIL rayleigh (%s, xi2=%.4f): %s\n", case_name(c), xi2, e.what());
                return 1;
            }
        }
        std::printf("ok   ordering and rayleigh pole, %s, %zu xi2 values\n", case_name(c), xi2s.size());
    }
    std::printf("material '%s' hash %s passes\n", t.name.c_str(), material_hash(t).c_str());
    return 0;
}

int cmd_curves(const std::string& path, int n, const std::string& out) {
    const TIMaterial t = load_material_file(resolve_material(path));
    check_stability(t);
    const NondimMaterial m = nondimensionalize(t);
    std::ofstream f = open_out(out);
    bool header = true;
    for (Mode mode : {Mode::qP, Mode::qSV, Mode::qSH}) {
        write_curves_csv(f, sample_curves(mode, m, n), header);
        header = false;
    }
    return 0;
}

int cmd_factor_diag(const std::string& path, const std::string& case_s, double xi2, int nodes, int points,
                    const std::string& out) {
    const TIMaterial t = load_material_file(resolve_material(path));
    check_stability(t);
    const NondimMaterial m = nondimensionalize(t);
    const BranchData bd = branch_points(parse_case(case_s), xi2, m);
    const FactorTable T(bd, rayleigh_pole(bd), nodes);
    std::ofstream f = open_out(out);
    f << "factor,re_xi,im_xi,residual\n";
    const double R = 3 * bd.kappa[4].real();
    char buf[160];
    for (KFactor k : {KFactor::K0, KFactor::K1}) {
        double worst = 0;
        for (int j = 0; j < points; ++j) {
            // points on an ellipse around the branch points, away from the real axis
            const double a = 2 * kPi * (j + 0.5) / points;
            const cplx xi(R * std::cos(a), 0.5 * std::sin(a));
            const double r = std::abs(T.K_plus(k, xi) * T.K_plus(k, -xi) / T.K(k, xi) - 1.0);
            worst = std::max(worst, r);
            std::snprintf(buf, sizeof buf, "K%d,%.12e,%.12e,%.6e\n", static_cast<int>(k), xi.real(),
                          xi.imag(), r);
            f << buf;
        }
        const double far = std::abs(T.K_plus(k, cplx(1e4, 0)) - 1.0);
        std::printf("K%d: max |K+(x)K+(-x)/K(x) - 1| = %.3e over %d points, |K+(1e4) - 1| = %.3e\n",
                    static_cast<int>(k), worst, points, far);
    }
    return 0;
}

struct DiffractConfig {
    std::string material, case_s = "axis-perp", mode = "qP", grid = "0:360:1";
    std::string out = "sweep.csv", manifest;
    std::vector<int> alphas = {1, 2, 3};
    double phi = 90, theta = 120;
    int nodes = 200, threads = 1;
    GtdTolerances tol;
};

int cmd_diffract(const DiffractConfig& cfg) {
    const std::string path = resolve_material(cfg.material);
    const TIMaterial t = load_material_file(path);
    check_stability(t);
    const NondimMaterial m = nondimensionalize(t);
    const Grid grid = parse_grid(cfg.grid);
    const IncidentWave inc = incident_wave(parse_case(cfg.case_s), parse_mode(cfg.mode), cfg.phi, cfg.theta, m);
    SolveOptions opt;
    opt.nodes = cfg.nodes;
    const CODSolution sol = solve(inc, m, opt);

    std::ofstream f = open_out(cfg.out);
    nlohmann::json sweeps = nlohmann::json::array();
    bool header = true;
    for (int alpha : cfg.alphas) {
        const std::vector<SweepRow> rows = sweep(alpha, sol, grid.values(), cfg.tol, cfg.threads);
        write_sweep_csv(f, alpha, branch_of(inc.mode), rows, header);
        header = false;
        int evan = 0, face = 0, flagged = 0;
        for (const auto& r : rows) {
            evan += r.evanescent;
            face += r.on_face;
            flagged += r.flags.any();
        }
        sweeps.push_back({{"alpha", alpha}, {"rows", rows.size()}, {"evanescent", evan},
                          {"on_face", face}, {"flagged", flagged}});
    }

    const std::vector<double> rgrid = residual_grid(sol);
    nlohmann::json man;
    man["material"] = {{"name", t.name}, {"file", path}, {"hash", material_hash(t)}};
    man["case"] = case_name(inc.crack_case);
    man["incident"] = {{"mode", mode_name(inc.mode)}, {"phi_deg", inc.phi_in}, {"theta_deg", inc.theta_in},
                       {"k1", inc.k1()}, {"xi2", inc.xi2}};
    man["grid"] = {{"start", grid.start}, {"stop", grid.stop}, {"step", grid.step}};
    man["nodes"] = cfg.nodes;
    man["tolerances"] = {{"shadow", cfg.tol.shadow}, {"cusp", cfg.tol.cusp}, {"cone", cfg.tol.cone}};
    man["functional_residual"] = functional_residual(sol, rgrid);
    man["residual_grid_points"] = rgrid.size();
    man["g_condition"] = sol.g_condition();
    if (inc.crack_case == CrackCase::AxisPerp && inc.xi2 != 0.0) {
        const ResidueConditions rc = residue_conditions(sol);
        man["g_residue"] = std::max(rc.r_plus.norm(), rc.r_minus.norm());
    }
    man["sweeps"] = sweeps;
    man["csv"] = cfg.out;
    const std::string mpath = cfg.manifest.empty() ? cfg.out + ".json" : cfg.manifest;
    open_out(mpath) << man.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Edge diffraction by a semi-infinite crack in a transversely isotropic solid"};
    app.set_config("--config", "", "TOML/INI file with option values; flags given on the command line win");
    app.require_subcommand(1);

    std::string v_material;
    auto* validate = app.add_subcommand("validate", "Check stability, branch-point ordering and the Rayleigh pole");
    validate->add_option("material", v_material, kMaterialHelp)->required();

    std::string c_material, c_out = "curves.csv";
    int c_n = 720;
    auto* curves = app.add_subcommand("curves", "Slowness and wave curves in the meridian section");
    curves->add_option("material", c_material, kMaterialHelp)->required();
    curves->add_option("-n,--points", c_n, "Directions per mode")->check(CLI::Range(8, 10000000));
    curves->add_option("-o,--out", c_out, "CSV path");

    std::string f_material, f_case = "axis-perp", f_out = "factor_diag.csv";
    double f_xi2 = 0;
    int f_nodes = 200, f_points = 50;
    auto* fdiag = app.add_subcommand("factor-diag", "K+ product-identity residuals");
    fdiag->add_option("material", f_material, kMaterialHelp)->required();
    fdiag->add_option("--case", f_case, "axis-perp or axis-in-plane");
    fdiag->add_option("--xi2", f_xi2, "Crack-parallel wavenumber (must be 0 for axis-in-plane)");
    fdiag->add_option("--nodes", f_nodes, "Quadrature nodes on the factorization cut")->check(CLI::PositiveNumber);
    fdiag->add_option("--points", f_points, "Sample points on the test ellipse")->check(CLI::PositiveNumber);
    fdiag->add_option("-o,--out", f_out, "CSV path");

    DiffractConfig d;
    auto* diff = app.add_subcommand("diffract", "Sweep diffraction coefficients over the wave-vector angle");
    diff->add_option("material", d.material, kMaterialHelp)->required();
    diff->add_option("--case", d.case_s, "axis-perp or axis-in-plane");
    diff->add_option("--mode", d.mode, "Incident mode: qP, qSV or qSH");
    diff->add_option("--phi", d.phi, "Incident azimuth from the crack edge, degrees");
    diff->add_option("--theta", d.theta, "Incident polar angle, degrees");
    diff->add_option("--alpha", d.alphas, "Diffracted sheets (1, 2, 3)")->check(CLI::Range(1, 3));
    diff->add_option("--grid", d.grid, "start:stop:step in degrees");
    diff->add_option("-o,--out", d.out, "Sweep CSV");
    diff->add_option("--manifest", d.manifest, "JSON manifest (default: <out>.json)");
    diff->add_option("--nodes", d.nodes, "Quadrature nodes on the factorization cut")->check(CLI::PositiveNumber);
    diff->add_option("--threads", d.threads, "Worker threads; output does not depend on it")->check(CLI::PositiveNumber);
    diff->add_option("--tol-shadow", d.tol.shadow, "Shadow-boundary flag distance");
    diff->add_option("--tol-cusp", d.tol.cusp, "Cusp flag threshold on |xi3''|");
    diff->add_option("--tol-cone", d.tol.cone, "Conical-point flag threshold on |lambda'|");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*validate) return cmd_validate(v_material);
        if (*curves) return cmd_curves(c_material, c_n, c_out);
        if (*fdiag) return cmd_factor_diag(f_material, f_case, f_xi2, f_nodes, f_points, f_out);
        if (*diff) return cmd_diffract(d);
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
