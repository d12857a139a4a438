#include "tidiff/material.hpp"

#include "tidiff/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace tidiff {

NondimMaterial NondimMaterial::swapped() const {
    NondimMaterial s = *this;
    std::swap(s.A11, s.A33);
    return s;
}

void check_stability(const TIMaterial& m) {
    auto fail = [&](const std::string& what) {
        throw StabilityViolation("material '" + m.name + "' violates " + what);
    };
    if (!(m.rho > 0)) fail("rho > 0");
    if (!(m.B1d > 0)) fail("B1 > 0");
    if (!(m.A33d > 0)) fail("A33 > 0");
    if (!(m.A11d > std::abs(m.A12d))) fail("A11 > |A12|");
    if (!((m.A11d + m.A12d) * m.A33d > 2 * m.A13d * m.A13d))
        fail("(A11 + A12)*A33 > 2*A13^2");
    if (!(m.B3d() > 0)) fail("(A11 - A12)/2 > 0");
}

NondimMaterial nondimensionalize(const TIMaterial& m) {
    check_stability(m);
    NondimMaterial n;
    n.name = m.name;
    n.c0 = std::sqrt(m.B1d / m.rho);
    n.k0_per_omega = 1.0 / n.c0;
    // rho*c0^2 is B1d by definition of c0
    const double s = m.B1d;
    n.A11 = m.A11d / s;
    n.A12 = m.A12d / s;
    n.A13 = m.A13d / s;
    n.A33 = m.A33d / s;
    n.B1 = 1.0;
    n.B3 = 0.5 * (n.A11 - n.A12);
    return n;
}

NondimMaterial make_nondim(double A11, double A12, double A13, double A33,
                           const std::string& name) {
    TIMaterial t{name, 1.0, A11, A12, A13, A33, 1.0};
    return nondimensionalize(t);
}

Eigen::Matrix<double, 6, 6> voigt_matrix(const NondimMaterial& m) {
    Eigen::Matrix<double, 6, 6> C = Eigen::Matrix<double, 6, 6>::Zero();
    C(0, 0) = m.A11; C(0, 1) = m.A12; C(0, 2) = m.A13;
    C(1, 0) = m.A12; C(1, 1) = m.A11; C(1, 2) = m.A13;
    C(2, 0) = m.A13; C(2, 1) = m.A13; C(2, 2) = m.A33;
    C(3, 3) = 2 * m.B1;
    C(4, 4) = 2 * m.B1;
    C(5, 5) = 2 * m.B3;
    return C;
}

TIMaterial parse_material_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("material file is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("material file must hold a JSON object");
    auto num = [&](const char* key) {
        if (!j.contains(key)) throw ParseError(std::string("missing key '") + key + "'");
        if (!j[key].is_number()) throw ParseError(std::string("key '") + key + "' must be a number");
        return j[key].get<double>();
    };
    TIMaterial m;
    if (!j.contains("name")) throw ParseError("missing key 'name'");
    if (!j["name"].is_string()) throw ParseError("key 'name' must be a string");
    m.name = j["name"].get<std::string>();
    m.rho = num("rho");
    m.A11d = num("A11");
    m.A12d = num("A12");
    m.A13d = num("A13");
    m.A33d = num("A33");
    m.B1d = num("B1");
    return m;
}

TIMaterial load_material_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open material file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_material_json(ss.str());
}

std::string material_hash(const TIMaterial& m) {
    char buf[512];
    std::snprintf(buf, sizeof buf, "%s|%.17g|%.17g|%.17g|%.17g|%.17g|%.17g", m.name.c_str(),
                  m.rho, m.A11d, m.A12d, m.A13d, m.A33d, m.B1d);
    std::uint64_t h = 1469598103934665603ull;
    for (const char* p = buf; *p; ++p) {
        h ^= static_cast<unsigned char>(*p);
        h *= 1099511628211ull;
    }
    char out[17];
    std::snprintf(out, sizeof out, "%016llx", static_cast<unsigned long long>(h));
    return out;
}

}  // namespace tidiff
