#include "sadiag/pitchbench/parameters.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace sadiag::pitchbench {

std::string to_string(CheckValveLaw law) {
    return law == CheckValveLaw::printed ? "printed" : "gate_aligned";
}

PlantParameters default_parameters() { return PlantParameters{}; }

namespace {

using Field = double PlantParameters::*;

const std::vector<std::pair<std::string, Field>>& fields() {
    static const std::vector<std::pair<std::string, Field>> table{
        {"M_eq", &PlantParameters::M_eq},       {"A_p", &PlantParameters::A_p},
        {"A_r", &PlantParameters::A_r},         {"B_v", &PlantParameters::B_v},
        {"F_c", &PlantParameters::F_c},         {"gamma", &PlantParameters::gamma},
        {"x_c_max", &PlantParameters::x_c_max}, {"V_0_p", &PlantParameters::V_0_p},
        {"V_0_r", &PlantParameters::V_0_r},     {"beta_oil", &PlantParameters::beta_oil},
        {"eps_a0", &PlantParameters::eps_a0},   {"c_ad", &PlantParameters::c_ad},
        {"p_atm", &PlantParameters::p_atm},     {"p_t", &PlantParameters::p_t},
        {"C_le_p", &PlantParameters::C_le_p},   {"C_le_r", &PlantParameters::C_le_r},
        {"C_li", &PlantParameters::C_li},       {"k_v", &PlantParameters::k_v},
        {"phi_v", &PlantParameters::phi_v},     {"xi", &PlantParameters::xi},
        {"omega_0", &PlantParameters::omega_0}, {"k_u", &PlantParameters::k_u},
        {"K_cv", &PlantParameters::K_cv},       {"p_cv", &PlantParameters::p_cv},
        {"K_rel", &PlantParameters::K_rel},     {"p_cr", &PlantParameters::p_cr},
        {"p_gas0", &PlantParameters::p_gas0},   {"V_acc", &PlantParameters::V_acc},
        {"V_hose", &PlantParameters::V_hose},   {"k", &PlantParameters::k},
        {"Q_s", &PlantParameters::Q_s},         {"p_s_nominal", &PlantParameters::p_s_nominal},
    };
    return table;
}

}  // namespace

const std::vector<std::string>& parameter_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [name, field] : fields()) out.push_back(name);
        return out;
    }();
    return names;
}

bool set_parameter(PlantParameters& p, const std::string& name, double value) {
    for (const auto& [n, field] : fields()) {
        if (n == name) {
            p.*field = value;
            return true;
        }
    }
    return false;
}

double get_parameter(const PlantParameters& p, const std::string& name) {
    for (const auto& [n, field] : fields()) {
        if (n == name) return p.*field;
    }
    throw std::invalid_argument("unknown parameter '" + name + "'");
}

std::vector<std::string> check_parameters(const PlantParameters& p) {
    std::vector<std::string> out;
    for (const auto& [name, field] : fields()) {
        if (!std::isfinite(p.*field)) out.push_back(name + " must be finite");
    }
    auto positive = [&](const char* name, double v) {
        if (!(v > 0)) out.push_back(std::string(name) + " must be > 0");
    };
    auto non_negative = [&](const char* name, double v) {
        if (!(v >= 0)) out.push_back(std::string(name) + " must be >= 0");
    };
    positive("M_eq", p.M_eq);
    positive("A_p", p.A_p);
    positive("A_r", p.A_r);
    positive("gamma", p.gamma);
    positive("x_c_max", p.x_c_max);
    positive("V_0_p", p.V_0_p);
    positive("V_0_r", p.V_0_r);
    positive("beta_oil", p.beta_oil);
    positive("c_ad", p.c_ad);
    positive("p_atm", p.p_atm);
    positive("p_t", p.p_t);
    positive("k_v", p.k_v);
    positive("phi_v", p.phi_v);
    positive("xi", p.xi);
    positive("omega_0", p.omega_0);
    positive("k_u", p.k_u);
    positive("K_cv", p.K_cv);
    positive("K_rel", p.K_rel);
    positive("p_cr", p.p_cr);
    positive("p_gas0", p.p_gas0);
    positive("V_acc", p.V_acc);
    positive("p_s_nominal", p.p_s_nominal);
    non_negative("B_v", p.B_v);
    non_negative("F_c", p.F_c);
    non_negative("C_le_p", p.C_le_p);
    non_negative("C_le_r", p.C_le_r);
    non_negative("C_li", p.C_li);
    non_negative("p_cv", p.p_cv);
    non_negative("V_hose", p.V_hose);
    non_negative("Q_s", p.Q_s);
    if (!(p.eps_a0 >= 0 && p.eps_a0 < 1)) out.push_back("eps_a0 must lie in [0, 1)");
    if (!(p.k >= 1 && p.k <= 2)) out.push_back("k must lie in [1, 2]");
    if (!(p.A_r < p.A_p)) out.push_back("A_r must be smaller than A_p");
    return out;
}

}  // namespace sadiag::pitchbench
