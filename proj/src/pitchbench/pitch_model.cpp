#include "sadiag/pitchbench/pitch_model.hpp"

#include <stdexcept>

namespace sadiag::pitchbench {

using structmodel::Branch;
using structmodel::Constraint;
using structmodel::RegionGate;
using structmodel::SensorSpec;
using structmodel::StructuralModel;
using structmodel::Switch;
using structmodel::Variable;
using structmodel::VariableKind;

std::string to_string(SensorVariant variant) {
    switch (variant) {
        case SensorVariant::standard: return "standard";
        case SensorVariant::with_Fext_sensor: return "with_Fext_sensor";
        case SensorVariant::sensorless: return "sensorless";
    }
    return "?";
}

std::string cylinder_suffix(int cylinder, int n_cylinders) {
    return n_cylinders == 1 ? std::string{} : "_" + std::to_string(cylinder);
}

std::vector<std::string> switch_ids(int n_cylinders) {
    std::vector<std::string> out;
    for (int i = 1; i <= n_cylinders; ++i) out.push_back("xv" + cylinder_suffix(i, n_cylinders));
    for (int i = 1; i <= n_cylinders; ++i) out.push_back("cv" + cylinder_suffix(i, n_cylinders));
    out.push_back("rel");
    out.push_back("gas");
    return out;
}

std::vector<SensorSpec> standard_sensors(int n_cylinders) {
    std::vector<SensorSpec> out;
    for (int i = 1; i <= n_cylinders; ++i) {
        const std::string s = cylinder_suffix(i, n_cylinders);
        out.push_back({"x_c" + s, "xc" + s, true});
        out.push_back({"p_p" + s, "pp" + s, true});
        out.push_back({"p_r" + s, "pr" + s, true});
        out.push_back({"x_v" + s, "xv" + s, true});
    }
    out.push_back({"p_s", "ps", true});
    return out;
}

std::vector<SensorSpec> external_force_sensors(int n_cylinders) {
    std::vector<SensorSpec> out;
    for (int i = 1; i <= n_cylinders; ++i) {
        const std::string s = cylinder_suffix(i, n_cylinders);
        out.push_back({"F_ext" + s, "Fext" + s, true});
    }
    return out;
}

namespace {

class Builder {
public:
    void var(const std::string& id, VariableKind kind, const std::string& doc,
             std::optional<std::string> deriv_of = std::nullopt) {
        variables_.push_back(Variable{id, kind, doc, std::move(deriv_of)});
    }
    void rel(const std::string& id, std::vector<std::string> touches, const std::string& doc,
             std::optional<RegionGate> gate = std::nullopt, std::optional<std::string> family = std::nullopt) {
        constraints_.push_back(Constraint{id, std::move(touches), std::move(gate), std::move(family), doc});
    }
    void sw(const std::string& id, const std::string& condition) { switches_.push_back(Switch{id, condition}); }

    StructuralModel finish(const std::string& name) {
        return StructuralModel(name, std::move(switches_), std::move(variables_), std::move(constraints_));
    }

private:
    std::vector<Switch> switches_;
    std::vector<Variable> variables_;
    std::vector<Constraint> constraints_;
};

RegionGate gate(const std::string& sw, Branch b) { return RegionGate{sw, b}; }

}  // namespace

StructuralModel build_pitch_model(int n, SensorVariant variant) {
    if (n != 1 && n != 3) throw std::invalid_argument("pitch model supports 1 or 3 cylinders, got " + std::to_string(n));
    const auto U = VariableKind::unknown;
    const auto K = VariableKind::known;
    const auto F = VariableKind::fault;
    Builder b;

    for (int i = 1; i <= n; ++i) {
        const std::string s = cylinder_suffix(i, n);
        b.sw("xv" + s, "x_v" + s + " >= 0");
    }
    for (int i = 1; i <= n; ++i) {
        const std::string s = cylinder_suffix(i, n);
        b.sw("cv" + s, "p_r" + s + " >= p_s - p_cv,c");
    }
    b.sw("rel", "p_s >= p_cr,r");
    b.sw("gas", "p_s >= p_gas,0");

    // Shared supply symbols.
    b.var("p_s", U, "supply (accumulator) pressure");
    b.var("dp_s", U, "time derivative of p_s", "p_s");
    b.var("beta_e", U, "effective bulk modulus, evaluated at p_s");
    b.var("eps_a", U, "volumetric air fraction at p_s");
    b.var("Q_acc", U, "flow exchanged by the accumulator");
    b.var("Q_rel", U, "relief valve flow");
    b.var("V_oil", U, "oil volume in accumulator and hoses");
    b.var("V_gas", U, "gas volume in accumulator");
    b.var("Q_s", K, "pump flow");
    b.var("p_t", K, "tank pressure");
    b.var("p_atm", K, "atmospheric pressure");

    for (int i = 1; i <= n; ++i) {
        const std::string s = cylinder_suffix(i, n);
        b.var("x_c" + s, U, "rod position");
        b.var("v_c" + s, U, "rod velocity", "x_c" + s);
        b.var("dv_c" + s, U, "rod acceleration", "v_c" + s);
        b.var("p_p" + s, U, "piston-side pressure");
        b.var("dp_p" + s, U, "time derivative of p_p" + s, "p_p" + s);
        b.var("p_r" + s, U, "rod-side pressure");
        b.var("dp_r" + s, U, "time derivative of p_r" + s, "p_r" + s);
        b.var("x_v" + s, U, "spool position");
        b.var("v_v" + s, U, "spool velocity", "x_v" + s);
        b.var("dv_v" + s, U, "spool acceleration", "v_v" + s);
        b.var("Q_p" + s, U, "valve flow to piston side");
        b.var("Q_rv" + s, U, "valve flow on rod side");
        b.var("Q_r" + s, U, "flow out of rod side");
        b.var("Q_cv" + s, U, "check valve flow");
        b.var("Q_v" + s, U, "supply flow into the valve");
        b.var("Q_le_p" + s, U, "external leakage, piston side");
        b.var("Q_le_r" + s, U, "external leakage, rod side");
        b.var("Q_li" + s, U, "internal leakage");
        b.var("F_ext" + s, U, "external (blade) load");
        b.var("u" + s, K, "valve command");
    }

    b.var("f_B_e", F, "bulk modulus deviation");
    for (int i = 1; i <= n; ++i) {
        const std::string s = cylinder_suffix(i, n);
        b.var("f_Fr_c" + s, F, "cylinder friction");
        b.var("f_Q_le_p" + s, F, "external leakage, piston side");
        b.var("f_Q_le_r" + s, F, "external leakage, rod side");
        b.var("f_Q_li" + s, F, "internal leakage");
        b.var("f_Q_p" + s, F, "valve flow, piston side");
        b.var("f_Q_rv" + s, F, "valve flow, rod side");
        b.var("f_Fr_v" + s, F, "spool friction");
        b.var("f_wv_v" + s, F, "valve coil / reference offset");
        b.var("f_Q_cv" + s, F, "check valve");
    }
    b.var("f_Q_ru", F, "rotary unit leakage");
    b.var("f_Q_rel", F, "relief valve");
    b.var("f_acc", F, "accumulator gas leakage");

    for (int i = 1; i <= n; ++i) {
        const std::string s = cylinder_suffix(i, n);
        const std::string xv = "xv" + s, cv = "cv" + s;
        b.rel("force" + s, {"dv_c" + s, "p_p" + s, "p_r" + s, "v_c" + s, "F_ext" + s, "f_Fr_c" + s},
              "M_eq dv_c = A_p p_p - A_r p_r - B_v v_c - F_c tanh(v_c/gamma) + f_Fr_c - F_ext");
        b.rel("pp_dyn" + s,
              {"dp_p" + s, "beta_e", "x_c" + s, "Q_p" + s, "v_c" + s, "Q_le_p" + s, "Q_li" + s},
              "dp_p = beta_e/(V_0p + A_p x_c) (Q_p - A_p v_c - Q_le_p - Q_li)");
        b.rel("pr_dyn" + s,
              {"dp_r" + s, "beta_e", "x_c" + s, "Q_r" + s, "v_c" + s, "Q_le_r" + s, "Q_li" + s},
              "dp_r = beta_e/(V_0r + A_r (x_cmax - x_c)) (-Q_r + A_r v_c - Q_le_r + Q_li)");
        b.rel("Qle_p" + s, {"Q_le_p" + s, "p_p" + s, "p_atm", "f_Q_le_p" + s}, "Q_le_p = C_lep (p_p - p_atm) + f");
        b.rel("Qle_r" + s, {"Q_le_r" + s, "p_r" + s, "p_atm", "f_Q_le_r" + s}, "Q_le_r = C_ler (p_r - p_atm) + f");
        b.rel("Qli" + s, {"Q_li" + s, "p_p" + s, "p_r" + s, "f_Q_li" + s}, "Q_li = C_li (p_p - p_r) + f");
        b.rel("Qp" + s + ".pos", {"Q_p" + s, "x_v" + s, "p_s", "p_p" + s, "f_Q_p" + s},
              "Q_p = K_v(x_v) ssqrt(p_s - p_p) + f", gate(xv, Branch::positive), "Qp" + s);
        b.rel("Qp" + s + ".neg", {"Q_p" + s, "x_v" + s, "p_p" + s, "p_t", "f_Q_p" + s},
              "Q_p = -K_v(x_v) ssqrt(p_p - p_t) + f", gate(xv, Branch::negative), "Qp" + s);
        b.rel("Qrv" + s + ".pos", {"Q_rv" + s, "f_Q_rv" + s}, "Q_rv = f", gate(xv, Branch::positive), "Qrv" + s);
        b.rel("Qrv" + s + ".neg", {"Q_rv" + s, "x_v" + s, "p_s", "p_r" + s, "f_Q_rv" + s},
              "Q_rv = -K_v(x_v) phi_v ssqrt(p_s - p_r) + f", gate(xv, Branch::negative), "Qrv" + s);
        b.rel("spool" + s, {"dv_v" + s, "v_v" + s, "x_v" + s, "u" + s, "f_Fr_v" + s, "f_wv_v" + s},
              "dv_v + 2 xi w0 v_v + w0^2 x_v + f_Fr_v = w0^2 k_u u + f_wv_v");
        b.rel("Qr" + s, {"Q_r" + s, "Q_rv" + s, "Q_cv" + s}, "Q_r = Q_rv + Q_cv");
        b.rel("Qcv" + s + ".pos", {"Q_cv" + s, "p_r" + s, "p_s", "f_Q_cv" + s}, "Q_cv = K_cv (check valve law) + f",
              gate(cv, Branch::positive), "Qcv" + s);
        b.rel("Qcv" + s + ".neg", {"Q_cv" + s, "f_Q_cv" + s}, "Q_cv = f", gate(cv, Branch::negative), "Qcv" + s);
        // Q_v sums both valve ports with complementary gates, so every region
        // keeps the same symbols; left ungated.
        b.rel("Qv" + s, {"Q_v" + s, "Q_p" + s, "Q_rv" + s, "x_v" + s}, "Q_v = Q_p H(x_v) - Q_rv H(-x_v)");
    }

    b.rel("bulk", {"beta_e", "eps_a", "p_s", "f_B_e"},
          "beta_e = 1/(1/beta_oil + eps_a (1/(c_ad p_s) - 1/beta_oil)) + f");
    b.rel("air", {"eps_a", "p_s", "p_atm"}, "eps_a = 1/((1 - eps_a0)/eps_a0 (p_s/p_atm)^(1/c_ad) + 1)");
    b.rel("ps_dyn", {"dp_s", "V_oil", "beta_e", "V_gas", "p_s", "Q_acc"},
          "dp_s = Q_acc / (V_oil/beta_e + V_gas/(k p_s))");
    std::vector<std::string> acc{"Q_acc", "Q_s", "Q_rel"};
    for (int i = 1; i <= n; ++i) acc.push_back("Q_cv" + cylinder_suffix(i, n));
    for (int i = 1; i <= n; ++i) acc.push_back("Q_v" + cylinder_suffix(i, n));
    acc.push_back("f_Q_ru");
    b.rel("Qacc", acc, "Q_acc = Q_s - Q_rel + sum Q_cv - sum Q_v + f_Q_ru");
    b.rel("Qrel.pos", {"Q_rel", "p_s", "f_Q_rel"}, "Q_rel = K_rel (p_s - p_cr) + f", gate("rel", Branch::positive),
          "Qrel");
    b.rel("Qrel.neg", {"Q_rel", "f_Q_rel"}, "Q_rel = f", gate("rel", Branch::negative), "Qrel");
    b.rel("Voil", {"V_oil", "V_gas"}, "V_oil = V_acc + V_hose - V_gas");
    b.rel("Vgas.pos", {"V_gas", "p_s", "f_acc"}, "V_gas = V_acc (p_gas0/p_s)^(1/k) + f", gate("gas", Branch::positive),
          "Vgas");
    b.rel("Vgas.neg", {"V_gas", "f_acc"}, "V_gas = f", gate("gas", Branch::negative), "Vgas");

    const std::string name = std::string(n == 1 ? "pitch_single" : "pitch_full") +
                             (variant == SensorVariant::with_Fext_sensor ? "_fext"
                              : variant == SensorVariant::sensorless     ? "_sensorless"
                                                                         : "");
    StructuralModel model = b.finish(name);
    if (variant == SensorVariant::sensorless) return model;
    for (const auto& spec : standard_sensors(n)) model = structmodel::add_sensor(model, spec);
    if (variant == SensorVariant::with_Fext_sensor) {
        for (const auto& spec : external_force_sensors(n)) model = structmodel::add_sensor(model, spec);
    }
    return model;
}

std::vector<std::string> process_fault_ids(int n) {
    std::vector<std::string> out{"f_B_e"};
    for (int i = 1; i <= n; ++i) {
        const std::string s = cylinder_suffix(i, n);
        for (const char* f : {"f_Fr_c", "f_Q_le_p", "f_Q_le_r", "f_Q_li", "f_Q_p", "f_Q_rv", "f_Fr_v", "f_wv_v", "f_Q_cv"}) {
            out.push_back(f + s);
        }
    }
    out.insert(out.end(), {"f_Q_ru", "f_Q_rel", "f_acc"});
    return out;
}

}  // namespace sadiag::pitchbench
