#include "sadiag/hydrosim/link.hpp"

#include "sadiag/structmodel/transforms.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace sadiag::hydrosim {

using structmodel::Branch;

namespace {

constexpr double flow_scale = 1e-6;  // m^3/s

double root(double x) { return x < 0 ? -std::sqrt(-x) : std::sqrt(x); }

double normalized(double lhs, double rhs, double scale) {
    return std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), scale});
}

struct ParsedId {
    std::string base;
    std::string branch;  // "", "pos" or "neg"
    std::size_t cylinder = 0;
};

ParsedId parse_id(const std::string& id, int n) {
    ParsedId p;
    p.base = id;
    const auto dot = p.base.find('.');
    if (dot != std::string::npos) {
        p.branch = p.base.substr(dot + 1);
        p.base = p.base.substr(0, dot);
    }
    if (n > 1 && p.base.size() > 2 && p.base[p.base.size() - 2] == '_' && std::isdigit(static_cast<unsigned char>(p.base.back()))) {
        p.cylinder = static_cast<std::size_t>(p.base.back() - '1');
        p.base.resize(p.base.size() - 2);
    }
    return p;
}

}  // namespace

std::optional<double> constraint_residual(const std::string& constraint_id, const Trajectory& traj, std::size_t k,
                                          const PlantParameters& P) {
    const ParsedId id = parse_id(constraint_id, traj.n_cylinders);
    const PlantState& s = traj.states.at(k);
    const Derived& d = traj.derived.at(k);
    const SupplyQuantities& q = d.supply;
    const bool pos = id.branch == "pos";

    if (id.base == "bulk") {
        const double beta = 1.0 / (1.0 / P.beta_oil + q.eps_a * (1.0 / (P.c_ad * s.p_s) - 1.0 / P.beta_oil));
        return normalized(q.beta_e, beta, P.beta_oil);
    }
    if (id.base == "air") {
        const double eps =
            P.eps_a0 == 0.0 ? 0.0
                            : 1.0 / ((1.0 - P.eps_a0) / P.eps_a0 * std::pow(s.p_s / P.p_atm, 1.0 / P.c_ad) + 1.0);
        return normalized(q.eps_a, eps, 1.0);
    }
    if (id.base == "Qacc") {
        double sum = traj.inputs.at(k).Q_s - q.Q_rel;
        for (const auto& f : d.cylinders) sum += f.Q_cv - f.Q_v;
        return normalized(q.Q_acc, sum, flow_scale);
    }
    if (id.base == "Qrel") return normalized(q.Q_rel, pos ? P.K_rel * (s.p_s - P.p_cr) : 0.0, flow_scale);
    if (id.base == "Voil") return normalized(q.V_oil, P.V_acc + P.V_hose - q.V_gas, P.V_acc);
    if (id.base == "Vgas") {
        return normalized(q.V_gas, pos ? P.V_acc * std::pow(P.p_gas0 / s.p_s, 1.0 / P.k) : 0.0, P.V_acc);
    }

    if (id.cylinder >= s.cylinders.size()) return std::nullopt;
    const CylinderState& c = s.cylinders[id.cylinder];
    const CylinderFlows& f = d.cylinders[id.cylinder];
    const double Kv = P.k_v * std::abs(c.x_v);
    if (id.base == "Qle_p") return normalized(f.Q_le_p, P.C_le_p * (c.p_p - P.p_atm), flow_scale);
    if (id.base == "Qle_r") return normalized(f.Q_le_r, P.C_le_r * (c.p_r - P.p_atm), flow_scale);
    if (id.base == "Qli") return normalized(f.Q_li, P.C_li * (c.p_p - c.p_r), flow_scale);
    if (id.base == "Qp") {
        return normalized(f.Q_p, pos ? Kv * root(s.p_s - c.p_p) : -Kv * root(c.p_p - P.p_t), flow_scale);
    }
    if (id.base == "Qrv") return normalized(f.Q_rv, pos ? 0.0 : -Kv * P.phi_v * root(s.p_s - c.p_r), flow_scale);
    if (id.base == "Qr") return normalized(f.Q_r, f.Q_rv + f.Q_cv, flow_scale);
    if (id.base == "Qcv") {
        const double drop = P.check_valve_law == pitchbench::CheckValveLaw::printed ? c.p_r - s.p_s - P.p_cv
                                                                                     : c.p_r - s.p_s + P.p_cv;
        return normalized(f.Q_cv, pos ? P.K_cv * drop : 0.0, flow_scale);
    }
    if (id.base == "Qv") return normalized(f.Q_v, c.x_v >= 0 ? f.Q_p : -f.Q_rv, flow_scale);
    return std::nullopt;
}

LinkReport replay_against_structure(const Trajectory& traj, const structmodel::StructuralModel& model,
                                    const PlantParameters& P, double tolerance) {
    LinkReport report;
    report.samples = traj.size();
    auto note = [&](const std::string& msg) {
        if (report.messages.size() < 10) report.messages.push_back(msg);
    };
    const int n = traj.n_cylinders;
    for (std::size_t k = 0; k < traj.size(); ++k) {
        const PlantState& s = traj.states[k];
        const structmodel::RegionAssignment recorded = traj.region(k);

        structmodel::RegionAssignment expected;
        auto side = [](bool positive) { return positive ? Branch::positive : Branch::negative; };
        for (int i = 0; i < n; ++i) {
            const CylinderState& c = s.cylinders[static_cast<std::size_t>(i)];
            const std::string sfx = n == 1 ? "" : "_" + std::to_string(i + 1);
            expected["xv" + sfx] = side(c.x_v >= 0);
            expected["cv" + sfx] = side(c.p_r >= s.p_s - P.p_cv);
            // Either form may differ by one rounding at the threshold; accept
            // the recorded side when the two disagree only there.
            if (c.p_r + P.p_cv - s.p_s >= 0 && c.p_r < s.p_s - P.p_cv) expected["cv" + sfx] = recorded.at("cv" + sfx);
        }
        expected["rel"] = side(s.p_s >= P.p_cr);
        expected["gas"] = side(s.p_s >= P.p_gas0);
        if (expected != recorded) {
            ++report.gate_inconsistencies;
            note("t=" + std::to_string(traj.time[k]) + ": recorded region " + traj.regions[k] +
                 " disagrees with the sampled state");
        }

        const auto specialized = structmodel::specialize_region(model, recorded);
        for (const auto& con : specialized.constraints()) {
            const auto r = constraint_residual(con.id, traj, k, P);
            if (!r) continue;
            ++report.residuals_checked;
            report.max_residual = std::max(report.max_residual, *r);
            if (!(*r < tolerance)) {
                ++report.residual_violations;
                note("t=" + std::to_string(traj.time[k]) + ": " + con.id + " residual " + std::to_string(*r));
            }
        }
    }
    return report;
}

}  // namespace sadiag::hydrosim
