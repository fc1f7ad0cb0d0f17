#include "sadiag/hydrosim/scenario_io.hpp"

#include "sadiag/pitchbench/pitch_model.hpp"
#include "sadiag/structmodel/parser.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <map>
#include <optional>
#include <sstream>

namespace sadiag::hydrosim {

using structmodel::ParseError;
namespace lf = structmodel::lineformat;

namespace {

// Splits "p_p_2" into ("p_p", 2); unsuffixed keys give cylinder 0 (= all).
std::pair<std::string, int> split_cylinder(const std::string& key, const std::vector<std::string>& bases) {
    for (const auto& b : bases) {
        if (key == b) return {b, 0};
        if (key.size() > b.size() + 1 && key.compare(0, b.size(), b) == 0 && key[b.size()] == '_') {
            const std::string digits = key.substr(b.size() + 1);
            if (digits.size() == 1 && digits[0] >= '1' && digits[0] <= '9') return {b, digits[0] - '0'};
        }
    }
    return {"", -1};
}

std::string num(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

}  // namespace

SimScenario parse_scenario(std::string_view text) {
    const auto sections = lf::split_sections(text, {"scenario", "parameters", "initial", "inputs", "faults"});

    int n = 1;
    double duration = 1.0, step = 1e-4;
    std::size_t record_every = 1;
    std::optional<pitchbench::CheckValveLaw> law;
    pitchbench::PlantParameters params = pitchbench::default_parameters();

    for (const auto& section : sections) {
        for (const auto& line : section.lines) {
            auto [key, rest] = lf::key_and_rest(line);
            if (section.name == "scenario") {
                if (key == "cylinders") {
                    n = static_cast<int>(lf::parse_number(line, rest));
                    if (n != 1 && n != 3) throw ParseError(line.number, 1, "cylinders must be 1 or 3");
                } else if (key == "duration") {
                    duration = lf::parse_number(line, rest);
                } else if (key == "step") {
                    step = lf::parse_number(line, rest);
                } else if (key == "record_every") {
                    const double r = lf::parse_number(line, rest);
                    if (!(r >= 1) || r != static_cast<double>(static_cast<std::size_t>(r))) {
                        throw ParseError(line.number, 1, "record_every must be a positive integer");
                    }
                    record_every = static_cast<std::size_t>(r);
                } else if (key == "check_valve_law") {
                    if (rest == "printed") law = pitchbench::CheckValveLaw::printed;
                    else if (rest == "gate_aligned") law = pitchbench::CheckValveLaw::gate_aligned;
                    else throw ParseError(line.number, 1, "check_valve_law must be printed or gate_aligned");
                } else {
                    throw ParseError(line.number, 1, "unknown key '" + key + "' in [scenario]");
                }
            } else if (section.name == "parameters") {
                if (!pitchbench::set_parameter(params, key, lf::parse_number(line, rest))) {
                    throw ParseError(line.number, 1, "unknown parameter '" + key + "'");
                }
            }
        }
    }
    if (law) params.check_valve_law = *law;

    SimScenario sc = equilibrium_scenario(params, n, duration);
    sc.step = step;
    sc.record_every = record_every;
    bool balance_requested = false;
    std::vector<char> balance(static_cast<std::size_t>(n), 0);

    const std::vector<std::string> state_keys{"x_c", "v_c", "p_p", "p_r", "x_v", "v_v"};
    auto cylinders_for = [&](const lf::Line& line, int c) {
        if (c > n) throw ParseError(line.number, 1, "cylinder index " + std::to_string(c) + " exceeds " + std::to_string(n));
        if (c > 0 && n == 1) throw ParseError(line.number, 1, "single-cylinder scenarios take unsuffixed keys");
        std::vector<std::size_t> out;
        for (int i = 1; i <= n; ++i) {
            if (c == 0 || c == i) out.push_back(static_cast<std::size_t>(i - 1));
        }
        return out;
    };
    auto signal = [&](const lf::Line& line, const std::string& rest) {
        try {
            return parse_signal(rest);
        } catch (const SignalError& e) {
            throw ParseError(line.number, 1, e.what());
        }
    };

    for (const auto& section : sections) {
        for (const auto& line : section.lines) {
            auto [key, rest] = lf::key_and_rest(line);
            if (section.name == "initial") {
                if (key == "p_s") {
                    sc.initial.p_s = lf::parse_number(line, rest);
                    continue;
                }
                auto [base, c] = split_cylinder(key, state_keys);
                if (c < 0) throw ParseError(line.number, 1, "unknown state '" + key + "'");
                const double v = lf::parse_number(line, rest);
                for (std::size_t i : cylinders_for(line, c)) {
                    CylinderState& s = sc.initial.cylinders[i];
                    double* slot = base == "x_c" ? &s.x_c
                                   : base == "v_c" ? &s.v_c
                                   : base == "p_p" ? &s.p_p
                                   : base == "p_r" ? &s.p_r
                                   : base == "x_v" ? &s.x_v
                                                   : &s.v_v;
                    *slot = v;
                }
            } else if (section.name == "inputs") {
                if (key == "Q_s") {
                    sc.Q_s = signal(line, rest);
                    continue;
                }
                auto [base, c] = split_cylinder(key, {"u", "F_ext"});
                if (c < 0) throw ParseError(line.number, 1, "unknown input '" + key + "'");
                const auto targets = cylinders_for(line, c);
                if (base == "F_ext" && rest == "balance") {
                    balance_requested = true;
                    for (std::size_t i : targets) balance[i] = 1;
                    continue;
                }
                const Signal s = signal(line, rest);
                for (std::size_t i : targets) {
                    (base == "u" ? sc.u[i] : sc.F_ext[i]) = s;
                    if (base == "F_ext") balance[i] = 0;
                }
            } else if (section.name == "faults") {
                if (!structmodel::is_identifier(key)) throw ParseError(line.number, 1, "bad fault id '" + key + "'");
                sc.faults.push_back(FaultSignal{key, signal(line, rest)});
            }
        }
    }
    if (balance_requested) {
        for (std::size_t i = 0; i < balance.size(); ++i) {
            if (!balance[i]) continue;
            const CylinderState& s = sc.initial.cylinders[i];
            sc.F_ext[i] = Signal::constant(sc.params.A_p * s.p_p - sc.params.A_r * s.p_r);
        }
    }
    return sc;
}

SimScenario load_scenario(const std::filesystem::path& path) { return parse_scenario(lf::read_file(path)); }

std::string trajectory_csv(const Trajectory& traj) {
    const int n = traj.n_cylinders;
    std::string out = "t";
    for (int i = 1; i <= n; ++i) {
        const std::string s = pitchbench::cylinder_suffix(i, n);
        for (const char* c : {"x_c", "v_c", "p_p", "p_r", "x_v", "v_v"}) out += std::string(",") + c + s;
    }
    out += ",p_s,beta_e,eps_a,V_gas,V_oil,Q_acc,Q_rel";
    for (int i = 1; i <= n; ++i) {
        const std::string s = pitchbench::cylinder_suffix(i, n);
        for (const char* c : {"Q_p", "Q_rv", "Q_r", "Q_cv", "Q_v", "Q_le_p", "Q_le_r", "Q_li"}) {
            out += std::string(",") + c + s;
        }
    }
    out += ",region\n";
    for (std::size_t k = 0; k < traj.size(); ++k) {
        std::string row = num(traj.time[k]);
        auto add = [&](double v) {
            row += ',';
            row += num(v);
        };
        for (const auto& c : traj.states[k].cylinders) {
            for (double v : {c.x_c, c.v_c, c.p_p, c.p_r, c.x_v, c.v_v}) add(v);
        }
        const auto& sup = traj.derived[k].supply;
        for (double v : {traj.states[k].p_s, sup.beta_e, sup.eps_a, sup.V_gas, sup.V_oil, sup.Q_acc, sup.Q_rel}) add(v);
        for (const auto& f : traj.derived[k].cylinders) {
            for (double v : {f.Q_p, f.Q_rv, f.Q_r, f.Q_cv, f.Q_v, f.Q_le_p, f.Q_le_r, f.Q_li}) add(v);
        }
        out += row + "," + traj.regions[k] + "\n";
    }
    return out;
}

std::string trajectory_summary(const Trajectory& traj) {
    std::ostringstream out;
    out.precision(6);
    const int n = traj.n_cylinders;
    out << "samples: " << traj.size() << ", final time: " << traj.time.back() << " s\n";
    const PlantState& last = traj.states.back();
    out << "final state:\n";
    for (int i = 1; i <= n; ++i) {
        const auto& c = last.cylinders[static_cast<std::size_t>(i - 1)];
        out << "  cylinder " << i << ": x_c=" << c.x_c << " v_c=" << c.v_c << " p_p=" << c.p_p << " p_r=" << c.p_r
            << " x_v=" << c.x_v << " v_v=" << c.v_v << "\n";
    }
    out << "  p_s=" << last.p_s << "\n";

    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& s : traj.states) {
        lo = std::min(lo, s.p_s);
        hi = std::max(hi, s.p_s);
        for (const auto& c : s.cylinders) {
            lo = std::min({lo, c.p_p, c.p_r});
            hi = std::max({hi, c.p_p, c.p_r});
        }
    }
    out << "pressure range: [" << lo << ", " << hi << "] Pa\n";

    std::map<std::string, std::size_t> occupancy;
    for (const auto& r : traj.regions) ++occupancy[r];
    out << "region occupancy (";
    for (std::size_t s = 0; s < traj.switch_ids.size(); ++s) out << (s ? " " : "") << traj.switch_ids[s];
    out << "):\n";
    for (const auto& [code, count] : occupancy) out << "  " << code << "  " << count << "\n";
    return out.str();
}

}  // namespace sadiag::hydrosim
