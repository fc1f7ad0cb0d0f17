#include "sadiag/sensorplace/placement_io.hpp"

#include "sadiag/structmodel/parser.hpp"

#include <json.hpp>

#include <iomanip>
#include <sstream>

namespace sadiag::sensorplace {

using structmodel::ParseError;
namespace lf = structmodel::lineformat;

namespace {

std::vector<std::string> words(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string w; in >> w;) out.push_back(w);
    return out;
}

std::vector<std::string> id_list(const lf::Line& line, const std::string& rest) {
    std::vector<std::string> out;
    for (const auto& part : lf::split(rest, ',')) {
        const std::string id = lf::trim(part);
        if (id.empty()) continue;
        if (id != "*" && !structmodel::is_identifier(id)) throw ParseError(line.number, 1, "bad fault id '" + id + "'");
        out.push_back(id);
    }
    return out;
}

std::string format_cost(double c) {
    std::ostringstream out;
    out << c;
    return out.str();
}

}  // namespace

SensorCatalog parse_catalog(std::string_view text) {
    SensorCatalog catalog;
    for (const auto& section : lf::split_sections(text, {"catalog", "target"})) {
        if (section.name != "catalog") continue;
        for (const auto& line : section.lines) {
            auto [name, rest] = lf::key_and_rest(line);
            const auto parts = words(rest);
            if (parts.empty()) throw ParseError(line.number, 1, "sensor '" + name + "' names no measured variable");
            CatalogEntry entry;
            entry.sensor.sensor_name = name;
            entry.sensor.measured = parts[0];
            if (!structmodel::is_identifier(parts[0])) {
                throw ParseError(line.number, 1, "bad variable id '" + parts[0] + "'");
            }
            for (std::size_t i = 1; i < parts.size(); ++i) {
                const auto eq = parts[i].find('=');
                const std::string key = parts[i].substr(0, eq);
                const std::string value = eq == std::string::npos ? "" : parts[i].substr(eq + 1);
                if (key == "cost") {
                    entry.cost = lf::parse_number(line, value);
                    if (!(entry.cost > 0)) throw ParseError(line.number, 1, "cost must be positive");
                } else if (key == "fault") {
                    if (value != "yes" && value != "no") throw ParseError(line.number, 1, "fault must be yes or no");
                    entry.sensor.adds_fault = value == "yes";
                } else {
                    throw ParseError(line.number, 1, "unknown key '" + key + "' in [catalog]");
                }
            }
            for (const auto& other : catalog.candidates) {
                if (other.sensor.sensor_name == name) throw ParseError(line.number, 1, "duplicate sensor '" + name + "'");
            }
            catalog.candidates.push_back(std::move(entry));
        }
    }
    return catalog;
}

PlacementTarget parse_target(std::string_view text, const structmodel::StructuralModel& model) {
    PlacementTarget target;
    std::set<std::string> ignored;
    auto check_fault = [&](const lf::Line& line, const std::string& f) {
        if (!model.is_kind(f, structmodel::VariableKind::fault)) {
            throw ParseError(line.number, 1, "'" + f + "' is not a fault of model '" + model.name() + "'");
        }
    };
    for (const auto& section : lf::split_sections(text, {"catalog", "target"})) {
        if (section.name != "target") continue;
        for (const auto& line : section.lines) {
            auto [key, rest] = lf::key_and_rest(line);
            if (key == "detect") {
                for (const auto& f : id_list(line, rest)) {
                    if (f == "*") {
                        for (const auto& id : model.fault_ids()) target.must_detect.insert(id);
                    } else {
                        check_fault(line, f);
                        target.must_detect.insert(f);
                    }
                }
            } else if (key == "ignore") {
                for (const auto& f : id_list(line, rest)) {
                    check_fault(line, f);
                    ignored.insert(f);
                }
            } else if (key == "isolate") {
                const auto sides = lf::split(rest, '/');
                if (sides.size() != 2) throw ParseError(line.number, 1, "isolate expects '<fault> / <fault>'");
                const std::string a = lf::trim(sides[0]), b = lf::trim(sides[1]);
                check_fault(line, a);
                check_fault(line, b);
                if (a == b) throw ParseError(line.number, 1, "isolate needs two distinct faults");
                target.must_isolate.emplace_back(a, b);
            } else {
                throw ParseError(line.number, 1, "unknown key '" + key + "' in [target]");
            }
        }
    }
    for (const auto& f : ignored) target.must_detect.erase(f);
    return target;
}

SensorCatalog load_catalog(const std::filesystem::path& path) { return parse_catalog(lf::read_file(path)); }

PlacementTarget load_target(const std::filesystem::path& path, const structmodel::StructuralModel& model) {
    return parse_target(lf::read_file(path), model);
}

std::string serialize_catalog(const SensorCatalog& catalog) {
    std::string out = "[catalog]\n";
    for (const auto& e : catalog.candidates) {
        out += e.sensor.sensor_name + " : " + e.sensor.measured + " cost=" + format_cost(e.cost);
        if (!e.sensor.adds_fault) out += " fault=no";
        out += "\n";
    }
    return out;
}

std::string placement_text(const PlacementResult& result) {
    std::ostringstream out;
    if (!result.warning.empty()) out << "warning: " << result.warning << "\n";
    if (!result.feasible) {
        out << "INFEASIBLE\n";
        for (const auto& u : result.unmet) out << "  unmet: " << u << "\n";
        return out.str();
    }
    out << "FEASIBLE: " << result.chosen.size() << " minimal sensor set" << (result.chosen.size() == 1 ? "" : "s")
        << "\n";
    out << std::left << std::setw(6) << "rank" << std::setw(10) << "cost" << std::setw(6) << "size"
        << "sensors\n";
    for (std::size_t k = 0; k < result.chosen.size(); ++k) {
        const auto& c = result.chosen[k];
        std::string names;
        for (const auto& s : c.sensors) names += (names.empty() ? "" : " ") + s;
        out << std::left << std::setw(6) << k + 1 << std::setw(10) << format_cost(c.cost) << std::setw(6)
            << c.sensors.size() << (names.empty() ? "(none)" : names) << "\n";
    }
    return out.str();
}

std::string placement_json(const PlacementResult& result) {
    nlohmann::ordered_json doc;
    doc["feasible"] = result.feasible;
    doc["greedy"] = result.greedy;
    if (!result.warning.empty()) doc["warning"] = result.warning;
    nlohmann::ordered_json chosen = nlohmann::ordered_json::array();
    for (const auto& c : result.chosen) {
        nlohmann::ordered_json entry;
        entry["sensors"] = c.sensors;
        entry["cost"] = c.cost;
        entry["detectable"] = c.detectable;
        entry["blocks"] = c.matrix.blocks();
        chosen.push_back(std::move(entry));
    }
    doc["chosen"] = std::move(chosen);
    doc["unmet"] = result.unmet;
    return doc.dump(2) + "\n";
}

}  // namespace sadiag::sensorplace
