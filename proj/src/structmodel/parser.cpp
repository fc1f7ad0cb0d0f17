#include "sadiag/structmodel/parser.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace sadiag::structmodel {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error(line == 0 ? message
                                   : "line " + std::to_string(line) + ", column " + std::to_string(column) +
                                         ": " + message),
      line_(line),
      column_(column),
      detail_(message) {}

bool is_identifier(std::string_view text) {
    if (text.empty()) return false;
    const auto first = static_cast<unsigned char>(text.front());
    if (!(std::isalpha(first) || first == '_')) return false;
    return std::all_of(text.begin(), text.end(), [](char ch) {
        const auto c = static_cast<unsigned char>(ch);
        return std::isalnum(c) || c == '_' || c == '.';
    });
}

namespace lineformat {

std::string trim(std::string_view text) {
    const auto not_space = [](char c) { return !std::isspace(static_cast<unsigned char>(c)); };
    auto begin = std::find_if(text.begin(), text.end(), not_space);
    auto end = std::find_if(text.rbegin(), text.rend(), not_space).base();
    if (begin >= end) return {};
    return std::string(begin, end);
}

std::vector<std::string> split(std::string_view text, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = text.find(sep, start);
        out.push_back(trim(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

namespace {

// Index of the first '#' outside double quotes, or npos.
std::size_t comment_start(std::string_view raw) {
    bool quoted = false;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (raw[i] == '"') quoted = !quoted;
        if (raw[i] == '#' && !quoted) return i;
    }
    return std::string_view::npos;
}

}  // namespace

std::vector<Section> split_sections(std::string_view text, const std::vector<std::string>& allowed) {
    std::vector<Section> sections;
    std::set<std::string> seen;
    std::size_t number = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view raw = text.substr(start, end - start);
        if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
        ++number;
        start = end + 1;

        const std::size_t hash = comment_start(raw);
        Line line;
        line.number = number;
        line.text = trim(raw.substr(0, hash));
        if (hash != std::string_view::npos) line.comment = trim(raw.substr(hash + 1));
        if (line.text.empty()) {
            if (end == text.size()) break;
            continue;
        }
        if (line.text.front() == '[') {
            if (line.text.back() != ']') throw ParseError(number, 1, "unterminated section header");
            std::string name = trim(std::string_view(line.text).substr(1, line.text.size() - 2));
            if (std::find(allowed.begin(), allowed.end(), name) == allowed.end()) {
                throw ParseError(number, 2, "unknown section [" + name + "]");
            }
            if (!seen.insert(name).second) throw ParseError(number, 2, "section [" + name + "] repeated");
            sections.push_back(Section{name, number, {}});
        } else {
            if (sections.empty()) throw ParseError(number, 1, "content before the first section header");
            sections.back().lines.push_back(std::move(line));
        }
        if (end == text.size()) break;
    }
    return sections;
}

std::pair<std::string, std::string> key_and_rest(const Line& line) {
    const std::size_t colon = line.text.find(':');
    if (colon == std::string::npos) throw ParseError(line.number, 1, "expected '<id> : ...'");
    std::string key = trim(std::string_view(line.text).substr(0, colon));
    if (!is_identifier(key)) throw ParseError(line.number, 1, "invalid identifier '" + key + "'");
    return {key, trim(std::string_view(line.text).substr(colon + 1))};
}

double parse_number(const Line& line, std::string_view token) {
    const std::string t = trim(token);
    double value = 0.0;
    const char* first = t.data();
    const char* last = t.data() + t.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (t.empty() || ec != std::errc() || ptr != last || !std::isfinite(value)) {
        const std::size_t col = line.text.find(t);
        throw ParseError(line.number, col == std::string::npos ? 1 : col + 1, "expected a number, got '" + t + "'");
    }
    return value;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace lineformat

namespace {

using lineformat::Line;

std::size_t column_of(const Line& line, std::string_view token) {
    const std::size_t pos = line.text.find(token);
    return pos == std::string::npos ? 1 : pos + 1;
}

std::vector<std::string> words(std::string_view text) {
    std::vector<std::string> out;
    std::istringstream in{std::string(text)};
    std::string w;
    while (in >> w) out.push_back(w);
    return out;
}

struct Origin {
    std::size_t line = 0;
    std::size_t column = 1;
};

struct ConstraintOrigin {
    std::vector<Origin> touches;
    std::size_t first_fault = 0;  // touches at or after this index were listed after '|'
};

}  // namespace

StructuralModel parse_model(std::string_view text) {
    const auto sections =
        lineformat::split_sections(text, {"model", "switches", "variables", "constraints"});

    std::string name;
    std::vector<Switch> switches;
    std::vector<Variable> variables;
    std::vector<Constraint> constraints;
    std::map<std::string, Origin> origin;  // where each id was declared
    std::map<std::string, ConstraintOrigin> constraint_origin;
    std::map<std::string, VariableKind> kinds;

    auto declare = [&](const std::string& id, const Line& line, const char* what) {
        if (!origin.try_emplace(id, Origin{line.number, column_of(line, id)}).second) {
            throw ParseError(line.number, column_of(line, id), std::string("duplicate ") + what + " id '" + id + "'");
        }
    };

    for (const auto& section : sections) {
        for (const auto& line : section.lines) {
            auto [key, rest] = lineformat::key_and_rest(line);
            if (section.name == "model") {
                if (key != "name") throw ParseError(line.number, 1, "unknown key '" + key + "' in [model]");
                name = rest;
            } else if (section.name == "switches") {
                if (rest.size() < 2 || rest.front() != '"' || rest.back() != '"') {
                    throw ParseError(line.number, column_of(line, rest), "switch condition must be a quoted string");
                }
                declare(key, line, "switch");
                switches.push_back(Switch{key, rest.substr(1, rest.size() - 2)});
            } else if (section.name == "variables") {
                const auto parts = words(rest);
                if (parts.empty()) throw ParseError(line.number, column_of(line, ":") + 1, "missing variable kind");
                const auto kind = parse_kind(parts[0]);
                if (!kind) {
                    throw ParseError(line.number, column_of(line, parts[0]),
                                     "variable kind must be unknown|known|fault, got '" + parts[0] + "'");
                }
                Variable v{key, *kind, line.comment, std::nullopt};
                for (std::size_t i = 1; i < parts.size(); ++i) {
                    const std::string& opt = parts[i];
                    if (opt.rfind("deriv_of=", 0) == 0) {
                        v.derivative_of = opt.substr(9);
                        if (!is_identifier(*v.derivative_of)) {
                            throw ParseError(line.number, column_of(line, opt), "invalid deriv_of target");
                        }
                    } else {
                        throw ParseError(line.number, column_of(line, opt), "unknown key '" + opt + "'");
                    }
                }
                declare(key, line, "variable");
                kinds[key] = v.kind;
                variables.push_back(std::move(v));
            } else {  // constraints
                if (rest.empty() || rest.front() != '{') {
                    throw ParseError(line.number, column_of(line, rest), "expected '{' after constraint id");
                }
                const std::size_t close = rest.find('}');
                if (close == std::string::npos) throw ParseError(line.number, line.text.size(), "missing '}'");
                const std::string body = rest.substr(1, close - 1);
                Constraint c;
                c.id = key;
                c.doc = line.comment;
                const std::size_t bar = body.find('|');
                const std::string plain = body.substr(0, bar);
                const std::string fault_part = bar == std::string::npos ? std::string{} : body.substr(bar + 1);
                ConstraintOrigin where;
                auto collect = [&](const std::string& part) {
                    if (lineformat::trim(part).empty()) return;
                    for (const auto& item : lineformat::split(part, ',')) {
                        if (!is_identifier(item)) {
                            throw ParseError(line.number, column_of(line, item.empty() ? "," : item),
                                             "invalid identifier '" + item + "' in constraint body");
                        }
                        c.touches.push_back(item);
                        where.touches.push_back(Origin{line.number, column_of(line, item)});
                    }
                };
                collect(plain);
                where.first_fault = c.touches.size();
                collect(fault_part);

                for (const auto& opt : words(std::string_view(rest).substr(close + 1))) {
                    if (opt.rfind("gate=", 0) == 0) {
                        const std::string spec = opt.substr(5);
                        const std::size_t colon = spec.rfind(':');
                        if (colon == std::string::npos || colon + 2 != spec.size() ||
                            !parse_branch(spec.back()) || !is_identifier(spec.substr(0, colon))) {
                            throw ParseError(line.number, column_of(line, opt),
                                             "gate must be gate=<switch>:+|-|*, got '" + opt + "'");
                        }
                        c.gate = RegionGate{spec.substr(0, colon), *parse_branch(spec.back())};
                    } else if (opt.rfind("family=", 0) == 0) {
                        c.family = opt.substr(7);
                        if (!is_identifier(*c.family)) {
                            throw ParseError(line.number, column_of(line, opt), "invalid family id");
                        }
                    } else {
                        throw ParseError(line.number, column_of(line, opt), "unknown key '" + opt + "'");
                    }
                }
                declare(key, line, "constraint");
                constraint_origin[key] = std::move(where);
                constraints.push_back(std::move(c));
            }
        }
    }

    // Resolve references now that every declaration has been seen.
    for (const auto& v : variables) {
        if (v.derivative_of && kinds.count(*v.derivative_of) == 0) {
            const Origin& o = origin.at(v.id);
            throw ParseError(o.line, o.column, "deriv_of names undeclared variable '" + *v.derivative_of + "'");
        }
    }
    for (const auto& c : constraints) {
        const ConstraintOrigin& where = constraint_origin.at(c.id);
        for (std::size_t i = 0; i < c.touches.size(); ++i) {
            const std::string& t = c.touches[i];
            const Origin& o = where.touches[i];
            auto it = kinds.find(t);
            if (it == kinds.end()) {
                throw ParseError(o.line, o.column, "constraint '" + c.id + "' references undeclared variable '" + t + "'");
            }
            const bool listed_as_fault = i >= where.first_fault;
            if (listed_as_fault && it->second != VariableKind::fault) {
                throw ParseError(o.line, o.column, "'" + t + "' is listed as a fault but is declared " +
                                                       std::string(to_string(it->second)));
            }
            if (!listed_as_fault && it->second == VariableKind::fault) {
                throw ParseError(o.line, o.column, "fault '" + t + "' must be listed after '|'");
            }
        }
        if (c.gate && switches.end() == std::find_if(switches.begin(), switches.end(),
                                                     [&](const Switch& s) { return s.id == c.gate->switch_id; })) {
            const Origin& o = origin.at(c.id);
            throw ParseError(o.line, o.column, "gate names undeclared switch '" + c.gate->switch_id + "'");
        }
    }

    StructuralModel model(std::move(name), std::move(switches), std::move(variables), std::move(constraints));
    const ValidationReport report = validate(model);
    if (!report.ok()) {
        const Violation& first = report.violations.front();
        auto it = origin.find(first.subject);
        if (it != origin.end()) throw ParseError(it->second.line, it->second.column, first.message + " ('" + first.subject + "')");
        throw ParseError(0, 0, report.summary());
    }
    return model;
}

StructuralModel load_model(const std::filesystem::path& path) {
    return parse_model(lineformat::read_file(path));
}

std::string serialize_model(const StructuralModel& model) {
    std::ostringstream out;
    auto doc = [](const std::string& text) { return text.empty() ? std::string{} : "  # " + text; };
    if (!model.name().empty()) out << "[model]\nname : " << model.name() << "\n\n";
    if (!model.switches().empty()) {
        out << "[switches]\n";
        for (const auto& s : model.switches()) out << s.id << " : \"" << s.condition << "\"\n";
        out << "\n";
    }
    out << "[variables]\n";
    for (const auto& v : model.variables()) {
        out << v.id << " : " << to_string(v.kind);
        if (v.derivative_of) out << " deriv_of=" << *v.derivative_of;
        out << doc(v.description) << "\n";
    }
    out << "\n[constraints]\n";
    for (const auto& c : model.constraints()) {
        std::vector<std::string> plain;
        std::vector<std::string> faults;
        for (const auto& t : c.touches) (model.is_kind(t, VariableKind::fault) ? faults : plain).push_back(t);
        out << c.id << " : {";
        for (std::size_t i = 0; i < plain.size(); ++i) out << (i ? ", " : "") << plain[i];
        if (!faults.empty()) {
            out << (plain.empty() ? "| " : " | ");
            for (std::size_t i = 0; i < faults.size(); ++i) out << (i ? ", " : "") << faults[i];
        }
        out << "}";
        if (c.gate) out << " gate=" << c.gate->switch_id << ":" << branch_symbol(c.gate->branch);
        if (c.family) out << " family=" << *c.family;
        out << doc(c.doc) << "\n";
    }
    return out.str();
}

}  // namespace sadiag::structmodel
