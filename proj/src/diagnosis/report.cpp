#include "sadiag/diagnosis/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace sadiag::diagnosis {

using graphcore::Part;

std::string dm_summary_text(const Analysis& analysis) {
    const auto& dm = analysis.dm();
    const auto& g = analysis.graph();
    std::ostringstream out;
    out << "model: " << (analysis.model().name().empty() ? "(unnamed)" : analysis.model().name()) << "\n";
    out << "constraints: " << g.left.size() << ", unknowns: " << g.right.size()
        << ", matching size: " << dm.matching.size() << "\n";
    const Part parts[] = {Part::under, Part::just, Part::over};
    const char* names[] = {"under-determined", "just-determined", "over-determined"};
    for (int p = 0; p < 3; ++p) {
        out << names[p] << ": " << dm.left_in(parts[p]).size() << " constraints, " << dm.right_in(parts[p]).size()
            << " unknowns\n";
    }
    out << "redundancy (over constraints - over unknowns): "
        << static_cast<long>(dm.left_in(Part::over).size()) - static_cast<long>(dm.right_in(Part::over).size())
        << "\n";
    out << "equivalence classes: " << dm.classes.size() << "\n";
    for (std::size_t k = 0; k < dm.classes.size(); ++k) {
        out << "  class " << k << ":";
        for (int l : dm.classes[k]) out << " " << g.left[l];
        out << "\n";
    }
    return out.str();
}

std::string verdicts_text(const Analysis& analysis) {
    std::ostringstream out;
    std::size_t width = 0;
    for (const auto& f : analysis.faults()) width = std::max(width, f.size());
    for (const auto& v : analysis.verdicts()) {
        out << std::left << std::setw(static_cast<int>(width)) << v.fault << "  "
            << (v.detectable ? "detectable" : "NOT detectable");
        if (v.class_id) out << "  (class " << *v.class_id << ")";
        out << "\n";
    }
    return out.str();
}

std::string matrix_text(const IsolabilityMatrix& matrix) {
    std::ostringstream out;
    std::size_t width = 0;
    for (const auto& f : matrix.faults()) width = std::max(width, f.size());
    for (std::size_t i = 0; i < matrix.size(); ++i) {
        out << std::left << std::setw(static_cast<int>(width)) << matrix.faults()[i] << " |";
        for (std::size_t j = 0; j < matrix.size(); ++j) {
            out << ' ' << (matrix.at(i, j) ? 'X' : (matrix.detectable(i) ? '.' : '-'));
        }
        out << (matrix.detectable(i) ? "" : "   (not detectable)") << "\n";
    }
    out << "columns:";
    for (std::size_t j = 0; j < matrix.size(); ++j) out << " " << j + 1 << "=" << matrix.faults()[j];
    out << "\n";
    return out.str();
}

std::string matrix_csv(const IsolabilityMatrix& matrix) {
    std::ostringstream out;
    out << "fault,detectable";
    for (const auto& f : matrix.faults()) out << "," << f;
    out << "\n";
    for (std::size_t i = 0; i < matrix.size(); ++i) {
        out << matrix.faults()[i] << "," << (matrix.detectable(i) ? 1 : 0);
        for (std::size_t j = 0; j < matrix.size(); ++j) out << "," << (matrix.at(i, j) ? 1 : 0);
        out << "\n";
    }
    return out.str();
}

std::string report_json(const Analysis& analysis, const IsolabilityMatrix& matrix) {
    nlohmann::ordered_json faults = nlohmann::ordered_json::array();
    const auto verdicts = analysis.verdicts();
    for (std::size_t i = 0; i < matrix.size(); ++i) {
        const std::string& id = matrix.faults()[i];
        auto it = std::find_if(verdicts.begin(), verdicts.end(), [&](const FaultVerdict& v) { return v.fault == id; });
        nlohmann::ordered_json entry;
        entry["fault"] = id;
        entry["detectable"] = matrix.detectable(i);
        entry["class"] = (it != verdicts.end() && it->class_id) ? nlohmann::ordered_json(*it->class_id)
                                                                : nlohmann::ordered_json(nullptr);
        nlohmann::ordered_json isolable_from = nlohmann::ordered_json::array();
        if (matrix.detectable(i)) {
            for (std::size_t j = 0; j < matrix.size(); ++j) {
                if (j != i && !matrix.at(i, j)) isolable_from.push_back(matrix.faults()[j]);
            }
        }
        entry["isolable_from"] = std::move(isolable_from);
        faults.push_back(std::move(entry));
    }
    nlohmann::ordered_json doc;
    doc["model"] = analysis.model().name();
    doc["faults"] = std::move(faults);
    return doc.dump(2) + "\n";
}

}  // namespace sadiag::diagnosis
