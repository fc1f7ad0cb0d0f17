#pragma once

#include "sadiag/diagnosis/diagnosis.hpp"

#include <string>

namespace sadiag::diagnosis {

/// Counts per DM part plus the equivalence classes, one line each.
std::string dm_summary_text(const Analysis& analysis);

std::string verdicts_text(const Analysis& analysis);

/// Grid with 'X' for set cells and '.' for clear ones; undetectable rows are
/// marked with '-'.
std::string matrix_text(const IsolabilityMatrix& matrix);

std::string matrix_csv(const IsolabilityMatrix& matrix);

/// JSON array of {fault, detectable, class, isolable_from:[...]}.
std::string report_json(const Analysis& analysis, const IsolabilityMatrix& matrix);

}  // namespace sadiag::diagnosis
