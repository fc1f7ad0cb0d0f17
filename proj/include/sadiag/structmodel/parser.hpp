#pragma once

#include "sadiag/structmodel/model.hpp"

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sadiag::structmodel {

/// Parse failure with a 1-based source position. Line 0 marks model-level
/// findings that have no single source line.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& message);

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }
    const std::string& detail() const { return detail_; }

private:
    std::size_t line_;
    std::size_t column_;
    std::string detail_;
};

/// Parse a model document (format described in docs/model-format.md).
/// The result has passed `validate`; any violation is raised as ParseError.
StructuralModel parse_model(std::string_view text);
StructuralModel load_model(const std::filesystem::path& path);

/// Canonical text form; `parse_model(serialize_model(m)) == m`.
std::string serialize_model(const StructuralModel& model);

bool is_identifier(std::string_view text);

// Shared by the other line-oriented formats (catalog, target, scenario).
namespace lineformat {

struct Line {
    std::size_t number = 0;
    std::string text;    // comment stripped, trimmed
    std::string comment; // text after '#', trimmed
};

struct Section {
    std::string name;
    std::size_t line = 0;
    std::vector<Line> lines;
};

/// Split a document into `[section]` blocks. Content before the first header
/// is an error, as is an unknown section name.
std::vector<Section> split_sections(std::string_view text, const std::vector<std::string>& allowed);

std::string trim(std::string_view text);
std::vector<std::string> split(std::string_view text, char sep);

/// `<key> : <rest>` with key an identifier.
std::pair<std::string, std::string> key_and_rest(const Line& line);

double parse_number(const Line& line, std::string_view token);

std::string read_file(const std::filesystem::path& path);

}  // namespace lineformat

}  // namespace sadiag::structmodel
