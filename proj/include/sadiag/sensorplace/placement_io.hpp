#pragma once

#include "sadiag/sensorplace/sensorplace.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace sadiag::sensorplace {

/// `[catalog]` lines: `<name> : <measured> [cost=<x>] [fault=yes|no]`.
SensorCatalog parse_catalog(std::string_view text);

/// `[target]` lines:
///   detect : f1, f2, ...      (`*` means every fault of the model)
///   ignore : f1, ...          (removed from the detect set)
///   isolate : fa / fb         (both directions)
/// The model resolves `*` and is used to check fault names.
PlacementTarget parse_target(std::string_view text, const structmodel::StructuralModel& model);

SensorCatalog load_catalog(const std::filesystem::path& path);
PlacementTarget load_target(const std::filesystem::path& path, const structmodel::StructuralModel& model);

std::string serialize_catalog(const SensorCatalog& catalog);

std::string placement_text(const PlacementResult& result);
std::string placement_json(const PlacementResult& result);

}  // namespace sadiag::sensorplace
