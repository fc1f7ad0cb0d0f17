#pragma once

#include "sadiag/diagnosis/diagnosis.hpp"
#include "sadiag/structmodel/transforms.hpp"

#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sadiag::sensorplace {

struct CatalogEntry {
    structmodel::SensorSpec sensor;
    double cost = 1.0;
};

struct SensorCatalog {
    std::vector<CatalogEntry> candidates;
};

/// must_isolate pairs are read both ways: a from b and b from a.
struct PlacementTarget {
    std::set<std::string> must_detect;
    std::vector<std::pair<std::string, std::string>> must_isolate;

    bool empty() const { return must_detect.empty() && must_isolate.empty(); }
};

class PlacementError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Throws PlacementError on bad costs, duplicate sensor names or measured
/// variables that are not unknowns of the model.
void check_catalog(const structmodel::StructuralModel& model, const SensorCatalog& catalog);
/// Throws PlacementError when the target names a fault the model lacks.
void check_target(const structmodel::StructuralModel& model, const PlacementTarget& target);

struct ConfigSummary {
    std::vector<std::size_t> subset;  // catalog indices, ascending
    std::vector<std::string> sensors;
    double cost = 0.0;
    std::vector<std::string> detectable;
    diagnosis::IsolabilityMatrix matrix;
};

structmodel::StructuralModel apply_sensors(const structmodel::StructuralModel& model, const SensorCatalog& catalog,
                                           const std::vector<std::size_t>& subset, bool sensor_faults = true);

ConfigSummary evaluate_config(const structmodel::StructuralModel& model, const SensorCatalog& catalog,
                              const std::vector<std::size_t>& subset, bool sensor_faults = true);

/// Requirements of the target not met by a configuration, as readable lines
/// ("detect f_x", "isolate f_a from f_b").
std::vector<std::string> unmet_requirements(const diagnosis::Analysis& analysis, const PlacementTarget& target);

struct PlacementOptions {
    bool sensor_faults = true;
    /// 0 means no limit.
    std::size_t max_subset_size = 0;
    /// Catalogs larger than this use the greedy fallback.
    std::size_t exhaustive_limit = 20;
};

struct PlacementResult {
    bool feasible = false;
    /// Minimal subsets sorted by (cost, size, indices).
    std::vector<ConfigSummary> chosen;
    /// When infeasible: what the full catalog (or the greedy result) still misses.
    std::vector<std::string> unmet;
    bool greedy = false;
    std::string warning;
    std::size_t evaluations = 0;
};

PlacementResult minimal_sensor_sets(const structmodel::StructuralModel& model, const SensorCatalog& catalog,
                                    const PlacementTarget& target, const PlacementOptions& options = {});

}  // namespace sadiag::sensorplace
