#pragma once

#include "sadiag/diagnosis/diagnosis.hpp"
#include "sadiag/structmodel/transforms.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace sadiag::regions {

using structmodel::RegionAssignment;

/// All 2^k branch assignments of the declared switches. Switches are taken in
/// lexicographic id order; the first switch varies slowest and '+' precedes '-'.
std::vector<RegionAssignment> enumerate_regions(const structmodel::StructuralModel& model);

/// Compact label such as "cv=+ gas=- rel=+ xv=+".
std::string assignment_label(const RegionAssignment& assignment);

struct RegionDiff {
    std::size_t first = 0;  // index into assignments
    std::size_t second = 0;
    diagnosis::MatrixDiff diff;
};

struct RegionSweepResult {
    std::vector<RegionAssignment> assignments;
    std::vector<diagnosis::IsolabilityMatrix> matrices;
    std::vector<std::uint64_t> hashes;
    /// Non-empty diffs of every region against region 0.
    std::vector<RegionDiff> diffs;
    bool invariant = true;

    /// Isolability matrix of the Heaviside-condensed whole model.
    diagnosis::IsolabilityMatrix whole;
    bool matches_whole = true;
    /// Whole-model detectable set contains each region's detectable set.
    bool whole_detects_superset = true;

    std::size_t distinct_patterns() const;
};

/// Specializes the model to every region and builds its isolability matrix.
/// Regions are analyzed independently; output order follows enumerate_regions.
RegionSweepResult sweep_regions(const structmodel::StructuralModel& model);

}  // namespace sadiag::regions
