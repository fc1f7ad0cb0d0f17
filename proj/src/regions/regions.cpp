#include "sadiag/regions/regions.hpp"

#include <algorithm>
#include <future>
#include <thread>

namespace sadiag::regions {

using diagnosis::IsolabilityMatrix;
using structmodel::Branch;

std::vector<RegionAssignment> enumerate_regions(const structmodel::StructuralModel& model) {
    std::vector<std::string> ids;
    for (const auto& s : model.switches()) ids.push_back(s.id);
    std::sort(ids.begin(), ids.end());
    if (ids.size() > 20) throw structmodel::ModelError("too many switches to enumerate (" + std::to_string(ids.size()) + ")");

    const std::size_t k = ids.size();
    std::vector<RegionAssignment> out;
    out.reserve(std::size_t{1} << k);
    for (std::size_t code = 0; code < (std::size_t{1} << k); ++code) {
        RegionAssignment a;
        for (std::size_t s = 0; s < k; ++s) {
            const bool negative = (code >> (k - 1 - s)) & 1U;
            a[ids[s]] = negative ? Branch::negative : Branch::positive;
        }
        out.push_back(std::move(a));
    }
    return out;
}

std::string assignment_label(const RegionAssignment& assignment) {
    if (assignment.empty()) return "(no switches)";
    std::string out;
    for (const auto& [id, branch] : assignment) {
        if (!out.empty()) out += ' ';
        out += id + "=" + structmodel::branch_symbol(branch);
    }
    return out;
}

std::size_t RegionSweepResult::distinct_patterns() const {
    std::vector<std::uint64_t> h = hashes;
    std::sort(h.begin(), h.end());
    return static_cast<std::size_t>(std::unique(h.begin(), h.end()) - h.begin());
}

RegionSweepResult sweep_regions(const structmodel::StructuralModel& model) {
    RegionSweepResult result;
    result.assignments = enumerate_regions(model);

    const diagnosis::Analysis whole(model, false);
    result.whole = whole.isolability_matrix();

    const unsigned workers = std::max(1U, std::min(8U, std::thread::hardware_concurrency()));
    result.matrices.resize(result.assignments.size());
    std::vector<std::vector<char>> region_detectable(result.assignments.size());
    auto run_range = [&](std::size_t begin, std::size_t end) {
        for (std::size_t r = begin; r < end; ++r) {
            const diagnosis::Analysis a(structmodel::specialize_region(model, result.assignments[r]), false);
            result.matrices[r] = a.isolability_matrix();
            for (std::size_t f = 0; f < a.faults().size(); ++f) region_detectable[r].push_back(a.detectable(f));
        }
    };
    const std::size_t n = result.assignments.size();
    const std::size_t chunk = (n + workers - 1) / workers;
    std::vector<std::future<void>> jobs;
    for (std::size_t begin = 0; begin < n; begin += chunk) {
        jobs.push_back(std::async(std::launch::async, run_range, begin, std::min(n, begin + chunk)));
    }
    for (auto& job : jobs) job.get();

    for (std::size_t r = 0; r < n; ++r) {
        result.hashes.push_back(result.matrices[r].pattern_hash());
        if (r > 0) {
            auto diff = diagnosis::compare_matrices(result.matrices[0], result.matrices[r]);
            if (!diff.empty()) {
                result.invariant = false;
                result.diffs.push_back(RegionDiff{0, r, std::move(diff)});
            }
        }
        if (!diagnosis::compare_matrices(result.whole, result.matrices[r]).empty()) result.matches_whole = false;
        for (std::size_t f = 0; f < whole.faults().size(); ++f) {
            if (region_detectable[r][f] && !whole.detectable(f)) result.whole_detects_superset = false;
        }
    }
    return result;
}

}  // namespace sadiag::regions
