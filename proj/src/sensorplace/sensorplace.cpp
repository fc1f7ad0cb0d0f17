#include "sadiag/sensorplace/sensorplace.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace sadiag::sensorplace {

using diagnosis::Analysis;
using structmodel::StructuralModel;
using structmodel::VariableKind;

void check_catalog(const StructuralModel& model, const SensorCatalog& catalog) {
    std::set<std::string> names;
    for (const auto& entry : catalog.candidates) {
        const auto& s = entry.sensor;
        if (!names.insert(s.sensor_name).second) throw PlacementError("duplicate sensor name '" + s.sensor_name + "'");
        if (!model.is_kind(s.measured, VariableKind::unknown)) {
            throw PlacementError("sensor '" + s.sensor_name + "' measures '" + s.measured +
                                 "', which is not an unknown of the model");
        }
        if (!(entry.cost > 0) || !std::isfinite(entry.cost)) {
            throw PlacementError("sensor '" + s.sensor_name + "' needs a positive finite cost");
        }
    }
}

void check_target(const StructuralModel& model, const PlacementTarget& target) {
    auto known_fault = [&](const std::string& f) {
        if (!model.is_kind(f, VariableKind::fault)) throw PlacementError("target names unknown fault '" + f + "'");
    };
    for (const auto& f : target.must_detect) known_fault(f);
    for (const auto& [a, b] : target.must_isolate) {
        known_fault(a);
        known_fault(b);
        if (a == b) throw PlacementError("cannot require isolating '" + a + "' from itself");
    }
}

StructuralModel apply_sensors(const StructuralModel& model, const SensorCatalog& catalog,
                              const std::vector<std::size_t>& subset, bool sensor_faults) {
    StructuralModel out = model;
    for (std::size_t i : subset) {
        structmodel::SensorSpec spec = catalog.candidates.at(i).sensor;
        spec.adds_fault = spec.adds_fault && sensor_faults;
        out = structmodel::add_sensor(out, spec);
    }
    return out;
}

namespace {

double cost_of(const SensorCatalog& catalog, const std::vector<std::size_t>& subset) {
    double c = 0.0;
    for (std::size_t i : subset) c += catalog.candidates[i].cost;
    return c;
}

bool detects_all(const Analysis& a, const PlacementTarget& target) {
    for (const auto& f : target.must_detect) {
        if (!a.detectable(a.fault_index(f))) return false;
    }
    return true;
}

std::size_t satisfied_count(const Analysis& a, const PlacementTarget& target) {
    std::size_t n = 0;
    for (const auto& f : target.must_detect) n += a.detectable(a.fault_index(f)) ? 1 : 0;
    for (const auto& [x, y] : target.must_isolate) {
        const std::size_t i = a.fault_index(x), j = a.fault_index(y);
        n += a.isolable(i, j) ? 1 : 0;
        n += a.isolable(j, i) ? 1 : 0;
    }
    return n;
}

std::size_t requirement_count(const PlacementTarget& target) {
    return target.must_detect.size() + 2 * target.must_isolate.size();
}

bool is_subset(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

ConfigSummary evaluate_config(const StructuralModel& model, const SensorCatalog& catalog,
                              const std::vector<std::size_t>& subset, bool sensor_faults) {
    ConfigSummary s;
    s.subset = subset;
    std::sort(s.subset.begin(), s.subset.end());
    for (std::size_t i : s.subset) s.sensors.push_back(catalog.candidates.at(i).sensor.sensor_name);
    s.cost = cost_of(catalog, s.subset);
    const Analysis a(apply_sensors(model, catalog, s.subset, sensor_faults), false);
    for (std::size_t f = 0; f < a.faults().size(); ++f) {
        if (a.detectable(f)) s.detectable.push_back(a.faults()[f]);
    }
    s.matrix = a.isolability_matrix();
    return s;
}

std::vector<std::string> unmet_requirements(const Analysis& a, const PlacementTarget& target) {
    std::vector<std::string> out;
    for (const auto& f : target.must_detect) {
        if (!a.detectable(a.fault_index(f))) out.push_back("detect " + f);
    }
    for (const auto& [x, y] : target.must_isolate) {
        const std::size_t i = a.fault_index(x), j = a.fault_index(y);
        if (!a.isolable(i, j)) out.push_back("isolate " + x + " from " + y);
        if (!a.isolable(j, i)) out.push_back("isolate " + y + " from " + x);
    }
    return out;
}

namespace {

class Search {
public:
    Search(const StructuralModel& model, const SensorCatalog& catalog, const PlacementTarget& target,
           const PlacementOptions& options)
        : model_(model), catalog_(catalog), target_(target), options_(options) {}

    Analysis analyze(const std::vector<std::size_t>& subset) {
        ++evaluations;
        return Analysis(apply_sensors(model_, catalog_, subset, options_.sensor_faults), false);
    }

    bool meets(const std::vector<std::size_t>& subset) {
        const Analysis a = analyze(subset);
        return satisfied_count(a, target_) == requirement_count(target_);
    }

    // Children add candidates with index >= next, so every subset is visited at
    // most once. A feasible node is not extended: its supersets are not minimal.
    void explore(std::vector<std::size_t>& chosen, std::size_t next) {
        if (meets(chosen)) {
            found.push_back(chosen);
            return;
        }
        const std::size_t n = catalog_.candidates.size();
        if (next >= n) return;
        if (options_.max_subset_size != 0 && chosen.size() >= options_.max_subset_size) return;
        std::vector<std::size_t> widest = chosen;
        for (std::size_t i = next; i < n; ++i) widest.push_back(i);
        if (!detects_all(analyze(widest), target_)) return;
        for (std::size_t i = next; i < n; ++i) {
            chosen.push_back(i);
            explore(chosen, i + 1);
            chosen.pop_back();
        }
    }

    std::vector<std::vector<std::size_t>> found;
    std::size_t evaluations = 0;

private:
    const StructuralModel& model_;
    const SensorCatalog& catalog_;
    const PlacementTarget& target_;
    const PlacementOptions& options_;
};

}  // namespace

PlacementResult minimal_sensor_sets(const StructuralModel& model, const SensorCatalog& catalog,
                                    const PlacementTarget& target, const PlacementOptions& options) {
    check_catalog(model, catalog);
    check_target(model, target);

    PlacementResult result;
    Search search(model, catalog, target, options);
    const std::size_t n = catalog.candidates.size();
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), std::size_t{0});

    std::vector<std::vector<std::size_t>> minimal;
    if (n <= options.exhaustive_limit) {
        std::vector<std::size_t> chosen;
        search.explore(chosen, 0);
        for (const auto& s : search.found) {
            bool has_smaller = false;
            for (const auto& t : search.found) {
                if (t.size() < s.size() && is_subset(t, s)) has_smaller = true;
            }
            if (!has_smaller) minimal.push_back(s);
        }
    } else {
        result.greedy = true;
        result.warning = "catalog has " + std::to_string(n) + " candidates (limit " +
                         std::to_string(options.exhaustive_limit) +
                         "); greedy search used, result may be neither minimal in cost nor unique";
        std::vector<std::size_t> chosen;
        std::size_t score = satisfied_count(search.analyze(chosen), target);
        const std::size_t goal = requirement_count(target);
        while (score < goal) {
            if (options.max_subset_size != 0 && chosen.size() >= options.max_subset_size) break;
            std::optional<std::size_t> best;
            double best_ratio = 0.0;
            std::size_t best_score = score;
            for (std::size_t i = 0; i < n; ++i) {
                if (std::find(chosen.begin(), chosen.end(), i) != chosen.end()) continue;
                auto trial = chosen;
                trial.push_back(i);
                std::sort(trial.begin(), trial.end());
                const std::size_t s = satisfied_count(search.analyze(trial), target);
                if (s <= score) continue;
                const double ratio = static_cast<double>(s - score) / catalog.candidates[i].cost;
                if (!best || ratio > best_ratio) {
                    best = i;
                    best_ratio = ratio;
                    best_score = s;
                }
            }
            if (!best) break;
            chosen.push_back(*best);
            std::sort(chosen.begin(), chosen.end());
            score = best_score;
        }
        if (score == goal) {
            // Drop sensors that turned out unnecessary, costliest first.
            std::vector<std::size_t> order = chosen;
            std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                return catalog.candidates[a].cost > catalog.candidates[b].cost;
            });
            for (std::size_t i : order) {
                auto trial = chosen;
                trial.erase(std::find(trial.begin(), trial.end(), i));
                if (search.meets(trial)) chosen = trial;
            }
            minimal.push_back(chosen);
        }
    }
    result.evaluations = search.evaluations;

    for (const auto& s : minimal) result.chosen.push_back(evaluate_config(model, catalog, s, options.sensor_faults));
    std::sort(result.chosen.begin(), result.chosen.end(), [](const ConfigSummary& a, const ConfigSummary& b) {
        if (a.cost != b.cost) return a.cost < b.cost;
        if (a.subset.size() != b.subset.size()) return a.subset.size() < b.subset.size();
        return a.subset < b.subset;
    });
    result.feasible = !result.chosen.empty();
    if (!result.feasible) {
        const Analysis full(apply_sensors(model, catalog, all, options.sensor_faults), false);
        result.unmet = unmet_requirements(full, target);
        if (result.unmet.empty()) {
            result.unmet.push_back(options.max_subset_size != 0
                                       ? "no subset of at most " + std::to_string(options.max_subset_size) +
                                             " sensors meets the target"
                                       : "no subset found by the greedy search meets the target");
        }
    }
    return result;
}

}  // namespace sadiag::sensorplace
