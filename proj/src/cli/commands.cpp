#include "sadiag/cli/commands.hpp"

#include "sadiag/diagnosis/diagnosis.hpp"
#include "sadiag/diagnosis/report.hpp"
#include "sadiag/graphcore/export.hpp"
#include "sadiag/hydrosim/scenario_io.hpp"
#include "sadiag/hydrosim/simulator.hpp"
#include "sadiag/pitchbench/pitch_model.hpp"
#include "sadiag/regions/regions.hpp"
#include "sadiag/sensorplace/placement_io.hpp"
#include "sadiag/structmodel/parser.hpp"
#include "sadiag/structmodel/random_model.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace sadiag::cli {

namespace fs = std::filesystem;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot write '" + path.string() + "'");
    f << content;
}

std::string hex(std::uint64_t h) {
    std::ostringstream s;
    s << std::hex << std::setw(16) << std::setfill('0') << h;
    return s.str();
}

structmodel::StructuralModel read_model(const std::string& path) { return structmodel::load_model(path); }

std::vector<std::string> fault_notes(const diagnosis::Analysis& a) {
    std::vector<std::string> notes;
    for (const auto& c : a.model().constraints()) {
        std::string n;
        for (const auto& f : a.model().faults_of(c)) n += (n.empty() ? "" : ", ") + f;
        notes.push_back(n);
    }
    return notes;
}

// --- analyze ---------------------------------------------------------------

struct AnalyzeArgs {
    std::string model;
    std::string format = "text";
    std::string dot, csv, json;
    bool fine_blocks = false;
};

int cmd_analyze(const AnalyzeArgs& a, std::ostream& out) {
    const auto model = read_model(a.model);
    const diagnosis::Analysis analysis(model);
    const auto matrix = analysis.isolability_matrix();

    if (!a.dot.empty()) {
        graphcore::DotOptions opt;
        opt.graph_name = model.name().empty() ? "structure" : model.name();
        opt.fine_blocks = a.fine_blocks;
        opt.constraint_notes = fault_notes(analysis);
        write_file(a.dot, graphcore::to_dot(analysis.graph(), analysis.dm(), opt));
    }
    if (!a.csv.empty()) write_file(a.csv, diagnosis::matrix_csv(matrix));
    if (!a.json.empty()) write_file(a.json, diagnosis::report_json(analysis, matrix));

    if (a.format == "csv") {
        out << diagnosis::matrix_csv(matrix);
    } else if (a.format == "json") {
        out << diagnosis::report_json(analysis, matrix);
    } else {
        out << diagnosis::dm_summary_text(analysis) << "\n"
            << "faults:\n"
            << diagnosis::verdicts_text(analysis) << "\n";
        std::vector<std::string> undetectable;
        for (std::size_t f = 0; f < analysis.faults().size(); ++f) {
            if (!analysis.detectable(f)) undetectable.push_back(analysis.faults()[f]);
        }
        out << "not detectable:";
        for (const auto& f : undetectable) out << " " << f;
        out << (undetectable.empty() ? " (none)\n" : "\n");
        out << "non-isolable groups:";
        bool any = false;
        for (const auto& block : matrix.blocks()) {
            if (block.size() < 2) continue;
            any = true;
            out << " {";
            for (std::size_t i = 0; i < block.size(); ++i) out << (i ? ", " : "") << block[i];
            out << "}";
        }
        out << (any ? "\n" : " (none)\n") << "\nisolability matrix (row i, column j set: j not exonerated under i):\n"
            << diagnosis::matrix_text(matrix);
    }
    return ok;
}

// --- regions ---------------------------------------------------------------

struct RegionsArgs {
    std::string model;
    std::string format = "text";
    std::string dump_all;
};

int cmd_regions(const RegionsArgs& a, std::ostream& out) {
    const auto model = read_model(a.model);
    const auto sweep = regions::sweep_regions(model);
    const std::size_t n = sweep.assignments.size();

    if (!a.dump_all.empty()) {
        fs::create_directories(a.dump_all);
        const int width = static_cast<int>(std::to_string(n).size());
        for (std::size_t r = 0; r < n; ++r) {
            std::ostringstream name;
            name << "region_" << std::setw(width) << std::setfill('0') << r << ".csv";
            write_file(fs::path(a.dump_all) / name.str(),
                       "# " + regions::assignment_label(sweep.assignments[r]) + "\n" +
                           diagnosis::matrix_csv(sweep.matrices[r].sorted_by_id()));
        }
    }

    const std::size_t identical =
        static_cast<std::size_t>(std::count(sweep.hashes.begin(), sweep.hashes.end(), sweep.hashes.front()));

    if (a.format == "json") {
        nlohmann::ordered_json doc;
        doc["model"] = model.name();
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (std::size_t r = 0; r < n; ++r) {
            nlohmann::ordered_json row;
            row["region"] = r;
            row["assignment"] = regions::assignment_label(sweep.assignments[r]);
            row["hash"] = hex(sweep.hashes[r]);
            row["blocks"] = sweep.matrices[r].blocks();
            rows.push_back(std::move(row));
        }
        doc["regions"] = std::move(rows);
        doc["invariant"] = sweep.invariant;
        doc["distinct_patterns"] = sweep.distinct_patterns();
        doc["matches_whole_model"] = sweep.matches_whole;
        doc["whole_detects_superset"] = sweep.whole_detects_superset;
        out << doc.dump(2) << "\n";
        return ok;
    }
    if (a.format == "csv") {
        out << "region,assignment,hash\n";
        for (std::size_t r = 0; r < n; ++r) {
            out << r << "," << regions::assignment_label(sweep.assignments[r]) << "," << hex(sweep.hashes[r]) << "\n";
        }
        return ok;
    }

    out << "model: " << model.name() << "\n";
    out << "regions: " << n << "\n";
    for (std::size_t r = 0; r < n; ++r) {
        out << std::setw(4) << r << "  " << hex(sweep.hashes[r]) << "  " << regions::assignment_label(sweep.assignments[r])
            << "\n";
    }
    if (sweep.invariant) {
        out << "INVARIANT: yes (" << n << "/" << n << " identical)\n";
    } else {
        out << "INVARIANT: no (" << sweep.distinct_patterns() << " distinct patterns; " << identical << "/" << n
            << " match region 0)\n";
        const auto& d = sweep.diffs.front();
        out << "first differing pair: region " << d.first << " [" << regions::assignment_label(sweep.assignments[d.first])
            << "] vs region " << d.second << " [" << regions::assignment_label(sweep.assignments[d.second]) << "]\n";
        for (const auto& f : d.diff.detectability_changed) out << "  detectability differs: " << f << "\n";
        for (const auto& c : d.diff.cells) {
            out << "  cell (" << c.row << ", " << c.column << "): " << c.a << " -> " << c.b << "\n";
        }
    }
    out << "whole model matches every region: " << (sweep.matches_whole ? "yes" : "no") << "\n";
    out << "whole-model detectability covers every region: " << (sweep.whole_detects_superset ? "yes" : "no") << "\n";
    return ok;
}

// --- sensors ---------------------------------------------------------------

struct SensorsArgs {
    std::string model, catalog, target;
    std::string format = "text";
    bool no_sensor_faults = false;
    std::size_t max_subset_size = 0;
};

int cmd_sensors(const SensorsArgs& a, std::ostream& out, std::string& subject) {
    const auto model = read_model(a.model);
    subject = a.catalog;
    const auto catalog = sensorplace::load_catalog(a.catalog);
    subject = a.target;
    const auto target = sensorplace::load_target(a.target, model);
    subject = a.model;
    sensorplace::PlacementOptions opt;
    opt.sensor_faults = !a.no_sensor_faults;
    opt.max_subset_size = a.max_subset_size;
    const auto result = sensorplace::minimal_sensor_sets(model, catalog, target, opt);
    out << (a.format == "json" ? sensorplace::placement_json(result) : sensorplace::placement_text(result));
    return result.feasible ? ok : infeasible;
}

// --- simulate --------------------------------------------------------------

struct SimulateArgs {
    std::string scenario;
    std::string format = "text";
    std::string csv;
    double step = 0.0;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out, std::ostream& err) {
    auto sc = hydrosim::load_scenario(a.scenario);
    if (a.step > 0) sc.step = a.step;
    const auto problems = hydrosim::check_scenario(sc);
    if (!problems.empty()) {
        err << a.scenario << ": invalid scenario\n";
        for (const auto& p : problems) err << "  " << p << "\n";
        return validation_error;
    }
    try {
        const auto traj = hydrosim::simulate(sc);
        if (!a.csv.empty()) write_file(a.csv, hydrosim::trajectory_csv(traj));
        out << (a.format == "csv" ? hydrosim::trajectory_csv(traj) : hydrosim::trajectory_summary(traj));
    } catch (const hydrosim::SimulationAborted& e) {
        err << a.scenario << ": " << e.what() << "\n"
            << "  step index: " << e.step_index() << "\n"
            << "  component: " << e.component() << "\n";
        return numeric_abort;
    }
    return ok;
}

// --- export ----------------------------------------------------------------

struct ExportArgs {
    std::string what;  // pitch | random
    int cylinders = 1;
    std::string variant = "standard";
    std::uint64_t seed = 1;
    int switches = 0;
    std::string format = "text";
    std::string output;
    std::string dot;
};

int cmd_export(const ExportArgs& a, std::ostream& out) {
    structmodel::StructuralModel model;
    if (a.what == "pitch") {
        const auto variant = a.variant == "fext"         ? pitchbench::SensorVariant::with_Fext_sensor
                             : a.variant == "sensorless" ? pitchbench::SensorVariant::sensorless
                                                         : pitchbench::SensorVariant::standard;
        model = pitchbench::build_pitch_model(a.cylinders, variant);
    } else {
        structmodel::RandomModelOptions opt;
        opt.max_switches = a.switches;
        model = structmodel::random_model(a.seed, opt);
    }
    const graphcore::Bipartite g = graphcore::Bipartite::from_model(diagnosis::prepare_for_analysis(model));
    if (!a.dot.empty()) {
        graphcore::DotOptions opt;
        opt.graph_name = model.name().empty() ? "structure" : model.name();
        write_file(a.dot, graphcore::to_dot(g, graphcore::dm_decompose(g), opt));
    }
    const std::string text = a.format == "csv" ? graphcore::incidence_csv(g) : structmodel::serialize_model(model);
    if (a.output.empty()) out << text;
    else write_file(a.output, text);
    return ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Structural fault diagnosis toolkit"};
    app.name("sadiag");
    app.require_subcommand(1);
    app.set_version_flag("--version", "sadiag 1.0.0");

    const auto formats = CLI::IsMember({"text", "csv", "json"});

    AnalyzeArgs an;
    auto* analyze = app.add_subcommand("analyze", "DM decomposition, detectability and isolability of a model");
    analyze->add_option("model", an.model, "model file")->required();
    analyze->add_option("--format", an.format, "stdout format")->check(formats);
    analyze->add_option("--dot", an.dot, "write the bipartite graph as DOT");
    analyze->add_flag("--fine-blocks", an.fine_blocks, "cluster just-determined blocks in the DOT output");
    analyze->add_option("--csv", an.csv, "write the isolability matrix as CSV");
    analyze->add_option("--json", an.json, "write the JSON report");

    RegionsArgs rg;
    auto* regions_cmd = app.add_subcommand("regions", "sweep all operation regions of a gated model");
    regions_cmd->add_option("model", rg.model, "model file")->required();
    regions_cmd->add_option("--format", rg.format, "stdout format")->check(formats);
    regions_cmd->add_option("--dump-all", rg.dump_all, "directory for one CSV matrix per region");

    SensorsArgs sn;
    auto* sensors = app.add_subcommand("sensors", "minimal sensor sets meeting a diagnosis target");
    sensors->add_option("model", sn.model, "model file")->required();
    sensors->add_option("catalog", sn.catalog, "catalog file ([catalog] section)")->required();
    sensors->add_option("target", sn.target, "target file ([target] section)")->required();
    sensors->add_option("--format", sn.format, "stdout format")->check(CLI::IsMember({"text", "json"}));
    sensors->add_flag("--no-sensor-faults", sn.no_sensor_faults, "treat added sensors as fault-free");
    sensors->add_option("--max-subset-size", sn.max_subset_size, "largest subset considered (0: no limit)");

    SimulateArgs sm;
    auto* simulate = app.add_subcommand("simulate", "integrate the nonlinear pitch-system model");
    simulate->add_option("scenario", sm.scenario, "scenario file")->required();
    simulate->add_option("--format", sm.format, "stdout format")->check(CLI::IsMember({"text", "csv"}));
    simulate->add_option("--csv", sm.csv, "write the trajectory as CSV");
    simulate->add_option("--step", sm.step, "override the integration step (s)")->check(CLI::PositiveNumber);

    ExportArgs ex;
    auto* export_cmd = app.add_subcommand("export", "write a built-in or random model");
    export_cmd->add_option("what", ex.what, "pitch | random")->required()->check(CLI::IsMember({"pitch", "random"}));
    export_cmd->add_option("--cylinders", ex.cylinders, "pitch: 1 or 3")->check(CLI::IsMember({1, 3}));
    export_cmd->add_option("--variant", ex.variant, "pitch: standard | fext | sensorless")
        ->check(CLI::IsMember({"standard", "fext", "sensorless"}));
    export_cmd->add_option("--seed", ex.seed, "random: generator seed");
    export_cmd->add_option("--switches", ex.switches, "random: maximum number of switches")->check(CLI::Range(0, 8));
    export_cmd->add_option("--format", ex.format, "text (model format) or csv (incidence)")
        ->check(CLI::IsMember({"text", "csv"}));
    export_cmd->add_option("-o,--output", ex.output, "output file instead of stdout");
    export_cmd->add_option("--dot", ex.dot, "also write the bipartite graph as DOT");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::CallForVersion& e) {
        out << e.what() << "\n";
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "sadiag: " << e.what() << "\nrun 'sadiag --help' for usage\n";
        return validation_error;
    }

    std::string subject;
    try {
        if (analyze->parsed()) {
            subject = an.model;
            return cmd_analyze(an, out);
        }
        if (regions_cmd->parsed()) {
            subject = rg.model;
            return cmd_regions(rg, out);
        }
        if (sensors->parsed()) {
            subject = sn.model;
            return cmd_sensors(sn, out, subject);
        }
        if (simulate->parsed()) {
            subject = sm.scenario;
            return cmd_simulate(sm, out, err);
        }
        subject = "export";
        return cmd_export(ex, out);
    } catch (const structmodel::ParseError& e) {
        err << subject << ":" << e.line() << ":" << e.column() << ": error: " << e.detail() << "\n";
    } catch (const std::exception& e) {
        err << subject << ": error: " << e.what() << "\n";
    }
    return validation_error;
}

}  // namespace sadiag::cli
