// Command-line front end: simulate, mine-gates, sweep, machine, minimize, plus
// helpers to place electrodes and export networks.

#include "adm/electrodes.hpp"
#include "adm/errors.hpp"
#include "adm/export.hpp"
#include "adm/grid.hpp"
#include "adm/logic.hpp"
#include "adm/manifest.hpp"
#include "adm/pipeline.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct ManifestFlags {
    std::string manifest;
    std::string network;
    std::string path;
    std::vector<int> threshold;
    std::vector<int> dims;
    int segments = 0;
    int bundle_radius = 0;
    std::uint64_t seed = 0;
    std::string placement;
    int r = 0;
    int theta = 0;
    int delta = 0;
    int steps = 0;
    int spike_threshold = 0;
    std::string detector;
    int electrode_radius = 0;
    std::string electrodes;
    std::string out;
    unsigned threads = 1;

    std::string input;
    std::vector<int> snapshot_steps;
    std::vector<int> slices;
    bool color = false;

    int input_x = 0;
    int input_y = 0;
    std::vector<int> outputs;
    bool dedupe = false;

    std::string axis;
    std::vector<int> values;

    int g_at = 0;
    bool per_input_graphs = false;
};

void add_network_flags(CLI::App* cmd, ManifestFlags& f) {
    cmd->add_option("--manifest", f.manifest, "JSON manifest; other flags override its fields");
    cmd->add_option("--network", f.network, "network source")->check(CLI::IsMember({"synthetic", "raw", "image-stack"}));
    cmd->add_option("--path", f.path, "raw matrix file or image-stack directory");
    cmd->add_option("--threshold", f.threshold, "RGB thresholds r,g,b")->delimiter(',')->expected(3);
    cmd->add_option("--dims", f.dims, "synthetic grid nx,ny,nz")->delimiter(',')->expected(3);
    cmd->add_option("--segments", f.segments, "synthetic segment count");
    cmd->add_option("--bundle-radius", f.bundle_radius, "synthetic tube radius");
    cmd->add_option("--seed", f.seed, "synthetic generator seed");
    cmd->add_option("--placement", f.placement, "synthetic placement")
        ->check(CLI::IsMember({"uniform", "nearest-neighbors"}));
}

void add_experiment_flags(CLI::App* cmd, ManifestFlags& f) {
    add_network_flags(cmd, f);
    cmd->add_option("--r", f.r, "neighbourhood radius");
    cmd->add_option("--theta", f.theta, "excitation threshold");
    cmd->add_option("--delta", f.delta, "refractory delay");
    cmd->add_option("-T,--steps", f.steps, "run length");
    cmd->add_option("--spike-threshold", f.spike_threshold, "minimum potential counted as a spike");
    cmd->add_option("--detector", f.detector, "spike detector")->check(CLI::IsMember({"level", "rising-edge"}));
    cmd->add_option("--electrode-radius", f.electrode_radius, "override the electrode file's RADIUS");
    cmd->add_option("--electrodes", f.electrodes, "electrode config file");
    cmd->add_option("--out", f.out, "output directory");
    cmd->add_option("--threads", f.threads, "worker threads (does not affect results)");
}

std::string absolute(const std::string& p) { return fs::absolute(p).lexically_normal().generic_string(); }

json& ensure(json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_object()) {
        j[key] = json::object();
    }
    return j[key];
}

adm::RunManifest build_manifest(const CLI::App& cmd, const ManifestFlags& f) {
    json j = json::object();
    fs::path base;
    if (!f.manifest.empty()) {
        std::ifstream in(f.manifest);
        if (!in) {
            throw adm::ManifestError("--manifest", "cannot open " + f.manifest);
        }
        try {
            in >> j;
        } catch (const json::parse_error& e) {
            throw adm::ManifestError("--manifest", e.what());
        }
        base = fs::absolute(f.manifest).parent_path();
    }
    const auto given = [&](const char* name) {
        const auto* opt = cmd.get_option_no_throw(name);
        return opt != nullptr && opt->count() > 0;
    };
    if (given("--network")) ensure(j, "network")["source"] = f.network;
    if (given("--path")) ensure(j, "network")["path"] = absolute(f.path);
    if (given("--threshold")) ensure(j, "network")["threshold"] = f.threshold;
    if (given("--dims")) ensure(j, "network")["dims"] = f.dims;
    if (given("--segments")) ensure(j, "network")["segment_count"] = f.segments;
    if (given("--bundle-radius")) ensure(j, "network")["bundle_radius"] = f.bundle_radius;
    if (given("--seed")) ensure(j, "network")["seed"] = f.seed;
    if (given("--placement")) ensure(j, "network")["placement"] = f.placement;
    if (given("--r")) ensure(j, "automaton")["r"] = f.r;
    if (given("--theta")) ensure(j, "automaton")["theta"] = f.theta;
    if (given("--delta")) ensure(j, "automaton")["delta"] = f.delta;
    if (given("--steps")) ensure(j, "recording")["T"] = f.steps;
    if (given("--spike-threshold")) ensure(j, "recording")["spike_threshold"] = f.spike_threshold;
    if (given("--detector")) ensure(j, "recording")["detector"] = f.detector;
    if (given("--electrode-radius")) ensure(j, "recording")["electrode_radius"] = f.electrode_radius;
    if (given("--electrodes")) j["electrodes"] = absolute(f.electrodes);
    if (given("--out")) j["output_dir"] = f.out;
    if (given("--input")) ensure(j, "simulate")["input"] = f.input;
    if (given("--snapshot-steps")) ensure(j, "simulate")["snapshot_steps"] = f.snapshot_steps;
    if (given("--slices")) ensure(j, "simulate")["snapshot_slices"] = f.slices;
    if (given("--color")) ensure(j, "simulate")["color"] = f.color;
    if (given("--input-x")) ensure(j, "gates")["input_x"] = f.input_x;
    if (given("--input-y")) ensure(j, "gates")["input_y"] = f.input_y;
    if (given("--outputs")) ensure(j, "gates")["outputs"] = f.outputs;
    if (given("--dedupe-per-electrode")) ensure(j, "gates")["dedupe_per_electrode"] = f.dedupe;
    if (given("--axis")) ensure(j, "sweep")["axis"] = f.axis;
    if (given("--values")) ensure(j, "sweep")["values"] = f.values;
    if (given("--g-at")) ensure(j, "machine")["g_at"] = f.g_at;
    if (given("--per-input-graphs")) ensure(j, "machine")["per_input_graphs"] = f.per_input_graphs;

    auto m = adm::manifest_from_json(j, base);
    // An output directory given only in a manifest file is relative to that file.
    if (!given("--out")) {
        m.output_dir = m.resolve(m.output_dir);
    }
    return m;
}

void report(const adm::Written& files) {
    for (const auto& f : files) {
        std::cout << f.generic_string() << '\n';
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Excitable voxel-network simulator and finite-state-machine analysis"};
    app.require_subcommand(1);
    ManifestFlags f;

    auto* simulate = app.add_subcommand("simulate", "run one stimulation, write snapshots and traces");
    add_experiment_flags(simulate, f);
    simulate->add_option("--input", f.input, "input bit string, one bit per electrode");
    simulate->add_option("--snapshot-steps", f.snapshot_steps, "steps to snapshot")->delimiter(',');
    simulate->add_option("--slices", f.slices, "z slices to snapshot")->delimiter(',');
    simulate->add_flag("--color", f.color, "also write colour PPM snapshots");

    auto* gates = app.add_subcommand("mine-gates", "classify two-input gates at every output electrode");
    auto* sweep = app.add_subcommand("sweep", "gate frequencies over a theta or delta grid");
    for (auto* cmd : {gates, sweep}) {
        add_experiment_flags(cmd, f);
        cmd->add_option("--input-x", f.input_x, "electrode id of input x");
        cmd->add_option("--input-y", f.input_y, "electrode id of input y");
        cmd->add_option("--outputs", f.outputs, "output electrode ids (default: all others)")->delimiter(',');
        cmd->add_flag("--dedupe-per-electrode", f.dedupe, "count each gate type once per electrode");
    }
    sweep->add_option("--axis", f.axis, "swept parameter")->check(CLI::IsMember({"theta", "delta"}));
    sweep->add_option("--values", f.values, "grid values (default: standard grid)")->delimiter(',');

    auto* machine = app.add_subcommand("machine", "stimulate with every input and analyse the state machine");
    add_experiment_flags(machine, f);
    machine->add_option("--g-at", f.g_at, "response moment for the snapshot function and DNFs");
    machine->add_flag("--per-input-graphs", f.per_input_graphs, "write one DOT graph per input");

    auto* minimize_cmd = app.add_subcommand("minimize", "minimise Boolean functions to DNF");
    std::string g_file;
    unsigned arity = 0;
    std::vector<std::uint32_t> minterms;
    std::string csv_out;
    minimize_cmd->add_option("--g-file", g_file, "input,state CSV of a snapshot function");
    minimize_cmd->add_option("-k,--arity", arity, "number of variables / electrodes")->required();
    minimize_cmd->add_option("--minterms", minterms, "minterms of a single function")->delimiter(',');
    minimize_cmd->add_option("--csv", csv_out, "also write electrode,dnf CSV");

    auto* place = app.add_subcommand("place-electrodes", "spread electrodes over conductive voxels");
    add_network_flags(place, f);
    int count = 6;
    int place_radius = 4;
    std::uint64_t place_seed = 1;
    std::string place_out;
    place->add_option("--count", count, "number of electrodes");
    place->add_option("--radius", place_radius, "electrode radius");
    place->add_option("--place-seed", place_seed, "seed for the first electrode");
    place->add_option("-o,--output", place_out, "electrode file to write (default: stdout)");

    auto* export_net = app.add_subcommand("export-network", "write the network as a raw matrix file");
    add_network_flags(export_net, f);
    std::string raw_out;
    bool packed = false;
    export_net->add_option("-o,--output", raw_out, "raw matrix file")->required();
    export_net->add_flag("--packed", packed, "bit-packed payload");

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) {
            report(adm::cmd_simulate(build_manifest(*simulate, f), f.threads));
        } else if (gates->parsed()) {
            report(adm::cmd_mine_gates(build_manifest(*gates, f), f.threads));
        } else if (sweep->parsed()) {
            report(adm::cmd_sweep(build_manifest(*sweep, f), f.threads));
        } else if (machine->parsed()) {
            report(adm::cmd_machine(build_manifest(*machine, f), f.threads));
        } else if (minimize_cmd->parsed()) {
            std::vector<adm::Dnf> dnfs;
            if (!g_file.empty()) {
                const auto g = adm::load_snapshot_function(g_file, arity);
                for (const auto& t : adm::tables_from_g(std::span<const std::uint32_t>(g), arity)) {
                    dnfs.push_back(adm::minimize(t));
                }
            } else if (minimize_cmd->count("--minterms") > 0) {
                dnfs.push_back(adm::minimize(adm::TruthTable::from_minterms(arity, minterms)));
            } else {
                throw adm::ManifestError("--g-file", "give --g-file or --minterms");
            }
            std::cout << adm::text::dnf_listing({}, dnfs, "");
            if (!csv_out.empty()) {
                std::ofstream out(csv_out);
                out << adm::text::dnf_csv({}, dnfs, "");
            }
        } else if (place->parsed()) {
            const auto m = build_manifest(*place, f);
            const auto matrix = adm::load_network(m);
            const auto text =
                adm::format_electrodes(adm::place_electrodes(matrix, count, place_radius, place_seed));
            if (place_out.empty()) {
                std::cout << text;
            } else {
                std::ofstream(place_out) << text;
            }
        } else if (export_net->parsed()) {
            const auto m = build_manifest(*export_net, f);
            adm::save_raw_matrix(adm::load_network(m), raw_out,
                                 packed ? adm::RawEncoding::Packed : adm::RawEncoding::Byte);
        }
    } catch (const adm::ManifestError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const adm::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
