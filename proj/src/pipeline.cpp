#include "adm/pipeline.hpp"

#include "adm/automaton.hpp"
#include "adm/electrodes.hpp"
#include "adm/export.hpp"
#include "adm/gates.hpp"
#include "adm/image_io.hpp"
#include "adm/logic.hpp"
#include "adm/machine.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace adm {

namespace fs = std::filesystem;

ConductiveMatrix load_network(const RunManifest& m) {
    switch (m.network.kind) {
    case NetworkKind::ImageStack: {
        const auto slices = load_image_stack(m.resolve(m.network.path));
        return threshold_image_stack(slices, m.network.threshold);
    }
    case NetworkKind::Raw: return load_raw_matrix(m.resolve(m.network.path));
    case NetworkKind::Synthetic: return generate_synthetic(m.network.synthetic);
    }
    throw ManifestError("network.source", "unsupported");
}

std::vector<Electrode> load_manifest_electrodes(const RunManifest& m, const Dims& dims) {
    if (m.electrodes.empty()) {
        throw ManifestError("electrodes", "an electrode file is required");
    }
    const fs::path path = m.resolve(m.electrodes);
    if (!fs::exists(path)) {
        throw ManifestError("electrodes", "electrode file not found: " + path.string());
    }
    auto electrodes = load_electrodes(path);
    if (m.electrode_radius) {
        for (auto& e : electrodes) {
            e.radius = *m.electrode_radius;
        }
    }
    validate_electrodes(dims, electrodes);
    return electrodes;
}

namespace {

class Emitter {
public:
    explicit Emitter(const RunManifest& m) : dir_(m.output_dir), hash_("manifest-hash: " + manifest_hash(m)) {
        std::error_code ec;
        fs::create_directories(dir_, ec);
        if (ec || !fs::is_directory(dir_)) {
            throw IoError("cannot create output directory " + dir_.string());
        }
        write("manifest.json", to_json(m).dump(2) + "\n");
    }

    const std::string& header() const { return hash_; }
    fs::path path(const std::string& name) const { return dir_ / name; }

    void write(const std::string& name, const std::string& content) {
        const fs::path p = dir_ / name;
        std::ofstream out(p, std::ios::binary);
        if (!out) {
            throw IoError("cannot write " + p.string());
        }
        out << content;
        written_.push_back(p);
    }
    void note(const fs::path& p) { written_.push_back(p); }
    Written done() { return std::move(written_); }

private:
    fs::path dir_;
    std::string hash_;
    Written written_;
};

const Electrode& find_electrode(const std::vector<Electrode>& all, int id, const char* field) {
    const auto it = std::find_if(all.begin(), all.end(), [id](const Electrode& e) { return e.id == id; });
    if (it == all.end()) {
        throw ManifestError(field, "no electrode with id " + std::to_string(id));
    }
    return *it;
}

struct GateSetup {
    Electrode in_x;
    Electrode in_y;
    std::vector<Electrode> outputs;
};

GateSetup gate_setup(const RunManifest& m, const std::vector<Electrode>& all) {
    GateSetup s{find_electrode(all, m.gates.input_x, "gates.input_x"),
                find_electrode(all, m.gates.input_y, "gates.input_y"),
                {}};
    if (m.gates.outputs.empty()) {
        for (const auto& e : all) {
            if (e.id != s.in_x.id && e.id != s.in_y.id) {
                s.outputs.push_back(e);
            }
        }
    } else {
        for (int id : m.gates.outputs) {
            s.outputs.push_back(find_electrode(all, id, "gates.outputs"));
        }
    }
    return s;
}

std::string zero_padded(long v, int width) {
    std::string s = std::to_string(v);
    return std::string(static_cast<std::size_t>(std::max(0, width - static_cast<int>(s.size()))), '0') + s;
}

} // namespace

Written cmd_simulate(const RunManifest& m, unsigned threads) {
    const auto matrix = load_network(m);
    const auto electrodes = load_manifest_electrodes(m, matrix.dims());
    Emitter out(m);

    BitString bits = m.simulate.input.empty() ? BitString::from_value(0, electrodes.size())
                                              : BitString::from_text(m.simulate.input);
    if (bits.size() != electrodes.size()) {
        throw ManifestError("simulate.input", "has " + std::to_string(bits.size()) + " bits for " +
                                                  std::to_string(electrodes.size()) + " electrodes");
    }
    std::vector<int> slices = m.simulate.snapshot_slices;
    if (slices.empty()) {
        slices.push_back(matrix.dims().nz / 2);
    }
    for (int z : slices) {
        if (z < 0 || z >= matrix.dims().nz) {
            throw ManifestError("simulate.snapshot_slices", "slice " + std::to_string(z) + " outside the grid");
        }
    }
    std::vector<int> snaps = m.simulate.snapshot_steps;
    std::sort(snaps.begin(), snaps.end());
    snaps.erase(std::unique(snaps.begin(), snaps.end()), snaps.end());

    AutomatonField field(matrix, m.params);
    field.set_threads(threads);
    stimulate(field, electrodes, bits);

    const auto steps = static_cast<std::size_t>(std::max(m.rec.steps, snaps.empty() ? 0 : snaps.back()));
    std::vector<std::vector<std::uint32_t>> potentials(electrodes.size(), std::vector<std::uint32_t>(steps, 0));
    std::vector<std::vector<std::uint8_t>> spikes(electrodes.size(), std::vector<std::uint8_t>(steps, 0));
    std::ostringstream activity;
    activity << "# " << out.header() << "\nt,excited,refractory\n0," << field.excited_count() << ','
             << field.refractory_count() << '\n';

    auto snap = snaps.begin();
    const auto emit_snapshots = [&] {
        while (snap != snaps.end() && static_cast<std::uint64_t>(*snap) == field.time()) {
            for (int z : slices) {
                const auto raster = field.snapshot_slice(z);
                const std::string stem = "snapshot_t" + zero_padded(*snap, 6) + "_z" + zero_padded(z, 3);
                write_pgm(out.path(stem + ".pgm"), raster.width, raster.height, raster.pixels, out.header());
                out.note(out.path(stem + ".pgm"));
                if (m.simulate.color) {
                    write_ppm(out.path(stem + ".ppm"), raster.width, raster.height, colorize(raster), out.header());
                    out.note(out.path(stem + ".ppm"));
                }
            }
            ++snap;
        }
    };
    emit_snapshots();
    for (std::size_t t = 0; t < steps; ++t) {
        field.step();
        for (std::size_t e = 0; e < electrodes.size(); ++e) {
            const auto p = static_cast<std::uint32_t>(potential(field, electrodes[e]));
            potentials[e][t] = p;
            spikes[e][t] = is_spike(m.rec, t == 0 ? 0 : potentials[e][t - 1], p) ? 1 : 0;
        }
        activity << field.time() << ',' << field.excited_count() << ',' << field.refractory_count() << '\n';
        emit_snapshots();
    }

    std::vector<std::pair<long, const std::vector<std::uint32_t>*>> prow;
    std::vector<std::pair<long, const std::vector<std::uint8_t>*>> srow;
    for (std::size_t e = 0; e < electrodes.size(); ++e) {
        prow.emplace_back(electrodes[e].id, &potentials[e]);
        srow.emplace_back(electrodes[e].id, &spikes[e]);
    }
    out.write("potentials.csv", text::raster_csv(prow, "electrode", out.header()));
    out.write("spikes.csv", text::raster_csv(srow, "electrode", out.header()));
    out.write("activity.csv", activity.str());
    return out.done();
}

Written cmd_mine_gates(const RunManifest& m, unsigned threads) {
    const auto matrix = load_network(m);
    const auto electrodes = load_manifest_electrodes(m, matrix.dims());
    const auto setup = gate_setup(m, electrodes);
    Emitter out(m);

    const MiningOptions options{m.gates.dedupe_per_electrode, threads};
    const auto mined = mine(matrix, m.params, m.rec, setup.in_x, setup.in_y, setup.outputs, options);
    out.write("gate_census.csv", text::census_csv(setup.outputs, mined.census, out.header()));
    out.write("gate_slots.csv", text::gate_slots_csv(setup.outputs, mined, out.header()));
    const std::vector<SweepRow> row{{m.params.theta, mined.census.totals(), mined.census.nu()}};
    out.write("gate_frequency.csv", text::sweep_csv(row, out.header()));
    return out.done();
}

Written cmd_sweep(const RunManifest& m, unsigned threads) {
    const auto matrix = load_network(m);
    const auto electrodes = load_manifest_electrodes(m, matrix.dims());
    const auto setup = gate_setup(m, electrodes);
    Emitter out(m);

    const MiningOptions options{m.gates.dedupe_per_electrode, threads};
    const bool theta_axis = m.sweep.axis == "theta";
    std::vector<int> values = m.sweep.values;
    if (values.empty()) {
        values = theta_axis ? default_theta_grid() : default_delta_grid();
    }
    const auto rows = theta_axis
                          ? sweep_theta(matrix, values, m.params, m.rec, setup.in_x, setup.in_y, setup.outputs, options)
                          : sweep_delta(matrix, values, m.params, m.rec, setup.in_x, setup.in_y, setup.outputs, options);
    out.write("sweep_" + m.sweep.axis + ".csv", text::sweep_csv(rows, out.header()));
    return out.done();
}

Written cmd_machine(const RunManifest& m, unsigned threads) {
    const auto matrix = load_network(m);
    MachineConfig cfg;
    cfg.electrodes = load_manifest_electrodes(m, matrix.dims());
    cfg.params = m.params;
    cfg.rec = m.rec;
    cfg.threads = threads;
    cfg.validate(matrix.dims());
    Emitter out(m);
    const std::string& h = out.header();

    const auto run = run_machine(cfg, matrix);
    const auto k = cfg.k();
    // the all-zero input is implied, not simulated
    out.write("sequences.csv", text::sequences_csv(std::span(run.sequences).subspan(1), h));
    for (std::size_t e = 0; e < k; ++e) {
        std::vector<std::pair<long, const std::vector<std::uint8_t>*>> srow;
        std::vector<std::pair<long, const std::vector<std::uint32_t>*>> prow;
        for (std::size_t v = 1; v < run.trials.size(); ++v) {
            srow.emplace_back(static_cast<long>(v), &run.trials[v].spikes[e]);
            prow.emplace_back(static_cast<long>(v), &run.trials[v].potentials[e]);
        }
        const std::string id = std::to_string(cfg.electrodes[e].id);
        out.write("spikes_e" + id + ".csv", text::raster_csv(srow, "input", h));
        out.write("potentials_e" + id + ".csv", text::raster_csv(prow, "input", h));
    }

    const auto graph = global_graph(run.sequences, k);
    const auto pruned = prune_max(graph);
    out.write("global_graph.dot", text::global_dot(graph, h));
    out.write("pruned_graph.dot", text::pruned_dot(graph, pruned, h));
    out.write("pruned_nodes.csv", text::pruned_nodes_csv(pruned, h));
    out.write("pruned_summary.txt", text::pruned_summary(pruned, h));
    if (m.machine.per_input_graphs) {
        for (const auto& s : run.sequences) {
            if (s.input == 0) {
                continue;
            }
            out.write("graph_input_" + std::to_string(s.input) + ".dot",
                      text::input_dot(s.input, per_input_graph(s), h));
        }
    }

    const auto rich = richness(run.sequences, k);
    out.write("richness.csv", text::richness_csv(rich, h));
    out.write("nodes_per_input.csv", text::nodes_per_input_csv(rich, h));
    out.write("inputs_per_node.csv", text::inputs_per_node_csv(rich, h));

    if (m.machine.g_at) {
        const auto moment = static_cast<std::size_t>(std::max(0, *m.machine.g_at));
        std::vector<std::uint32_t> g;
        try {
            g = snapshot_function(run.sequences, rich, moment);
        } catch (const DomainError& e) {
            throw ManifestError("machine.g_at", e.what());
        }
        const std::string tag = "_m" + std::to_string(moment);
        out.write("g" + tag + ".csv", text::snapshot_function_csv(g, h));
        const auto tables = tables_from_g(std::span<const std::uint32_t>(g), static_cast<unsigned>(k));
        std::vector<Dnf> dnfs;
        for (const auto& t : tables) {
            dnfs.push_back(minimize(t));
        }
        out.write("dnf" + tag + ".txt", text::dnf_listing(cfg.electrodes, dnfs, h));
        out.write("dnf" + tag + ".csv", text::dnf_csv(cfg.electrodes, dnfs, h));
    }
    return out.done();
}

std::vector<std::uint32_t> load_snapshot_function(const fs::path& path, unsigned k) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::map<std::uint32_t, std::uint32_t> g;
    std::string line;
    std::size_t offset = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        const std::size_t at = offset;
        offset += line.size() + 1;
        if (line.empty() || line[0] == '#') {
            continue;
        }
        if (!header_seen && line.rfind("input", 0) == 0) {
            header_seen = true;
            continue;
        }
        std::istringstream row(line);
        unsigned long input = 0;
        unsigned long state = 0;
        char comma = 0;
        if (!(row >> input >> comma >> state) || comma != ',') {
            throw FormatError("expected 'input,state' row", at);
        }
        g[static_cast<std::uint32_t>(input)] = static_cast<std::uint32_t>(state);
    }
    const auto tables = tables_from_g(g, k); // validates totality
    (void)tables;
    std::vector<std::uint32_t> dense(std::size_t{1} << k);
    for (const auto& [v, s] : g) {
        dense[v] = s;
    }
    return dense;
}

} // namespace adm
