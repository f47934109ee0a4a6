#include "adm/manifest.hpp"

#include <cstdio>
#include <fstream>
#include <set>

namespace adm {

using nlohmann::json;
namespace fs = std::filesystem;

fs::path RunManifest::resolve(const fs::path& p) const {
    if (p.empty() || p.is_absolute() || base_dir.empty()) {
        return p;
    }
    return base_dir / p;
}

namespace {

std::string kind_name(NetworkKind k) {
    switch (k) {
    case NetworkKind::ImageStack: return "image-stack";
    case NetworkKind::Raw: return "raw";
    case NetworkKind::Synthetic: return "synthetic";
    }
    return "synthetic";
}

std::string detector_name(SpikeDetector d) { return d == SpikeDetector::Level ? "level" : "rising-edge"; }

} // namespace

json to_json(const RunManifest& m) {
    json net;
    net["source"] = kind_name(m.network.kind);
    switch (m.network.kind) {
    case NetworkKind::ImageStack:
        net["path"] = m.network.path.generic_string();
        net["threshold"] = {m.network.threshold.r_min, m.network.threshold.g_min, m.network.threshold.b_min};
        break;
    case NetworkKind::Raw: net["path"] = m.network.path.generic_string(); break;
    case NetworkKind::Synthetic: {
        const auto& s = m.network.synthetic;
        net["dims"] = {s.dims.nx, s.dims.ny, s.dims.nz};
        net["segment_count"] = s.segment_count;
        net["bundle_radius"] = s.bundle_radius;
        net["seed"] = s.seed;
        net["placement"] = s.placement == Placement::UniformEndpoints ? "uniform" : "nearest-neighbors";
        break;
    }
    }

    json j;
    j["network"] = net;
    j["automaton"] = {{"r", m.params.r}, {"theta", m.params.theta}, {"delta", m.params.delta}};
    j["recording"] = {{"T", m.rec.steps},
                      {"spike_threshold", m.rec.spike_threshold},
                      {"detector", detector_name(m.rec.detector)},
                      {"electrode_radius", m.electrode_radius ? json(*m.electrode_radius) : json(nullptr)}};
    j["electrodes"] = m.electrodes.generic_string();
    j["output_dir"] = m.output_dir.generic_string();
    j["simulate"] = {{"input", m.simulate.input},
                     {"snapshot_steps", m.simulate.snapshot_steps},
                     {"snapshot_slices", m.simulate.snapshot_slices},
                     {"color", m.simulate.color}};
    j["gates"] = {{"input_x", m.gates.input_x},
                  {"input_y", m.gates.input_y},
                  {"outputs", m.gates.outputs},
                  {"dedupe_per_electrode", m.gates.dedupe_per_electrode}};
    j["sweep"] = {{"axis", m.sweep.axis}, {"values", m.sweep.values}};
    j["machine"] = {{"g_at", m.machine.g_at ? json(*m.machine.g_at) : json(nullptr)},
                    {"per_input_graphs", m.machine.per_input_graphs}};
    return j;
}

namespace {

// Typed accessor that reports the dotted path of any bad field.
class Reader {
public:
    Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) {
            throw ManifestError(path_.empty() ? "<root>" : path_, "expected an object");
        }
    }

    void allow(std::initializer_list<const char*> keys) const {
        const std::set<std::string> ok(keys.begin(), keys.end());
        for (const auto& [k, v] : j_.items()) {
            if (ok.count(k) == 0) {
                throw ManifestError(sub(k), "unknown field");
            }
        }
    }

    bool has(const char* key) const { return j_.contains(key) && !j_.at(key).is_null(); }

    template <class T>
    void get(const char* key, T& out) const {
        if (!has(key)) {
            return;
        }
        try {
            out = j_.at(key).get<T>();
        } catch (const json::exception&) {
            throw ManifestError(sub(key), "wrong type");
        }
    }

    Reader child(const char* key) const { return Reader(j_.at(key), sub(key)); }
    std::string sub(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

private:
    const json& j_;
    std::string path_;
};

} // namespace

RunManifest manifest_from_json(const json& j, const fs::path& base_dir) {
    RunManifest m;
    m.base_dir = base_dir;
    const Reader root(j, "");
    root.allow({"network", "automaton", "recording", "electrodes", "output_dir", "simulate", "gates", "sweep",
                "machine"});

    if (root.has("network")) {
        const Reader net = root.child("network");
        net.allow({"source", "path", "threshold", "dims", "segment_count", "bundle_radius", "seed", "placement"});
        std::string source = "synthetic";
        net.get("source", source);
        if (source == "image-stack") {
            m.network.kind = NetworkKind::ImageStack;
        } else if (source == "raw") {
            m.network.kind = NetworkKind::Raw;
        } else if (source == "synthetic") {
            m.network.kind = NetworkKind::Synthetic;
        } else {
            throw ManifestError("network.source", "expected image-stack, raw or synthetic, got '" + source + "'");
        }
        std::string path;
        net.get("path", path);
        m.network.path = path;
        if (m.network.kind != NetworkKind::Synthetic && path.empty()) {
            throw ManifestError("network.path", "required for source '" + source + "'");
        }
        if (net.has("threshold")) {
            std::vector<int> th;
            net.get("threshold", th);
            if (th.size() != 3) {
                throw ManifestError("network.threshold", "expected [r, g, b]");
            }
            m.network.threshold = {th[0], th[1], th[2]};
        }
        auto& s = m.network.synthetic;
        if (net.has("dims")) {
            std::vector<int> d;
            net.get("dims", d);
            if (d.size() != 3) {
                throw ManifestError("network.dims", "expected [nx, ny, nz]");
            }
            s.dims = {d[0], d[1], d[2]};
        }
        net.get("segment_count", s.segment_count);
        net.get("bundle_radius", s.bundle_radius);
        net.get("seed", s.seed);
        std::string placement = "uniform";
        net.get("placement", placement);
        if (placement == "uniform") {
            s.placement = Placement::UniformEndpoints;
        } else if (placement == "nearest-neighbors") {
            s.placement = Placement::NearestNeighbors;
        } else {
            throw ManifestError("network.placement", "expected uniform or nearest-neighbors");
        }
    }

    if (root.has("automaton")) {
        const Reader a = root.child("automaton");
        a.allow({"r", "theta", "delta"});
        a.get("r", m.params.r);
        a.get("theta", m.params.theta);
        a.get("delta", m.params.delta);
    }
    try {
        m.params.validate();
    } catch (const ParameterError& e) {
        throw ManifestError("automaton", e.what());
    }

    if (root.has("recording")) {
        const Reader r = root.child("recording");
        r.allow({"T", "spike_threshold", "detector", "electrode_radius"});
        r.get("T", m.rec.steps);
        r.get("spike_threshold", m.rec.spike_threshold);
        std::string detector = "level";
        r.get("detector", detector);
        if (detector == "level") {
            m.rec.detector = SpikeDetector::Level;
        } else if (detector == "rising-edge") {
            m.rec.detector = SpikeDetector::RisingEdge;
        } else {
            throw ManifestError("recording.detector", "expected level or rising-edge");
        }
        if (r.has("electrode_radius")) {
            int radius = 0;
            r.get("electrode_radius", radius);
            if (radius < 1) {
                throw ManifestError("recording.electrode_radius", "must be >= 1");
            }
            m.electrode_radius = radius;
        }
    }
    if (m.rec.steps < 1) {
        throw ManifestError("recording.T", "must be >= 1");
    }
    if (m.rec.spike_threshold < 1) {
        throw ManifestError("recording.spike_threshold", "must be >= 1");
    }

    std::string electrodes;
    root.get("electrodes", electrodes);
    m.electrodes = electrodes;
    std::string out;
    root.get("output_dir", out);
    if (!out.empty()) {
        m.output_dir = out;
    }

    if (root.has("simulate")) {
        const Reader s = root.child("simulate");
        s.allow({"input", "snapshot_steps", "snapshot_slices", "color"});
        s.get("input", m.simulate.input);
        s.get("snapshot_steps", m.simulate.snapshot_steps);
        s.get("snapshot_slices", m.simulate.snapshot_slices);
        s.get("color", m.simulate.color);
        for (char c : m.simulate.input) {
            if (c != '0' && c != '1') {
                throw ManifestError("simulate.input", "must be a string of 0/1");
            }
        }
        for (int t : m.simulate.snapshot_steps) {
            if (t < 0) {
                throw ManifestError("simulate.snapshot_steps", "steps must be >= 0");
            }
        }
    }
    if (root.has("gates")) {
        const Reader g = root.child("gates");
        g.allow({"input_x", "input_y", "outputs", "dedupe_per_electrode"});
        g.get("input_x", m.gates.input_x);
        g.get("input_y", m.gates.input_y);
        g.get("outputs", m.gates.outputs);
        g.get("dedupe_per_electrode", m.gates.dedupe_per_electrode);
    }
    if (root.has("sweep")) {
        const Reader s = root.child("sweep");
        s.allow({"axis", "values"});
        s.get("axis", m.sweep.axis);
        s.get("values", m.sweep.values);
        if (m.sweep.axis != "theta" && m.sweep.axis != "delta") {
            throw ManifestError("sweep.axis", "expected theta or delta");
        }
    }
    if (root.has("machine")) {
        const Reader mc = root.child("machine");
        mc.allow({"g_at", "per_input_graphs"});
        if (mc.has("g_at")) {
            int g = 0;
            mc.get("g_at", g);
            m.machine.g_at = g;
        }
        mc.get("per_input_graphs", m.machine.per_input_graphs);
    }
    return m;
}

RunManifest load_manifest(const fs::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open manifest " + path.string());
    }
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("manifest is not valid JSON: ") + e.what(), e.byte);
    }
    return manifest_from_json(j, path.parent_path());
}

std::string manifest_hash(const RunManifest& m) {
    json j = to_json(m);
    j.erase("output_dir");
    const std::string text = j.dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace adm
