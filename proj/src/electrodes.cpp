#include "adm/electrodes.hpp"

#include "adm/errors.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

namespace adm {

std::vector<Electrode> parse_electrodes(std::string_view text) {
    std::vector<Electrode> out;
    std::istringstream in{std::string(text)};
    std::string line;
    int radius = -1;
    std::size_t offset = 0;
    while (std::getline(in, line)) {
        const std::size_t line_offset = offset;
        offset += line.size() + 1;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream fields(line);
        std::string first;
        if (!(fields >> first)) {
            continue;
        }
        if (first == "RADIUS") {
            if (!(fields >> radius) || radius < 1) {
                throw FormatError("RADIUS must be a positive integer", line_offset);
            }
            continue;
        }
        Electrode e;
        try {
            std::size_t used = 0;
            e.id = std::stoi(first, &used);
            if (used != first.size()) {
                throw FormatError("bad electrode id '" + first + "'", line_offset);
            }
        } catch (const std::logic_error&) {
            throw FormatError("bad electrode id '" + first + "'", line_offset);
        }
        if (!(fields >> e.pos.i >> e.pos.j >> e.pos.z)) {
            throw FormatError("electrode line needs '<id> <i> <j> <z>'", line_offset);
        }
        std::string extra;
        if (fields >> extra) {
            throw FormatError("unexpected token '" + extra + "' on electrode line", line_offset);
        }
        out.push_back(e);
    }
    if (radius < 0) {
        throw FormatError("missing RADIUS header", 0);
    }
    if (out.empty()) {
        throw EmptyInputError("electrode config lists no electrodes");
    }
    for (auto& e : out) {
        e.radius = radius;
    }
    return out;
}

std::vector<Electrode> load_electrodes(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open electrode file " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_electrodes(buf.str());
}

std::string format_electrodes(std::span<const Electrode> electrodes) {
    std::ostringstream out;
    out << "RADIUS " << (electrodes.empty() ? 4 : electrodes.front().radius) << '\n';
    for (const auto& e : electrodes) {
        out << e.id << ' ' << e.pos.i << ' ' << e.pos.j << ' ' << e.pos.z << '\n';
    }
    return out.str();
}

void validate_electrodes(const Dims& dims, std::span<const Electrode> electrodes) {
    for (const auto& e : electrodes) {
        const auto& p = e.pos;
        if (p.i < 0 || p.j < 0 || p.z < 0 || p.i >= dims.nx || p.j >= dims.ny || p.z >= dims.nz) {
            throw CoordinateError("electrode " + std::to_string(e.id) + " at (" + std::to_string(p.i) + "," +
                                  std::to_string(p.j) + "," + std::to_string(p.z) + ") lies outside the " +
                                  std::to_string(dims.nx) + "x" + std::to_string(dims.ny) + "x" +
                                  std::to_string(dims.nz) + " grid");
        }
        if (e.radius < 1) {
            throw ParameterError("electrode " + std::to_string(e.id) + " has radius < 1");
        }
    }
}

std::vector<Electrode> place_electrodes(const ConductiveMatrix& matrix, int count, int radius, std::uint64_t seed) {
    if (count < 1) {
        throw ParameterError("electrode count must be >= 1");
    }
    std::vector<std::size_t> cells;
    const auto occ = matrix.occupancy();
    for (std::size_t p = 0; p < occ.size(); ++p) {
        if (occ[p] != 0) {
            cells.push_back(p);
        }
    }
    if (cells.size() < static_cast<std::size_t>(count)) {
        throw ParameterError("not enough conductive voxels to place " + std::to_string(count) + " electrodes");
    }
    std::mt19937_64 rng(seed);
    std::vector<Coord> coords;
    coords.reserve(cells.size());
    for (auto p : cells) {
        coords.push_back(matrix.coord(p));
    }

    std::vector<Electrode> out;
    std::vector<long> nearest(coords.size(), std::numeric_limits<long>::max());
    std::size_t pick = static_cast<std::size_t>(rng() % coords.size());
    for (int n = 0; n < count; ++n) {
        out.push_back(Electrode{n, coords[pick], radius});
        std::size_t best = 0;
        long best_d = -1;
        for (std::size_t c = 0; c < coords.size(); ++c) {
            nearest[c] = std::min(nearest[c], squared_distance(coords[c], coords[pick]));
            if (nearest[c] > best_d) {
                best_d = nearest[c];
                best = c;
            }
        }
        pick = best;
    }
    return out;
}

// ---------------------------------------------------------------------------

BitString::BitString(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
    for (auto& b : bits_) {
        if (b > 1) {
            throw ParameterError("bit values must be 0 or 1");
        }
    }
}

BitString BitString::from_value(std::uint32_t value, std::size_t length) {
    if (length > 32 || (length < 32 && (value >> length) != 0)) {
        throw ParameterError("value " + std::to_string(value) + " does not fit in " + std::to_string(length) + " bits");
    }
    std::vector<std::uint8_t> bits(length);
    for (std::size_t i = 0; i < length; ++i) {
        bits[i] = static_cast<std::uint8_t>((value >> (length - 1 - i)) & 1u);
    }
    return BitString(std::move(bits));
}

BitString BitString::from_text(std::string_view text) {
    std::vector<std::uint8_t> bits;
    for (const char c : text) {
        if (c != '0' && c != '1') {
            throw ParameterError("bit string may contain only '0' and '1': '" + std::string(text) + "'");
        }
        bits.push_back(c == '1' ? 1 : 0);
    }
    return BitString(std::move(bits));
}

std::uint32_t BitString::value() const noexcept { return encode_state(bits_); }

std::string BitString::text() const {
    std::string s;
    for (auto b : bits_) {
        s.push_back(b != 0 ? '1' : '0');
    }
    return s;
}

std::uint32_t encode_state(std::span<const std::uint8_t> spikes) {
    std::uint32_t v = 0;
    for (auto s : spikes) {
        v = (v << 1) | (s != 0 ? 1u : 0u);
    }
    return v;
}

void RecordingParams::validate() const {
    if (spike_threshold < 1) {
        throw ParameterError("spike_threshold must be >= 1");
    }
    if (steps < 1) {
        throw ParameterError("run length T must be >= 1");
    }
}

// ---------------------------------------------------------------------------

bool is_spike(const RecordingParams& rec, std::uint32_t previous, std::uint32_t current) noexcept {
    const auto threshold = static_cast<std::uint32_t>(rec.spike_threshold);
    if (current < threshold) {
        return false;
    }
    return rec.detector == SpikeDetector::Level || previous < threshold;
}

std::size_t potential(const AutomatonField& field, const Electrode& e) {
    const auto& d = field.dims();
    if (e.pos.i < 0 || e.pos.j < 0 || e.pos.z < 0 || e.pos.i >= d.nx || e.pos.j >= d.ny || e.pos.z >= d.nz) {
        throw CoordinateError("electrode " + std::to_string(e.id) + " lies outside the grid");
    }
    return field.count_excited_within(e.pos, e.radius);
}

void stimulate(AutomatonField& field, std::span<const Electrode> electrodes, const BitString& bits) {
    if (bits.size() != electrodes.size()) {
        throw DimensionError("input string has " + std::to_string(bits.size()) + " bits for " +
                             std::to_string(electrodes.size()) + " electrodes");
    }
    for (std::size_t i = 0; i < electrodes.size(); ++i) {
        if (bits[i]) {
            field.excite_ball(electrodes[i].pos, electrodes[i].radius);
        }
    }
}

TrialResult run_trial(const ConductiveMatrix& matrix, const AutomatonParams& params, const RecordingParams& rec,
                      std::span<const Electrode> stimulus, const BitString& bits,
                      std::span<const Electrode> recorders, unsigned threads) {
    rec.validate();
    validate_electrodes(matrix.dims(), stimulus);
    validate_electrodes(matrix.dims(), recorders);

    AutomatonField field(matrix, params);
    field.set_threads(threads);
    stimulate(field, stimulus, bits);

    const auto steps = static_cast<std::size_t>(rec.steps);
    TrialResult out;
    out.potentials.assign(recorders.size(), std::vector<std::uint32_t>(steps, 0));
    out.spikes.assign(recorders.size(), std::vector<std::uint8_t>(steps, 0));
    const bool encode = recorders.size() <= 32;
    if (encode) {
        out.states.assign(steps, 0);
    }

    std::vector<std::uint8_t> column(recorders.size());
    for (std::size_t t = 0; t < steps; ++t) {
        field.step();
        for (std::size_t e = 0; e < recorders.size(); ++e) {
            const auto p = static_cast<std::uint32_t>(potential(field, recorders[e]));
            out.potentials[e][t] = p;
            out.spikes[e][t] = is_spike(rec, t == 0 ? 0 : out.potentials[e][t - 1], p) ? 1 : 0;
            column[e] = out.spikes[e][t];
        }
        if (encode) {
            out.states[t] = encode_state(column);
        }
    }
    return out;
}

TrialResult run_trial(const ConductiveMatrix& matrix, const AutomatonParams& params, const RecordingParams& rec,
                      std::span<const Electrode> electrodes, const BitString& bits, unsigned threads) {
    return run_trial(matrix, params, rec, electrodes, bits, electrodes, threads);
}

} // namespace adm
