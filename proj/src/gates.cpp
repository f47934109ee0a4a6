#include "adm/gates.hpp"

#include "adm/errors.hpp"

#include <algorithm>
#include <numeric>

namespace adm {

GateClass classify(const GateQuad& q) noexcept {
    const std::uint8_t code = q.code();
    GateType type = GateType::Other;
    switch (code) {
    case 0b0000: type = GateType::Zero; break;
    case 0b0111: type = GateType::Or; break;
    case 0b0001: type = GateType::And; break;
    case 0b0110: type = GateType::Xor; break;
    case 0b0100: type = GateType::NotAnd; break;
    case 0b0010: type = GateType::AndNot; break;
    case 0b0011: type = GateType::SelectX; break;
    case 0b0101: type = GateType::SelectY; break;
    default: break;
    }
    return GateClass{type, code};
}

bool is_counted(GateType t) noexcept {
    return std::find(kCountedGates.begin(), kCountedGates.end(), t) != kCountedGates.end();
}

std::string_view gate_label(GateType t) noexcept {
    switch (t) {
    case GateType::Zero: return "ZERO";
    case GateType::Or: return "OR";
    case GateType::And: return "AND";
    case GateType::Xor: return "XOR";
    case GateType::NotAnd: return "NOTAND";
    case GateType::AndNot: return "ANDNOT";
    case GateType::SelectX: return "SELX";
    case GateType::SelectY: return "SELY";
    case GateType::Other: return "OTHER";
    }
    return "OTHER";
}

std::array<std::uint64_t, kCountedGates.size()> GateCensus::totals() const {
    std::array<std::uint64_t, kCountedGates.size()> sum{};
    for (const auto& row : counts) {
        for (std::size_t g = 0; g < row.size(); ++g) {
            sum[g] += row[g];
        }
    }
    return sum;
}

std::uint64_t GateCensus::total() const {
    const auto t = totals();
    return std::accumulate(t.begin(), t.end(), std::uint64_t{0});
}

double GateCensus::nu() const {
    if (counts.empty()) {
        return 0.0;
    }
    return static_cast<double>(total()) / static_cast<double>(counts.size());
}

namespace {

std::size_t counted_column(GateType t) {
    return static_cast<std::size_t>(std::find(kCountedGates.begin(), kCountedGates.end(), t) - kCountedGates.begin());
}

} // namespace

GateCensus census_from_slots(const std::vector<std::vector<GateClass>>& slots, bool dedupe_per_electrode) {
    GateCensus census;
    census.counts.resize(slots.size());
    for (std::size_t e = 0; e < slots.size(); ++e) {
        auto& row = census.counts[e];
        row.fill(0);
        for (const auto& g : slots[e]) {
            if (!is_counted(g.type)) {
                continue;
            }
            auto& c = row[counted_column(g.type)];
            if (!dedupe_per_electrode || c == 0) {
                ++c;
            }
        }
    }
    return census;
}

GateMining mine(const ConductiveMatrix& matrix, const AutomatonParams& params, const RecordingParams& rec,
                const Electrode& in_x, const Electrode& in_y, std::span<const Electrode> outputs,
                const MiningOptions& options) {
    if (outputs.empty()) {
        throw EmptyInputError("gate mining needs at least one output electrode");
    }
    for (const auto& o : outputs) {
        if (o.id == in_x.id || o.id == in_y.id) {
            throw ParameterError("electrode " + std::to_string(o.id) + " is both an input and an output");
        }
    }
    if (in_x.id == in_y.id) {
        throw ParameterError("input electrodes x and y must differ");
    }

    const std::array<Electrode, 2> inputs = {in_x, in_y};
    std::array<TrialResult, 4> trials;
    for (std::uint32_t xy = 0; xy < 4; ++xy) {
        trials[xy] = run_trial(matrix, params, rec, inputs, BitString::from_value(xy, 2), outputs, options.threads);
    }

    GateMining out;
    const auto steps = static_cast<std::size_t>(rec.steps);
    out.slots.assign(outputs.size(), std::vector<GateClass>(steps));
    for (std::size_t e = 0; e < outputs.size(); ++e) {
        for (std::size_t t = 0; t < steps; ++t) {
            const GateQuad q{trials[0].spikes[e][t] != 0, trials[1].spikes[e][t] != 0, trials[2].spikes[e][t] != 0,
                             trials[3].spikes[e][t] != 0};
            out.slots[e][t] = classify(q);
        }
    }
    out.census = census_from_slots(out.slots, options.dedupe_per_electrode);
    return out;
}

namespace {

template <class Vary>
std::vector<SweepRow> sweep(const ConductiveMatrix& matrix, std::span<const int> values, const AutomatonParams& base,
                            const RecordingParams& rec, const Electrode& in_x, const Electrode& in_y,
                            std::span<const Electrode> outputs, const MiningOptions& options, Vary vary) {
    if (values.empty()) {
        throw EmptyInputError("sweep grid is empty");
    }
    std::vector<SweepRow> rows;
    rows.reserve(values.size());
    for (const int v : values) {
        AutomatonParams p = base;
        vary(p, v);
        const auto m = mine(matrix, p, rec, in_x, in_y, outputs, options);
        rows.push_back(SweepRow{v, m.census.totals(), m.census.nu()});
    }
    return rows;
}

} // namespace

std::vector<SweepRow> sweep_theta(const ConductiveMatrix& matrix, std::span<const int> thetas,
                                  const AutomatonParams& base, const RecordingParams& rec, const Electrode& in_x,
                                  const Electrode& in_y, std::span<const Electrode> outputs,
                                  const MiningOptions& options) {
    return sweep(matrix, thetas, base, rec, in_x, in_y, outputs, options,
                 [](AutomatonParams& p, int v) { p.theta = v; });
}

std::vector<SweepRow> sweep_delta(const ConductiveMatrix& matrix, std::span<const int> deltas,
                                  const AutomatonParams& base, const RecordingParams& rec, const Electrode& in_x,
                                  const Electrode& in_y, std::span<const Electrode> outputs,
                                  const MiningOptions& options) {
    return sweep(matrix, deltas, base, rec, in_x, in_y, outputs, options,
                 [](AutomatonParams& p, int v) { p.delta = v; });
}

std::vector<int> default_theta_grid() { return {4, 5, 6, 7, 8, 9, 10, 11, 12}; }

std::vector<int> default_delta_grid() { return {10, 15, 17, 18, 19, 20, 21, 22, 23, 24, 30}; }

} // namespace adm
