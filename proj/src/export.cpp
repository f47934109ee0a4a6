#include "adm/export.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace adm::text {

namespace {

void comment(std::ostringstream& out, const char* prefix, const std::string& header) {
    if (!header.empty()) {
        out << prefix << ' ' << header << '\n';
    }
}

} // namespace

std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::string global_dot(const TransitionGraph& g, const std::string& header) {
    std::ostringstream out;
    comment(out, "//", header);
    out << "digraph global {\n";
    std::vector<std::uint8_t> used(g.node_count(), 0);
    for (const auto& e : g.edges()) {
        used[e.from] = used[e.to] = 1;
    }
    for (std::uint32_t n = 0; n < g.node_count(); ++n) {
        if (used[n] != 0) {
            out << "  " << n << " [label=\"" << n << "\"];\n";
        }
    }
    for (const auto& e : g.edges()) {
        out << "  " << e.from << " -> " << e.to << " [weight=" << fixed6(e.weight) << ", count=" << e.count
            << "];\n";
    }
    out << "}\n";
    return out.str();
}

std::string pruned_dot(const TransitionGraph& g, const PrunedGraph& p, const std::string& header) {
    std::ostringstream out;
    comment(out, "//", header);
    out << "digraph pruned {\n";
    std::vector<std::uint8_t> used(p.node_count, 0);
    for (std::uint32_t n = 0; n < p.node_count; ++n) {
        if (p.successor[n]) {
            used[n] = used[*p.successor[n]] = 1;
        }
    }
    for (std::uint32_t n = 0; n < p.node_count; ++n) {
        if (used[n] != 0) {
            out << "  " << n << " [label=\"" << n << "\"];\n";
        }
    }
    for (std::uint32_t n = 0; n < p.node_count; ++n) {
        if (!p.successor[n]) {
            continue;
        }
        double w = 0.0;
        for (const auto& e : g.out_edges(n)) {
            if (e.to == *p.successor[n]) {
                w = e.weight;
            }
        }
        out << "  " << n << " -> " << *p.successor[n] << " [weight=" << fixed6(w) << "];\n";
    }
    out << "}\n";
    return out.str();
}

std::string input_dot(std::uint32_t input, std::span<const Edge> edges, const std::string& header) {
    std::ostringstream out;
    comment(out, "//", header);
    out << "digraph input_" << input << " {\n";
    std::vector<std::uint32_t> nodes;
    for (const auto& [a, b] : edges) {
        nodes.push_back(a);
        nodes.push_back(b);
    }
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    for (auto n : nodes) {
        out << "  " << n << " [label=\"" << n << "\"];\n";
    }
    for (const auto& [a, b] : edges) {
        out << "  " << a << " -> " << b << ";\n";
    }
    out << "}\n";
    return out.str();
}

std::string pruned_nodes_csv(const PrunedGraph& p, const std::string& header) {
    std::ostringstream out;
    comment(out, "#", header);
    out << "node,successor,indegree,fixed_point,garden_of_eden\n";
    for (std::uint32_t n = 0; n < p.node_count; ++n) {
        out << n << ',';
        if (p.successor[n]) {
            out << *p.successor[n];
        }
        out << ',' << p.indegree[n] << ',' << (p.successor[n] == n ? 1 : 0) << ',' << (p.indegree[n] == 0 ? 1 : 0)
            << '\n';
    }
    return out.str();
}

namespace {

template <class Range>
void join(std::ostringstream& out, const Range& r, const char* sep) {
    bool first = true;
    for (const auto& v : r) {
        if (!first) {
            out << sep;
        }
        first = false;
        out << v;
    }
}

} // namespace

std::string pruned_summary(const PrunedGraph& p, const std::string& header) {
    std::ostringstream out;
    comment(out, "#", header);
    out << "fixed_points: ";
    join(out, p.fixed_points, " ");
    out << "\ngarden_of_eden: ";
    join(out, p.garden_of_eden, " ");
    out << "\nindegree:";
    for (std::uint32_t n = 0; n < p.node_count; ++n) {
        if (p.indegree[n] > 0) {
            out << ' ' << n << '=' << p.indegree[n];
        }
    }
    out << "\ncycles:";
    for (const auto& c : p.cycles) {
        out << ' ';
        join(out, c, "->");
    }
    out << '\n';
    return out.str();
}

std::string richness_csv(const Richness& r, const std::string& header) {
    std::ostringstream out;
    comment(out, "#", header);
    out << "t,step,mu,states\n";
    for (const auto& row : r.rows) {
        out << row.moment << ',' << row.step << ',' << row.mu() << ',';
        join(out, row.states, ";");
        out << '\n';
    }
    return out.str();
}

std::string nodes_per_input_csv(const Richness& r, const std::string& header) {
    std::ostringstream out;
    comment(out, "#", header);
    out << "input,nodes\n";
    for (std::size_t i = 0; i < r.nodes_per_input.size(); ++i) {
        out << i << ',' << r.nodes_per_input[i] << '\n';
    }
    return out.str();
}

std::string inputs_per_node_csv(const Richness& r, const std::string& header) {
    std::ostringstream out;
    comment(out, "#", header);
    out << "state,inputs\n";
    for (std::size_t n = 0; n < r.inputs_per_node.size(); ++n) {
        out << n << ',' << r.inputs_per_node[n] << '\n';
    }
    return out.str();
}

std::string snapshot_function_csv(std::span<const std::uint32_t> g, const std::string& header) {
    std::ostringstream out;
    comment(out, "#", header);
    out << "input,state\n";
    for (std::size_t v = 0; v < g.size(); ++v) {
        out << v << ',' << g[v] << '\n';
    }
    return out.str();
}

namespace {

void step_header(std::ostringstream& out, const std::string& key, std::size_t steps) {
    out << key;
    for (std::size_t t = 1; t <= steps; ++t) {
        out << ',' << t;
    }
    out << '\n';
}

} // namespace

std::string sequences_csv(std::span<const StateSequence> seqs, const std::string& header) {
    std::ostringstream out;
    comment(out, "#", header);
    step_header(out, "input", seqs.empty() ? 0 : seqs.front().states.size());
    for (const auto& s : seqs) {
        out << s.input;
        for (auto v : s.states) {
            out << ',' << v;
        }
        out << '\n';
    }
    return out.str();
}

template <class T>
std::string raster_csv(const std::vector<std::pair<long, const std::vector<T>*>>& rows, const std::string& key,
                       const std::string& header) {
    std::ostringstream out;
    comment(out, "#", header);
    step_header(out, key, rows.empty() ? 0 : rows.front().second->size());
    for (const auto& [label, values] : rows) {
        out << label;
        for (const auto v : *values) {
            out << ',' << static_cast<unsigned long>(v);
        }
        out << '\n';
    }
    return out.str();
}

template std::string raster_csv<std::uint8_t>(const std::vector<std::pair<long, const std::vector<std::uint8_t>*>>&,
                                              const std::string&, const std::string&);
template std::string raster_csv<std::uint32_t>(const std::vector<std::pair<long, const std::vector<std::uint32_t>*>>&,
                                               const std::string&, const std::string&);

std::string sweep_csv(std::span<const SweepRow> rows, const std::string& header) {
    std::ostringstream out;
    comment(out, "#", header);
    out << "param";
    for (auto g : kCountedGates) {
        out << ',' << gate_label(g);
    }
    out << ",nu\n";
    for (const auto& row : rows) {
        out << row.param;
        for (auto c : row.counts) {
            out << ',' << c;
        }
        out << ',' << fixed6(row.nu) << '\n';
    }
    return out.str();
}

std::string census_csv(std::span<const Electrode> outputs, const GateCensus& census, const std::string& header) {
    std::ostringstream out;
    comment(out, "#", header);
    out << "electrode";
    for (auto g : kCountedGates) {
        out << ',' << gate_label(g);
    }
    out << ",total\n";
    for (std::size_t e = 0; e < census.counts.size(); ++e) {
        out << outputs[e].id;
        std::uint64_t total = 0;
        for (auto c : census.counts[e]) {
            out << ',' << c;
            total += c;
        }
        out << ',' << total << '\n';
    }
    out << "all";
    for (auto c : census.totals()) {
        out << ',' << c;
    }
    out << ',' << census.total() << '\n';
    return out.str();
}

std::string gate_slots_csv(std::span<const Electrode> outputs, const GateMining& m, const std::string& header) {
    std::ostringstream out;
    comment(out, "#", header);
    out << "electrode,t,code,type\n";
    for (std::size_t e = 0; e < m.slots.size(); ++e) {
        for (std::size_t t = 0; t < m.slots[e].size(); ++t) {
            const auto& g = m.slots[e][t];
            if (g.type == GateType::Zero) {
                continue;
            }
            out << outputs[e].id << ',' << (t + 1) << ',' << static_cast<unsigned>(g.code) << ','
                << gate_label(g.type) << '\n';
        }
    }
    return out.str();
}

std::string dnf_listing(std::span<const Electrode> electrodes, std::span<const Dnf> dnfs, const std::string& header) {
    std::ostringstream out;
    comment(out, "#", header);
    for (std::size_t e = 0; e < dnfs.size(); ++e) {
        out << 'e' << (e < electrodes.size() ? electrodes[e].id : static_cast<int>(e)) << ": " << format(dnfs[e])
            << '\n';
    }
    return out.str();
}

std::string dnf_csv(std::span<const Electrode> electrodes, std::span<const Dnf> dnfs, const std::string& header) {
    std::ostringstream out;
    comment(out, "#", header);
    out << "electrode,dnf\n";
    for (std::size_t e = 0; e < dnfs.size(); ++e) {
        out << (e < electrodes.size() ? electrodes[e].id : static_cast<int>(e)) << ',' << format(dnfs[e]) << '\n';
    }
    return out.str();
}

} // namespace adm::text
