#include "adm/machine.hpp"

#include "adm/errors.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <thread>

namespace adm {

void MachineConfig::validate(const Dims& dims) const {
    if (electrodes.empty()) {
        throw EmptyInputError("machine needs at least one electrode");
    }
    if (electrodes.size() > 16) {
        throw ParameterError("machine supports at most 16 electrodes, got " + std::to_string(electrodes.size()));
    }
    params.validate();
    rec.validate();
    validate_electrodes(dims, electrodes);
}

MachineRun run_machine(const MachineConfig& cfg, const ConductiveMatrix& matrix) {
    cfg.validate(matrix.dims());
    const std::size_t k = cfg.k();
    const std::uint32_t inputs = 1u << k;
    const auto steps = static_cast<std::size_t>(cfg.rec.steps);

    MachineRun run;
    run.trials.resize(inputs);
    run.trials[0].potentials.assign(k, std::vector<std::uint32_t>(steps, 0));
    run.trials[0].spikes.assign(k, std::vector<std::uint8_t>(steps, 0));
    run.trials[0].states.assign(steps, 0);

    // Inputs are independent; each worker owns its field and writes only its own slots.
    const unsigned workers = std::max(1u, std::min<unsigned>(cfg.threads, inputs - 1));
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::uint32_t v = 1 + w; v < inputs; v += workers) {
                    run.trials[v] = run_trial(matrix, cfg.params, cfg.rec, cfg.electrodes,
                                              BitString::from_value(v, k), 1);
                }
            });
        }
    }

    run.sequences.resize(inputs);
    for (std::uint32_t v = 0; v < inputs; ++v) {
        run.sequences[v].input = v;
        run.sequences[v].states = run.trials[v].states;
    }
    return run;
}

std::vector<StateSequence> run_all_inputs(const MachineConfig& cfg, const ConductiveMatrix& matrix) {
    return run_machine(cfg, matrix).sequences;
}

std::vector<Edge> per_input_graph(const StateSequence& seq) {
    std::set<Edge> edges;
    for (std::size_t t = 0; t + 1 < seq.states.size(); ++t) {
        const Edge e{seq.states[t], seq.states[t + 1]};
        if (e.first != 0 || e.second != 0) {
            edges.insert(e);
        }
    }
    return {edges.begin(), edges.end()};
}

// ---------------------------------------------------------------------------

TransitionGraph::TransitionGraph(std::uint32_t node_count, std::vector<WeightedEdge> edges)
    : node_count_(node_count), edges_(std::move(edges)) {
    std::sort(edges_.begin(), edges_.end(),
              [](const WeightedEdge& a, const WeightedEdge& b) { return std::tie(a.from, a.to) < std::tie(b.from, b.to); });
    first_.assign(static_cast<std::size_t>(node_count_) + 1, 0);
    for (const auto& e : edges_) {
        if (e.from >= node_count_ || e.to >= node_count_) {
            throw ParameterError("edge endpoint outside the node range");
        }
        ++first_[e.from + 1];
    }
    for (std::size_t n = 1; n < first_.size(); ++n) {
        first_[n] += first_[n - 1];
    }
}

std::span<const WeightedEdge> TransitionGraph::out_edges(std::uint32_t node) const {
    if (node >= node_count_) {
        return {};
    }
    return std::span<const WeightedEdge>(edges_).subspan(first_[node], first_[node + 1] - first_[node]);
}

std::uint64_t TransitionGraph::out_total(std::uint32_t node) const {
    std::uint64_t total = 0;
    for (const auto& e : out_edges(node)) {
        total += e.count;
    }
    return total;
}

TransitionGraph global_graph(std::span<const StateSequence> seqs, std::size_t k) {
    if (k > 16) {
        throw ParameterError("state space too large");
    }
    const std::uint32_t nodes = 1u << k;
    std::map<Edge, std::uint64_t> counts;
    std::vector<std::uint64_t> out_total(nodes, 0);
    for (const auto& s : seqs) {
        for (std::size_t t = 0; t + 1 < s.states.size(); ++t) {
            const std::uint32_t a = s.states[t];
            if (a == 0) {
                continue;
            }
            if (a >= nodes || s.states[t + 1] >= nodes) {
                throw ParameterError("state value exceeds 2^k - 1");
            }
            ++counts[{a, s.states[t + 1]}];
            ++out_total[a];
        }
    }
    std::vector<WeightedEdge> edges;
    edges.reserve(counts.size());
    for (const auto& [edge, count] : counts) {
        edges.push_back({edge.first, edge.second, count,
                         static_cast<double>(count) / static_cast<double>(out_total[edge.first])});
    }
    return TransitionGraph(nodes, std::move(edges));
}

PrunedGraph prune_max(const TransitionGraph& g) {
    PrunedGraph p;
    p.node_count = g.node_count();
    p.successor.assign(p.node_count, std::nullopt);
    p.indegree.assign(p.node_count, 0);
    for (std::uint32_t a = 0; a < p.node_count; ++a) {
        const auto out = g.out_edges(a);
        if (out.empty()) {
            continue;
        }
        // Edges are sorted by successor, so the first maximum is the smallest successor.
        // Raw counts share the denominator, so comparing counts avoids float ties.
        const auto best = std::max_element(out.begin(), out.end(), [](const WeightedEdge& l, const WeightedEdge& r) {
            return l.count < r.count;
        });
        p.successor[a] = best->to;
        ++p.indegree[best->to];
        if (best->to == a) {
            p.fixed_points.push_back(a);
        }
    }
    for (std::uint32_t a = 0; a < p.node_count; ++a) {
        if (p.indegree[a] == 0) {
            p.garden_of_eden.push_back(a);
        }
    }

    // Functional graph: follow successors, colouring nodes by the walk that reached them.
    std::vector<std::uint32_t> walk_of(p.node_count, 0);
    for (std::uint32_t start = 0; start < p.node_count; ++start) {
        if (walk_of[start] != 0) {
            continue;
        }
        const std::uint32_t walk = start + 1;
        std::vector<std::uint32_t> path;
        std::uint32_t node = start;
        while (walk_of[node] == 0) {
            walk_of[node] = walk;
            path.push_back(node);
            if (!p.successor[node]) {
                break;
            }
            node = *p.successor[node];
        }
        if (walk_of[node] == walk && p.successor[node] && path.back() != node) {
            // Closed a new cycle at `node`.
            auto it = std::find(path.begin(), path.end(), node);
            std::vector<std::uint32_t> cycle(it, path.end());
            if (cycle.size() > 1) {
                std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
                p.cycles.push_back(std::move(cycle));
            }
        }
    }
    std::sort(p.cycles.begin(), p.cycles.end());
    return p;
}

// ---------------------------------------------------------------------------

Richness richness(std::span<const StateSequence> seqs, std::size_t k) {
    if (k > 16) {
        throw ParameterError("state space too large");
    }
    const std::size_t nodes = std::size_t{1} << k;
    Richness r;
    const std::size_t steps = seqs.empty() ? 0 : seqs.front().states.size();
    for (const auto& s : seqs) {
        if (s.states.size() != steps) {
            throw DimensionError("state sequences differ in length");
        }
    }

    for (std::size_t t = 0; t < steps; ++t) {
        std::set<std::uint32_t> present;
        for (const auto& s : seqs) {
            if (s.states[t] != 0) {
                present.insert(s.states[t]);
            }
        }
        if (!present.empty()) {
            r.rows.push_back(RichnessRow{r.rows.size() + 1, t + 1, {present.begin(), present.end()}});
        }
    }

    r.nodes_per_input.assign(seqs.size(), 0);
    r.inputs_per_node.assign(nodes, 0);
    for (std::size_t i = 0; i < seqs.size(); ++i) {
        std::vector<std::uint8_t> seen(nodes, 0);
        for (const auto s : seqs[i].states) {
            if (s >= nodes) {
                throw ParameterError("state value exceeds 2^k - 1");
            }
            seen[s] = 1;
        }
        for (std::size_t n = 0; n < nodes; ++n) {
            if (seen[n] != 0) {
                ++r.nodes_per_input[i];
                ++r.inputs_per_node[n];
            }
        }
    }
    return r;
}

std::vector<std::uint32_t> snapshot_function_at_step(std::span<const StateSequence> seqs, const Richness& r,
                                                     std::size_t step) {
    const auto it = std::find_if(r.rows.begin(), r.rows.end(), [&](const RichnessRow& row) { return row.step == step; });
    if (it == r.rows.end()) {
        throw DomainError("step " + std::to_string(step) + " is not a response moment");
    }
    std::vector<std::uint32_t> g(seqs.size(), 0);
    for (std::size_t i = 0; i < seqs.size(); ++i) {
        g[i] = seqs[i].states[step - 1];
    }
    return g;
}

std::vector<std::uint32_t> snapshot_function(std::span<const StateSequence> seqs, const Richness& r,
                                             std::size_t moment) {
    if (moment < 1 || moment > r.rows.size()) {
        throw DomainError("response moment " + std::to_string(moment) + " outside [1," +
                          std::to_string(r.rows.size()) + "]");
    }
    return snapshot_function_at_step(seqs, r, r.rows[moment - 1].step);
}

} // namespace adm
