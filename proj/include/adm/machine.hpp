#pragma once

#include "adm/automaton.hpp"
#include "adm/electrodes.hpp"
#include "adm/grid.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace adm {

struct MachineConfig {
    std::vector<Electrode> electrodes; ///< k = electrodes.size(), at most 16
    AutomatonParams params{3, 7, 20};
    RecordingParams rec{};
    unsigned threads = 1;

    std::size_t k() const noexcept { return electrodes.size(); }
    void validate(const Dims& dims) const;
};

struct StateSequence {
    std::uint32_t input = 0;
    std::vector<std::uint32_t> states; ///< states[t-1] is the machine state at step t
};

/// Full record of stimulating the machine with every input.
struct MachineRun {
    std::vector<StateSequence> sequences; ///< indexed by input value, 0 .. 2^k-1
    std::vector<TrialResult> trials;      ///< same indexing; input 0 holds all-zero records
};

/// Simulates inputs 1 .. 2^k-1; input 0 is the all-zero trajectory and is not simulated.
MachineRun run_machine(const MachineConfig& cfg, const ConductiveMatrix& matrix);
std::vector<StateSequence> run_all_inputs(const MachineConfig& cfg, const ConductiveMatrix& matrix);

using Edge = std::pair<std::uint32_t, std::uint32_t>;

/// Distinct consecutive-state pairs of one trajectory, sorted, excluding the 0 -> 0 loop.
std::vector<Edge> per_input_graph(const StateSequence& seq);

struct WeightedEdge {
    std::uint32_t from = 0;
    std::uint32_t to = 0;
    std::uint64_t count = 0;
    double weight = 0.0; ///< count / total outgoing count of `from`
};

class TransitionGraph {
public:
    TransitionGraph() = default;
    TransitionGraph(std::uint32_t node_count, std::vector<WeightedEdge> edges);

    std::uint32_t node_count() const noexcept { return node_count_; }
    /// Sorted by (from, to).
    const std::vector<WeightedEdge>& edges() const noexcept { return edges_; }
    std::span<const WeightedEdge> out_edges(std::uint32_t node) const;
    std::uint64_t out_total(std::uint32_t node) const;

private:
    std::uint32_t node_count_ = 0;
    std::vector<WeightedEdge> edges_;
    std::vector<std::size_t> first_; // CSR offsets, node_count_ + 1 entries
};

/// Counts consecutive pairs (a,b) with a != 0 across all trajectories.
TransitionGraph global_graph(std::span<const StateSequence> seqs, std::size_t k);

struct PrunedGraph {
    std::uint32_t node_count = 0;
    std::vector<std::optional<std::uint32_t>> successor;
    std::vector<std::uint32_t> indegree;
    std::vector<std::uint32_t> fixed_points;
    std::vector<std::uint32_t> garden_of_eden; ///< nodes without predecessors
    std::vector<std::vector<std::uint32_t>> cycles; ///< cycles longer than one node, smallest node first
};

/// Keeps each node's heaviest outgoing edge; ties go to the smallest successor.
PrunedGraph prune_max(const TransitionGraph& g);

struct RichnessRow {
    std::size_t moment = 0; ///< 1-based index among response moments
    std::size_t step = 0;   ///< raw step t
    std::vector<std::uint32_t> states; ///< distinct nonzero states, ascending
    std::size_t mu() const noexcept { return states.size(); }
};

struct Richness {
    std::vector<RichnessRow> rows;
    std::vector<std::size_t> nodes_per_input; ///< distinct states in each input's trajectory
    std::vector<std::size_t> inputs_per_node; ///< inputs whose trajectory visits each state
};

/// Assumes every sequence has the same length and `seqs` covers inputs 0 .. 2^k-1 in order.
Richness richness(std::span<const StateSequence> seqs, std::size_t k);

/// g at a raw step: input -> state. Throws DomainError unless `step` is a response moment.
std::vector<std::uint32_t> snapshot_function_at_step(std::span<const StateSequence> seqs, const Richness& r,
                                                     std::size_t step);
/// g at the m-th response moment (1-based). Throws DomainError if out of range.
std::vector<std::uint32_t> snapshot_function(std::span<const StateSequence> seqs, const Richness& r,
                                             std::size_t moment);

} // namespace adm
