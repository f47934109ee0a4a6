#pragma once

#include "adm/electrodes.hpp"
#include "adm/gates.hpp"
#include "adm/logic.hpp"
#include "adm/machine.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

// Text renderings of analysis results. `header` is a provenance line written as a
// comment; pass an empty string to omit it.
namespace adm::text {

std::string global_dot(const TransitionGraph& g, const std::string& header);
std::string pruned_dot(const TransitionGraph& g, const PrunedGraph& p, const std::string& header);
std::string input_dot(std::uint32_t input, std::span<const Edge> edges, const std::string& header);

/// `node,successor,indegree,fixed_point,garden_of_eden`, one row per state.
std::string pruned_nodes_csv(const PrunedGraph& p, const std::string& header);
std::string pruned_summary(const PrunedGraph& p, const std::string& header);

/// `t,step,mu,states` with states joined by ';'.
std::string richness_csv(const Richness& r, const std::string& header);
std::string nodes_per_input_csv(const Richness& r, const std::string& header);
std::string inputs_per_node_csv(const Richness& r, const std::string& header);
std::string snapshot_function_csv(std::span<const std::uint32_t> g, const std::string& header);

std::string sequences_csv(std::span<const StateSequence> seqs, const std::string& header);
/// Rows keyed by label (an input value or electrode id), one column per step.
template <class T>
std::string raster_csv(const std::vector<std::pair<long, const std::vector<T>*>>& rows, const std::string& key,
                       const std::string& header);

std::string sweep_csv(std::span<const SweepRow> rows, const std::string& header);
std::string census_csv(std::span<const Electrode> outputs, const GateCensus& census, const std::string& header);
std::string gate_slots_csv(std::span<const Electrode> outputs, const GateMining& m, const std::string& header);

/// `e<id>: <dnf>` lines.
std::string dnf_listing(std::span<const Electrode> electrodes, std::span<const Dnf> dnfs, const std::string& header);
std::string dnf_csv(std::span<const Electrode> electrodes, std::span<const Dnf> dnfs, const std::string& header);

/// 6-decimal fixed-point rendering used for every floating-point column.
std::string fixed6(double v);

} // namespace adm::text
