#include "adm/errors.hpp"
#include "adm/machine.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>

using namespace adm;

namespace {

std::vector<StateSequence> random_sequences(std::mt19937_64& rng, std::size_t k, std::size_t steps) {
    const std::uint32_t nodes = 1u << k;
    std::vector<StateSequence> seqs(nodes);
    for (std::uint32_t v = 0; v < nodes; ++v) {
        seqs[v].input = v;
        seqs[v].states.resize(steps, 0);
        if (v == 0) continue;
        for (auto& s : seqs[v].states) s = (rng() % 3 == 0) ? 0 : static_cast<std::uint32_t>(rng() % nodes);
    }
    return seqs;
}

} // namespace

TEST_CASE("per-input graph of [5,8,8,3]") {
    const StateSequence s{1, {5, 8, 8, 3}};
    CHECK(per_input_graph(s) == std::vector<Edge>{{5, 8}, {8, 3}, {8, 8}});
    const StateSequence z{0, {0, 0, 0}};
    CHECK(per_input_graph(z).empty());
}

TEST_CASE("global graph weights for a single sequence") {
    const std::vector<StateSequence> seqs{{1, {5, 8, 8, 3}}};
    const auto g = global_graph(seqs, 4);
    CHECK(g.node_count() == 16);
    REQUIRE(g.edges().size() == 3);
    std::map<Edge, double> w;
    for (const auto& e : g.edges()) w[{e.from, e.to}] = e.weight;
    CHECK(w[{5, 8}] == doctest::Approx(1.0));
    CHECK(w[{8, 8}] == doctest::Approx(0.5));
    CHECK(w[{8, 3}] == doctest::Approx(0.5));
    CHECK(g.out_total(8) == 2);
    CHECK(g.out_edges(8).size() == 2);
    CHECK(g.out_edges(3).empty());
}

TEST_CASE("transitions out of state 0 are not counted") {
    const std::vector<StateSequence> seqs{{1, {0, 4, 0, 0, 4}}};
    const auto g = global_graph(seqs, 3);
    REQUIRE(g.edges().size() == 1);
    CHECK(g.edges()[0].from == 4);
    CHECK(g.edges()[0].to == 0);
    CHECK(g.edges()[0].count == 1);
}

TEST_CASE("pruning keeps the heaviest edge and breaks ties toward the smaller successor") {
    const std::vector<StateSequence> seqs{{1, {5, 8, 8, 3}}};
    const auto p = prune_max(global_graph(seqs, 4));
    REQUIRE(p.successor[8].has_value());
    CHECK(*p.successor[8] == 3);
    CHECK(*p.successor[5] == 8);
    CHECK_FALSE(p.successor[3].has_value());

    const TransitionGraph g(4, {{1, 2, 6, 0.6}, {1, 3, 4, 0.4}, {2, 2, 1, 1.0}, {3, 1, 1, 0.5}, {3, 2, 1, 0.5}});
    const auto q = prune_max(g);
    CHECK(*q.successor[1] == 2);
    CHECK(*q.successor[3] == 1);
    CHECK(q.fixed_points == std::vector<std::uint32_t>{2});
    CHECK(q.indegree[2] == 2);
    CHECK(q.indegree[1] == 1);
    // nodes 0 and 3 have no predecessors in the pruned graph
    CHECK(q.garden_of_eden == std::vector<std::uint32_t>{0, 3});
}

TEST_CASE("pruning reports cycles longer than one node") {
    const TransitionGraph g(8, {{2, 5, 1, 1.0}, {5, 6, 1, 1.0}, {6, 2, 1, 1.0}, {7, 7, 1, 1.0}});
    const auto p = prune_max(g);
    REQUIRE(p.cycles.size() == 1);
    CHECK(p.cycles[0] == std::vector<std::uint32_t>{2, 5, 6});
    CHECK(p.fixed_points == std::vector<std::uint32_t>{7});
}

TEST_CASE("global graph invariants on random trajectories") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t k = 2 + rng() % 5;
        const auto seqs = random_sequences(rng, k, 40);
        const auto g = global_graph(seqs, k);
        std::uint64_t counted = 0;
        for (const auto& s : seqs)
            for (std::size_t t = 0; t + 1 < s.states.size(); ++t) counted += s.states[t] != 0 ? 1 : 0;
        std::uint64_t raw = 0;
        for (const auto& e : g.edges()) raw += e.count;
        CHECK(raw == counted);
        for (std::uint32_t n = 0; n < g.node_count(); ++n) {
            if (g.out_edges(n).empty()) continue;
            double sum = 0;
            for (const auto& e : g.out_edges(n)) sum += e.weight;
            CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
        }
        const auto p = prune_max(g);
        for (std::uint32_t n = 0; n < g.node_count(); ++n) {
            CHECK(p.successor[n].has_value() == !g.out_edges(n).empty());
            if (!p.successor[n]) continue;
            double best = 0;
            for (const auto& e : g.out_edges(n)) best = std::max(best, e.weight);
            const auto it = std::find_if(g.out_edges(n).begin(), g.out_edges(n).end(),
                                         [&](const auto& e) { return e.to == *p.successor[n]; });
            CHECK(it->weight == best);
        }
    }
}

TEST_CASE("richness rows cover response moments only") {
    const std::vector<StateSequence> seqs{
        {0, {0, 0, 0, 0}}, {1, {0, 8, 0, 2}}, {2, {0, 8, 0, 3}}, {3, {0, 1, 0, 3}}};
    const auto r = richness(seqs, 4);
    REQUIRE(r.rows.size() == 2);
    CHECK(r.rows[0].moment == 1);
    CHECK(r.rows[0].step == 2);
    CHECK(r.rows[0].states == std::vector<std::uint32_t>{1, 8});
    CHECK(r.rows[0].mu() == 2);
    CHECK(r.rows[1].step == 4);
    CHECK(r.rows[1].states == std::vector<std::uint32_t>{2, 3});
    CHECK(r.nodes_per_input == std::vector<std::size_t>{1, 3, 3, 3});
    CHECK(r.inputs_per_node[0] == 4);
    CHECK(r.inputs_per_node[8] == 2);
    CHECK(r.inputs_per_node[3] == 2);

    // two inputs sharing state 8 at a moment give mu = 1
    const std::vector<StateSequence> same{{0, {0}}, {1, {8}}, {2, {8}}};
    CHECK(richness(same, 4).rows.at(0).mu() == 1);
}

TEST_CASE("snapshot function g at a response moment") {
    const std::vector<StateSequence> seqs{
        {0, {0, 0, 0, 0}}, {1, {0, 8, 0, 2}}, {2, {0, 8, 0, 3}}, {3, {0, 1, 0, 3}}};
    const auto r = richness(seqs, 4);
    CHECK(snapshot_function(seqs, r, 1) == std::vector<std::uint32_t>{0, 8, 8, 1});
    CHECK(snapshot_function(seqs, r, 2) == std::vector<std::uint32_t>{0, 2, 3, 3});
    CHECK(snapshot_function_at_step(seqs, r, 4) == snapshot_function(seqs, r, 2));
    CHECK_THROWS_AS(snapshot_function(seqs, r, 0), DomainError);
    CHECK_THROWS_AS(snapshot_function(seqs, r, 3), DomainError);
    CHECK_THROWS_AS(snapshot_function_at_step(seqs, r, 3), DomainError);
}

TEST_CASE("running every input of a six-electrode machine") {
    const auto m = generate_synthetic({Dims{64, 64, 12}, 40, 2, 5});
    MachineConfig cfg;
    cfg.electrodes = place_electrodes(m, 6, 4, 1);
    cfg.rec.steps = 60;
    const auto run = run_machine(cfg, m);
    REQUIRE(run.sequences.size() == 64);
    for (std::uint32_t v = 0; v < 64; ++v) {
        CHECK(run.sequences[v].input == v);
        CHECK(run.sequences[v].states.size() == 60);
        CHECK(run.trials[v].states == run.sequences[v].states);
    }
    CHECK(std::all_of(run.sequences[0].states.begin(), run.sequences[0].states.end(),
                      [](auto s) { return s == 0; }));

    // a single input matches a direct trial
    const auto direct = run_trial(m, cfg.params, cfg.rec, cfg.electrodes, BitString::from_value(37, 6));
    CHECK(direct.states == run.sequences[37].states);

    cfg.threads = 3;
    const auto par = run_all_inputs(cfg, m);
    for (std::uint32_t v = 0; v < 64; ++v) CHECK(par[v].states == run.sequences[v].states);
}

TEST_CASE("machine configuration limits") {
    const Dims d{10, 10, 10};
    MachineConfig cfg;
    CHECK_THROWS_AS(cfg.validate(d), EmptyInputError);
    cfg.electrodes.assign(17, Electrode{0, {1, 1, 1}, 2});
    CHECK_THROWS_AS(cfg.validate(d), ParameterError);
}
