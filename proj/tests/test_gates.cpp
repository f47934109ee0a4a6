#include "adm/errors.hpp"
#include "adm/gates.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <string>

using namespace adm;

namespace {

ConductiveMatrix tube(int length) {
    const std::vector<Segment> seg{{{0, 8, 8}, {double(length - 1), 8, 8}}};
    return rasterize_tubes(Dims{length, 17, 17}, seg, 2);
}

std::size_t column(GateType t) {
    for (std::size_t g = 0; g < kCountedGates.size(); ++g)
        if (kCountedGates[g] == t) return g;
    return kCountedGates.size();
}

} // namespace

TEST_CASE("classification agrees with the oracle on every truth table") {
    for (std::uint8_t code = 0; code < 16; ++code) {
        const auto q = GateQuad::from_code(code);
        CHECK(q.code() == code);
        const auto c = classify(q);
        CHECK(c.code == code);
        CHECK(std::string(gate_label(c.type)) == oracle::oracle_gate_name(q.z00, q.z01, q.z10, q.z11));
    }
}

TEST_CASE("classification examples") {
    CHECK(classify({false, true, true, true}).type == GateType::Or);
    CHECK(classify({false, false, false, true}).type == GateType::And);
    CHECK(classify({false, true, true, false}).type == GateType::Xor);
    CHECK(classify({false, true, false, false}).type == GateType::NotAnd);
    CHECK(classify({false, false, true, false}).type == GateType::AndNot);
    CHECK(classify({false, false, true, true}).type == GateType::SelectX);
    CHECK(classify({false, true, false, true}).type == GateType::SelectY);
    CHECK(classify({true, false, false, false}).type == GateType::Other);
    CHECK(classify({true, true, true, true}).type == GateType::Other);
    CHECK_FALSE(is_counted(GateType::Zero));
    CHECK_FALSE(is_counted(GateType::Other));
}

TEST_CASE("a tube with the output between the inputs realises OR, then XOR as the fronts annihilate") {
    const auto m = tube(61);
    const Electrode x{0, {3, 8, 8}, 3};
    const Electrode y{1, {57, 8, 8}, 3};
    const std::vector<Electrode> out{{2, {30, 8, 8}, 3}};
    const auto g = mine(m, {3, 7, 20}, {1, 80}, x, y, out);
    REQUIRE(g.slots.size() == 1);
    REQUIRE(g.slots[0].size() == 80);
    CHECK(g.census.counts[0][column(GateType::Or)] > 0);
    CHECK(g.census.counts[0][column(GateType::Xor)] > 0);
    for (const auto& c : g.slots[0]) {
        CHECK((c.type == GateType::Zero || c.type == GateType::Or || c.type == GateType::Xor));
    }
}

TEST_CASE("an output with no path to the inputs sees only ZERO") {
    const std::vector<Segment> segs{{{0, 3, 8}, {39, 3, 8}}, {{0, 13, 8}, {39, 13, 8}}};
    const auto m = rasterize_tubes(Dims{40, 17, 17}, segs, 2);
    const Electrode x{0, {3, 3, 8}, 3};
    const Electrode y{1, {36, 3, 8}, 3};
    const std::vector<Electrode> out{{2, {20, 13, 8}, 3}};
    const auto g = mine(m, {3, 7, 20}, {1, 60}, x, y, out);
    for (const auto& c : g.slots[0]) CHECK(c.type == GateType::Zero);
    CHECK(g.census.total() == 0);
    CHECK(g.census.nu() == 0.0);
}

TEST_CASE("census totals equal the per-slot counts") {
    const auto m = generate_synthetic({Dims{64, 64, 12}, 40, 2, 5});
    const auto es = place_electrodes(m, 5, 4, 2);
    const std::vector<Electrode> outs(es.begin() + 2, es.end());
    const auto g = mine(m, {3, 6, 15}, {1, 150}, es[0], es[1], outs);
    std::uint64_t slot_total = 0;
    for (const auto& row : g.slots)
        for (const auto& c : row) slot_total += is_counted(c.type) ? 1 : 0;
    CHECK(g.census.total() == slot_total);
    CHECK(g.census.nu() == doctest::Approx(double(slot_total) / outs.size()));

    const auto again = mine(m, {3, 6, 15}, {1, 150}, es[0], es[1], outs, {false, 3});
    CHECK(again.census.counts == g.census.counts);

    const auto dedup = census_from_slots(g.slots, true);
    for (std::size_t e = 0; e < outs.size(); ++e)
        for (std::size_t k = 0; k < kCountedGates.size(); ++k) {
            CHECK(dedup.counts[e][k] <= 1);
            CHECK(dedup.counts[e][k] == (g.census.counts[e][k] > 0 ? 1u : 0u));
        }
}

TEST_CASE("a single sweep point reproduces the mining census") {
    const auto m = generate_synthetic({Dims{64, 64, 12}, 40, 2, 5});
    const auto es = place_electrodes(m, 4, 4, 2);
    const std::vector<Electrode> outs(es.begin() + 2, es.end());
    const AutomatonParams base{3, 7, 20};
    const auto g = mine(m, base, {1, 120}, es[0], es[1], outs);
    const std::vector<int> one{7};
    const auto rows = sweep_theta(m, one, base, {1, 120}, es[0], es[1], outs);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].param == 7);
    CHECK(rows[0].counts == g.census.totals());
    CHECK(rows[0].nu == doctest::Approx(g.census.nu()));
    const std::vector<int> d{20};
    CHECK(sweep_delta(m, d, base, {1, 120}, es[0], es[1], outs)[0].counts == g.census.totals());
}

TEST_CASE("swapping inputs mirrors the asymmetric gates") {
    const auto m = generate_synthetic({Dims{64, 64, 12}, 40, 2, 8});
    const auto es = place_electrodes(m, 5, 4, 3);
    const std::vector<Electrode> outs(es.begin() + 2, es.end());
    const auto a = mine(m, {3, 6, 20}, {1, 120}, es[0], es[1], outs).census.totals();
    const auto b = mine(m, {3, 6, 20}, {1, 120}, es[1], es[0], outs).census.totals();
    for (auto t : {GateType::Or, GateType::And, GateType::Xor}) CHECK(a[column(t)] == b[column(t)]);
    CHECK(a[column(GateType::NotAnd)] == b[column(GateType::AndNot)]);
    CHECK(a[column(GateType::SelectX)] == b[column(GateType::SelectY)]);
}

TEST_CASE("an empty network yields an all-zero sweep") {
    const ConductiveMatrix m(Dims{24, 24, 6});
    const Electrode x{0, {2, 2, 2}, 4};
    const Electrode y{1, {20, 2, 2}, 4};
    const std::vector<Electrode> outs{{2, {12, 12, 3}, 4}};
    const auto grid = default_theta_grid();
    const auto rows = sweep_theta(m, grid, {}, {1, 20}, x, y, outs);
    REQUIRE(rows.size() == grid.size());
    for (const auto& r : rows) {
        for (auto c : r.counts) CHECK(c == 0);
        CHECK(r.nu == 0.0);
    }
}

TEST_CASE("mining argument checks") {
    const auto m = tube(30);
    const Electrode x{0, {3, 8, 8}, 3};
    const Electrode y{1, {26, 8, 8}, 3};
    CHECK_THROWS_AS(mine(m, {}, {1, 10}, x, y, std::vector<Electrode>{}), EmptyInputError);
    CHECK_THROWS_AS(mine(m, {}, {1, 10}, x, y, std::vector<Electrode>{x}), ParameterError);
    CHECK_THROWS_AS(mine(m, {}, {1, 10}, x, x, std::vector<Electrode>{y}), ParameterError);
}

TEST_CASE("default sweep grids") {
    CHECK(default_theta_grid() == std::vector<int>{4, 5, 6, 7, 8, 9, 10, 11, 12});
    CHECK(default_delta_grid() == std::vector<int>{10, 15, 17, 18, 19, 20, 21, 22, 23, 24, 30});
}
