#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace adm {

/// Boolean function of `arity` variables x_0 .. x_{k-1}. Input value v assigns
/// x_i = bit (k-1-i) of v, so x_0 is the most significant bit.
struct TruthTable {
    unsigned arity = 0;
    std::vector<std::uint8_t> bits; ///< 2^arity entries, indexed by input value

    TruthTable() = default;
    TruthTable(unsigned arity, std::vector<std::uint8_t> bits);
    static TruthTable from_minterms(unsigned arity, std::span<const std::uint32_t> minterms);

    bool operator()(std::uint32_t input) const { return bits.at(input) != 0; }
    bool operator==(const TruthTable&) const = default;
};

/// Product term. `mask` marks the variables that appear (same bit layout as input
/// values); `value` gives their required polarity.
struct Implicant {
    std::uint32_t mask = 0;
    std::uint32_t value = 0;

    bool covers(std::uint32_t input) const noexcept { return (input & mask) == value; }
    unsigned literals() const noexcept;
    bool operator==(const Implicant&) const = default;
};

/// Sum of products. An empty term list is constant 0; a single empty product is constant 1.
struct Dnf {
    unsigned arity = 0;
    std::vector<Implicant> terms;
};

/// Per-electrode tables of a snapshot function g: table_i(v) = bit i of g(v), where
/// bit 0 is the most significant of k bits. Throws DomainError on a missing input.
std::vector<TruthTable> tables_from_g(const std::map<std::uint32_t, std::uint32_t>& g, unsigned k);
std::vector<TruthTable> tables_from_g(std::span<const std::uint32_t> g, unsigned k);

/// All prime implicants of `t`, in canonical order.
std::vector<Implicant> prime_implicants(const TruthTable& t);

/// Irredundant prime cover of `t`. For arity <= 6 the cover has the fewest terms,
/// then the fewest literals, then the lexicographically smallest term list; larger
/// arities use a greedy cover pruned to irredundancy. Terms are returned in canonical order.
Dnf minimize(const TruthTable& t);

bool evaluate(const Dnf& d, std::uint32_t input);
/// `bits` holds one '0'/'1' per variable, x_0 first. Throws DimensionError on a length mismatch.
bool evaluate(const Dnf& d, std::string_view bits);

TruthTable table_of(const Dnf& d);

/// Products as `x0·!x2`, joined by " + "; constants print as "0" and "1".
std::string format(const Dnf& d);

/// Canonical ordering key: per variable, positive < negated < absent, x_0 most significant.
std::uint64_t canonical_key(const Implicant& p, unsigned arity);

} // namespace adm
