#include "adm/logic.hpp"

#include "adm/errors.hpp"

#include <algorithm>
#include <bit>
#include <unordered_set>

namespace adm {

namespace {

constexpr unsigned kMaxArity = 16;
constexpr unsigned kExactArity = 6;

std::uint32_t full_mask(unsigned arity) { return arity == 32 ? ~0u : (1u << arity) - 1u; }

std::uint32_t var_bit(unsigned var, unsigned arity) { return 1u << (arity - 1 - var); }

} // namespace

TruthTable::TruthTable(unsigned arity_, std::vector<std::uint8_t> bits_) : arity(arity_), bits(std::move(bits_)) {
    if (arity > kMaxArity) {
        throw ParameterError("truth tables support at most 16 variables");
    }
    if (bits.size() != (std::size_t{1} << arity)) {
        throw DimensionError("truth table of arity " + std::to_string(arity) + " needs " +
                             std::to_string(std::size_t{1} << arity) + " entries, got " + std::to_string(bits.size()));
    }
    for (auto& b : bits) {
        b = b != 0 ? 1 : 0;
    }
}

TruthTable TruthTable::from_minterms(unsigned arity, std::span<const std::uint32_t> minterms) {
    if (arity > kMaxArity) {
        throw ParameterError("truth tables support at most 16 variables");
    }
    std::vector<std::uint8_t> bits(std::size_t{1} << arity, 0);
    for (const auto m : minterms) {
        if (m >= bits.size()) {
            throw DomainError("minterm " + std::to_string(m) + " exceeds 2^" + std::to_string(arity) + " - 1");
        }
        bits[m] = 1;
    }
    return TruthTable(arity, std::move(bits));
}

unsigned Implicant::literals() const noexcept { return static_cast<unsigned>(std::popcount(mask)); }

std::uint64_t canonical_key(const Implicant& p, unsigned arity) {
    std::uint64_t key = 0;
    for (unsigned v = 0; v < arity; ++v) {
        const std::uint32_t b = var_bit(v, arity);
        const std::uint64_t code = (p.mask & b) == 0 ? 2 : ((p.value & b) != 0 ? 0 : 1);
        key = key * 3 + code;
    }
    return key;
}

std::vector<TruthTable> tables_from_g(std::span<const std::uint32_t> g, unsigned k) {
    if (k > kMaxArity) {
        throw ParameterError("at most 16 electrodes supported");
    }
    const std::size_t inputs = std::size_t{1} << k;
    if (g.size() != inputs) {
        throw DomainError("snapshot function has " + std::to_string(g.size()) + " entries, expected " +
                          std::to_string(inputs));
    }
    std::vector<TruthTable> tables;
    for (unsigned e = 0; e < k; ++e) {
        std::vector<std::uint8_t> bits(inputs, 0);
        const std::uint32_t b = var_bit(e, k);
        for (std::size_t v = 0; v < inputs; ++v) {
            bits[v] = (g[v] & b) != 0 ? 1 : 0;
        }
        tables.emplace_back(k, std::move(bits));
    }
    return tables;
}

std::vector<TruthTable> tables_from_g(const std::map<std::uint32_t, std::uint32_t>& g, unsigned k) {
    if (k > kMaxArity) {
        throw ParameterError("at most 16 electrodes supported");
    }
    const std::uint32_t inputs = 1u << k;
    std::vector<std::uint32_t> dense(inputs, 0);
    for (std::uint32_t v = 0; v < inputs; ++v) {
        const auto it = g.find(v);
        if (it == g.end()) {
            throw DomainError("snapshot function has no entry for input " + std::to_string(v));
        }
        if (it->second >= inputs) {
            throw DomainError("state " + std::to_string(it->second) + " for input " + std::to_string(v) +
                              " exceeds 2^k - 1");
        }
        dense[v] = it->second;
    }
    if (!g.empty() && g.rbegin()->first >= inputs) {
        throw DomainError("snapshot function has input " + std::to_string(g.rbegin()->first) + " beyond 2^k - 1");
    }
    return tables_from_g(std::span<const std::uint32_t>(dense), k);
}

std::vector<Implicant> prime_implicants(const TruthTable& t) {
    const unsigned k = t.arity;
    const auto pack = [](const Implicant& p) { return (std::uint64_t{p.mask} << 32) | p.value; };

    std::vector<Implicant> level;
    for (std::uint32_t v = 0; v < t.bits.size(); ++v) {
        if (t.bits[v] != 0) {
            level.push_back({full_mask(k), v});
        }
    }
    std::vector<Implicant> primes;
    while (!level.empty()) {
        std::unordered_set<std::uint64_t> present;
        present.reserve(level.size() * 2);
        for (const auto& c : level) {
            present.insert(pack(c));
        }
        std::unordered_set<std::uint64_t> merged_away;
        std::unordered_set<std::uint64_t> next_set;
        std::vector<Implicant> next;
        for (const auto& c : level) {
            for (std::uint32_t rest = c.mask; rest != 0; rest &= rest - 1) {
                const std::uint32_t b = rest & (~rest + 1);
                if ((c.value & b) != 0) {
                    continue;
                }
                const Implicant partner{c.mask, c.value | b};
                if (present.count(pack(partner)) == 0) {
                    continue;
                }
                merged_away.insert(pack(c));
                merged_away.insert(pack(partner));
                const Implicant m{c.mask & ~b, c.value};
                if (next_set.insert(pack(m)).second) {
                    next.push_back(m);
                }
            }
        }
        for (const auto& c : level) {
            if (merged_away.count(pack(c)) == 0) {
                primes.push_back(c);
            }
        }
        level = std::move(next);
    }
    std::sort(primes.begin(), primes.end(), [k](const Implicant& a, const Implicant& b) {
        return canonical_key(a, k) < canonical_key(b, k);
    });
    return primes;
}

namespace {

// Exact minimum cover over at most 64 minterms, one bit per input value.
class ExactCover {
public:
    ExactCover(const std::vector<Implicant>& primes, std::uint64_t on_set, std::size_t inputs)
        : on_(on_set), covering_(inputs), neighbourhood_(inputs, 0) {
        for (const auto& p : primes) {
            std::uint64_t c = 0;
            for (std::uint32_t v = 0; v < inputs; ++v) {
                if (p.covers(v) && ((on_ >> v) & 1u) != 0) {
                    c |= std::uint64_t{1} << v;
                }
            }
            cover_.push_back(c);
            literals_.push_back(p.literals());
        }
        for (std::size_t p = 0; p < cover_.size(); ++p) {
            for (std::uint64_t rest = cover_[p]; rest != 0; rest &= rest - 1) {
                const auto m = static_cast<std::size_t>(std::countr_zero(rest));
                covering_[m].push_back(p);
                neighbourhood_[m] |= cover_[p];
            }
        }
    }

    std::vector<std::size_t> solve() {
        std::vector<std::size_t> chosen;
        std::uint64_t uncovered = on_;
        unsigned lits = 0;
        // Essential primes belong to every cover.
        for (std::uint64_t rest = on_; rest != 0; rest &= rest - 1) {
            const auto m = static_cast<std::size_t>(std::countr_zero(rest));
            if (covering_[m].size() == 1) {
                const std::size_t p = covering_[m].front();
                if (std::find(chosen.begin(), chosen.end(), p) == chosen.end()) {
                    chosen.push_back(p);
                    lits += literals_[p];
                    uncovered &= ~cover_[p];
                }
            }
        }
        search(uncovered, chosen, lits);
        return best_;
    }

private:
    unsigned lower_bound(std::uint64_t uncovered) const {
        unsigned n = 0;
        while (uncovered != 0) {
            const auto m = static_cast<std::size_t>(std::countr_zero(uncovered));
            uncovered &= ~neighbourhood_[m];
            ++n;
        }
        return n;
    }

    bool better(std::vector<std::size_t>& candidate, unsigned lits) const {
        if (!found_) {
            return true;
        }
        if (candidate.size() != best_.size()) {
            return candidate.size() < best_.size();
        }
        if (lits != best_lits_) {
            return lits < best_lits_;
        }
        return candidate < best_; // prime indices follow canonical order
    }

    void search(std::uint64_t uncovered, std::vector<std::size_t>& chosen, unsigned lits) {
        if (uncovered == 0) {
            std::vector<std::size_t> candidate = chosen;
            std::sort(candidate.begin(), candidate.end());
            if (better(candidate, lits)) {
                best_ = std::move(candidate);
                best_lits_ = lits;
                found_ = true;
            }
            return;
        }
        if (found_) {
            const std::size_t bound = chosen.size() + lower_bound(uncovered);
            if (bound > best_.size() || (bound == best_.size() && lits > best_lits_)) {
                return;
            }
        }
        std::size_t pivot = 0;
        std::size_t fewest = SIZE_MAX;
        for (std::uint64_t rest = uncovered; rest != 0; rest &= rest - 1) {
            const auto m = static_cast<std::size_t>(std::countr_zero(rest));
            if (covering_[m].size() < fewest) {
                fewest = covering_[m].size();
                pivot = m;
            }
        }
        for (const std::size_t p : covering_[pivot]) {
            chosen.push_back(p);
            search(uncovered & ~cover_[p], chosen, lits + literals_[p]);
            chosen.pop_back();
        }
    }

    std::uint64_t on_;
    std::vector<std::uint64_t> cover_;
    std::vector<unsigned> literals_;
    std::vector<std::vector<std::size_t>> covering_;
    std::vector<std::uint64_t> neighbourhood_;
    std::vector<std::size_t> best_;
    unsigned best_lits_ = 0;
    bool found_ = false;
};

std::vector<std::size_t> greedy_cover(const std::vector<Implicant>& primes, const TruthTable& t) {
    const std::size_t inputs = t.bits.size();
    std::vector<std::vector<std::uint32_t>> covers(primes.size());
    std::vector<std::vector<std::size_t>> covering(inputs);
    for (std::size_t p = 0; p < primes.size(); ++p) {
        for (std::uint32_t v = 0; v < inputs; ++v) {
            if (t.bits[v] != 0 && primes[p].covers(v)) {
                covers[p].push_back(v);
                covering[v].push_back(p);
            }
        }
    }
    std::vector<std::uint32_t> times_covered(inputs, 0);
    std::vector<std::uint8_t> picked(primes.size(), 0);
    std::vector<std::size_t> chosen;
    const auto take = [&](std::size_t p) {
        picked[p] = 1;
        chosen.push_back(p);
        for (auto v : covers[p]) {
            ++times_covered[v];
        }
    };
    for (std::uint32_t v = 0; v < inputs; ++v) {
        if (covering[v].size() == 1 && picked[covering[v].front()] == 0) {
            take(covering[v].front());
        }
    }
    for (;;) {
        std::size_t best = primes.size();
        std::size_t best_gain = 0;
        for (std::size_t p = 0; p < primes.size(); ++p) {
            if (picked[p] != 0) {
                continue;
            }
            std::size_t gain = 0;
            for (auto v : covers[p]) {
                gain += times_covered[v] == 0 ? 1 : 0;
            }
            if (gain > best_gain ||
                (gain == best_gain && gain > 0 && primes[p].literals() < primes[best].literals())) {
                best = p;
                best_gain = gain;
            }
        }
        if (best_gain == 0) {
            break;
        }
        take(best);
    }
    // Drop terms whose minterms are all covered elsewhere, last canonical term first.
    std::sort(chosen.begin(), chosen.end());
    for (std::size_t n = chosen.size(); n-- > 0;) {
        const std::size_t p = chosen[n];
        const bool redundant =
            std::all_of(covers[p].begin(), covers[p].end(), [&](std::uint32_t v) { return times_covered[v] > 1; });
        if (redundant) {
            for (auto v : covers[p]) {
                --times_covered[v];
            }
            chosen.erase(chosen.begin() + static_cast<std::ptrdiff_t>(n));
        }
    }
    return chosen;
}

} // namespace

Dnf minimize(const TruthTable& t) {
    if (t.arity > kMaxArity || t.bits.size() != (std::size_t{1} << t.arity)) {
        throw DimensionError("malformed truth table");
    }
    Dnf out;
    out.arity = t.arity;
    const auto primes = prime_implicants(t);
    if (primes.empty()) {
        return out;
    }
    std::vector<std::size_t> chosen;
    if (t.arity <= kExactArity) {
        std::uint64_t on = 0;
        for (std::size_t v = 0; v < t.bits.size(); ++v) {
            if (t.bits[v] != 0) {
                on |= std::uint64_t{1} << v;
            }
        }
        chosen = ExactCover(primes, on, t.bits.size()).solve();
    } else {
        chosen = greedy_cover(primes, t);
    }
    std::sort(chosen.begin(), chosen.end());
    for (const auto p : chosen) {
        out.terms.push_back(primes[p]);
    }
    return out;
}

bool evaluate(const Dnf& d, std::uint32_t input) {
    return std::any_of(d.terms.begin(), d.terms.end(), [input](const Implicant& p) { return p.covers(input); });
}

bool evaluate(const Dnf& d, std::string_view bits) {
    if (bits.size() != d.arity) {
        throw DimensionError("input has " + std::to_string(bits.size()) + " bits, function has arity " +
                             std::to_string(d.arity));
    }
    std::uint32_t v = 0;
    for (const char c : bits) {
        if (c != '0' && c != '1') {
            throw ParameterError("input may contain only '0' and '1'");
        }
        v = (v << 1) | (c == '1' ? 1u : 0u);
    }
    return evaluate(d, v);
}

TruthTable table_of(const Dnf& d) {
    std::vector<std::uint8_t> bits(std::size_t{1} << d.arity, 0);
    for (std::uint32_t v = 0; v < bits.size(); ++v) {
        bits[v] = evaluate(d, v) ? 1 : 0;
    }
    return TruthTable(d.arity, std::move(bits));
}

std::string format(const Dnf& d) {
    if (d.terms.empty()) {
        return "0";
    }
    std::string out;
    for (std::size_t n = 0; n < d.terms.size(); ++n) {
        if (n > 0) {
            out += " + ";
        }
        const auto& p = d.terms[n];
        if (p.mask == 0) {
            out += "1";
            continue;
        }
        bool first = true;
        for (unsigned v = 0; v < d.arity; ++v) {
            const std::uint32_t b = var_bit(v, d.arity);
            if ((p.mask & b) == 0) {
                continue;
            }
            if (!first) {
                out += "·";
            }
            first = false;
            if ((p.value & b) == 0) {
                out += '!';
            }
            out += "x" + std::to_string(v);
        }
    }
    return out;
}

} // namespace adm
