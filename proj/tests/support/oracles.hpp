#pragma once

// Independent reference implementations used only by tests. None of these call
// into the code paths they check.

#include "adm/grid.hpp"

#include <array>
#include <cstdint>
#include <queue>
#include <vector>

namespace adm::oracle {

/// Lattice points with 0 < |p|^2 <= r^2, counted by scanning a cube twice as wide.
inline std::size_t brute_force_ball_count(int r) {
    std::size_t n = 0;
    for (int a = -2 * r; a <= 2 * r; ++a) {
        for (int b = -2 * r; b <= 2 * r; ++b) {
            for (int c = -2 * r; c <= 2 * r; ++c) {
                const long d2 = long(a) * a + long(b) * b + long(c) * c;
                if (d2 > 0 && d2 <= long(r) * r) {
                    ++n;
                }
            }
        }
    }
    return n;
}

/// Straightforward full-sweep automaton: every voxel recomputes sigma from scratch.
class ReferenceAutomaton {
public:
    enum State : std::uint8_t { Off = 0, Rest = 1, Fire = 2, Tired = 3 };

    ReferenceAutomaton(const ConductiveMatrix& m, int r, int theta, int delta)
        : m_(m), r_(r), theta_(theta), delta_(delta), s_(m.dims().volume(), Off), h_(m.dims().volume(), 0) {
        for (std::size_t p = 0; p < s_.size(); ++p) {
            s_[p] = m.occupancy()[p] ? Rest : Off;
        }
    }

    State at(const Coord& c) const { return m_.in_bounds(c) ? State(s_[m_.index(c)]) : Off; }
    int h(const Coord& c) const { return m_.in_bounds(c) ? h_[m_.index(c)] : 0; }

    void excite_ball(const Coord& c, int radius) {
        for (std::size_t p = 0; p < s_.size(); ++p) {
            if (s_[p] == Rest && squared_distance(m_.coord(p), c) < long(radius) * radius) {
                s_[p] = Fire;
            }
        }
    }

    int sigma(const Coord& p) const {
        int n = 0;
        for (int dz = -r_; dz <= r_; ++dz) {
            for (int dj = -r_; dj <= r_; ++dj) {
                for (int di = -r_; di <= r_; ++di) {
                    if (di == 0 && dj == 0 && dz == 0) continue;
                    if (di * di + dj * dj + dz * dz > r_ * r_) continue;
                    if (at({p.i + di, p.j + dj, p.z + dz}) == Fire) ++n;
                }
            }
        }
        return n;
    }

    void step() {
        std::vector<std::uint8_t> s2 = s_;
        std::vector<int> h2 = h_;
        for (std::size_t p = 0; p < s_.size(); ++p) {
            const Coord c = m_.coord(p);
            switch (s_[p]) {
            case Off: break;
            case Rest:
                if (sigma(c) > theta_) s2[p] = Fire;
                break;
            case Fire:
                s2[p] = Tired;
                h2[p] = delta_;
                break;
            case Tired:
                if (h_[p] > 0) {
                    h2[p] = h_[p] - 1;
                } else {
                    s2[p] = Rest;
                    h2[p] = 0;
                }
                break;
            }
        }
        s_ = std::move(s2);
        h_ = std::move(h2);
    }

    std::size_t count_fire_within(const Coord& c, int radius) const {
        std::size_t n = 0;
        for (std::size_t p = 0; p < s_.size(); ++p) {
            if (s_[p] == Fire && squared_distance(m_.coord(p), c) < long(radius) * radius) ++n;
        }
        return n;
    }

private:
    const ConductiveMatrix& m_;
    int r_, theta_, delta_;
    std::vector<std::uint8_t> s_;
    std::vector<int> h_;
};

/// Number of 6-connected components of conductive voxels.
inline std::size_t connected_components(const ConductiveMatrix& m) {
    std::vector<std::uint8_t> seen(m.dims().volume(), 0);
    std::size_t comps = 0;
    for (std::size_t start = 0; start < seen.size(); ++start) {
        if (!m.occupancy()[start] || seen[start]) continue;
        ++comps;
        std::queue<std::size_t> q;
        q.push(start);
        seen[start] = 1;
        while (!q.empty()) {
            const Coord c = m.coord(q.front());
            q.pop();
            const std::array<Coord, 6> nb = {Coord{c.i + 1, c.j, c.z}, Coord{c.i - 1, c.j, c.z},
                                             Coord{c.i, c.j + 1, c.z}, Coord{c.i, c.j - 1, c.z},
                                             Coord{c.i, c.j, c.z + 1}, Coord{c.i, c.j, c.z - 1}};
            for (const auto& n : nb) {
                if (m.conductive(n) && !seen[m.index(n)]) {
                    seen[m.index(n)] = 1;
                    q.push(m.index(n));
                }
            }
        }
    }
    return comps;
}

/// Named two-input functions from evaluating every Boolean function f(x,y) given as
/// its outputs on (0,0),(0,1),(1,0),(1,1).
struct NamedFunction {
    const char* name;
    bool (*f)(bool, bool);
};

inline const std::array<NamedFunction, 8>& named_two_input_functions() {
    static const std::array<NamedFunction, 8> fns = {{
        {"ZERO", [](bool, bool) { return false; }},
        {"OR", [](bool x, bool y) { return x || y; }},
        {"AND", [](bool x, bool y) { return x && y; }},
        {"XOR", [](bool x, bool y) { return x != y; }},
        {"NOTAND", [](bool x, bool y) { return !x && y; }},
        {"ANDNOT", [](bool x, bool y) { return x && !y; }},
        {"SELX", [](bool x, bool) { return x; }},
        {"SELY", [](bool, bool y) { return y; }},
    }};
    return fns;
}

/// Name of the listed function whose truth table equals (z00,z01,z10,z11), or "OTHER".
inline const char* oracle_gate_name(bool z00, bool z01, bool z10, bool z11) {
    for (const auto& nf : named_two_input_functions()) {
        if (nf.f(false, false) == z00 && nf.f(false, true) == z01 && nf.f(true, false) == z10 &&
            nf.f(true, true) == z11) {
            return nf.name;
        }
    }
    return "OTHER";
}

} // namespace adm::oracle
