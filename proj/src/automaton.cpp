#include "adm/automaton.hpp"

#include "adm/errors.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <string>
#include <thread>

namespace adm {

void AutomatonParams::validate() const {
    if (r < 1) {
        throw ParameterError("neighbourhood radius r must be >= 1, got " + std::to_string(r));
    }
    if (r > 24) {
        throw ParameterError("neighbourhood radius r must be <= 24, got " + std::to_string(r));
    }
    if (theta < 1) {
        throw ParameterError("excitation threshold theta must be >= 1, got " + std::to_string(theta));
    }
    if (delta < 0 || delta > std::numeric_limits<std::uint16_t>::max()) {
        throw ParameterError("refractory delay delta must lie in [0,65535], got " + std::to_string(delta));
    }
}

std::vector<Offset> neighborhood_offsets(int r) {
    if (r < 1) {
        throw ParameterError("neighbourhood radius must be >= 1");
    }
    std::vector<Offset> out;
    const int r2 = r * r;
    for (int dz = -r; dz <= r; ++dz) {
        for (int dj = -r; dj <= r; ++dj) {
            for (int di = -r; di <= r; ++di) {
                const int d2 = di * di + dj * dj + dz * dz;
                if (d2 != 0 && d2 <= r2) {
                    out.push_back({di, dj, dz});
                }
            }
        }
    }
    return out;
}

AutomatonField::AutomatonField(const ConductiveMatrix& matrix, AutomatonParams params)
    : dims_(matrix.dims()), params_(params) {
    params_.validate();
    pad_ = params_.r;
    px_ = static_cast<std::size_t>(dims_.nx + 2 * pad_);
    py_ = static_cast<std::size_t>(dims_.ny + 2 * pad_);
    pz_ = static_cast<std::size_t>(dims_.nz + 2 * pad_);
    const std::size_t volume = px_ * py_ * pz_;
    if (volume >= std::numeric_limits<std::uint32_t>::max()) {
        throw DimensionError("grid too large for 32-bit voxel indices");
    }

    for (const auto& o : neighborhood_offsets(params_.r)) {
        linear_offsets_.push_back(static_cast<std::ptrdiff_t>(o.di) +
                                  static_cast<std::ptrdiff_t>(px_) *
                                      (static_cast<std::ptrdiff_t>(o.dj) +
                                       static_cast<std::ptrdiff_t>(py_) * static_cast<std::ptrdiff_t>(o.dz)));
    }

    state_.assign(volume, VoxelState::NonConductive);
    countdown_.assign(volume, 0);
    counts_.assign(volume, 0);
    const auto occ = matrix.occupancy();
    std::size_t src = 0;
    for (int z = 0; z < dims_.nz; ++z) {
        for (int j = 0; j < dims_.ny; ++j) {
            std::size_t dst = padded_index({0, j, z});
            for (int i = 0; i < dims_.nx; ++i, ++src, ++dst) {
                if (occ[src] != 0) {
                    state_[dst] = VoxelState::Resting;
                }
            }
        }
    }
}

Coord AutomatonField::unpadded(std::size_t index) const noexcept {
    return Coord{static_cast<int>(index % px_) - pad_, static_cast<int>((index / px_) % py_) - pad_,
                 static_cast<int>(index / (px_ * py_)) - pad_};
}

namespace {

bool in_bounds(const Dims& d, const Coord& c) {
    return c.i >= 0 && c.j >= 0 && c.z >= 0 && c.i < d.nx && c.j < d.ny && c.z < d.nz;
}

} // namespace

VoxelState AutomatonField::state(const Coord& c) const {
    if (!in_bounds(dims_, c)) {
        return VoxelState::NonConductive;
    }
    return state_[padded_index(c)];
}

int AutomatonField::countdown(const Coord& c) const {
    if (!in_bounds(dims_, c)) {
        return 0;
    }
    return countdown_[padded_index(c)];
}

std::vector<Coord> AutomatonField::excited_voxels() const {
    std::vector<Coord> out;
    out.reserve(excited_.size());
    for (auto e : excited_) {
        out.push_back(unpadded(e));
    }
    return out;
}

void AutomatonField::scatter_serial() {
    for (const std::uint32_t e : excited_) {
        for (const std::ptrdiff_t off : linear_offsets_) {
            const auto n = static_cast<std::uint32_t>(static_cast<std::ptrdiff_t>(e) + off);
            if (state_[n] == VoxelState::Resting && counts_[n]++ == 0) {
                touched_.push_back(n);
            }
        }
    }
}

void AutomatonField::scatter_parallel() {
    const std::size_t workers = std::min<std::size_t>(threads_, excited_.size());
    std::vector<std::vector<std::uint32_t>> local(workers);
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([this, w, workers, &local] {
                const std::size_t begin = excited_.size() * w / workers;
                const std::size_t end = excited_.size() * (w + 1) / workers;
                auto& mine = local[w];
                for (std::size_t k = begin; k < end; ++k) {
                    const std::uint32_t e = excited_[k];
                    for (const std::ptrdiff_t off : linear_offsets_) {
                        const auto n = static_cast<std::uint32_t>(static_cast<std::ptrdiff_t>(e) + off);
                        if (state_[n] != VoxelState::Resting) {
                            continue;
                        }
                        if (std::atomic_ref<std::uint16_t>(counts_[n]).fetch_add(1, std::memory_order_relaxed) == 0) {
                            mine.push_back(n);
                        }
                    }
                }
            });
        }
    }
    for (auto& l : local) {
        touched_.insert(touched_.end(), l.begin(), l.end());
    }
}

void AutomatonField::step() {
    // Phase 1 reads only the state at time t: counts of excited neighbours for every
    // resting voxel adjacent to the excited set.
    touched_.clear();
    if (threads_ > 1 && excited_.size() >= 2 * threads_) {
        scatter_parallel();
    } else {
        scatter_serial();
    }

    std::vector<std::uint32_t> fired;
    const auto theta = static_cast<std::uint16_t>(params_.theta);
    for (const std::uint32_t n : touched_) {
        if (counts_[n] > theta) {
            fired.push_back(n);
        }
        counts_[n] = 0;
    }
    std::sort(fired.begin(), fired.end());

    // Phase 2 writes time t+1. The three sets are disjoint at time t.
    std::size_t kept = 0;
    for (const std::uint32_t q : refractory_) {
        if (countdown_[q] > 0) {
            --countdown_[q];
            refractory_[kept++] = q;
        } else {
            state_[q] = VoxelState::Resting;
        }
    }
    refractory_.resize(kept);

    const auto delta = static_cast<std::uint16_t>(params_.delta);
    for (const std::uint32_t e : excited_) {
        state_[e] = VoxelState::Refractory;
        countdown_[e] = delta;
    }
    refractory_.insert(refractory_.end(), excited_.begin(), excited_.end());

    for (const std::uint32_t n : fired) {
        state_[n] = VoxelState::Excited;
    }
    excited_ = std::move(fired);
    ++t_;
}

std::size_t AutomatonField::excite_ball(const Coord& center, int radius) {
    if (!in_bounds(dims_, center)) {
        throw CoordinateError("stimulation centre (" + std::to_string(center.i) + "," + std::to_string(center.j) +
                              "," + std::to_string(center.z) + ") lies outside the grid");
    }
    if (radius < 1) {
        throw ParameterError("stimulation radius must be >= 1");
    }
    const long r2 = static_cast<long>(radius) * radius;
    std::size_t changed = 0;
    for (int z = std::max(0, center.z - radius); z <= std::min(dims_.nz - 1, center.z + radius); ++z) {
        for (int j = std::max(0, center.j - radius); j <= std::min(dims_.ny - 1, center.j + radius); ++j) {
            for (int i = std::max(0, center.i - radius); i <= std::min(dims_.nx - 1, center.i + radius); ++i) {
                const Coord c{i, j, z};
                if (squared_distance(c, center) >= r2) {
                    continue;
                }
                const std::size_t p = padded_index(c);
                if (state_[p] == VoxelState::Resting) {
                    state_[p] = VoxelState::Excited;
                    excited_.push_back(static_cast<std::uint32_t>(p));
                    ++changed;
                }
            }
        }
    }
    if (changed > 0) {
        std::sort(excited_.begin(), excited_.end());
    }
    return changed;
}

std::size_t AutomatonField::count_excited_within(const Coord& center, int radius) const {
    const long r2 = static_cast<long>(radius) * radius;
    std::size_t count = 0;
    for (int z = std::max(0, center.z - radius); z <= std::min(dims_.nz - 1, center.z + radius); ++z) {
        for (int j = std::max(0, center.j - radius); j <= std::min(dims_.ny - 1, center.j + radius); ++j) {
            for (int i = std::max(0, center.i - radius); i <= std::min(dims_.nx - 1, center.i + radius); ++i) {
                const Coord c{i, j, z};
                if (squared_distance(c, center) < r2 && state_[padded_index(c)] == VoxelState::Excited) {
                    ++count;
                }
            }
        }
    }
    return count;
}

Raster AutomatonField::snapshot_slice(int z) const {
    if (z < 0 || z >= dims_.nz) {
        throw CoordinateError("slice index " + std::to_string(z) + " outside [0," + std::to_string(dims_.nz) + ")");
    }
    Raster out{dims_.nx, dims_.ny, {}};
    out.pixels.reserve(static_cast<std::size_t>(dims_.nx) * static_cast<std::size_t>(dims_.ny));
    for (int j = 0; j < dims_.ny; ++j) {
        for (int i = 0; i < dims_.nx; ++i) {
            switch (state_[padded_index({i, j, z})]) {
            case VoxelState::NonConductive: out.pixels.push_back(snapshot_value::kNonConductive); break;
            case VoxelState::Resting: out.pixels.push_back(snapshot_value::kResting); break;
            case VoxelState::Excited: out.pixels.push_back(snapshot_value::kExcited); break;
            case VoxelState::Refractory: out.pixels.push_back(snapshot_value::kRefractory); break;
            }
        }
    }
    return out;
}

bool AutomatonField::same_state(const AutomatonField& other) const {
    return dims_ == other.dims_ && t_ == other.t_ && state_ == other.state_ && countdown_ == other.countdown_;
}

std::vector<std::uint8_t> colorize(const Raster& raster) {
    std::vector<std::uint8_t> rgb;
    rgb.reserve(raster.pixels.size() * 3);
    for (const auto v : raster.pixels) {
        std::uint8_t c[3] = {0, 0, 0};
        switch (v) {
        case snapshot_value::kResting: c[0] = c[1] = c[2] = 96; break;
        case snapshot_value::kExcited: c[0] = 255; break;
        case snapshot_value::kRefractory: c[0] = 255; c[2] = 255; break;
        default: break;
        }
        rgb.insert(rgb.end(), c, c + 3);
    }
    return rgb;
}

} // namespace adm
