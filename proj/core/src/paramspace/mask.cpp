#include "lmc/paramspace/mask.hpp"

#include <algorithm>
#include <numeric>

#include "lmc/errors.hpp"
#include "lmc/rng.hpp"

namespace lmc::paramspace {

std::string to_string(Donor donor) { return donor == Donor::First ? "first" : "second"; }

Donor donor_from_string(const std::string& s) {
    if (s == "first") return Donor::First;
    if (s == "second") return Donor::Second;
    throw ConfigError("unknown donor: " + s);
}

bool LayerMask::contains(std::size_t layer) const {
    return std::binary_search(averaged_layers.begin(), averaged_layers.end(), layer);
}

bool LayerMask::is_full(std::size_t num_layers) const {
    return averaged_layers.size() == num_layers;
}

LayerMask LayerMask::full(std::size_t num_layers, Donor donor) {
    LayerMask m;
    m.averaged_layers.resize(num_layers);
    std::iota(m.averaged_layers.begin(), m.averaged_layers.end(), 0u);
    m.donor = donor;
    return m;
}

LayerMask LayerMask::of(std::vector<std::size_t> layers, Donor donor) {
    LayerMask m;
    std::sort(layers.begin(), layers.end());
    layers.erase(std::unique(layers.begin(), layers.end()), layers.end());
    m.averaged_layers = std::move(layers);
    m.donor = donor;
    return m;
}

std::string to_string(ScheduleKind kind) {
    switch (kind) {
        case ScheduleKind::PerLayer: return "per-layer";
        case ScheduleKind::Shallow: return "shallow";
        case ScheduleKind::Deep: return "deep";
        case ScheduleKind::Random: return "random";
        case ScheduleKind::Extremes: return "extremes";
    }
    return "?";
}

ScheduleKind schedule_kind_from_string(const std::string& s) {
    if (s == "per-layer") return ScheduleKind::PerLayer;
    if (s == "shallow") return ScheduleKind::Shallow;
    if (s == "deep") return ScheduleKind::Deep;
    if (s == "random") return ScheduleKind::Random;
    if (s == "extremes") return ScheduleKind::Extremes;
    throw ConfigError("unknown cumulation schedule kind: " + s);
}

CumulationSchedule build_schedule(ScheduleKind kind, std::size_t num_layers, std::uint64_t seed) {
    if (num_layers < 1) throw DomainError("build_schedule: num_layers must be >= 1");

    CumulationSchedule sched;
    sched.kind = kind;
    sched.seed = seed;

    // Order in which layers join the averaged set; per-layer handled apart.
    std::vector<std::size_t> join_order;
    switch (kind) {
        case ScheduleKind::PerLayer: {
            for (std::size_t i = 0; i < num_layers; ++i)
                sched.steps.push_back(LayerMask::of({i}));
            return sched;
        }
        case ScheduleKind::Shallow:
            for (std::size_t i = 0; i < num_layers; ++i) join_order.push_back(i);
            break;
        case ScheduleKind::Deep:
            for (std::size_t i = num_layers; i-- > 0;) join_order.push_back(i);
            break;
        case ScheduleKind::Random: {
            std::vector<std::size_t> perm(num_layers);
            std::iota(perm.begin(), perm.end(), 0u);
            Rng rng(seed);
            rng.shuffle(perm);
            join_order = std::move(perm);
            break;
        }
        case ScheduleKind::Extremes: {
            // Alternate ends, shallow end first: 0, L-1, 1, L-2, ...
            std::size_t lo = 0, hi = num_layers;
            bool take_low = true;
            while (lo < hi) {
                if (take_low)
                    join_order.push_back(lo++);
                else
                    join_order.push_back(--hi);
                take_low = !take_low;
            }
            break;
        }
    }

    std::vector<std::size_t> current;
    for (std::size_t layer : join_order) {
        current.push_back(layer);
        sched.steps.push_back(LayerMask::of(current));
    }
    return sched;
}

std::size_t added_layer(const CumulationSchedule& schedule, std::size_t step) {
    if (step >= schedule.steps.size()) throw DomainError("added_layer: step out of range");
    const auto& cur = schedule.steps[step].averaged_layers;
    if (schedule.kind == ScheduleKind::PerLayer || step == 0) return cur.front();
    const auto& prev = schedule.steps[step - 1].averaged_layers;
    for (std::size_t layer : cur)
        if (!std::binary_search(prev.begin(), prev.end(), layer)) return layer;
    throw DomainError("added_layer: step adds no layer");
}

}  // namespace lmc::paramspace
