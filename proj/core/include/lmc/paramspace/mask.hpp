#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace lmc::paramspace {

/// Source of the non-averaged layers in a masked average.
enum class Donor { First, Second };

std::string to_string(Donor donor);
Donor donor_from_string(const std::string& s);

/// Which layers to average; everything else is copied from the donor.
struct LayerMask {
    std::vector<std::size_t> averaged_layers;  // sorted, unique
    Donor donor = Donor::First;

    bool contains(std::size_t layer) const;
    bool is_full(std::size_t num_layers) const;

    static LayerMask full(std::size_t num_layers, Donor donor = Donor::First);
    static LayerMask of(std::vector<std::size_t> layers, Donor donor = Donor::First);
};

enum class ScheduleKind { PerLayer, Shallow, Deep, Random, Extremes };

std::string to_string(ScheduleKind kind);
ScheduleKind schedule_kind_from_string(const std::string& s);

/// Ordered mask sequence for a layer-averaging regime. per-layer: step k
/// averages exactly layer k. Cumulative kinds are strictly nested, step k
/// has k+1 layers, and the final step is the full layer set:
///   shallow:  {0}, {0,1}, ...
///   deep:     {L-1}, {L-2,L-1}, ...
///   random:   nested along a seeded permutation
///   extremes: alternating ends starting shallow: {0}, {0,L-1}, {0,1,L-1}, ...
struct CumulationSchedule {
    ScheduleKind kind = ScheduleKind::PerLayer;
    std::vector<LayerMask> steps;
    std::uint64_t seed = 0;  // random kind only

    std::size_t num_steps() const { return steps.size(); }
};

CumulationSchedule build_schedule(ScheduleKind kind, std::size_t num_layers,
                                  std::uint64_t seed = 0);

/// The layer a cumulative step introduced over its predecessor (for
/// per-layer, the step's single layer). Used as the heatmap row label.
std::size_t added_layer(const CumulationSchedule& schedule, std::size_t step);

}  // namespace lmc::paramspace
