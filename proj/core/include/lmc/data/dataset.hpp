#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace lmc::data {

/// Fixed-dimension labeled classification data, features stored row-major.
struct LabeledDataset {
    std::size_t feature_dim = 0;
    std::size_t num_classes = 0;
    std::vector<float> features;  // size() == size * feature_dim
    std::vector<std::int32_t> labels;

    std::size_t size() const { return labels.size(); }

    std::span<const float> sample(std::size_t i) const {
        return {features.data() + i * feature_dim, feature_dim};
    }

    /// New dataset holding the given rows, in order.
    LabeledDataset subset(std::span<const std::uint32_t> indices) const;
};

/// Gaussian-mixture classification data: class c is centered at a fixed
/// (seed-independent) unit direction scaled to radius 2, with isotropic
/// noise sigma = 0.6. Samples are emitted class-major; deterministic in seed.
LabeledDataset gen_synthetic(std::size_t num_classes, std::size_t samples_per_class,
                             std::size_t input_dim, std::uint64_t seed);

}  // namespace lmc::data
