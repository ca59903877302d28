#include "lmc/data/dataset.hpp"

#include <cmath>

#include "lmc/errors.hpp"
#include "lmc/rng.hpp"

namespace lmc::data {

LabeledDataset LabeledDataset::subset(std::span<const std::uint32_t> indices) const {
    LabeledDataset out;
    out.feature_dim = feature_dim;
    out.num_classes = num_classes;
    out.features.reserve(indices.size() * feature_dim);
    out.labels.reserve(indices.size());
    for (std::uint32_t i : indices) {
        const auto s = sample(i);
        out.features.insert(out.features.end(), s.begin(), s.end());
        out.labels.push_back(labels[i]);
    }
    return out;
}

namespace {

constexpr double kClassRadius = 2.0;
constexpr double kNoiseSigma = 0.6;

// Fixed per-class direction, independent of the dataset seed, so that the
// class geometry is stable across noise seeds.
std::vector<double> class_direction(std::size_t cls, std::size_t dim) {
    Rng rng(0x9e3779b97f4a7c15ULL ^ (0x1000193ULL * (cls + 1)));
    std::vector<double> dir(dim);
    double norm2 = 0.0;
    for (double& v : dir) {
        v = rng.normal();
        norm2 += v * v;
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (double& v : dir) v *= inv;
    return dir;
}

}  // namespace

LabeledDataset gen_synthetic(std::size_t num_classes, std::size_t samples_per_class,
                             std::size_t input_dim, std::uint64_t seed) {
    if (num_classes < 2) throw DomainError("gen_synthetic: num_classes must be >= 2");
    if (samples_per_class == 0) throw DomainError("gen_synthetic: samples_per_class must be >= 1");
    if (input_dim == 0) throw DomainError("gen_synthetic: input_dim must be >= 1");

    LabeledDataset ds;
    ds.feature_dim = input_dim;
    ds.num_classes = num_classes;
    ds.features.reserve(num_classes * samples_per_class * input_dim);
    ds.labels.reserve(num_classes * samples_per_class);

    Rng noise(seed);
    for (std::size_t c = 0; c < num_classes; ++c) {
        const auto dir = class_direction(c, input_dim);
        for (std::size_t s = 0; s < samples_per_class; ++s) {
            for (std::size_t d = 0; d < input_dim; ++d) {
                const double v = kClassRadius * dir[d] + kNoiseSigma * noise.normal();
                ds.features.push_back(static_cast<float>(v));
            }
            ds.labels.push_back(static_cast<std::int32_t>(c));
        }
    }
    return ds;
}

}  // namespace lmc::data
