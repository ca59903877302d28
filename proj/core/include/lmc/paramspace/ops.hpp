#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lmc/nn/params.hpp"
#include "lmc/paramspace/mask.hpp"

namespace lmc::paramspace {

/// Layers in the mask become the elementwise midpoint (a+b)/2; every other
/// layer is a bit-exact copy from the donor. a and b must be composable.
nn::ParamSet masked_average(const nn::ParamSet& a, const nn::ParamSet& b, const LayerMask& mask);

/// (1-alpha)*a + alpha*b over all layers; alpha in [0,1]. alpha 0.5 is
/// bit-identical to masked_average with a full mask.
nn::ParamSet interpolate(const nn::ParamSet& a, const nn::ParamSet& b, double alpha);

/// Cosine of the zero vector against anything is undefined, reported as an
/// empty optional, never 0.
struct LayerDistance {
    std::string name;
    double euclidean = 0.0;
    std::optional<double> cosine;
};

struct DistanceReport {
    std::vector<LayerDistance> per_layer;
    LayerDistance full;  // name "(full)"
};

/// Per-layer and full-network Euclidean distance ||a-b|| and cosine
/// similarity <a,b>/(|a||b|) over flattened tensors (weight and bias
/// concatenated per layer). Full distance accumulates the same per-layer
/// sums, so full^2 == sum of per-layer^2 exactly.
DistanceReport distances(const nn::ParamSet& a, const nn::ParamSet& b);

}  // namespace lmc::paramspace
