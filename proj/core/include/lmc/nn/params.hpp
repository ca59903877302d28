#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lmc/nn/architecture.hpp"
#include "lmc/tensor.hpp"

namespace lmc::nn {

/// One named layer: weight tensor followed by its bias.
struct LayerParams {
    std::string name;
    std::vector<Tensor> tensors;
};

/// Ordered parameter collection, index 0 = shallowest layer. architecture_id
/// binds the set to the Architecture it was built for; two ParamSets are
/// composable (averageable) iff ids and all shapes match. The Architecture
/// itself is carried along so a ParamSet is self-describing.
struct ParamSet {
    Architecture arch;
    std::vector<LayerParams> layers;
    std::uint64_t architecture_id = 0;

    std::size_t param_count() const;
};

struct GradLayer {
    std::string name;
    std::vector<DTensor> tensors;
};

/// Gradient of the mean batch loss; shapes mirror the ParamSet.
struct GradSet {
    std::vector<GradLayer> layers;
};

/// Deterministic function of (arch, seed). Weights uniform in [-s, s] with
/// s = sqrt(1/fan_in); biases zero.
ParamSet init_params(const Architecture& arch, std::uint64_t seed);

/// Canonical tensor shapes per layer: [weight shape, bias shape], input to
/// output. Drives initialization and checkpoint validation.
std::vector<std::vector<std::vector<std::size_t>>> layer_shapes(const Architecture& arch);

/// Zero-filled gradient/buffer structure matching the ParamSet's shapes.
GradSet zeros_like(const ParamSet& params);

/// Throws CompositionError naming the first offending layer if a and b are
/// not composable.
void require_composable(const ParamSet& a, const ParamSet& b);

/// True iff every tensor of every layer is bitwise identical.
bool bitwise_equal(const ParamSet& a, const ParamSet& b);

}  // namespace lmc::nn
