#include "lmc/nn/optimizer.hpp"

#include <cmath>

#include "lmc/errors.hpp"

namespace lmc::nn {

OptimizerState make_optimizer_state(const ParamSet& params, const SgdHyper& hyper) {
    OptimizerState state;
    state.momentum_buffers = zeros_like(params);
    state.hyper = hyper;
    return state;
}

void sgd_step(ParamSet& params, const GradSet& grads, OptimizerState& state, double rate) {
    if (grads.layers.size() != params.layers.size())
        throw CompositionError("sgd_step: gradient layer count mismatch");

    const double mu = state.hyper.momentum_coefficient;
    const double wd = state.hyper.weight_decay;

    for (std::size_t li = 0; li < params.layers.size(); ++li) {
        auto& layer = params.layers[li];
        const auto& glayer = grads.layers[li];
        auto& blayer = state.momentum_buffers.layers[li];
        for (std::size_t t = 0; t < layer.tensors.size(); ++t) {
            auto& p = layer.tensors[t].data;
            const auto& g = glayer.tensors[t].data;
            auto& buf = blayer.tensors[t].data;
            if (g.size() != p.size())
                throw CompositionError("sgd_step: gradient shape mismatch in layer '" +
                                       layer.name + "'");
            for (std::size_t k = 0; k < p.size(); ++k) {
                if (!std::isfinite(g[k]))
                    throw NumericError("sgd_step: non-finite gradient in layer '" + layer.name +
                                       "'");
                const double b = mu * buf[k] + g[k] + wd * static_cast<double>(p[k]);
                buf[k] = b;
                p[k] = static_cast<float>(static_cast<double>(p[k]) - rate * b);
            }
        }
    }
    state.step_counter += 1;
}

}  // namespace lmc::nn
