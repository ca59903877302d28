#pragma once

#include <cstdint>

#include "lmc/nn/params.hpp"

namespace lmc::nn {

struct SgdHyper {
    double learning_rate_base = 0.05;
    double momentum_coefficient = 0.9;
    double weight_decay = 5e-4;
};

/// Momentum buffers mirror the ParamSet shapes; step_counter increments by
/// exactly 1 per sgd_step.
struct OptimizerState {
    GradSet momentum_buffers;
    SgdHyper hyper;
    std::uint64_t step_counter = 0;
};

OptimizerState make_optimizer_state(const ParamSet& params, const SgdHyper& hyper);

/// In-place SGD update with weight decay folded into the gradient:
///   buffer' = momentum * buffer + grad + weight_decay * param
///   param'  = param - rate * buffer'
/// Parameters are stored in float; the update is computed in double and
/// rounded once. Throws NumericError naming the layer on non-finite
/// gradient entries.
void sgd_step(ParamSet& params, const GradSet& grads, OptimizerState& state, double rate);

}  // namespace lmc::nn
