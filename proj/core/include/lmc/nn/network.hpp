#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lmc/data/dataset.hpp"
#include "lmc/nn/params.hpp"

namespace lmc::nn {

struct EvalResult {
    double loss = 0.0;   // mean cross-entropy over the set, nats
    double error = 0.0;  // fraction misclassified, in [0,1]
    std::size_t n_samples = 0;
};

/// Non-owning minibatch: row indices into a dataset.
struct BatchView {
    const data::LabeledDataset* dataset = nullptr;
    std::span<const std::uint32_t> indices;

    std::size_t size() const { return indices.size(); }
};

/// Logits of a single input. Deterministic; all arithmetic in double.
std::vector<double> forward_logits(const ParamSet& params, std::span<const float> input);

/// Mean cross-entropy and 0-1 error over the whole dataset. There is no
/// train/eval mode distinction in this engine; evaluation is deterministic.
EvalResult evaluate(const ParamSet& params, const data::LabeledDataset& dataset);

/// Loss plus exact gradient of the mean batch cross-entropy, one backprop
/// pass; train() uses this to get both without a second forward.
struct BackpropResult {
    double loss = 0.0;
    GradSet grads;
};
BackpropResult backprop(const ParamSet& params, const BatchView& batch);

/// Exact gradient of the mean cross-entropy over the batch.
GradSet gradients(const ParamSet& params, const BatchView& batch);

}  // namespace lmc::nn
