#include "lmc/nn/network.hpp"

#include <algorithm>
#include <cmath>

#include "lmc/errors.hpp"

namespace lmc::nn {

namespace {

// Reusable per-sample buffers; sized once per ParamSet, reused across the
// whole dataset/batch loop.
class Engine {
public:
    explicit Engine(const ParamSet& params) : p_(params), arch_(params.arch) {
        const std::size_t hidden = arch_.hidden_widths.size();
        acts_.resize(hidden + 1);
        preacts_.resize(hidden);
        if (arch_.kind == ArchKind::SmallCnn) {
            std::size_t c = arch_.input_channels, h = arch_.input_height, w = arch_.input_width;
            acts_[0].resize(c * h * w);
            dims_.push_back({c, h, w});
            for (std::size_t i = 0; i < hidden; ++i) {
                const std::size_t ch = arch_.hidden_widths[i];
                preacts_[i].resize(ch * h * w);
                h /= 2;
                w /= 2;
                acts_[i + 1].resize(ch * h * w);
                dims_.push_back({ch, h, w});
            }
        } else {
            acts_[0].resize(arch_.input_dim);
            for (std::size_t i = 0; i < hidden; ++i) {
                preacts_[i].resize(arch_.hidden_widths[i]);
                acts_[i + 1].resize(arch_.hidden_widths[i]);
            }
            // skip_target[i] = activation index whose value is added after the
            // ReLU of hidden layer i (residual span close), or npos.
            skip_source_.assign(hidden, npos);
            for (auto [lo, hi] : residual_spans(arch_)) skip_source_[hi - 1] = lo;
        }
        logits_.resize(arch_.num_classes);
        probs_.resize(arch_.num_classes);
    }

    void forward(std::span<const float> input) {
        std::copy(input.begin(), input.end(), acts_[0].begin());
        const std::size_t hidden = arch_.hidden_widths.size();
        if (arch_.kind == ArchKind::SmallCnn) {
            for (std::size_t i = 0; i < hidden; ++i) conv_forward(i);
        } else {
            for (std::size_t i = 0; i < hidden; ++i) {
                dense(p_.layers[i], acts_[i], preacts_[i]);
                auto& out = acts_[i + 1];
                for (std::size_t o = 0; o < out.size(); ++o)
                    out[o] = preacts_[i][o] > 0.0 ? preacts_[i][o] : 0.0;
                if (skip_source_[i] != npos) {
                    const auto& src = acts_[skip_source_[i]];
                    for (std::size_t o = 0; o < out.size(); ++o) out[o] += src[o];
                }
            }
        }
        dense(p_.layers[hidden], acts_[hidden], logits_);
    }

    // Sample loss; also fills probs_ with softmax(logits).
    double loss_and_probs(std::int32_t label) {
        const double m = *std::max_element(logits_.begin(), logits_.end());
        double sum = 0.0;
        for (std::size_t c = 0; c < logits_.size(); ++c) {
            probs_[c] = std::exp(logits_[c] - m);
            sum += probs_[c];
        }
        for (double& v : probs_) v /= sum;
        return m + std::log(sum) - logits_[static_cast<std::size_t>(label)];
    }

    std::size_t predicted_class() const {
        return static_cast<std::size_t>(
            std::max_element(logits_.begin(), logits_.end()) - logits_.begin());
    }

    const std::vector<double>& logits() const { return logits_; }

    // Accumulates d(sample loss)/d(params) into grads (unscaled sum).
    // forward() and loss_and_probs() must have run for this sample.
    void backward(std::int32_t label, GradSet& grads) {
        const std::size_t hidden = arch_.hidden_widths.size();

        // dL/dlogits = softmax - onehot
        dlogits_.resize(logits_.size());
        for (std::size_t c = 0; c < logits_.size(); ++c) dlogits_[c] = probs_[c];
        dlogits_[static_cast<std::size_t>(label)] -= 1.0;

        dacts_.resize(acts_.size());
        for (std::size_t i = 0; i < acts_.size(); ++i) dacts_[i].assign(acts_[i].size(), 0.0);

        dense_backward(p_.layers[hidden], grads.layers[hidden], acts_[hidden], dlogits_,
                       dacts_[hidden]);

        if (arch_.kind == ArchKind::SmallCnn) {
            for (std::size_t i = hidden; i-- > 0;) conv_backward(i, grads.layers[i]);
        } else {
            for (std::size_t i = hidden; i-- > 0;) {
                auto& g_out = dacts_[i + 1];
                if (skip_source_[i] != npos) {
                    auto& g_src = dacts_[skip_source_[i]];
                    for (std::size_t o = 0; o < g_out.size(); ++o) g_src[o] += g_out[o];
                }
                dz_.resize(g_out.size());
                for (std::size_t o = 0; o < g_out.size(); ++o)
                    dz_[o] = preacts_[i][o] > 0.0 ? g_out[o] : 0.0;
                dense_backward(p_.layers[i], grads.layers[i], acts_[i], dz_, dacts_[i]);
            }
        }
    }

private:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    struct Dim {
        std::size_t c, h, w;
    };

    void dense(const LayerParams& layer, const std::vector<double>& in, std::vector<double>& out) {
        const Tensor& weight = layer.tensors[0];
        const Tensor& bias = layer.tensors[1];
        const std::size_t rows = weight.shape[0];
        const std::size_t cols = weight.shape[1];
        for (std::size_t o = 0; o < rows; ++o) {
            double acc = static_cast<double>(bias.data[o]);
            const float* w = weight.data.data() + o * cols;
            for (std::size_t k = 0; k < cols; ++k) acc += static_cast<double>(w[k]) * in[k];
            out[o] = acc;
        }
    }

    void dense_backward(const LayerParams& layer, GradLayer& grad, const std::vector<double>& in,
                        const std::vector<double>& dout, std::vector<double>& din) {
        const Tensor& weight = layer.tensors[0];
        const std::size_t rows = weight.shape[0];
        const std::size_t cols = weight.shape[1];
        auto& gw = grad.tensors[0].data;
        auto& gb = grad.tensors[1].data;
        for (std::size_t o = 0; o < rows; ++o) {
            const double d = dout[o];
            gb[o] += d;
            double* gwr = gw.data() + o * cols;
            const float* w = weight.data.data() + o * cols;
            for (std::size_t k = 0; k < cols; ++k) {
                gwr[k] += d * in[k];
                din[k] += d * static_cast<double>(w[k]);
            }
        }
    }

    // 3x3 stride-1 same-padding conv + ReLU + 2x2 mean pool.
    void conv_forward(std::size_t i) {
        const Dim in = dims_[i];
        const Dim out = dims_[i + 1];  // pooled dims; conv keeps in.h x in.w
        const Tensor& weight = p_.layers[i].tensors[0];
        const Tensor& bias = p_.layers[i].tensors[1];
        auto& z = preacts_[i];
        const auto& a = acts_[i];

        for (std::size_t co = 0; co < out.c; ++co) {
            for (std::size_t y = 0; y < in.h; ++y) {
                for (std::size_t x = 0; x < in.w; ++x) {
                    double acc = static_cast<double>(bias.data[co]);
                    for (std::size_t ci = 0; ci < in.c; ++ci) {
                        const float* wk = weight.data.data() + ((co * in.c + ci) * 9);
                        const double* ap = a.data() + ci * in.h * in.w;
                        for (int dy = -1; dy <= 1; ++dy) {
                            const long yy = static_cast<long>(y) + dy;
                            if (yy < 0 || yy >= static_cast<long>(in.h)) continue;
                            for (int dx = -1; dx <= 1; ++dx) {
                                const long xx = static_cast<long>(x) + dx;
                                if (xx < 0 || xx >= static_cast<long>(in.w)) continue;
                                acc += static_cast<double>(wk[(dy + 1) * 3 + (dx + 1)]) *
                                       ap[yy * static_cast<long>(in.w) + xx];
                            }
                        }
                    }
                    z[(co * in.h + y) * in.w + x] = acc;
                }
            }
        }
        // ReLU + mean pool
        auto& pooled = acts_[i + 1];
        for (std::size_t co = 0; co < out.c; ++co) {
            for (std::size_t py = 0; py < out.h; ++py) {
                for (std::size_t px = 0; px < out.w; ++px) {
                    double acc = 0.0;
                    for (std::size_t sy = 0; sy < 2; ++sy) {
                        for (std::size_t sx = 0; sx < 2; ++sx) {
                            const double v = z[(co * in.h + 2 * py + sy) * in.w + 2 * px + sx];
                            acc += v > 0.0 ? v : 0.0;
                        }
                    }
                    pooled[(co * out.h + py) * out.w + px] = 0.25 * acc;
                }
            }
        }
    }

    void conv_backward(std::size_t i, GradLayer& grad) {
        const Dim in = dims_[i];
        const Dim out = dims_[i + 1];
        const Tensor& weight = p_.layers[i].tensors[0];
        const auto& z = preacts_[i];
        const auto& a = acts_[i];
        const auto& dpool = dacts_[i + 1];
        auto& din = dacts_[i];
        auto& gw = grad.tensors[0].data;
        auto& gb = grad.tensors[1].data;

        // Un-pool + ReLU gate -> dz
        dz_.assign(z.size(), 0.0);
        for (std::size_t co = 0; co < out.c; ++co) {
            for (std::size_t py = 0; py < out.h; ++py) {
                for (std::size_t px = 0; px < out.w; ++px) {
                    const double g = 0.25 * dpool[(co * out.h + py) * out.w + px];
                    for (std::size_t sy = 0; sy < 2; ++sy) {
                        for (std::size_t sx = 0; sx < 2; ++sx) {
                            const std::size_t idx = (co * in.h + 2 * py + sy) * in.w + 2 * px + sx;
                            if (z[idx] > 0.0) dz_[idx] = g;
                        }
                    }
                }
            }
        }
        for (std::size_t co = 0; co < out.c; ++co) {
            for (std::size_t y = 0; y < in.h; ++y) {
                for (std::size_t x = 0; x < in.w; ++x) {
                    const double d = dz_[(co * in.h + y) * in.w + x];
                    if (d == 0.0) continue;
                    gb[co] += d;
                    for (std::size_t ci = 0; ci < in.c; ++ci) {
                        double* gwk = gw.data() + ((co * in.c + ci) * 9);
                        const float* wk = weight.data.data() + ((co * in.c + ci) * 9);
                        const std::size_t abase = ci * in.h * in.w;
                        for (int dy = -1; dy <= 1; ++dy) {
                            const long yy = static_cast<long>(y) + dy;
                            if (yy < 0 || yy >= static_cast<long>(in.h)) continue;
                            for (int dx = -1; dx <= 1; ++dx) {
                                const long xx = static_cast<long>(x) + dx;
                                if (xx < 0 || xx >= static_cast<long>(in.w)) continue;
                                const std::size_t aidx =
                                    abase + static_cast<std::size_t>(yy) * in.w +
                                    static_cast<std::size_t>(xx);
                                gwk[(dy + 1) * 3 + (dx + 1)] += d * a[aidx];
                                din[aidx] += d * static_cast<double>(wk[(dy + 1) * 3 + (dx + 1)]);
                            }
                        }
                    }
                }
            }
        }
    }

    const ParamSet& p_;
    const Architecture& arch_;
    std::vector<std::vector<double>> acts_;     // acts_[0] = input
    std::vector<std::vector<double>> preacts_;  // pre-ReLU, per hidden layer
    std::vector<std::vector<double>> dacts_;
    std::vector<double> logits_, probs_, dlogits_, dz_;
    std::vector<std::size_t> skip_source_;
    std::vector<Dim> dims_;  // small-cnn activation geometry
};

void require_dataset_compatible(const ParamSet& params, const data::LabeledDataset& ds) {
    if (ds.feature_dim != params.arch.input_dim)
        throw CompositionError("dataset feature_dim does not match architecture input_dim");
    if (ds.num_classes > params.arch.num_classes)
        throw CompositionError("dataset has more classes than the architecture outputs");
}

}  // namespace

std::vector<double> forward_logits(const ParamSet& params, std::span<const float> input) {
    if (input.size() != params.arch.input_dim)
        throw CompositionError("input size does not match architecture input_dim");
    Engine eng(params);
    eng.forward(input);
    return eng.logits();
}

EvalResult evaluate(const ParamSet& params, const data::LabeledDataset& dataset) {
    if (dataset.size() == 0) throw DomainError("evaluate: dataset is empty");
    require_dataset_compatible(params, dataset);

    Engine eng(params);
    double loss_sum = 0.0;
    std::size_t wrong = 0;
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        eng.forward(dataset.sample(i));
        loss_sum += eng.loss_and_probs(dataset.labels[i]);
        if (eng.predicted_class() != static_cast<std::size_t>(dataset.labels[i])) ++wrong;
    }
    EvalResult r;
    r.n_samples = dataset.size();
    r.loss = loss_sum / static_cast<double>(r.n_samples);
    r.error = static_cast<double>(wrong) / static_cast<double>(r.n_samples);
    return r;
}

BackpropResult backprop(const ParamSet& params, const BatchView& batch) {
    if (batch.size() == 0) throw DomainError("backprop: batch is empty");
    require_dataset_compatible(params, *batch.dataset);

    Engine eng(params);
    BackpropResult result;
    result.grads = zeros_like(params);
    double loss_sum = 0.0;
    for (std::uint32_t idx : batch.indices) {
        eng.forward(batch.dataset->sample(idx));
        loss_sum += eng.loss_and_probs(batch.dataset->labels[idx]);
        eng.backward(batch.dataset->labels[idx], result.grads);
    }
    const double inv = 1.0 / static_cast<double>(batch.size());
    result.loss = loss_sum * inv;
    for (auto& layer : result.grads.layers)
        for (auto& t : layer.tensors)
            for (double& v : t.data) v *= inv;
    return result;
}

GradSet gradients(const ParamSet& params, const BatchView& batch) {
    return backprop(params, batch).grads;
}

}  // namespace lmc::nn
