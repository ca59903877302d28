#include "lmc/nn/params.hpp"

#include <cmath>
#include <cstring>
#include <sstream>

#include "lmc/errors.hpp"
#include "lmc/rng.hpp"

namespace lmc::nn {

std::size_t ParamSet::param_count() const {
    std::size_t n = 0;
    for (const auto& layer : layers)
        for (const auto& t : layer.tensors) n += t.numel();
    return n;
}

namespace {

// (weight shape, bias shape, fan_in) per named layer, input to output.
struct LayerSpec {
    std::vector<std::size_t> weight_shape;
    std::vector<std::size_t> bias_shape;
    std::size_t fan_in;
};

std::vector<LayerSpec> layer_specs(const Architecture& arch) {
    std::vector<LayerSpec> specs;
    if (arch.kind == ArchKind::SmallCnn) {
        std::size_t c = arch.input_channels, h = arch.input_height, w = arch.input_width;
        for (std::size_t ch : arch.hidden_widths) {
            specs.push_back({{ch, c, 3, 3}, {ch}, c * 9});
            c = ch;
            h /= 2;
            w /= 2;
        }
        const std::size_t flat = c * h * w;
        specs.push_back({{arch.num_classes, flat}, {arch.num_classes}, flat});
    } else {
        std::size_t in = arch.input_dim;
        for (std::size_t width : arch.hidden_widths) {
            specs.push_back({{width, in}, {width}, in});
            in = width;
        }
        specs.push_back({{arch.num_classes, in}, {arch.num_classes}, in});
    }
    return specs;
}

}  // namespace

std::vector<std::vector<std::vector<std::size_t>>> layer_shapes(const Architecture& arch) {
    std::vector<std::vector<std::vector<std::size_t>>> out;
    for (const auto& spec : layer_specs(arch)) out.push_back({spec.weight_shape, spec.bias_shape});
    return out;
}

ParamSet init_params(const Architecture& arch, std::uint64_t seed) {
    validate(arch);
    ParamSet params;
    params.arch = arch;
    params.architecture_id = architecture_id(arch);
    Rng rng(seed);

    const auto names = layer_names(arch);
    const auto specs = layer_specs(arch);
    for (std::size_t i = 0; i < specs.size(); ++i) {
        LayerParams layer;
        layer.name = names[i];
        Tensor weight(specs[i].weight_shape);
        const double s = std::sqrt(1.0 / static_cast<double>(specs[i].fan_in));
        for (float& v : weight.data) v = static_cast<float>(rng.uniform(-s, s));
        layer.tensors.push_back(std::move(weight));
        layer.tensors.emplace_back(specs[i].bias_shape);  // biases zero
        params.layers.push_back(std::move(layer));
    }
    return params;
}

GradSet zeros_like(const ParamSet& params) {
    GradSet grads;
    for (const auto& layer : params.layers) {
        GradLayer g;
        g.name = layer.name;
        for (const auto& t : layer.tensors) g.tensors.emplace_back(t.shape);
        grads.layers.push_back(std::move(g));
    }
    return grads;
}

void require_composable(const ParamSet& a, const ParamSet& b) {
    if (a.architecture_id != b.architecture_id)
        throw CompositionError("parameter sets belong to different architectures");
    if (a.layers.size() != b.layers.size())
        throw CompositionError("parameter sets have different layer counts");
    for (std::size_t i = 0; i < a.layers.size(); ++i) {
        const auto& la = a.layers[i];
        const auto& lb = b.layers[i];
        if (la.name != lb.name || la.tensors.size() != lb.tensors.size()) {
            throw CompositionError("layer mismatch at '" + la.name + "'");
        }
        for (std::size_t t = 0; t < la.tensors.size(); ++t) {
            if (!la.tensors[t].same_shape(lb.tensors[t])) {
                std::ostringstream os;
                os << "shape mismatch in layer '" << la.name << "' tensor " << t;
                throw CompositionError(os.str());
            }
        }
    }
}

bool bitwise_equal(const ParamSet& a, const ParamSet& b) {
    if (a.architecture_id != b.architecture_id || a.layers.size() != b.layers.size()) return false;
    for (std::size_t i = 0; i < a.layers.size(); ++i) {
        if (a.layers[i].name != b.layers[i].name) return false;
        if (a.layers[i].tensors.size() != b.layers[i].tensors.size()) return false;
        for (std::size_t t = 0; t < a.layers[i].tensors.size(); ++t) {
            const auto& ta = a.layers[i].tensors[t];
            const auto& tb = b.layers[i].tensors[t];
            if (!ta.same_shape(tb)) return false;
            if (ta.numel() &&
                std::memcmp(ta.data.data(), tb.data.data(), ta.numel() * sizeof(float)) != 0)
                return false;
        }
    }
    return true;
}

}  // namespace lmc::nn
