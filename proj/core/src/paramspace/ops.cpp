#include "lmc/paramspace/ops.hpp"

#include <cmath>

#include "lmc/errors.hpp"

namespace lmc::paramspace {

nn::ParamSet masked_average(const nn::ParamSet& a, const nn::ParamSet& b, const LayerMask& mask) {
    nn::require_composable(a, b);
    for (std::size_t layer : mask.averaged_layers)
        if (layer >= a.layers.size())
            throw DomainError("masked_average: mask layer index " + std::to_string(layer) +
                              " out of range");

    nn::ParamSet out = (mask.donor == Donor::First) ? a : b;
    for (std::size_t li : mask.averaged_layers) {
        for (std::size_t t = 0; t < out.layers[li].tensors.size(); ++t) {
            const auto& ta = a.layers[li].tensors[t].data;
            const auto& tb = b.layers[li].tensors[t].data;
            auto& to = out.layers[li].tensors[t].data;
            for (std::size_t k = 0; k < to.size(); ++k) {
                to[k] = static_cast<float>(
                    (static_cast<double>(ta[k]) + static_cast<double>(tb[k])) * 0.5);
            }
        }
    }
    return out;
}

nn::ParamSet interpolate(const nn::ParamSet& a, const nn::ParamSet& b, double alpha) {
    nn::require_composable(a, b);
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw DomainError("interpolate: alpha must be in [0,1]");

    const double wa = 1.0 - alpha;
    const double wb = alpha;
    nn::ParamSet out = a;
    for (std::size_t li = 0; li < out.layers.size(); ++li) {
        for (std::size_t t = 0; t < out.layers[li].tensors.size(); ++t) {
            const auto& ta = a.layers[li].tensors[t].data;
            const auto& tb = b.layers[li].tensors[t].data;
            auto& to = out.layers[li].tensors[t].data;
            for (std::size_t k = 0; k < to.size(); ++k) {
                to[k] = static_cast<float>(wa * static_cast<double>(ta[k]) +
                                           wb * static_cast<double>(tb[k]));
            }
        }
    }
    return out;
}

DistanceReport distances(const nn::ParamSet& a, const nn::ParamSet& b) {
    nn::require_composable(a, b);

    DistanceReport report;
    double full_d2 = 0.0, full_dot = 0.0, full_na = 0.0, full_nb = 0.0;
    for (std::size_t li = 0; li < a.layers.size(); ++li) {
        double d2 = 0.0, dot = 0.0, na = 0.0, nb = 0.0;
        for (std::size_t t = 0; t < a.layers[li].tensors.size(); ++t) {
            const auto& ta = a.layers[li].tensors[t].data;
            const auto& tb = b.layers[li].tensors[t].data;
            for (std::size_t k = 0; k < ta.size(); ++k) {
                const double va = static_cast<double>(ta[k]);
                const double vb = static_cast<double>(tb[k]);
                const double diff = va - vb;
                d2 += diff * diff;
                dot += va * vb;
                na += va * va;
                nb += vb * vb;
            }
        }
        LayerDistance ld;
        ld.name = a.layers[li].name;
        ld.euclidean = std::sqrt(d2);
        if (na > 0.0 && nb > 0.0) ld.cosine = dot / (std::sqrt(na) * std::sqrt(nb));
        report.per_layer.push_back(std::move(ld));
        full_d2 += d2;
        full_dot += dot;
        full_na += na;
        full_nb += nb;
    }
    report.full.name = "(full)";
    report.full.euclidean = std::sqrt(full_d2);
    if (full_na > 0.0 && full_nb > 0.0)
        report.full.cosine = full_dot / (std::sqrt(full_na) * std::sqrt(full_nb));
    return report;
}

}  // namespace lmc::paramspace
