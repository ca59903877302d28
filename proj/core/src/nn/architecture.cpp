#include "lmc/nn/architecture.hpp"

#include <sstream>

#include "lmc/errors.hpp"
#include "lmc/rng.hpp"

namespace lmc::nn {

std::string to_string(ArchKind kind) {
    switch (kind) {
        case ArchKind::PlainMlp: return "plain-mlp";
        case ArchKind::ResidualMlp: return "residual-mlp";
        case ArchKind::SmallCnn: return "small-cnn";
    }
    return "?";
}

ArchKind arch_kind_from_string(const std::string& s) {
    if (s == "plain-mlp") return ArchKind::PlainMlp;
    if (s == "residual-mlp") return ArchKind::ResidualMlp;
    if (s == "small-cnn") return ArchKind::SmallCnn;
    throw ConfigError("unknown architecture kind: " + s);
}

std::size_t layer_count(const Architecture& arch) { return arch.hidden_widths.size() + 1; }

std::vector<std::pair<std::size_t, std::size_t>> residual_spans(const Architecture& arch) {
    std::vector<std::pair<std::size_t, std::size_t>> spans;
    if (arch.kind != ArchKind::ResidualMlp || arch.residual_period == 0) return spans;
    // Hidden layer 0 is the stem (it changes dimension from input_dim);
    // full groups of residual_period layers after it get a skip.
    const std::size_t h = arch.hidden_widths.size();
    std::size_t start = 1;
    while (start + arch.residual_period <= h) {
        spans.emplace_back(start, start + arch.residual_period);
        start += arch.residual_period;
    }
    return spans;
}

void validate(const Architecture& arch) {
    if (arch.input_dim == 0) throw ConfigError("architecture: input_dim must be positive");
    if (arch.num_classes < 2) throw ConfigError("architecture: num_classes must be >= 2");
    for (std::size_t w : arch.hidden_widths)
        if (w == 0) throw ConfigError("architecture: hidden widths must be positive");
    if (layer_count(arch) < 3)
        throw ConfigError("architecture: needs at least 3 layers (>= 2 hidden) so that "
                          "shallow/middle/deep are distinct");

    switch (arch.kind) {
        case ArchKind::PlainMlp:
            if (arch.residual_period != 0)
                throw ConfigError("architecture: residual_period is residual-mlp only");
            break;
        case ArchKind::ResidualMlp: {
            if (arch.residual_period == 0)
                throw ConfigError("architecture: residual-mlp requires residual_period >= 1");
            // Every activation inside a skipped span must have one width,
            // including the activation entering the span.
            for (auto [lo, hi] : residual_spans(arch)) {
                const std::size_t entry_width = arch.hidden_widths[lo - 1];
                for (std::size_t i = lo; i < hi; ++i) {
                    if (arch.hidden_widths[i] != entry_width) {
                        std::ostringstream os;
                        os << "architecture: residual span over hidden layers [" << lo << "," << hi
                           << ") mixes widths " << entry_width << " and " << arch.hidden_widths[i];
                        throw ConfigError(os.str());
                    }
                }
            }
            break;
        }
        case ArchKind::SmallCnn: {
            if (arch.residual_period != 0)
                throw ConfigError("architecture: residual_period is residual-mlp only");
            if (arch.input_channels == 0 || arch.input_height == 0 || arch.input_width == 0)
                throw ConfigError("architecture: small-cnn requires input_channels/height/width");
            if (arch.input_channels * arch.input_height * arch.input_width != arch.input_dim)
                throw ConfigError("architecture: input_dim must equal channels*height*width");
            // Each conv layer is followed by a 2x2 pool; dims must stay even.
            std::size_t h = arch.input_height, w = arch.input_width;
            for (std::size_t i = 0; i < arch.hidden_widths.size(); ++i) {
                if (h % 2 != 0 || w % 2 != 0) {
                    std::ostringstream os;
                    os << "architecture: feature map " << h << "x" << w << " before conv layer "
                       << (i + 1) << " is not 2x2-poolable";
                    throw ConfigError(os.str());
                }
                h /= 2;
                w /= 2;
            }
            if (h == 0 || w == 0)
                throw ConfigError("architecture: feature map pooled away to zero size");
            break;
        }
    }
}

std::vector<std::string> layer_names(const Architecture& arch) {
    std::vector<std::string> names;
    const std::string stem = (arch.kind == ArchKind::SmallCnn) ? "conv" : "fc";
    for (std::size_t i = 0; i < arch.hidden_widths.size(); ++i)
        names.push_back(stem + std::to_string(i + 1));
    names.push_back("out");
    return names;
}

std::string descriptor(const Architecture& arch) {
    std::ostringstream os;
    os << to_string(arch.kind) << "|in=" << arch.input_dim << "|hidden=";
    for (std::size_t i = 0; i < arch.hidden_widths.size(); ++i) {
        if (i) os << ",";
        os << arch.hidden_widths[i];
    }
    os << "|classes=" << arch.num_classes;
    if (arch.kind == ArchKind::ResidualMlp) os << "|period=" << arch.residual_period;
    if (arch.kind == ArchKind::SmallCnn)
        os << "|img=" << arch.input_channels << "x" << arch.input_height << "x" << arch.input_width;
    return os.str();
}

std::uint64_t architecture_id(const Architecture& arch) { return fnv1a64(descriptor(arch)); }

}  // namespace lmc::nn
