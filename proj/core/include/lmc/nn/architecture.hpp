#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace lmc::nn {

enum class ArchKind { PlainMlp, ResidualMlp, SmallCnn };

std::string to_string(ArchKind kind);
ArchKind arch_kind_from_string(const std::string& s);

/// Network shape description. A "layer" throughout this project is one named
/// weight tensor plus its bias; they are always averaged together.
///
/// plain-mlp / residual-mlp: hidden_widths are the widths of the fully
/// connected hidden layers (ReLU), followed by a linear output layer.
/// residual-mlp additionally wraps every residual_period consecutive hidden
/// layers, starting after the stem (hidden layer 0), in an identity skip.
///
/// small-cnn: hidden_widths are channel counts of 3x3 stride-1 same-padding
/// conv layers, each followed by ReLU and 2x2 mean pooling; a linear output
/// layer follows the last pool. Input geometry comes from input_channels x
/// input_height x input_width, which must multiply to input_dim.
struct Architecture {
    ArchKind kind = ArchKind::PlainMlp;
    std::size_t input_dim = 0;
    std::vector<std::size_t> hidden_widths;
    std::size_t num_classes = 0;
    std::size_t residual_period = 0;  // 0 = absent; residual-mlp only
    std::size_t input_channels = 0;   // small-cnn only
    std::size_t input_height = 0;
    std::size_t input_width = 0;
};

/// Throws ConfigError on any violated invariant (widths mismatch inside a
/// residual span, fewer than 3 layers, bad conv geometry, ...).
void validate(const Architecture& arch);

/// Number of named (weight, bias) layers: hidden layers plus the output layer.
std::size_t layer_count(const Architecture& arch);

/// Canonical input-to-output layer names: fc1..fcH/out for MLPs,
/// conv1..convH/out for the CNN.
std::vector<std::string> layer_names(const Architecture& arch);

/// Residual spans as (first hidden layer, one-past-last hidden layer) pairs.
/// Empty for non-residual kinds and for trailing partial groups.
std::vector<std::pair<std::size_t, std::size_t>> residual_spans(const Architecture& arch);

/// Canonical text form, e.g. "residual-mlp|in=20|hidden=64,64,64|classes=10|period=2".
std::string descriptor(const Architecture& arch);

/// FNV-1a hash of the descriptor; binds a ParamSet to its Architecture.
std::uint64_t architecture_id(const Architecture& arch);

}  // namespace lmc::nn
