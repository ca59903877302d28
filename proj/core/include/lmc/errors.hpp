#pragma once

#include <stdexcept>
#include <string>

namespace lmc {

/// Invalid model/experiment configuration (bad architecture, bad config field).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Two parameter sets (or a parameter set and a dataset) cannot be combined:
/// architecture ids, layer names or tensor shapes disagree.
struct CompositionError : std::runtime_error {
    explicit CompositionError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Argument outside its mathematical domain (alpha out of [0,1], empty
/// dataset, step past the schedule end, impossible partition constraints).
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Non-finite value encountered where finite arithmetic is required.
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed on-disk data (checkpoint container, CIFAR batch, grid CSV).
struct FormatError : std::runtime_error {
    explicit FormatError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Checkpoint sequences do not cover the same epochs.
struct AlignmentError : std::runtime_error {
    explicit AlignmentError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Experiment config failed validation; the message names the field.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace lmc
