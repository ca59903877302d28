#pragma once

#include <cstddef>
#include <numeric>
#include <vector>

namespace lmc {

/// Dense row-major tensor. Parameters are stored in float (the checkpoint
/// payload format); gradients and momentum buffers use double.
template <typename T>
struct TensorT {
    std::vector<std::size_t> shape;
    std::vector<T> data;

    TensorT() = default;
    explicit TensorT(std::vector<std::size_t> s)
        : shape(std::move(s)), data(numel_of(shape), T(0)) {}

    static std::size_t numel_of(const std::vector<std::size_t>& s) {
        std::size_t n = 1;
        for (std::size_t d : s) n *= d;
        return s.empty() ? 0 : n;
    }

    std::size_t numel() const { return data.size(); }

    bool same_shape(const TensorT& other) const { return shape == other.shape; }
};

using Tensor = TensorT<float>;
using DTensor = TensorT<double>;

}  // namespace lmc
