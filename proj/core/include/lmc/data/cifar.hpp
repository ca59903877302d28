#pragma once

#include <cstdint>
#include <string>

#include "lmc/data/dataset.hpp"

namespace lmc::data {

/// Loads a per-class uniform subsample (without replacement) from CIFAR-10
/// binary batches. path may be a single .bin file or a directory holding
/// data_batch_1.bin .. data_batch_5.bin. Records are 3073 bytes: one label
/// byte (0-9) then 3072 bytes of row-major R,G,B planes of a 32x32 image.
/// Pixels are scaled to [0,1] and the per-channel mean of the selected
/// subset is subtracted. Bit-deterministic in (file contents, seed).
LabeledDataset load_cifar_subset(const std::string& path, std::size_t samples_per_class,
                                 std::uint64_t seed);

}  // namespace lmc::data
