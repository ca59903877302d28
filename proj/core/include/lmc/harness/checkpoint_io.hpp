#pragma once

#include <string>

#include "lmc/nn/trainer.hpp"

namespace lmc::harness {

/// Versioned binary checkpoint container:
///   magic "LMCCKPT\0" | u32 version | u64 meta_len | metadata JSON |
///   u32 layer_count | per layer { name, per tensor { shape, byte offset } } |
///   u64 payload_len | flat little-endian float32 payload
/// All integers little-endian. save then load is bit-identical. Loading
/// rejects bad magic, version mismatches (reporting found and expected),
/// truncation and inconsistent layer-table offsets, each with the byte
/// offset of the problem.
void save_checkpoint(const nn::Checkpoint& checkpoint, const std::string& path);

nn::Checkpoint load_checkpoint(const std::string& path);

}  // namespace lmc::harness
