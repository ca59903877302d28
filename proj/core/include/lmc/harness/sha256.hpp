#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace lmc::harness {

/// Incremental SHA-256 (FIPS 180-4).
class Sha256 {
public:
    Sha256();
    void update(const void* data, std::size_t len);
    std::array<std::uint8_t, 32> digest();  // finalizes; one-shot

    static std::string hex(const std::array<std::uint8_t, 32>& d);
    static std::string hash_hex(const void* data, std::size_t len);
    static std::string hash_hex(const std::string& s);
    static std::string hash_file_hex(const std::string& path);

private:
    void process_block(const std::uint8_t* block);

    std::array<std::uint32_t, 8> state_;
    std::array<std::uint8_t, 64> buffer_;
    std::size_t buffered_ = 0;
    std::uint64_t total_bytes_ = 0;
    bool finalized_ = false;
};

}  // namespace lmc::harness
