#include "lmc/data/cifar.hpp"

#include <array>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "lmc/errors.hpp"
#include "lmc/rng.hpp"

namespace lmc::data {

namespace {

constexpr std::size_t kRecordBytes = 3073;
constexpr std::size_t kPixelBytes = 3072;
constexpr std::size_t kNumClasses = 10;

std::vector<std::string> batch_files(const std::string& path) {
    namespace fs = std::filesystem;
    if (fs::is_directory(path)) {
        std::vector<std::string> files;
        for (int i = 1; i <= 5; ++i) {
            const fs::path p = fs::path(path) / ("data_batch_" + std::to_string(i) + ".bin");
            if (fs::exists(p)) files.push_back(p.string());
        }
        if (files.empty())
            throw FormatError("load_cifar_subset: no data_batch_*.bin files under " + path);
        return files;
    }
    if (!fs::exists(path)) throw FormatError("load_cifar_subset: no such file: " + path);
    return {path};
}

}  // namespace

LabeledDataset load_cifar_subset(const std::string& path, std::size_t samples_per_class,
                                 std::uint64_t seed) {
    if (samples_per_class == 0)
        throw DomainError("load_cifar_subset: samples_per_class must be >= 1");

    // Read and validate all records, bucketed per class.
    std::array<std::vector<std::vector<unsigned char>>, kNumClasses> per_class;
    for (const std::string& file : batch_files(path)) {
        std::ifstream in(file, std::ios::binary);
        if (!in) throw FormatError("load_cifar_subset: cannot open " + file);
        std::vector<char> bytes((std::istreambuf_iterator<char>(in)),
                                std::istreambuf_iterator<char>());
        if (bytes.size() % kRecordBytes != 0) {
            std::ostringstream os;
            os << "load_cifar_subset: " << file << " has " << bytes.size()
               << " bytes, not a multiple of " << kRecordBytes
               << "; partial record starts at byte offset "
               << (bytes.size() / kRecordBytes) * kRecordBytes;
            throw FormatError(os.str());
        }
        for (std::size_t off = 0; off < bytes.size(); off += kRecordBytes) {
            const unsigned char label = static_cast<unsigned char>(bytes[off]);
            if (label >= kNumClasses) {
                std::ostringstream os;
                os << "load_cifar_subset: " << file << ": label byte " << int(label)
                   << " >= 10 at byte offset " << off;
                throw FormatError(os.str());
            }
            per_class[label].emplace_back(bytes.begin() + static_cast<long>(off) + 1,
                                          bytes.begin() + static_cast<long>(off + kRecordBytes));
        }
    }

    // Seeded uniform subsample without replacement, per class.
    Rng rng(seed);
    LabeledDataset ds;
    ds.feature_dim = kPixelBytes;
    ds.num_classes = kNumClasses;
    ds.features.reserve(kNumClasses * samples_per_class * kPixelBytes);
    ds.labels.reserve(kNumClasses * samples_per_class);
    for (std::size_t c = 0; c < kNumClasses; ++c) {
        if (per_class[c].size() < samples_per_class) {
            std::ostringstream os;
            os << "load_cifar_subset: class " << c << " has only " << per_class[c].size()
               << " samples, requested " << samples_per_class;
            throw DomainError(os.str());
        }
        std::vector<std::uint32_t> idx(per_class[c].size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<std::uint32_t>(i);
        rng.shuffle(idx);
        for (std::size_t k = 0; k < samples_per_class; ++k) {
            const auto& pix = per_class[c][idx[k]];
            for (std::size_t b = 0; b < kPixelBytes; ++b)
                ds.features.push_back(static_cast<float>(pix[b]) / 255.0f);
            ds.labels.push_back(static_cast<std::int32_t>(c));
        }
    }

    // Channel means over the selected subset.
    const std::size_t plane = 1024;
    std::array<double, 3> mean{0.0, 0.0, 0.0};
    const std::size_t n = ds.labels.size();
    for (std::size_t i = 0; i < n; ++i) {
        const float* f = ds.features.data() + i * kPixelBytes;
        for (std::size_t ch = 0; ch < 3; ++ch)
            for (std::size_t p = 0; p < plane; ++p) mean[ch] += f[ch * plane + p];
    }
    for (std::size_t ch = 0; ch < 3; ++ch)
        mean[ch] /= static_cast<double>(n * plane);
    for (std::size_t i = 0; i < n; ++i) {
        float* f = ds.features.data() + i * kPixelBytes;
        for (std::size_t ch = 0; ch < 3; ++ch)
            for (std::size_t p = 0; p < plane; ++p)
                f[ch * plane + p] = static_cast<float>(f[ch * plane + p] - mean[ch]);
    }
    return ds;
}

}  // namespace lmc::data
