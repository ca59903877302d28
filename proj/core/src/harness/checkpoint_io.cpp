#include "lmc/harness/checkpoint_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "lmc/errors.hpp"

namespace lmc::harness {

namespace {

using json = nlohmann::json;

constexpr char kMagic[8] = {'L', 'M', 'C', 'C', 'K', 'P', 'T', '\0'};
constexpr std::uint32_t kVersion = 1;

class Writer {
public:
    void raw(const void* data, std::size_t len) {
        const char* p = static_cast<const char*>(data);
        bytes_.insert(bytes_.end(), p, p + len);
    }
    void u32(std::uint32_t v) {
        for (int i = 0; i < 4; ++i) bytes_.push_back(static_cast<char>(v >> (8 * i)));
    }
    void u64(std::uint64_t v) {
        for (int i = 0; i < 8; ++i) bytes_.push_back(static_cast<char>(v >> (8 * i)));
    }
    void f32(float v) { u32(std::bit_cast<std::uint32_t>(v)); }

    const std::vector<char>& bytes() const { return bytes_; }

private:
    std::vector<char> bytes_;
};

class Reader {
public:
    Reader(const std::vector<char>& bytes) : bytes_(bytes) {}

    std::size_t offset() const { return off_; }

    void raw(void* out, std::size_t len, const char* what) {
        if (off_ + len > bytes_.size()) {
            std::ostringstream os;
            os << "checkpoint: unexpected end of file reading " << what << " at byte offset "
               << off_ << " (file has " << bytes_.size() << " bytes)";
            throw FormatError(os.str());
        }
        std::memcpy(out, bytes_.data() + off_, len);
        off_ += len;
    }
    std::uint32_t u32(const char* what) {
        std::uint8_t b[4];
        raw(b, 4, what);
        return std::uint32_t(b[0]) | (std::uint32_t(b[1]) << 8) | (std::uint32_t(b[2]) << 16) |
               (std::uint32_t(b[3]) << 24);
    }
    std::uint64_t u64(const char* what) {
        std::uint8_t b[8];
        raw(b, 8, what);
        std::uint64_t v = 0;
        for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
        return v;
    }
    float f32(const char* what) { return std::bit_cast<float>(u32(what)); }

    bool at_end() const { return off_ == bytes_.size(); }

private:
    const std::vector<char>& bytes_;
    std::size_t off_ = 0;
};

json arch_to_json(const nn::Architecture& arch) {
    json j;
    j["kind"] = nn::to_string(arch.kind);
    j["input_dim"] = arch.input_dim;
    j["hidden_widths"] = arch.hidden_widths;
    j["num_classes"] = arch.num_classes;
    if (arch.kind == nn::ArchKind::ResidualMlp) j["residual_period"] = arch.residual_period;
    if (arch.kind == nn::ArchKind::SmallCnn) {
        j["input_channels"] = arch.input_channels;
        j["input_height"] = arch.input_height;
        j["input_width"] = arch.input_width;
    }
    return j;
}

nn::Architecture arch_from_json(const json& j) {
    nn::Architecture arch;
    arch.kind = nn::arch_kind_from_string(j.at("kind").get<std::string>());
    arch.input_dim = j.at("input_dim").get<std::size_t>();
    arch.hidden_widths = j.at("hidden_widths").get<std::vector<std::size_t>>();
    arch.num_classes = j.at("num_classes").get<std::size_t>();
    if (j.contains("residual_period")) arch.residual_period = j.at("residual_period");
    if (j.contains("input_channels")) {
        arch.input_channels = j.at("input_channels");
        arch.input_height = j.at("input_height");
        arch.input_width = j.at("input_width");
    }
    return arch;
}

}  // namespace

void save_checkpoint(const nn::Checkpoint& checkpoint, const std::string& path) {
    json meta;
    meta["architecture"] = arch_to_json(checkpoint.params.arch);
    meta["descriptor"] = checkpoint.meta.architecture;
    meta["epoch"] = checkpoint.meta.epoch;
    meta["init_seed"] = checkpoint.meta.init_seed;
    meta["shuffle_seed"] = checkpoint.meta.shuffle_seed;
    meta["preset"] = checkpoint.meta.preset;
    const std::string meta_str = meta.dump();

    Writer w;
    w.raw(kMagic, sizeof(kMagic));
    w.u32(kVersion);
    w.u64(meta_str.size());
    w.raw(meta_str.data(), meta_str.size());

    w.u32(static_cast<std::uint32_t>(checkpoint.params.layers.size()));
    std::uint64_t payload_bytes = 0;
    for (const auto& layer : checkpoint.params.layers) {
        w.u32(static_cast<std::uint32_t>(layer.name.size()));
        w.raw(layer.name.data(), layer.name.size());
        w.u32(static_cast<std::uint32_t>(layer.tensors.size()));
        for (const auto& t : layer.tensors) {
            w.u32(static_cast<std::uint32_t>(t.shape.size()));
            for (std::size_t d : t.shape) w.u64(d);
            w.u64(payload_bytes);  // byte offset into the payload
            payload_bytes += t.numel() * sizeof(float);
        }
    }
    w.u64(payload_bytes);
    for (const auto& layer : checkpoint.params.layers)
        for (const auto& t : layer.tensors)
            for (float v : t.data) w.f32(v);

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError("checkpoint: cannot open for writing: " + path);
    out.write(w.bytes().data(), static_cast<std::streamsize>(w.bytes().size()));
    if (!out) throw FormatError("checkpoint: write failed: " + path);
}

nn::Checkpoint load_checkpoint(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("checkpoint: cannot open " + path);
    std::vector<char> bytes((std::istreambuf_iterator<char>(in)),
                            std::istreambuf_iterator<char>());
    Reader r(bytes);

    char magic[8];
    r.raw(magic, 8, "magic");
    if (std::memcmp(magic, kMagic, 8) != 0)
        throw FormatError("checkpoint: bad magic at byte offset 0 in " + path);
    const std::uint32_t version = r.u32("version");
    if (version != kVersion) {
        std::ostringstream os;
        os << "checkpoint: version mismatch: found " << version << ", expected " << kVersion;
        throw FormatError(os.str());
    }

    const std::uint64_t meta_len = r.u64("metadata length");
    std::string meta_str(meta_len, '\0');
    r.raw(meta_str.data(), meta_len, "metadata");
    json meta;
    try {
        meta = json::parse(meta_str);
    } catch (const json::exception& e) {
        throw FormatError(std::string("checkpoint: corrupt metadata JSON: ") + e.what());
    }

    nn::Checkpoint ckpt;
    nn::Architecture arch = arch_from_json(meta.at("architecture"));
    nn::validate(arch);
    ckpt.meta.architecture = meta.at("descriptor").get<std::string>();
    ckpt.meta.epoch = meta.at("epoch").get<std::uint64_t>();
    ckpt.meta.init_seed = meta.at("init_seed").get<std::uint64_t>();
    ckpt.meta.shuffle_seed = meta.at("shuffle_seed").get<std::uint64_t>();
    ckpt.meta.preset = meta.at("preset").get<std::string>();

    ckpt.params.arch = arch;
    ckpt.params.architecture_id = nn::architecture_id(arch);

    const std::uint32_t layer_count = r.u32("layer count");
    const auto expected_shapes = nn::layer_shapes(arch);
    const auto expected_names = nn::layer_names(arch);
    if (layer_count != expected_shapes.size()) {
        std::ostringstream os;
        os << "checkpoint: layer count " << layer_count << " does not match architecture ("
           << expected_shapes.size() << ")";
        throw FormatError(os.str());
    }

    struct TensorEntry {
        std::vector<std::size_t> shape;
        std::uint64_t offset;
    };
    std::vector<std::vector<TensorEntry>> table(layer_count);
    std::uint64_t running = 0;
    for (std::uint32_t li = 0; li < layer_count; ++li) {
        const std::uint32_t name_len = r.u32("layer name length");
        std::string name(name_len, '\0');
        r.raw(name.data(), name_len, "layer name");
        if (name != expected_names[li])
            throw FormatError("checkpoint: layer name '" + name + "' does not match '" +
                              expected_names[li] + "'");
        nn::LayerParams layer;
        layer.name = name;
        const std::uint32_t tensor_count = r.u32("tensor count");
        if (tensor_count != expected_shapes[li].size())
            throw FormatError("checkpoint: tensor count mismatch in layer '" + name + "'");
        for (std::uint32_t t = 0; t < tensor_count; ++t) {
            TensorEntry entry;
            const std::uint32_t ndim = r.u32("tensor rank");
            const std::size_t dims_at = r.offset();
            for (std::uint32_t d = 0; d < ndim; ++d)
                entry.shape.push_back(static_cast<std::size_t>(r.u64("tensor dim")));
            if (entry.shape != expected_shapes[li][t]) {
                std::ostringstream os;
                os << "checkpoint: tensor shape mismatch in layer '" << name
                   << "' at byte offset " << dims_at;
                throw FormatError(os.str());
            }
            const std::size_t offset_at = r.offset();
            entry.offset = r.u64("tensor payload offset");
            if (entry.offset != running) {
                std::ostringstream os;
                os << "checkpoint: layer-table offset " << entry.offset << " for layer '" << name
                   << "' (declared at byte offset " << offset_at << ") is inconsistent, expected "
                   << running;
                throw FormatError(os.str());
            }
            running += Tensor::numel_of(entry.shape) * sizeof(float);
            table[li].push_back(std::move(entry));
        }
        ckpt.params.layers.push_back(std::move(layer));
    }

    const std::size_t payload_len_at = r.offset();
    const std::uint64_t payload_len = r.u64("payload length");
    if (payload_len != running) {
        std::ostringstream os;
        os << "checkpoint: payload length " << payload_len << " (declared at byte offset "
           << payload_len_at << ") does not equal layer-table total " << running;
        throw FormatError(os.str());
    }

    for (std::uint32_t li = 0; li < layer_count; ++li) {
        for (const auto& entry : table[li]) {
            Tensor t(entry.shape);
            for (float& v : t.data) v = r.f32("payload");
            ckpt.params.layers[li].tensors.push_back(std::move(t));
        }
    }
    if (!r.at_end()) {
        std::ostringstream os;
        os << "checkpoint: " << (bytes.size() - r.offset()) << " trailing bytes at byte offset "
           << r.offset();
        throw FormatError(os.str());
    }
    return ckpt;
}

}  // namespace lmc::harness
