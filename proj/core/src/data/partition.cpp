#include "lmc/data/partition.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "lmc/errors.hpp"
#include "lmc/rng.hpp"

namespace lmc::data {

std::string to_string(PartitionKind kind) {
    return kind == PartitionKind::Iid ? "iid" : "dirichlet";
}

PartitionKind partition_kind_from_string(const std::string& s) {
    if (s == "iid") return PartitionKind::Iid;
    if (s == "dirichlet") return PartitionKind::Dirichlet;
    throw ConfigError("unknown partition kind: " + s);
}

std::size_t Partition::total() const {
    std::size_t n = 0;
    for (const auto& c : client_indices) n += c.size();
    return n;
}

namespace {

std::vector<std::vector<std::uint32_t>> indices_by_class(const LabeledDataset& ds) {
    std::vector<std::vector<std::uint32_t>> by_class(ds.num_classes);
    for (std::size_t i = 0; i < ds.size(); ++i)
        by_class[static_cast<std::size_t>(ds.labels[i])].push_back(
            static_cast<std::uint32_t>(i));
    return by_class;
}

// Block sizes round(p_k * n) fixed up to sum exactly to n: adjust the
// entries whose rounding moved them furthest, deterministic tie-break by
// client index.
std::vector<std::size_t> rounded_blocks(const std::vector<double>& p, std::size_t n) {
    const std::size_t k = p.size();
    std::vector<std::size_t> block(k);
    std::vector<double> raw(k);
    long long sum = 0;
    for (std::size_t i = 0; i < k; ++i) {
        raw[i] = p[i] * static_cast<double>(n);
        block[i] = static_cast<std::size_t>(std::llround(raw[i]));
        sum += static_cast<long long>(block[i]);
    }
    long long diff = static_cast<long long>(n) - sum;
    while (diff != 0) {
        if (diff > 0) {
            // Grant to the client whose block is furthest below its raw share.
            std::size_t best = 0;
            double best_gap = -1e300;
            for (std::size_t i = 0; i < k; ++i) {
                const double gap = raw[i] - static_cast<double>(block[i]);
                if (gap > best_gap) {
                    best_gap = gap;
                    best = i;
                }
            }
            ++block[best];
            diff -= 1;
        } else {
            std::size_t best = k;
            double best_gap = -1e300;
            for (std::size_t i = 0; i < k; ++i) {
                if (block[i] == 0) continue;
                const double gap = static_cast<double>(block[i]) - raw[i];
                if (gap > best_gap) {
                    best_gap = gap;
                    best = i;
                }
            }
            --block[best];
            diff += 1;
        }
    }
    return block;
}

}  // namespace

Partition partition(const LabeledDataset& dataset, const PartitionSpec& spec) {
    if (spec.num_clients < 2) throw DomainError("partition: num_clients must be >= 2");
    if (dataset.size() < spec.num_clients)
        throw DomainError("partition: fewer samples than clients");
    if (spec.kind == PartitionKind::Dirichlet && !(spec.concentration > 0.0))
        throw DomainError("partition: concentration must be positive");

    auto by_class = indices_by_class(dataset);
    Rng rng(spec.seed);
    Partition part;
    part.client_indices.assign(spec.num_clients, {});

    if (spec.kind == PartitionKind::Iid) {
        for (auto& cls : by_class) {
            if (!cls.empty() && cls.size() < spec.num_clients) {
                std::ostringstream os;
                os << "partition: iid needs >= " << spec.num_clients
                   << " samples of every class, a class has " << cls.size();
                throw DomainError(os.str());
            }
            rng.shuffle(cls);
            for (std::size_t i = 0; i < cls.size(); ++i)
                part.client_indices[i % spec.num_clients].push_back(cls[i]);
        }
    } else {
        for (auto& cls : by_class) {
            if (cls.empty()) continue;
            rng.shuffle(cls);
            const auto p = rng.dirichlet(spec.concentration, spec.num_clients);
            const auto block = rounded_blocks(p, cls.size());
            std::size_t off = 0;
            for (std::size_t k = 0; k < spec.num_clients; ++k) {
                part.client_indices[k].insert(part.client_indices[k].end(),
                                              cls.begin() + static_cast<long>(off),
                                              cls.begin() + static_cast<long>(off + block[k]));
                off += block[k];
            }
        }
    }

    // Empty-client repair: move one sample from the (currently) largest client.
    for (std::size_t k = 0; k < spec.num_clients; ++k) {
        if (!part.client_indices[k].empty()) continue;
        std::size_t largest = 0;
        for (std::size_t j = 1; j < spec.num_clients; ++j)
            if (part.client_indices[j].size() > part.client_indices[largest].size()) largest = j;
        if (part.client_indices[largest].size() < 2)
            throw DomainError("partition: cannot repair empty client, not enough samples");
        part.client_indices[k].push_back(part.client_indices[largest].back());
        part.client_indices[largest].pop_back();
    }
    return part;
}

std::vector<std::vector<std::size_t>> class_histograms(const LabeledDataset& dataset,
                                                       const Partition& part) {
    std::vector<std::vector<std::size_t>> hist(part.num_clients(),
                                               std::vector<std::size_t>(dataset.num_classes, 0));
    for (std::size_t k = 0; k < part.num_clients(); ++k)
        for (std::uint32_t i : part.client_indices[k])
            ++hist[k][static_cast<std::size_t>(dataset.labels[i])];
    return hist;
}

}  // namespace lmc::data
