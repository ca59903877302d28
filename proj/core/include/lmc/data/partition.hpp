#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lmc/data/dataset.hpp"

namespace lmc::data {

enum class PartitionKind { Iid, Dirichlet };

std::string to_string(PartitionKind kind);
PartitionKind partition_kind_from_string(const std::string& s);

struct PartitionSpec {
    PartitionKind kind = PartitionKind::Iid;
    std::size_t num_clients = 2;
    double concentration = 0.1;  // Dirichlet coefficient; pathological 0.1, mild 12
    std::uint64_t seed = 0;
};

/// Disjoint, exhaustive, non-empty per-client index lists into the parent
/// dataset.
struct Partition {
    std::vector<std::vector<std::uint32_t>> client_indices;

    std::size_t num_clients() const { return client_indices.size(); }
    std::size_t total() const;
};

/// iid: per-class round-robin after a seeded shuffle, so each client's class
/// histogram deviates from uniform by at most one sample per class.
///
/// dirichlet: per class, draw proportions over clients from
/// Dirichlet(concentration * 1) and hand out that class's shuffled samples
/// in contiguous blocks of round(p_k * n_c), remainder-corrected (largest
/// fractional part first) so counts sum exactly. A client ending up with no
/// samples at all is repaired by taking one sample from the largest client.
Partition partition(const LabeledDataset& dataset, const PartitionSpec& spec);

/// Per-client class histogram, rows = clients, cols = classes.
std::vector<std::vector<std::size_t>> class_histograms(const LabeledDataset& dataset,
                                                       const Partition& part);

}  // namespace lmc::data
