#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lmc/data/partition.hpp"
#include "lmc/nn/trainer.hpp"
#include "lmc/paramspace/mask.hpp"

namespace lmc::fedsim {

enum class Weighting { Uniform, BySampleCount };

std::string to_string(Weighting w);
Weighting weighting_from_string(const std::string& s);

/// aggregation_period_rounds == 0 means "never": pure local training from
/// the shared initialization (the default for barrier studies).
struct FedConfig {
    std::size_t num_clients = 2;
    data::PartitionSpec partition;
    /// Pre-built shards override the PartitionSpec when set. This admits
    /// degenerate setups a PartitionSpec cannot express (a single client,
    /// or every client holding the full dataset).
    std::optional<data::Partition> explicit_partition;

    std::uint64_t local_epochs_per_round = 1;
    std::uint64_t aggregation_period_rounds = 0;  // 0 = never
    std::optional<paramspace::LayerMask> aggregation_mask;  // nullopt = full
    Weighting weighting = Weighting::Uniform;

    std::uint64_t init_seed = 0;  // shared: all clients start identical
    std::vector<std::uint64_t> shuffle_seeds;  // one per client

    std::uint64_t total_rounds = 60;
    std::uint64_t snapshot_period_rounds = 5;

    nn::SgdHyper hyper;
    nn::LrSchedule schedule;
    std::size_t batch_size = 64;
};

struct UnionEval {
    std::uint64_t round = 0;
    std::vector<nn::EvalResult> per_client;
    nn::EvalResult full_average;  // uniform full-mask average of the clients
};

struct FedRunResult {
    /// checkpoints[k] is client k's snapshot sequence; all sequences are
    /// aligned on the same round indices (round stored in meta.epoch).
    std::vector<std::vector<nn::Checkpoint>> client_checkpoints;
    /// Global model at each aggregation boundary (empty when never).
    std::vector<nn::Checkpoint> global_checkpoints;
    /// Evaluations on the union of the client shards at snapshot rounds.
    std::vector<UnionEval> union_evals;
    data::Partition partition;
    std::vector<bool> client_diverged;
    std::vector<std::string> divergence_reports;
};

/// Weighted mean over the masked layers (weights normalized to sum 1);
/// non-averaged layers come from the first model. Weights must be
/// non-negative with positive sum.
nn::ParamSet aggregate(const std::vector<nn::ParamSet>& models,
                       const std::vector<double>& weights,
                       const std::optional<paramspace::LayerMask>& mask = std::nullopt);

/// Simulated federated run: shared init, per-round local epochs, optional
/// periodic aggregation that replaces every client model, snapshots and
/// union-dataset evaluations. Deterministic in (arch, dataset, config).
FedRunResult fed_run(const nn::Architecture& arch, const data::LabeledDataset& dataset,
                     const FedConfig& config);

/// Union of the client shards, client 0 first; the evaluation set required
/// by the protocol ("performance is evaluated on the union of the
/// corresponding local datasets").
data::LabeledDataset union_dataset(const data::LabeledDataset& dataset,
                                   const data::Partition& partition);

}  // namespace lmc::fedsim
