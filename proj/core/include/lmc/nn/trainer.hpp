#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lmc/data/dataset.hpp"
#include "lmc/nn/lr_schedule.hpp"
#include "lmc/nn/network.hpp"
#include "lmc/nn/optimizer.hpp"
#include "lmc/rng.hpp"

namespace lmc::nn {

struct CheckpointMeta {
    std::string architecture;  // canonical descriptor
    std::uint64_t epoch = 0;   // params after this many epochs; 0 = init
    std::uint64_t init_seed = 0;
    std::uint64_t shuffle_seed = 0;
    std::string preset;  // optional preset/run tag
};

struct Checkpoint {
    ParamSet params;
    CheckpointMeta meta;
};

struct EpochStat {
    std::uint64_t epoch = 0;
    double train_loss = 0.0;
    double train_error = 0.0;
};

struct TrainConfig {
    std::uint64_t epochs = 60;
    std::size_t batch_size = 64;
    std::uint64_t snapshot_period = 5;
    std::uint64_t init_seed = 0;
    std::uint64_t shuffle_seed = 0;
    bool record_epoch_stats = false;  // full-train-set eval after every epoch
    std::string run_tag;
};

struct TrainResult {
    std::vector<Checkpoint> checkpoints;
    std::vector<EpochStat> epoch_stats;
    bool diverged = false;
    std::string divergence_report;  // empty unless diverged
};

/// Incremental minibatch-SGD loop over a fixed dataset. Keeps the parameter
/// state, optimizer state and shuffle stream across calls so federated
/// rounds chain exactly like one long centralized run.
class TrainLoop {
public:
    TrainLoop(ParamSet initial, const data::LabeledDataset& dataset, const SgdHyper& hyper,
              LrSchedule schedule, std::size_t batch_size, std::uint64_t shuffle_seed);

    /// Runs n epochs (or stops early on divergence). Returns false once
    /// diverged; further calls are no-ops.
    bool run_epochs(std::uint64_t n);

    const ParamSet& params() const { return params_; }
    void replace_params(const ParamSet& params);

    std::uint64_t epochs_done() const { return epochs_done_; }
    std::uint64_t steps_per_epoch() const { return steps_per_epoch_; }
    bool diverged() const { return diverged_; }
    const std::string& divergence_report() const { return divergence_report_; }
    double last_batch_loss() const { return last_batch_loss_; }

private:
    ParamSet params_;
    const data::LabeledDataset& dataset_;
    OptimizerState opt_;
    LrSchedule schedule_;
    std::size_t batch_size_;
    Rng shuffle_rng_;
    std::vector<std::uint32_t> order_;
    std::uint64_t epochs_done_ = 0;
    std::uint64_t steps_per_epoch_ = 0;
    bool diverged_ = false;
    std::string divergence_report_;
    double last_batch_loss_ = 0.0;
};

/// Full centralized training run: checkpoint at epoch 0 (initialization),
/// every snapshot_period epochs and the final epoch. Deterministic in
/// (arch, dataset, hyper, schedule, config seeds). On divergence the result
/// keeps every checkpoint up to the last valid state and carries a report.
///
/// schedule.total_steps == 0 is filled in as epochs * ceil(n/batch).
TrainResult train(const Architecture& arch, const data::LabeledDataset& dataset,
                  const SgdHyper& hyper, LrSchedule schedule, const TrainConfig& config);

/// Snapshot epochs for a run: {0, p, 2p, ..., final}.
std::vector<std::uint64_t> snapshot_epochs(std::uint64_t epochs, std::uint64_t period);

}  // namespace lmc::nn
