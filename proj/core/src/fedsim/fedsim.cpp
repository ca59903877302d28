#include "lmc/fedsim/fedsim.hpp"

#include <algorithm>
#include <sstream>

#include "lmc/errors.hpp"
#include "lmc/paramspace/ops.hpp"

namespace lmc::fedsim {

std::string to_string(Weighting w) {
    return w == Weighting::Uniform ? "uniform" : "by-sample-count";
}

Weighting weighting_from_string(const std::string& s) {
    if (s == "uniform") return Weighting::Uniform;
    if (s == "by-sample-count") return Weighting::BySampleCount;
    throw ConfigError("unknown weighting: " + s);
}

nn::ParamSet aggregate(const std::vector<nn::ParamSet>& models,
                       const std::vector<double>& weights,
                       const std::optional<paramspace::LayerMask>& mask) {
    if (models.empty()) throw DomainError("aggregate: no models");
    if (weights.size() != models.size())
        throw DomainError("aggregate: weight count does not match model count");
    double wsum = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw DomainError("aggregate: weights must be non-negative");
        wsum += w;
    }
    if (!(wsum > 0.0)) throw DomainError("aggregate: weights must sum to a positive value");
    for (std::size_t i = 1; i < models.size(); ++i) nn::require_composable(models[0], models[i]);

    const std::size_t num_layers = models[0].layers.size();
    const auto averaged = [&](std::size_t li) {
        return !mask.has_value() || mask->contains(li);
    };
    if (mask.has_value())
        for (std::size_t layer : mask->averaged_layers)
            if (layer >= num_layers)
                throw DomainError("aggregate: mask layer index out of range");

    // Non-averaged layers come from the first model (the donor rule for K>2).
    nn::ParamSet out = models[0];
    for (std::size_t li = 0; li < num_layers; ++li) {
        if (!averaged(li)) continue;
        for (std::size_t t = 0; t < out.layers[li].tensors.size(); ++t) {
            auto& to = out.layers[li].tensors[t].data;
            for (std::size_t k = 0; k < to.size(); ++k) {
                double acc = 0.0;
                for (std::size_t m = 0; m < models.size(); ++m)
                    acc += weights[m] *
                           static_cast<double>(models[m].layers[li].tensors[t].data[k]);
                to[k] = static_cast<float>(acc / wsum);
            }
        }
    }
    return out;
}

data::LabeledDataset union_dataset(const data::LabeledDataset& dataset,
                                   const data::Partition& partition) {
    std::vector<std::uint32_t> all;
    for (const auto& shard : partition.client_indices)
        all.insert(all.end(), shard.begin(), shard.end());
    return dataset.subset(all);
}

namespace {

data::Partition resolve_partition(const data::LabeledDataset& dataset, const FedConfig& config) {
    if (config.explicit_partition.has_value()) {
        if (config.explicit_partition->num_clients() != config.num_clients)
            throw ConfigError("fed_run: explicit partition has wrong client count");
        return *config.explicit_partition;
    }
    if (config.num_clients == 1) {
        // Single-client degeneracy: the full dataset, no partition() call
        // (PartitionSpec requires >= 2 clients).
        data::Partition p;
        p.client_indices.resize(1);
        for (std::size_t i = 0; i < dataset.size(); ++i)
            p.client_indices[0].push_back(static_cast<std::uint32_t>(i));
        return p;
    }
    data::PartitionSpec spec = config.partition;
    spec.num_clients = config.num_clients;
    return data::partition(dataset, spec);
}

}  // namespace

FedRunResult fed_run(const nn::Architecture& arch, const data::LabeledDataset& dataset,
                     const FedConfig& config) {
    if (config.num_clients == 0) throw ConfigError("fed_run: num_clients must be >= 1");
    if (config.shuffle_seeds.size() != config.num_clients)
        throw ConfigError("fed_run: need exactly one shuffle seed per client");
    if (config.snapshot_period_rounds == 0)
        throw ConfigError("fed_run: snapshot_period_rounds must be >= 1");
    if (config.local_epochs_per_round == 0)
        throw ConfigError("fed_run: local_epochs_per_round must be >= 1");

    FedRunResult result;
    result.partition = resolve_partition(dataset, config);

    // Client shards as owned datasets (features copied once).
    std::vector<data::LabeledDataset> shards;
    shards.reserve(config.num_clients);
    for (const auto& idx : result.partition.client_indices) shards.push_back(dataset.subset(idx));

    const data::LabeledDataset union_ds = union_dataset(dataset, result.partition);

    // Shared initialization for every client.
    const nn::ParamSet initial = nn::init_params(arch, config.init_seed);

    std::vector<nn::TrainLoop> loops;
    loops.reserve(config.num_clients);
    for (std::size_t k = 0; k < config.num_clients; ++k) {
        nn::LrSchedule schedule = config.schedule;
        if (schedule.total_steps == 0) {
            const std::uint64_t steps_per_epoch =
                (shards[k].size() + config.batch_size - 1) / config.batch_size;
            schedule.total_steps =
                config.total_rounds * config.local_epochs_per_round * steps_per_epoch;
        }
        loops.emplace_back(initial, shards[k], config.hyper, schedule, config.batch_size,
                           config.shuffle_seeds[k]);
    }

    result.client_checkpoints.resize(config.num_clients);
    result.client_diverged.assign(config.num_clients, false);
    result.divergence_reports.assign(config.num_clients, "");

    const auto snapshot_round = [&](std::uint64_t round) {
        UnionEval ue;
        ue.round = round;
        std::vector<nn::ParamSet> models;
        for (std::size_t k = 0; k < config.num_clients; ++k) {
            nn::Checkpoint ckpt;
            ckpt.params = loops[k].params();
            ckpt.meta.architecture = nn::descriptor(arch);
            ckpt.meta.epoch = round;  // round index, all clients aligned
            ckpt.meta.init_seed = config.init_seed;
            ckpt.meta.shuffle_seed = config.shuffle_seeds[k];
            ckpt.meta.preset = "client_" + std::to_string(k);
            result.client_checkpoints[k].push_back(ckpt);
            ue.per_client.push_back(nn::evaluate(loops[k].params(), union_ds));
            models.push_back(loops[k].params());
        }
        ue.full_average =
            nn::evaluate(aggregate(models, std::vector<double>(models.size(), 1.0)), union_ds);
        result.union_evals.push_back(std::move(ue));
    };

    snapshot_round(0);

    for (std::uint64_t round = 1; round <= config.total_rounds; ++round) {
        for (std::size_t k = 0; k < config.num_clients; ++k) {
            if (result.client_diverged[k]) continue;
            if (!loops[k].run_epochs(config.local_epochs_per_round)) {
                result.client_diverged[k] = true;
                std::ostringstream os;
                os << "client " << k << " round " << round << ": " << loops[k].divergence_report();
                result.divergence_reports[k] = os.str();
            }
        }

        const bool aggregating = config.aggregation_period_rounds > 0 &&
                                 round % config.aggregation_period_rounds == 0;
        if (aggregating) {
            std::vector<nn::ParamSet> models;
            std::vector<double> weights;
            for (std::size_t k = 0; k < config.num_clients; ++k) {
                models.push_back(loops[k].params());
                weights.push_back(config.weighting == Weighting::Uniform
                                      ? 1.0
                                      : static_cast<double>(shards[k].size()));
            }
            nn::ParamSet global = aggregate(models, weights, config.aggregation_mask);
            nn::Checkpoint gc;
            gc.params = global;
            gc.meta.architecture = nn::descriptor(arch);
            gc.meta.epoch = round;
            gc.meta.init_seed = config.init_seed;
            gc.meta.preset = "global";
            result.global_checkpoints.push_back(std::move(gc));
            for (std::size_t k = 0; k < config.num_clients; ++k)
                if (!result.client_diverged[k]) loops[k].replace_params(global);
        }

        if (round % config.snapshot_period_rounds == 0 || round == config.total_rounds)
            snapshot_round(round);
    }
    return result;
}

}  // namespace lmc::fedsim
