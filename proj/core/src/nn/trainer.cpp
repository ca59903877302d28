#include "lmc/nn/trainer.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "lmc/errors.hpp"

namespace lmc::nn {

std::vector<std::uint64_t> snapshot_epochs(std::uint64_t epochs, std::uint64_t period) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t e = 0; e <= epochs; e += period) out.push_back(e);
    if (out.back() != epochs) out.push_back(epochs);
    return out;
}

TrainLoop::TrainLoop(ParamSet initial, const data::LabeledDataset& dataset, const SgdHyper& hyper,
                     LrSchedule schedule, std::size_t batch_size, std::uint64_t shuffle_seed)
    : params_(std::move(initial)),
      dataset_(dataset),
      opt_(make_optimizer_state(params_, hyper)),
      schedule_(schedule),
      batch_size_(batch_size),
      shuffle_rng_(shuffle_seed) {
    if (batch_size_ == 0) throw DomainError("train: batch_size must be >= 1");
    if (dataset_.size() == 0) throw DomainError("train: dataset is empty");
    order_.resize(dataset_.size());
    std::iota(order_.begin(), order_.end(), 0u);
    steps_per_epoch_ = (dataset_.size() + batch_size_ - 1) / batch_size_;
}

void TrainLoop::replace_params(const ParamSet& params) {
    require_composable(params_, params);
    params_ = params;
}

bool TrainLoop::run_epochs(std::uint64_t n) {
    if (diverged_) return false;
    for (std::uint64_t e = 0; e < n; ++e) {
        shuffle_rng_.shuffle(order_);
        for (std::uint64_t s = 0; s < steps_per_epoch_; ++s) {
            const std::size_t lo = static_cast<std::size_t>(s) * batch_size_;
            const std::size_t hi = std::min(lo + batch_size_, dataset_.size());
            BatchView batch{&dataset_, {order_.data() + lo, hi - lo}};
            BackpropResult bp = backprop(params_, batch);
            last_batch_loss_ = bp.loss;
            if (!std::isfinite(bp.loss)) {
                std::ostringstream os;
                os << "divergence: non-finite batch loss at epoch " << (epochs_done_ + 1)
                   << " step " << opt_.step_counter;
                diverged_ = true;
                divergence_report_ = os.str();
                return false;
            }
            const double rate = lr_at(schedule_, opt_.step_counter);
            try {
                sgd_step(params_, bp.grads, opt_, rate);
            } catch (const NumericError& err) {
                std::ostringstream os;
                os << "divergence at epoch " << (epochs_done_ + 1) << " step "
                   << opt_.step_counter << ": " << err.what();
                diverged_ = true;
                divergence_report_ = os.str();
                return false;
            }
        }
        ++epochs_done_;
    }
    return true;
}

TrainResult train(const Architecture& arch, const data::LabeledDataset& dataset,
                  const SgdHyper& hyper, LrSchedule schedule, const TrainConfig& config) {
    if (config.snapshot_period == 0) throw DomainError("train: snapshot_period must be >= 1");

    ParamSet initial = init_params(arch, config.init_seed);
    const std::uint64_t steps_per_epoch =
        (dataset.size() + config.batch_size - 1) / config.batch_size;
    if (schedule.total_steps == 0) schedule.total_steps = config.epochs * steps_per_epoch;

    TrainLoop loop(std::move(initial), dataset, hyper, schedule, config.batch_size,
                   config.shuffle_seed);

    TrainResult result;
    const auto snapshot = [&](std::uint64_t epoch) {
        Checkpoint ckpt;
        ckpt.params = loop.params();
        ckpt.meta.architecture = descriptor(arch);
        ckpt.meta.epoch = epoch;
        ckpt.meta.init_seed = config.init_seed;
        ckpt.meta.shuffle_seed = config.shuffle_seed;
        ckpt.meta.preset = config.run_tag;
        result.checkpoints.push_back(std::move(ckpt));
    };

    snapshot(0);
    for (std::uint64_t epoch = 1; epoch <= config.epochs; ++epoch) {
        if (!loop.run_epochs(1)) {
            // Keep the last valid state as the terminal checkpoint.
            result.diverged = true;
            result.divergence_report = loop.divergence_report();
            if (result.checkpoints.back().meta.epoch != loop.epochs_done()) snapshot(loop.epochs_done());
            return result;
        }
        if (config.record_epoch_stats) {
            const EvalResult ev = evaluate(loop.params(), dataset);
            result.epoch_stats.push_back({epoch, ev.loss, ev.error});
        }
        if (epoch % config.snapshot_period == 0 || epoch == config.epochs) snapshot(epoch);
    }
    return result;
}

}  // namespace lmc::nn
