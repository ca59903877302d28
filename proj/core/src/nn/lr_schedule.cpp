#include "lmc/nn/lr_schedule.hpp"

#include <cmath>

#include "lmc/errors.hpp"

namespace lmc::nn {

std::string to_string(ScheduleKind kind) {
    switch (kind) {
        case ScheduleKind::Constant: return "constant";
        case ScheduleKind::WarmupCosine: return "warmup-cosine";
        case ScheduleKind::StepDecay: return "step-decay";
    }
    return "?";
}

ScheduleKind schedule_kind_from_string(const std::string& s) {
    if (s == "constant") return ScheduleKind::Constant;
    if (s == "warmup-cosine") return ScheduleKind::WarmupCosine;
    if (s == "step-decay") return ScheduleKind::StepDecay;
    throw ConfigError("unknown schedule kind: " + s);
}

double lr_at(const LrSchedule& schedule, std::uint64_t step) {
    if (schedule.total_steps > 0 && step > schedule.total_steps)
        throw DomainError("lr_at: step past total_steps");
    switch (schedule.kind) {
        case ScheduleKind::Constant:
            return schedule.base_rate;
        case ScheduleKind::StepDecay: {
            const std::uint64_t k = step / schedule.step_period;
            // Repeated multiply keeps halving factors exact.
            double rate = schedule.base_rate;
            for (std::uint64_t i = 0; i < k; ++i) rate *= schedule.step_factor;
            return rate;
        }
        case ScheduleKind::WarmupCosine: {
            if (step < schedule.warmup_steps) {
                const double t =
                    static_cast<double>(step) / static_cast<double>(schedule.warmup_steps);
                return schedule.warmup_start_rate +
                       (schedule.base_rate - schedule.warmup_start_rate) * t;
            }
            const std::uint64_t span = schedule.total_steps - schedule.warmup_steps;
            if (span == 0) return schedule.base_rate;
            const double t = static_cast<double>(step - schedule.warmup_steps) /
                             static_cast<double>(span);
            return schedule.base_rate * 0.5 *
                   (1.0 + std::cos(3.14159265358979323846 * t));
        }
    }
    throw ConfigError("lr_at: bad schedule kind");
}

}  // namespace lmc::nn
