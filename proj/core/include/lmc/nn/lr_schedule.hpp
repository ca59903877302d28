#pragma once

#include <cstdint>
#include <string>

namespace lmc::nn {

enum class ScheduleKind { Constant, WarmupCosine, StepDecay };

std::string to_string(ScheduleKind kind);
ScheduleKind schedule_kind_from_string(const std::string& s);

/// Learning-rate schedule over optimizer steps.
///
/// warmup-cosine: linear warmup_start_rate -> base_rate over warmup_steps,
/// then base_rate * 0.5*(1 + cos(pi*(step-warmup)/(total-warmup))).
/// warmup_steps = 0 means pure cosine annealing. The half cosine reaches 0
/// at step == total_steps exactly; training only ever consumes steps
/// 0..total_steps-1, which keeps every consumed rate strictly positive.
///
/// step-decay: base_rate * step_factor^floor(step/step_period).
struct LrSchedule {
    ScheduleKind kind = ScheduleKind::Constant;
    double base_rate = 0.05;
    double warmup_start_rate = 0.0001;
    std::uint64_t warmup_steps = 0;
    std::uint64_t total_steps = 0;
    std::uint64_t step_period = 30;
    double step_factor = 0.5;
};

/// Rate at a step. pre: 0 <= step <= total_steps (total_steps ignored for
/// constant and step-decay). Boundary identities are exact: lr_at(0) of a
/// warmup equals warmup_start_rate, lr_at(warmup_steps) equals base_rate.
double lr_at(const LrSchedule& schedule, std::uint64_t step);

}  // namespace lmc::nn
