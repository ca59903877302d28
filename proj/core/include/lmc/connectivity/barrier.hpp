#pragma once

#include <functional>
#include <string>
#include <vector>

#include "lmc/data/dataset.hpp"
#include "lmc/nn/network.hpp"
#include "lmc/nn/trainer.hpp"
#include "lmc/paramspace/mask.hpp"

namespace lmc::connectivity {

enum class Metric { Loss, Error };

std::string to_string(Metric metric);
Metric metric_from_string(const std::string& s);

double metric_of(const nn::EvalResult& r, Metric metric);

/// Pluggable evaluation: the standard one wraps nn::evaluate over a dataset;
/// tests substitute closed-form scalar losses.
using Evaluator = std::function<nn::EvalResult(const nn::ParamSet&)>;

Evaluator dataset_evaluator(const data::LabeledDataset& dataset);

/// barrier = metric(averaged) - (metric(first)+metric(second))/2.
/// Positive barrier means the averaged model is worse; negative is possible
/// (the averaged model can have lower loss than the endpoints).
struct BarrierReport {
    paramspace::LayerMask mask;
    Metric metric = Metric::Loss;
    nn::EvalResult endpoint_first;
    nn::EvalResult endpoint_second;
    nn::EvalResult averaged_point;
    double barrier = 0.0;
};

BarrierReport barrier(const nn::ParamSet& a, const nn::ParamSet& b,
                      const paramspace::LayerMask& mask, const Evaluator& eval, Metric metric);
BarrierReport barrier(const nn::ParamSet& a, const nn::ParamSet& b,
                      const paramspace::LayerMask& mask, const data::LabeledDataset& dataset,
                      Metric metric);

/// Interpolation sweep. max_barrier = max over alpha of
/// metric(theta(alpha)) - [(1-alpha) metric(a) + alpha metric(b)].
/// alphas must lie in [0,1] and contain 0, 0.5 and 1.
struct PathScan {
    std::vector<double> alphas;
    std::vector<nn::EvalResult> values;
    Metric metric = Metric::Loss;
    double max_barrier = 0.0;
    double argmax_alpha = 0.0;
};

PathScan path_scan(const nn::ParamSet& a, const nn::ParamSet& b, const Evaluator& eval,
                   std::vector<double> alphas, Metric metric);
PathScan path_scan(const nn::ParamSet& a, const nn::ParamSet& b,
                   const data::LabeledDataset& dataset, std::vector<double> alphas, Metric metric);

enum class DonorPolicy { First, Second, Both };

std::string to_string(DonorPolicy policy);
DonorPolicy donor_policy_from_string(const std::string& s);

/// Barrier values for every (schedule step, snapshot epoch) cell.
/// cells[step][epoch_index]; rows follow the schedule, columns the epochs.
struct HeatmapGrid {
    paramspace::CumulationSchedule schedule;
    std::vector<std::uint64_t> epochs;
    Metric metric = Metric::Loss;
    paramspace::Donor donor = paramspace::Donor::First;
    std::vector<std::vector<BarrierReport>> cells;
    /// Row label = name of the layer the step added (heatmap Y axis).
    std::vector<std::string> row_labels;
};

/// Computes grids for every requested (metric, donor) combination from one
/// shared evaluation pass: the loss grid and the error grid over the same
/// donor come from identical evaluations, cell for cell. Checkpoint lists
/// must cover identical epoch sets (AlignmentError otherwise).
std::vector<HeatmapGrid> compute_grids(const std::vector<nn::Checkpoint>& checkpoints_a,
                                       const std::vector<nn::Checkpoint>& checkpoints_b,
                                       const paramspace::CumulationSchedule& schedule,
                                       const Evaluator& eval, const std::vector<Metric>& metrics,
                                       DonorPolicy donor_policy);

/// Single-metric convenience; one grid per donor of the policy.
std::vector<HeatmapGrid> grid(const std::vector<nn::Checkpoint>& checkpoints_a,
                              const std::vector<nn::Checkpoint>& checkpoints_b,
                              const paramspace::CumulationSchedule& schedule,
                              const data::LabeledDataset& dataset, Metric metric,
                              DonorPolicy donor_policy);

/// Midpoint probe over adjacent checkpoint pairs: does the average of two
/// consecutive snapshots beat both endpoints on the training set?
struct ConvexityPair {
    std::uint64_t epoch_lo = 0;
    std::uint64_t epoch_hi = 0;
    double loss_lo = 0.0;
    double loss_hi = 0.0;
    double loss_mid = 0.0;
    bool midpoint_better = false;  // loss_mid < min(loss_lo, loss_hi)
};

struct ConvexityReport {
    std::vector<ConvexityPair> pairs;
    double midpoint_better_fraction = 0.0;
};

ConvexityReport convexity_probe(const std::vector<nn::Checkpoint>& checkpoints,
                                const Evaluator& eval);
ConvexityReport convexity_probe(const std::vector<nn::Checkpoint>& checkpoints,
                                const data::LabeledDataset& dataset);

}  // namespace lmc::connectivity
