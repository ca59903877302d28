#include "lmc/connectivity/barrier.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lmc/errors.hpp"
#include "lmc/paramspace/ops.hpp"

namespace lmc::connectivity {

std::string to_string(Metric metric) { return metric == Metric::Loss ? "loss" : "error"; }

Metric metric_from_string(const std::string& s) {
    if (s == "loss") return Metric::Loss;
    if (s == "error") return Metric::Error;
    throw ConfigError("unknown metric: " + s);
}

double metric_of(const nn::EvalResult& r, Metric metric) {
    return metric == Metric::Loss ? r.loss : r.error;
}

Evaluator dataset_evaluator(const data::LabeledDataset& dataset) {
    return [&dataset](const nn::ParamSet& params) { return nn::evaluate(params, dataset); };
}

std::string to_string(DonorPolicy policy) {
    switch (policy) {
        case DonorPolicy::First: return "first";
        case DonorPolicy::Second: return "second";
        case DonorPolicy::Both: return "both";
    }
    return "?";
}

DonorPolicy donor_policy_from_string(const std::string& s) {
    if (s == "first") return DonorPolicy::First;
    if (s == "second") return DonorPolicy::Second;
    if (s == "both") return DonorPolicy::Both;
    throw ConfigError("unknown donor policy: " + s);
}

namespace {

BarrierReport make_report(const paramspace::LayerMask& mask, Metric metric,
                          const nn::EvalResult& ea, const nn::EvalResult& eb,
                          const nn::EvalResult& eavg) {
    BarrierReport r;
    r.mask = mask;
    r.metric = metric;
    r.endpoint_first = ea;
    r.endpoint_second = eb;
    r.averaged_point = eavg;
    r.barrier = metric_of(eavg, metric) - 0.5 * (metric_of(ea, metric) + metric_of(eb, metric));
    return r;
}

std::vector<paramspace::Donor> donors_of(DonorPolicy policy) {
    switch (policy) {
        case DonorPolicy::First: return {paramspace::Donor::First};
        case DonorPolicy::Second: return {paramspace::Donor::Second};
        case DonorPolicy::Both: return {paramspace::Donor::First, paramspace::Donor::Second};
    }
    return {};
}

}  // namespace

BarrierReport barrier(const nn::ParamSet& a, const nn::ParamSet& b,
                      const paramspace::LayerMask& mask, const Evaluator& eval, Metric metric) {
    const nn::EvalResult ea = eval(a);
    const nn::EvalResult eb = eval(b);
    const nn::EvalResult eavg = eval(paramspace::masked_average(a, b, mask));
    return make_report(mask, metric, ea, eb, eavg);
}

BarrierReport barrier(const nn::ParamSet& a, const nn::ParamSet& b,
                      const paramspace::LayerMask& mask, const data::LabeledDataset& dataset,
                      Metric metric) {
    return barrier(a, b, mask, dataset_evaluator(dataset), metric);
}

PathScan path_scan(const nn::ParamSet& a, const nn::ParamSet& b, const Evaluator& eval,
                   std::vector<double> alphas, Metric metric) {
    std::sort(alphas.begin(), alphas.end());
    alphas.erase(std::unique(alphas.begin(), alphas.end()), alphas.end());
    const auto has = [&](double v) {
        return std::any_of(alphas.begin(), alphas.end(), [&](double x) { return x == v; });
    };
    if (alphas.empty() || alphas.front() < 0.0 || alphas.back() > 1.0)
        throw DomainError("path_scan: alphas must lie in [0,1]");
    if (!has(0.0) || !has(0.5) || !has(1.0))
        throw DomainError("path_scan: alphas must contain 0, 0.5 and 1");

    PathScan scan;
    scan.metric = metric;
    scan.alphas = alphas;
    scan.values.reserve(alphas.size());
    for (double alpha : alphas)
        scan.values.push_back(eval(paramspace::interpolate(a, b, alpha)));

    const double ma = metric_of(scan.values.front(), metric);   // alpha = 0
    const double mb = metric_of(scan.values.back(), metric);    // alpha = 1
    scan.max_barrier = -1e300;
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        const double baseline = (1.0 - alphas[i]) * ma + alphas[i] * mb;
        const double bar = metric_of(scan.values[i], metric) - baseline;
        if (bar > scan.max_barrier) {
            scan.max_barrier = bar;
            scan.argmax_alpha = alphas[i];
        }
    }
    return scan;
}

PathScan path_scan(const nn::ParamSet& a, const nn::ParamSet& b,
                   const data::LabeledDataset& dataset, std::vector<double> alphas,
                   Metric metric) {
    return path_scan(a, b, dataset_evaluator(dataset), std::move(alphas), metric);
}

std::vector<HeatmapGrid> compute_grids(const std::vector<nn::Checkpoint>& checkpoints_a,
                                       const std::vector<nn::Checkpoint>& checkpoints_b,
                                       const paramspace::CumulationSchedule& schedule,
                                       const Evaluator& eval, const std::vector<Metric>& metrics,
                                       DonorPolicy donor_policy) {
    if (checkpoints_a.size() != checkpoints_b.size() || checkpoints_a.empty() ||
        !std::equal(checkpoints_a.begin(), checkpoints_a.end(), checkpoints_b.begin(),
                    [](const nn::Checkpoint& x, const nn::Checkpoint& y) {
                        return x.meta.epoch == y.meta.epoch;
                    })) {
        std::ostringstream os;
        os << "grid: checkpoint sequences are not epoch-aligned; a = {";
        for (const auto& c : checkpoints_a) os << c.meta.epoch << " ";
        os << "}, b = {";
        for (const auto& c : checkpoints_b) os << c.meta.epoch << " ";
        os << "}";
        throw AlignmentError(os.str());
    }
    if (metrics.empty()) throw DomainError("grid: no metrics requested");

    const std::size_t num_epochs = checkpoints_a.size();
    const std::size_t num_steps = schedule.num_steps();

    std::vector<HeatmapGrid> grids;
    for (paramspace::Donor donor : donors_of(donor_policy)) {
        // One evaluation pass per donor; every metric view shares it.
        std::vector<nn::EvalResult> eval_a(num_epochs), eval_b(num_epochs);
        std::vector<std::vector<nn::EvalResult>> eval_avg(
            num_steps, std::vector<nn::EvalResult>(num_epochs));
        for (std::size_t e = 0; e < num_epochs; ++e) {
            eval_a[e] = eval(checkpoints_a[e].params);
            eval_b[e] = eval(checkpoints_b[e].params);
            for (std::size_t k = 0; k < num_steps; ++k) {
                paramspace::LayerMask mask = schedule.steps[k];
                mask.donor = donor;
                eval_avg[k][e] = eval(paramspace::masked_average(checkpoints_a[e].params,
                                                                 checkpoints_b[e].params, mask));
            }
        }
        const auto names = nn::layer_names(checkpoints_a.front().params.arch);
        for (Metric metric : metrics) {
            HeatmapGrid g;
            g.schedule = schedule;
            g.metric = metric;
            g.donor = donor;
            for (const auto& c : checkpoints_a) g.epochs.push_back(c.meta.epoch);
            for (std::size_t k = 0; k < num_steps; ++k)
                g.row_labels.push_back(names.at(paramspace::added_layer(schedule, k)));
            g.cells.resize(num_steps);
            for (std::size_t k = 0; k < num_steps; ++k) {
                paramspace::LayerMask mask = schedule.steps[k];
                mask.donor = donor;
                for (std::size_t e = 0; e < num_epochs; ++e)
                    g.cells[k].push_back(
                        make_report(mask, metric, eval_a[e], eval_b[e], eval_avg[k][e]));
            }
            grids.push_back(std::move(g));
        }
    }
    return grids;
}

std::vector<HeatmapGrid> grid(const std::vector<nn::Checkpoint>& checkpoints_a,
                              const std::vector<nn::Checkpoint>& checkpoints_b,
                              const paramspace::CumulationSchedule& schedule,
                              const data::LabeledDataset& dataset, Metric metric,
                              DonorPolicy donor_policy) {
    return compute_grids(checkpoints_a, checkpoints_b, schedule, dataset_evaluator(dataset),
                         {metric}, donor_policy);
}

ConvexityReport convexity_probe(const std::vector<nn::Checkpoint>& checkpoints,
                                const Evaluator& eval) {
    if (checkpoints.size() < 2)
        throw DomainError("convexity_probe: need at least 2 checkpoints");
    for (std::size_t i = 1; i < checkpoints.size(); ++i)
        if (checkpoints[i].meta.epoch <= checkpoints[i - 1].meta.epoch)
            throw DomainError("convexity_probe: checkpoint epochs must be strictly increasing");

    ConvexityReport report;
    const auto full =
        paramspace::LayerMask::full(checkpoints.front().params.layers.size());
    std::size_t better = 0;
    for (std::size_t i = 0; i + 1 < checkpoints.size(); ++i) {
        const auto& lo = checkpoints[i];
        const auto& hi = checkpoints[i + 1];
        const nn::EvalResult elo = eval(lo.params);
        const nn::EvalResult ehi = eval(hi.params);
        const nn::EvalResult emid = eval(paramspace::masked_average(lo.params, hi.params, full));
        ConvexityPair pair;
        pair.epoch_lo = lo.meta.epoch;
        pair.epoch_hi = hi.meta.epoch;
        pair.loss_lo = elo.loss;
        pair.loss_hi = ehi.loss;
        pair.loss_mid = emid.loss;
        pair.midpoint_better = emid.loss < std::min(elo.loss, ehi.loss);
        if (pair.midpoint_better) ++better;
        report.pairs.push_back(pair);
    }
    report.midpoint_better_fraction =
        static_cast<double>(better) / static_cast<double>(report.pairs.size());
    return report;
}

ConvexityReport convexity_probe(const std::vector<nn::Checkpoint>& checkpoints,
                                const data::LabeledDataset& dataset) {
    return convexity_probe(checkpoints, dataset_evaluator(dataset));
}

}  // namespace lmc::connectivity
