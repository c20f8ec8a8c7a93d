#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cmdsdml/data_io.hpp"
#include "cmdsdml/ldmlr.hpp"
#include "cmdsdml/metric_learner.hpp"
#include "cmdsdml/ranking.hpp"

namespace cmdsdml {

enum class Method { cmds_dml, ldmlr, euclidean };

Method parse_method(std::string_view name);
std::string method_name(Method method);

/// One evaluation campaign: repeated seeded splits, training, and k-NN label
/// regression on the held-out half.
struct ExperimentConfig {
    Method method = Method::cmds_dml;
    TrainConfig train;
    LdmlrConfig ldmlr;
    SplitSpec split;          // split.seed doubles as the master seed
    int trials = 50;
    int knn_k = 5;
    Eigen::Index pca_dim = 0;  // 0 disables the projection
};

/// Center the (grouped) training set and fit the requested method on it.
/// The returned metric carries the centering offset; "euclidean" skips
/// training and returns the identity map.
LinearMetric fit_method(Method method, const LabeledDataset& train_set,
                        const TrainConfig& train_cfg, const LdmlrConfig& ldmlr_cfg);

/// MAE of k-NN label predictions for every query row against the training
/// set.
double evaluate_mae(const LinearMetric& metric, const LabeledDataset& train_set,
                    const LabeledDataset& queries, int k);

struct TrialResult {
    double mae = 0.0;
    double seconds = 0.0;  // fit + prediction time
};

/// Split with the given seed, optionally project through train-fit PCA, fit,
/// and score. Deterministic in trial_seed.
TrialResult run_trial(const LabeledDataset& data, const ExperimentConfig& cfg,
                      std::uint64_t trial_seed);

/// cfg.trials independent trials with seeds master, master+1, ...; reports
/// mean MAE, its standard deviation across trials, and mean trial time.
EvalReport run_eval(const LabeledDataset& data, const ExperimentConfig& cfg);

/// Fold a PCA projection into a metric so the stored model applies to
/// raw-space vectors directly.
LinearMetric compose_pca(const LinearMetric& metric, const PcaModel& pca);

struct BenchRow {
    Method method;
    Eigen::Index n = 0;
    Eigen::Index d = 0;
    double seconds_per_iter = 0.0;
};

/// Mean per-iteration wall time of both learners on synthetic data at the
/// given dimensions (fixed sample count). Measured as the runtime difference
/// between 2*iters and iters iterations, which cancels one-time setup cost.
std::vector<BenchRow> run_bench(const std::vector<Eigen::Index>& dims, Eigen::Index n,
                                int K, int iters, std::uint64_t seed);

}  // namespace cmdsdml
