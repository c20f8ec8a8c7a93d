#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include "cmdsdml/dataset.hpp"
#include "cmdsdml/metric.hpp"

namespace cmdsdml {

/// All training samples ordered by distance from one query, ascending;
/// distance ties break toward the lower index.
struct RankingResult {
    Eigen::Index query_index = -1;  // caller-supplied id, -1 for external queries
    std::vector<std::pair<Eigen::Index, double>> ranked;  // (training index, distance)
};

/// Aggregate of repeated evaluation trials.
struct EvalReport {
    double mae = 0.0;
    double std_dev = 0.0;
    double wall_time_s = 0.0;
    int trials = 0;
};

/// ||L(x - y)|| with the stored center offset applied to both points (the
/// offsets cancel; applying them keeps single-point embeddings consistent).
double metric_distance(const LinearMetric& metric, const Eigen::VectorXd& x,
                       const Eigen::VectorXd& y);

RankingResult rank_query(const LinearMetric& metric, const Eigen::VectorXd& query,
                         const LabeledDataset& data, Eigen::Index query_index = -1);

/// Mean label of the k nearest training samples under the metric.
double knn_predict(const LinearMetric& metric, const Eigen::VectorXd& query,
                   const LabeledDataset& data, int k);

/// Mean absolute error between two equal-length vectors.
double mae(const Eigen::VectorXd& predicted, const Eigen::VectorXd& truth);

/// Distance from every sample to the anchor sample, in sample order.
Eigen::VectorXd layering_profile(const LinearMetric& metric, const LabeledDataset& data,
                                 Eigen::Index anchor_index);

/// CSV emission: header, then one row per sample (index, label, distance).
void write_ranking_csv(std::ostream& out, const RankingResult& result,
                       const LabeledDataset& data);

}  // namespace cmdsdml
