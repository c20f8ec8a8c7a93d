#include "cmdsdml/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace cmdsdml {

double metric_distance(const LinearMetric& metric, const Eigen::VectorXd& x,
                       const Eigen::VectorXd& y) {
    if (x.size() != metric.in_dim() || y.size() != metric.in_dim() ||
        metric.center_offset.size() != metric.in_dim())
        throw std::invalid_argument("metric_distance: dimension mismatch");
    const Eigen::VectorXd u = x - metric.center_offset;
    const Eigen::VectorXd w = y - metric.center_offset;
    return (metric.L * (u - w)).norm();
}

RankingResult rank_query(const LinearMetric& metric, const Eigen::VectorXd& query,
                         const LabeledDataset& data, Eigen::Index query_index) {
    const Eigen::Index n = data.count();
    if (n < 1) throw std::invalid_argument("rank_query: empty training set");

    RankingResult result;
    result.query_index = query_index;
    result.ranked.reserve(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i)
        result.ranked.emplace_back(i, metric_distance(metric, query, data.features.row(i).transpose()));
    std::sort(result.ranked.begin(), result.ranked.end(),
              [](const auto& a, const auto& b) {
                  return a.second != b.second ? a.second < b.second : a.first < b.first;
              });
    return result;
}

double knn_predict(const LinearMetric& metric, const Eigen::VectorXd& query,
                   const LabeledDataset& data, int k) {
    if (k < 1 || static_cast<Eigen::Index>(k) > data.count())
        throw std::invalid_argument("knn_predict: k must lie in [1, n]");
    const RankingResult ranking = rank_query(metric, query, data);
    double sum = 0.0;
    for (int t = 0; t < k; ++t) sum += data.labels[ranking.ranked[static_cast<std::size_t>(t)].first];
    return sum / static_cast<double>(k);
}

double mae(const Eigen::VectorXd& predicted, const Eigen::VectorXd& truth) {
    if (predicted.size() != truth.size())
        throw std::invalid_argument("mae: vectors must have equal length");
    if (predicted.size() < 1) throw std::invalid_argument("mae: need at least one value");
    return (predicted - truth).cwiseAbs().mean();
}

Eigen::VectorXd layering_profile(const LinearMetric& metric, const LabeledDataset& data,
                                 Eigen::Index anchor_index) {
    if (anchor_index < 0 || anchor_index >= data.count())
        throw std::invalid_argument("layering_profile: anchor index out of range");
    const Eigen::VectorXd anchor = data.features.row(anchor_index).transpose();
    Eigen::VectorXd profile(data.count());
    for (Eigen::Index i = 0; i < data.count(); ++i)
        profile[i] = metric_distance(metric, data.features.row(i).transpose(), anchor);
    return profile;
}

void write_ranking_csv(std::ostream& out, const RankingResult& result,
                       const LabeledDataset& data) {
    out << "index,label,distance\n";
    char buf[64];
    for (const auto& [index, distance] : result.ranked) {
        std::snprintf(buf, sizeof buf, "%.17g", data.labels[index]);
        out << index << ',' << buf << ',';
        std::snprintf(buf, sizeof buf, "%.17g", distance);
        out << buf << '\n';
    }
}

}  // namespace cmdsdml
