#include "cmdsdml/dataset.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace cmdsdml {

bool LabeledDataset::is_grouped() const {
    std::set<double> seen;
    const Eigen::Index n = count();
    for (Eigen::Index i = 0; i < n; ++i) {
        if (i > 0 && labels[i] == labels[i - 1]) continue;
        if (!seen.insert(labels[i]).second) return false;  // label resurfaced
    }
    return true;
}

std::vector<GroupSpan> LabeledDataset::group_spans() const {
    if (!is_grouped())
        throw std::invalid_argument("dataset is not grouped by label");
    std::vector<GroupSpan> spans;
    const Eigen::Index n = count();
    Eigen::Index start = 0;
    while (start < n) {
        Eigen::Index end = start + 1;
        while (end < n && labels[end] == labels[start]) ++end;
        spans.push_back({labels[start], start, end - start});
        start = end;
    }
    return spans;
}

Eigen::VectorXd LabeledDataset::distinct_labels() const {
    const auto spans = group_spans();
    Eigen::VectorXd out(static_cast<Eigen::Index>(spans.size()));
    for (std::size_t t = 0; t < spans.size(); ++t) out[static_cast<Eigen::Index>(t)] = spans[t].label;
    return out;
}

LabeledDataset LabeledDataset::grouped(const Eigen::MatrixXd& features,
                                       const Eigen::VectorXd& labels) {
    if (features.rows() != labels.size())
        throw std::invalid_argument("feature row count does not match label count");

    const Eigen::Index n = features.rows();
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index a, Eigen::Index b) { return labels[a] < labels[b]; });

    LabeledDataset out;
    out.features.resize(n, features.cols());
    out.labels.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        out.features.row(i) = features.row(order[static_cast<std::size_t>(i)]);
        out.labels[i] = labels[order[static_cast<std::size_t>(i)]];
    }
    return out;
}

}  // namespace cmdsdml
