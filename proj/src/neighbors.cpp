#include "cmdsdml/neighbors.hpp"

#include <algorithm>
#include <stdexcept>

namespace cmdsdml {

NeighborGraph find_target_neighbors(const LabeledDataset& data, int K) {
    if (K < 1) throw std::invalid_argument("find_target_neighbors: K must be positive");

    const Eigen::Index n = data.count();
    NeighborGraph graph;
    graph.K = K;

    std::vector<std::pair<double, Eigen::Index>> candidates;
    for (Eigen::Index i = 0; i < n; ++i) {
        candidates.clear();
        for (Eigen::Index j = 0; j < n; ++j) {
            if (j == i || data.labels[j] != data.labels[i]) continue;
            const double d2 = (data.features.row(i) - data.features.row(j)).squaredNorm();
            candidates.emplace_back(d2, j);
        }
        // Ties break toward the lower index.
        std::sort(candidates.begin(), candidates.end());
        const std::size_t take = std::min<std::size_t>(candidates.size(), static_cast<std::size_t>(K));
        for (std::size_t t = 0; t < take; ++t) graph.pairs.emplace_back(i, candidates[t].second);
    }
    return graph;
}

}  // namespace cmdsdml
