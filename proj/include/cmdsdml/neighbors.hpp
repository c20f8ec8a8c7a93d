#pragma once

#include <utility>
#include <vector>

#include "cmdsdml/dataset.hpp"

namespace cmdsdml {

/// Target-neighbor relation: pair (i, j) present means sample j is one of
/// sample i's K nearest same-label samples under Euclidean distance. The
/// relation is directed and never crosses labels.
struct NeighborGraph {
    std::vector<std::pair<Eigen::Index, Eigen::Index>> pairs;
    int K = 0;
};

/// For each sample, its K nearest same-label samples (all of them when the
/// label block has at most K other members). Distance ties break toward the
/// lower index.
NeighborGraph find_target_neighbors(const LabeledDataset& data, int K);

}  // namespace cmdsdml
