#pragma once

#include <Eigen/Dense>
#include <vector>

namespace cmdsdml {

/// One contiguous block of equal-label samples.
struct GroupSpan {
    double label;
    Eigen::Index start;
    Eigen::Index count;
};

/// Feature matrix (one sample per row) with ordinal labels.
///
/// Training code expects the grouped layout: all samples sharing a label
/// occupy one contiguous block of rows. Labels are compared exactly, so
/// repeated labels must be bit-identical (as produced by the loaders and
/// generators in this library).
struct LabeledDataset {
    Eigen::MatrixXd features;  // n x d
    Eigen::VectorXd labels;    // n

    Eigen::Index count() const { return features.rows(); }
    Eigen::Index dim() const { return features.cols(); }

    /// True when every label's occurrences form one contiguous block.
    bool is_grouped() const;

    /// Group blocks in row order. Throws std::invalid_argument if ungrouped.
    std::vector<GroupSpan> group_spans() const;

    /// Labels of the groups, in block order.
    Eigen::VectorXd distinct_labels() const;

    /// Stable-sorts rows by label, producing the grouped layout.
    static LabeledDataset grouped(const Eigen::MatrixXd& features,
                                  const Eigen::VectorXd& labels);
};

}  // namespace cmdsdml
