#pragma once

#include <cstdint>
#include <filesystem>
#include <utility>
#include <vector>

#include "cmdsdml/dataset.hpp"
#include "cmdsdml/errors.hpp"

namespace cmdsdml {

/// Load a dataset from CSV. The header must contain a column named "label";
/// every other column is a numeric feature. Rows are stable-sorted by label
/// into the grouped layout. Features are returned as-is (not centered).
LabeledDataset load_csv(const std::filesystem::path& path);

/// Write a dataset as CSV ("label,f0,...,f{d-1}") with 17 significant
/// digits, enough for a bit-exact load round trip.
void save_csv(const std::filesystem::path& path, const LabeledDataset& data);

/// Subtract the feature mean; returns the centered dataset and the offset.
/// The offset belongs in LinearMetric::center_offset so queries see the same
/// shift at evaluation time.
std::pair<LabeledDataset, Eigen::VectorXd> center(const LabeledDataset& data);

/// Principal components of the sample covariance (centering only, no
/// variance scaling). Rows of `components` are orthonormal, ordered by
/// decreasing variance.
struct PcaModel {
    Eigen::VectorXd mean;        // d
    Eigen::MatrixXd components;  // d' x d
    Eigen::VectorXd variances;   // d', descending
    Eigen::Index input_dim = 0;
    Eigen::Index output_dim = 0;
};

PcaModel fit_pca(const LabeledDataset& data, Eigen::Index d_target);
Eigen::MatrixXd apply_pca(const PcaModel& model, const Eigen::MatrixXd& points);
LabeledDataset apply_pca(const PcaModel& model, const LabeledDataset& data);

/// Seeded per-label sampling without replacement.
struct SplitSpec {
    Eigen::Index per_label_train = 10;
    std::uint64_t seed = 0;
};

/// Draw per_label_train samples from every label block for training; the
/// rest become the test set. Both halves keep the grouped layout and the
/// original within-group row order. Deterministic in the seed.
std::pair<LabeledDataset, LabeledDataset> split(const LabeledDataset& data,
                                                const SplitSpec& spec);

/// Synthetic ordinal clusters: group t sits at label_t * signal_gap along
/// the first coordinate, plus isotropic noise (noise_sigma) in every
/// coordinate, plus high-variance noise (distractor_sigma) on the last
/// floor(dim/2) coordinates. The distractor block is what breaks plain
/// Euclidean ranking while leaving the ordinal signal recoverable.
struct SynthSpec {
    std::vector<double> labels = {0.0, 1.0, 2.0};
    Eigen::Index per_group = 60;
    Eigen::Index dim = 150;
    double signal_gap = 3000.0;
    double noise_sigma = 0.3;
    double distractor_sigma = 1000.0;
    std::uint64_t seed = 1;
};

LabeledDataset synth(const SynthSpec& spec);

/// First coordinate carrying distractor noise: dim - floor(dim/2).
Eigen::Index distractor_start(Eigen::Index dim);

}  // namespace cmdsdml
