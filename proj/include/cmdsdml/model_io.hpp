#pragma once

#include <filesystem>

#include "cmdsdml/ldmlr.hpp"
#include "cmdsdml/metric.hpp"

namespace cmdsdml {

enum class ModelKind { linear, psd };

/// A model read back from disk: either a linear map (L, c) or a full PSD
/// matrix A, plus the training-data centering offset.
struct StoredModel {
    ModelKind kind = ModelKind::linear;
    LinearMetric linear;  // valid when kind == linear
    PsdMetric psd;        // valid when kind == psd
    Eigen::VectorXd center_offset;

    /// Uniform view for ranking: the linear model itself, or the square root
    /// of A.
    LinearMetric as_linear() const;
};

/// Structured text format, one field per line, 17 significant digits
/// everywhere; save/load round-trips bit-identically.
void save_model(const std::filesystem::path& path, const LinearMetric& metric);
void save_model(const std::filesystem::path& path, const PsdMetric& metric,
                const Eigen::VectorXd& center_offset);
StoredModel load_model(const std::filesystem::path& path);

}  // namespace cmdsdml
