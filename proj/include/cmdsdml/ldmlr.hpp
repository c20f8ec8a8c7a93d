#pragma once

#include <vector>

#include "cmdsdml/dataset.hpp"
#include "cmdsdml/errors.hpp"
#include "cmdsdml/metric.hpp"
#include "cmdsdml/neighbors.hpp"

namespace cmdsdml {

/// Full-rank metric learned over the positive semidefinite cone.
struct PsdMetric {
    Eigen::MatrixXd A;  // d x d, symmetric PSD
};

struct LdmlrConfig {
    double mu = 1e3;   // tradeoff parameter
    double p = 1.0;    // ordinal weight exponent, > 0
    int t_max = 30;    // projected-gradient iterations
    int K = 5;         // target neighbors per sample
    double step = 1.0; // gradient step; the plain update uses a unit step

    void validate() const;
};

/// (|r_i - r_j| + 1)^p for distinct labels, zero otherwise.
double ordinal_weight(double r_i, double r_j, double p);

/// h(A) = -sum_{i,j} w_ij d_A^2(x_i, x_j)
///        + mu sum_{(i,j) in nbrs} (d_A^2(x_i, x_j) - d_I^2(x_i, x_j))^2
double ldmlr_objective(const PsdMetric& metric, const LabeledDataset& data,
                       const NeighborGraph& nbrs, const LdmlrConfig& cfg);

/// Analytic gradient of h; exactly symmetric.
Eigen::MatrixXd ldmlr_gradient(const PsdMetric& metric, const LabeledDataset& data,
                               const NeighborGraph& nbrs, const LdmlrConfig& cfg);

/// Frobenius-nearest PSD matrix: eigendecompose and clip negative
/// eigenvalues to zero. Throws std::invalid_argument on asymmetric input.
PsdMetric project_psd(const Eigen::MatrixXd& m);

/// Exactly t_max projected-gradient iterations from A0 = I. When
/// objective_trace is non-null it receives h(A) at A0 and after every
/// iteration (t_max + 1 values).
PsdMetric train_ldmlr(const LabeledDataset& data, const LdmlrConfig& cfg,
                      std::vector<double>* objective_trace = nullptr);

/// Square root of the induced metric: a d x d map L with L^T L = A (tiny
/// negative eigenvalues clipped), so ranking code can treat both learners
/// uniformly.
LinearMetric linear_from_psd(const PsdMetric& metric, Eigen::VectorXd center_offset);

}  // namespace cmdsdml
