#pragma once

#include <utility>
#include <vector>

#include "cmdsdml/dataset.hpp"
#include "cmdsdml/edm.hpp"
#include "cmdsdml/errors.hpp"
#include "cmdsdml/metric.hpp"
#include "cmdsdml/neighbors.hpp"

namespace cmdsdml {

/// Steepest-descent settings. Defaults follow the reference configuration:
/// the base step gamma is data-scale dependent and usually the only knob
/// that needs touching.
struct TrainConfig {
    double mu = 1e-10;        // local-structure tradeoff
    double gamma = 1e-9;      // base steplength
    double rho = 0.5;         // backtracking factor, in (0,1)
    double sigma = 0.05;      // sufficient-decrease factor, in (0,1)
    int max_linesearch = 20;  // trial cap r
    double epsilon = 1e-6;    // gradient-norm stopping threshold
    int max_iters = 500;
    Eigen::Index s = 3;       // embedding dimension (rank cap for L^T L)
    int K = 5;                // target neighbors per sample
    double beta = 1.0;        // label distance offset

    /// Throws std::invalid_argument when a field is out of range.
    void validate() const;
};

enum class TrainStatus { Converged, MaxIters, LineSearchExhausted };

const char* to_string(TrainStatus status);

struct TrainTrace {
    int iterations = 0;                 // accepted descent steps
    std::vector<double> objective;      // value at the start and after each step
    double final_grad_norm = 0.0;       // joint (L, c) Frobenius norm
    TrainStatus status = TrainStatus::Converged;
};

/// f(L, c) = 1/2 sum_i ||L x_i - c y_i||^2
///         + mu sum_{(i,j) in nbrs} (||L(x_i - x_j)||^2 - ||x_i - x_j||^2)^2
double objective(const LinearMetric& metric, const LabeledDataset& data,
                 const EmbeddingSet& targets, const NeighborGraph& nbrs, double mu);

/// Analytic gradient of f: the s x d block with respect to L and the scalar
/// with respect to c.
std::pair<Eigen::MatrixXd, double> gradient(const LinearMetric& metric,
                                            const LabeledDataset& data,
                                            const EmbeddingSet& targets,
                                            const NeighborGraph& nbrs, double mu);

/// Full pipeline: build the label distance matrix, embed targets (using the
/// group-compressed path whenever there are fewer distinct labels than
/// samples), pick target neighbors, then run steepest descent with Armijo
/// backtracking from L0 = (e_1, ..., e_s)^T, c0 = 1.
///
/// Expects grouped data (Assumption-1 layout) with features already
/// centered; the returned metric carries a zero offset, which callers that
/// centered the data themselves overwrite.
std::pair<LinearMetric, TrainTrace> train(const LabeledDataset& data,
                                          const TrainConfig& cfg);

}  // namespace cmdsdml
