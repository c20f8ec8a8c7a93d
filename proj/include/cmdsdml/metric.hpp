#pragma once

#include <Eigen/Dense>

namespace cmdsdml {

/// Learned linear map with its fitting scale and the training-data mean it
/// was fit under. Induces the metric A = L^T L, positive semidefinite with
/// rank at most the row count of L.
struct LinearMetric {
    Eigen::MatrixXd L;              // s x d
    double c = 1.0;
    Eigen::VectorXd center_offset;  // d; zero when the data were pre-centered

    Eigen::Index out_dim() const { return L.rows(); }
    Eigen::Index in_dim() const { return L.cols(); }
    Eigen::MatrixXd induced() const { return L.transpose() * L; }
};

/// L = I_d, c = 1, zero offset: distances reduce to plain Euclidean.
LinearMetric identity_metric(Eigen::Index d);

}  // namespace cmdsdml
