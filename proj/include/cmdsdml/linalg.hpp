#pragma once

#include <Eigen/Dense>

namespace cmdsdml {

/// Eigendecomposition of a symmetric matrix under a fixed convention:
/// eigenvalues sorted descending, each eigenvector's sign chosen so that its
/// largest-magnitude entry is positive. Outputs are reproducible up to this
/// convention.
struct SymmetricEigen {
    Eigen::VectorXd values;   // descending
    Eigen::MatrixXd vectors;  // one eigenvector per column, same order
};

SymmetricEigen eigen_sym_sorted(const Eigen::MatrixXd& m);

}  // namespace cmdsdml
