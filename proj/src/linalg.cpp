#include "cmdsdml/linalg.hpp"

#include <stdexcept>

namespace cmdsdml {

SymmetricEigen eigen_sym_sorted(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("eigen_sym_sorted: matrix must be square");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eigen_sym_sorted: eigensolver did not converge");

    const Eigen::Index n = m.rows();
    SymmetricEigen out;
    out.values.resize(n);
    out.vectors.resize(n, n);

    // The solver returns ascending eigenvalues; flip to descending and pin
    // each eigenvector's sign by its largest-magnitude entry.
    for (Eigen::Index k = 0; k < n; ++k) {
        const Eigen::Index src = n - 1 - k;
        out.values[k] = solver.eigenvalues()[src];
        Eigen::VectorXd v = solver.eigenvectors().col(src);
        Eigen::Index imax = 0;
        v.cwiseAbs().maxCoeff(&imax);
        if (v[imax] < 0.0) v = -v;
        out.vectors.col(k) = v;
    }
    return out;
}

}  // namespace cmdsdml
