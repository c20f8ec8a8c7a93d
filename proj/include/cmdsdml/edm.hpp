#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <iosfwd>

namespace cmdsdml {

/// Symmetric hollow nonnegative matrix of squared dissimilarities.
///
/// The constructor enforces the shape invariants (square, symmetric, zero
/// diagonal, nonnegative entries) and throws std::invalid_argument on
/// violation. Whether the matrix is realizable by actual points is a separate
/// question, answered by is_edm().
class SquaredDistanceMatrix {
public:
    explicit SquaredDistanceMatrix(Eigen::MatrixXd entries, double symmetry_tol = 1e-12);

    Eigen::Index order() const { return entries_.rows(); }
    const Eigen::MatrixXd& entries() const { return entries_; }

private:
    Eigen::MatrixXd entries_;
};

/// Centered point configuration, one point per row.
struct EmbeddingSet {
    Eigen::MatrixXd points;  // n x s

    Eigen::Index count() const { return points.rows(); }
    Eigen::Index dim() const { return points.cols(); }

    Eigen::MatrixXd squared_distances() const;
};

/// Smallest admissible offset for the label distance construction:
/// min_beta = -4 * mu0 exactly, with mu0 the smallest eigenvalue of the
/// double-centered matrix of pairwise label gaps.
struct BetaBound {
    double mu0;
    double min_beta;
};

/// J = I - (1/n) 11^T. Symmetric, idempotent, annihilates the ones vector.
Eigen::MatrixXd centering_matrix(Eigen::Index n);

/// D_ij = (|r_i - r_j| + beta)^2 for r_i != r_j, zero otherwise. Negative
/// beta is accepted; the result is then not guaranteed to be an EDM.
SquaredDistanceMatrix build_label_edm(const Eigen::VectorXd& labels, double beta);

/// Group-level counterpart of build_label_edm over pairwise-distinct labels.
SquaredDistanceMatrix build_group_edm(const Eigen::VectorXd& distinct_labels, double beta);

BetaBound min_beta(const Eigen::VectorXd& distinct_labels);

/// Schoenberg test: true iff the smallest eigenvalue of -1/2 J D J is
/// >= -tol * (1 + largest absolute eigenvalue).
bool is_edm(const SquaredDistanceMatrix& d, double tol);

inline constexpr double kDefaultEdmTol = 1e-9;

/// Classical scaling: coordinates from the top-s eigenpairs of -1/2 J D J,
/// zero-padded when fewer than s eigenvalues are strictly positive. Output
/// rows are centered. Throws std::domain_error (naming the most negative
/// eigenvalue) when the input fails the Schoenberg test beyond edm_tol.
EmbeddingSet cmds_embed(const SquaredDistanceMatrix& d, Eigen::Index s,
                        double edm_tol = kDefaultEdmTol);

/// Group-compressed embedding: classical scaling on the m x m gap matrix,
/// replicated per label block, padded (or truncated) to dimension s, then
/// recentered by the mean point. Equals the full path on the n x n matrix
/// whenever s covers the intrinsic dimension, at O(m^3) instead of O(n^3)
/// eigendecomposition cost. Throws std::domain_error when beta is below
/// min_beta for the distinct labels.
EmbeddingSet embed_labels(const Eigen::VectorXd& labels, double beta, Eigen::Index s);

// Plain-text matrix exchange: first line "rows cols", then one row per line.
void write_matrix_text(std::ostream& out, const Eigen::MatrixXd& m);
void write_matrix_text(const std::filesystem::path& path, const Eigen::MatrixXd& m);
Eigen::MatrixXd read_matrix_text(std::istream& in);
Eigen::MatrixXd read_matrix_text(const std::filesystem::path& path);

}  // namespace cmdsdml
