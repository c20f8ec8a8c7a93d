#include "cmdsdml/edm.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

#include "cmdsdml/errors.hpp"
#include "cmdsdml/linalg.hpp"

namespace cmdsdml {

namespace {

// Relative cutoff for treating an eigenvalue as strictly positive when
// extracting coordinates; guards the square root against floating noise.
constexpr double kPositiveEigenRel = 1e-10;

// B(D) = -1/2 J D J computed by explicit double centering, O(n^2).
Eigen::MatrixXd double_centered(const Eigen::MatrixXd& d) {
    const Eigen::Index n = d.rows();
    const Eigen::VectorXd row_mean = d.rowwise().mean();
    const double total_mean = d.mean();
    Eigen::MatrixXd b(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            b(i, j) = -0.5 * (d(i, j) - row_mean[i] - row_mean[j] + total_mean);
    return b;
}

void require_distinct(const Eigen::VectorXd& labels, const char* who) {
    for (Eigen::Index i = 0; i < labels.size(); ++i)
        for (Eigen::Index j = i + 1; j < labels.size(); ++j)
            if (labels[i] == labels[j])
                throw std::invalid_argument(std::string(who) + ": labels must be pairwise distinct");
}

// Coordinates from the top eigenpairs of B, at most max_dims columns, one
// column per strictly positive eigenvalue. Throws when B has an eigenvalue
// more negative than the Schoenberg tolerance allows.
Eigen::MatrixXd coordinates_from_gram(const Eigen::MatrixXd& b, Eigen::Index max_dims,
                                      double edm_tol) {
    const SymmetricEigen eig = eigen_sym_sorted(b);
    const Eigen::Index n = b.rows();

    const double scale = eig.values.size() > 0 ? eig.values.cwiseAbs().maxCoeff() : 0.0;
    const double most_negative = eig.values.size() > 0 ? eig.values[eig.values.size() - 1] : 0.0;
    if (most_negative < -edm_tol * (1.0 + scale)) {
        std::ostringstream msg;
        msg << "input is not a Euclidean distance matrix: most negative eigenvalue of the "
               "double-centered matrix is "
            << most_negative;
        throw std::domain_error(msg.str());
    }

    Eigen::Index positive = 0;
    while (positive < n && eig.values[positive] > kPositiveEigenRel * scale && eig.values[positive] > 0.0)
        ++positive;
    const Eigen::Index k = std::min(positive, max_dims);

    Eigen::MatrixXd coords(n, k);
    for (Eigen::Index j = 0; j < k; ++j)
        coords.col(j) = std::sqrt(eig.values[j]) * eig.vectors.col(j);
    return coords;
}

}  // namespace

SquaredDistanceMatrix::SquaredDistanceMatrix(Eigen::MatrixXd entries, double symmetry_tol)
    : entries_(std::move(entries)) {
    const Eigen::Index n = entries_.rows();
    if (n == 0 || entries_.cols() != n)
        throw std::invalid_argument("squared distance matrix must be square and nonempty");
    const double scale = std::max(1.0, entries_.cwiseAbs().maxCoeff());
    for (Eigen::Index i = 0; i < n; ++i) {
        if (entries_(i, i) != 0.0)
            throw std::invalid_argument("squared distance matrix must have a zero diagonal");
        for (Eigen::Index j = 0; j < n; ++j) {
            if (entries_(i, j) < 0.0)
                throw std::invalid_argument("squared distance matrix entries must be nonnegative");
            if (std::abs(entries_(i, j) - entries_(j, i)) > symmetry_tol * scale)
                throw std::invalid_argument("squared distance matrix must be symmetric");
        }
    }
    // Make symmetry exact so downstream spectral code sees a clean input.
    entries_ = ((entries_ + entries_.transpose()) * 0.5).eval();
}

Eigen::MatrixXd EmbeddingSet::squared_distances() const {
    const Eigen::Index n = count();
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j)
            d(i, j) = d(j, i) = (points.row(i) - points.row(j)).squaredNorm();
    return d;
}

Eigen::MatrixXd centering_matrix(Eigen::Index n) {
    if (n < 1) throw std::invalid_argument("centering_matrix: order must be positive");
    const double inv = 1.0 / static_cast<double>(n);
    return Eigen::MatrixXd::Identity(n, n) - Eigen::MatrixXd::Constant(n, n, inv);
}

SquaredDistanceMatrix build_label_edm(const Eigen::VectorXd& labels, double beta) {
    const Eigen::Index n = labels.size();
    if (n < 1) throw std::invalid_argument("build_label_edm: need at least one label");
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j) {
            if (labels[i] == labels[j]) continue;
            const double v = std::abs(labels[i] - labels[j]) + beta;
            d(i, j) = d(j, i) = v * v;
        }
    return SquaredDistanceMatrix(std::move(d));
}

SquaredDistanceMatrix build_group_edm(const Eigen::VectorXd& distinct_labels, double beta) {
    if (distinct_labels.size() < 1)
        throw std::invalid_argument("build_group_edm: need at least one label");
    require_distinct(distinct_labels, "build_group_edm");
    return build_label_edm(distinct_labels, beta);
}

BetaBound min_beta(const Eigen::VectorXd& distinct_labels) {
    const Eigen::Index m = distinct_labels.size();
    if (m < 1) throw std::invalid_argument("min_beta: need at least one label");
    require_distinct(distinct_labels, "min_beta");

    Eigen::MatrixXd gaps(m, m);
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < m; ++j)
            gaps(i, j) = std::abs(distinct_labels[i] - distinct_labels[j]);

    const SymmetricEigen eig = eigen_sym_sorted(double_centered(gaps));
    BetaBound bound;
    bound.mu0 = eig.values[m - 1];
    bound.min_beta = -4.0 * bound.mu0;
    return bound;
}

bool is_edm(const SquaredDistanceMatrix& d, double tol) {
    if (tol <= 0.0) throw std::invalid_argument("is_edm: tolerance must be positive");
    const SymmetricEigen eig = eigen_sym_sorted(double_centered(d.entries()));
    const double scale = eig.values.cwiseAbs().maxCoeff();
    const double smallest = eig.values[eig.values.size() - 1];
    return smallest >= -tol * (1.0 + scale);
}

EmbeddingSet cmds_embed(const SquaredDistanceMatrix& d, Eigen::Index s, double edm_tol) {
    const Eigen::Index n = d.order();
    if (s < 1 || s > n - 1)
        throw std::invalid_argument("cmds_embed: embedding dimension must be in [1, n-1]");

    const Eigen::MatrixXd coords = coordinates_from_gram(double_centered(d.entries()), s, edm_tol);

    EmbeddingSet out;
    out.points = Eigen::MatrixXd::Zero(n, s);
    out.points.leftCols(coords.cols()) = coords;
    // Eigenvectors with positive eigenvalues are orthogonal to the ones
    // vector, so this only sweeps out rounding residue.
    out.points.rowwise() -= out.points.colwise().mean().eval();
    return out;
}

EmbeddingSet embed_labels(const Eigen::VectorXd& labels, double beta, Eigen::Index s) {
    const Eigen::Index n = labels.size();
    if (n < 1) throw std::invalid_argument("embed_labels: need at least one label");
    if (s < 1) throw std::invalid_argument("embed_labels: embedding dimension must be positive");

    // Distinct labels ascending, plus each sample's group index.
    std::map<double, Eigen::Index> group_of;
    for (Eigen::Index i = 0; i < n; ++i) group_of.emplace(labels[i], 0);
    Eigen::VectorXd distinct(static_cast<Eigen::Index>(group_of.size()));
    {
        Eigen::Index t = 0;
        for (auto& [label, idx] : group_of) {
            idx = t;
            distinct[t] = label;
            ++t;
        }
    }
    const Eigen::Index m = distinct.size();

    const BetaBound bound = min_beta(distinct);
    const double gap_scale = m > 1 ? (distinct[m - 1] - distinct[0]) : 0.0;
    const double slack = 1e-10 * static_cast<double>(m) * std::max(1.0, gap_scale);
    if (beta < bound.min_beta - slack) {
        std::ostringstream msg;
        msg << "embed_labels: beta " << beta << " is below the admissible bound "
            << bound.min_beta;
        throw std::domain_error(msg.str());
    }

    Eigen::MatrixXd group_coords(m, 0);
    if (m > 1) {
        const SquaredDistanceMatrix delta = build_group_edm(distinct, beta);
        group_coords = coordinates_from_gram(double_centered(delta.entries()), s, kDefaultEdmTol);
    }

    EmbeddingSet out;
    out.points = Eigen::MatrixXd::Zero(n, s);
    for (Eigen::Index i = 0; i < n; ++i)
        out.points.row(i).head(group_coords.cols()) =
            group_coords.row(group_of.at(labels[i]));
    // Group sizes differ, so the replicated points are not centered yet.
    out.points.rowwise() -= out.points.colwise().mean().eval();
    return out;
}

void write_matrix_text(std::ostream& out, const Eigen::MatrixXd& m) {
    out << m.rows() << ' ' << m.cols() << '\n';
    char buf[64];
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", m(i, j));
            if (j) out << ' ';
            out << buf;
        }
        out << '\n';
    }
}

void write_matrix_text(const std::filesystem::path& path, const Eigen::MatrixXd& m) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    write_matrix_text(out, m);
    if (!out.good()) throw std::runtime_error("failed writing " + path.string());
}

Eigen::MatrixXd read_matrix_text(std::istream& in) {
    Eigen::Index rows = 0, cols = 0;
    if (!(in >> rows >> cols) || rows < 0 || cols < 0)
        throw parse_error("expected matrix header \"rows cols\"", 1);
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j)
            if (!(in >> m(i, j)))
                throw parse_error("truncated or non-numeric matrix data", 2 + i);
    return m;
}

Eigen::MatrixXd read_matrix_text(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return read_matrix_text(in);
}

}  // namespace cmdsdml
