#include "cmdsdml/ldmlr.hpp"

#include <cmath>
#include <stdexcept>

#include "cmdsdml/linalg.hpp"

namespace cmdsdml {

namespace {

void check_dims(const PsdMetric& metric, const LabeledDataset& data) {
    if (metric.A.rows() != metric.A.cols())
        throw std::invalid_argument("metric matrix must be square");
    if (metric.A.rows() != data.dim())
        throw std::invalid_argument("metric dimension does not match the data");
}

// sum over all ordered pairs of w_ij (x_i - x_j)(x_i - x_j)^T, computed as
// 2 X^T (diag(row sums) - W) X.
Eigen::MatrixXd weighted_scatter(const LabeledDataset& data, double p) {
    const Eigen::Index n = data.count();
    Eigen::MatrixXd w(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        w(i, i) = 0.0;
        for (Eigen::Index j = i + 1; j < n; ++j)
            w(i, j) = w(j, i) = ordinal_weight(data.labels[i], data.labels[j], p);
    }
    Eigen::MatrixXd lap = Eigen::MatrixXd(w.rowwise().sum().asDiagonal()) - w;
    Eigen::MatrixXd scatter = 2.0 * data.features.transpose() * lap * data.features;
    return 0.5 * (scatter + scatter.transpose());
}

struct PairCache {
    std::vector<Eigen::VectorXd> diffs;
    std::vector<double> sq_norms;
};

PairCache cache_pairs(const LabeledDataset& data, const NeighborGraph& nbrs) {
    PairCache cache;
    cache.diffs.reserve(nbrs.pairs.size());
    cache.sq_norms.reserve(nbrs.pairs.size());
    const Eigen::Index n = data.count();
    for (const auto& [i, j] : nbrs.pairs) {
        if (i < 0 || i >= n || j < 0 || j >= n)
            throw std::invalid_argument("neighbor pair index out of range");
        Eigen::VectorXd v = (data.features.row(i) - data.features.row(j)).transpose();
        cache.sq_norms.push_back(v.squaredNorm());
        cache.diffs.push_back(std::move(v));
    }
    return cache;
}

}  // namespace

void LdmlrConfig::validate() const {
    if (!(mu > 0.0)) throw std::invalid_argument("LdmlrConfig: mu must be positive");
    if (!(p > 0.0)) throw std::invalid_argument("LdmlrConfig: p must be positive");
    if (t_max < 0) throw std::invalid_argument("LdmlrConfig: t_max must be nonnegative");
    if (K < 1) throw std::invalid_argument("LdmlrConfig: K must be positive");
    if (!(step > 0.0) || !std::isfinite(step))
        throw std::invalid_argument("LdmlrConfig: step must be positive and finite");
}

double ordinal_weight(double r_i, double r_j, double p) {
    if (!(p > 0.0)) throw std::invalid_argument("ordinal_weight: p must be positive");
    if (r_i == r_j) return 0.0;
    return std::pow(std::abs(r_i - r_j) + 1.0, p);
}

double ldmlr_objective(const PsdMetric& metric, const LabeledDataset& data,
                       const NeighborGraph& nbrs, const LdmlrConfig& cfg) {
    check_dims(metric, data);
    const Eigen::Index n = data.count();

    double penalty = 0.0;  // sum over ordered pairs of w_ij d_A^2
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double w = ordinal_weight(data.labels[i], data.labels[j], cfg.p);
            if (w == 0.0) continue;
            const Eigen::VectorXd v = (data.features.row(i) - data.features.row(j)).transpose();
            penalty += 2.0 * w * v.dot(metric.A * v);
        }

    double local = 0.0;
    const PairCache cache = cache_pairs(data, nbrs);
    for (std::size_t t = 0; t < cache.diffs.size(); ++t) {
        const double gap = cache.diffs[t].dot(metric.A * cache.diffs[t]) - cache.sq_norms[t];
        local += gap * gap;
    }
    return -penalty + cfg.mu * local;
}

Eigen::MatrixXd ldmlr_gradient(const PsdMetric& metric, const LabeledDataset& data,
                               const NeighborGraph& nbrs, const LdmlrConfig& cfg) {
    check_dims(metric, data);
    Eigen::MatrixXd g = -weighted_scatter(data, cfg.p);
    const PairCache cache = cache_pairs(data, nbrs);
    for (std::size_t t = 0; t < cache.diffs.size(); ++t) {
        const Eigen::VectorXd& v = cache.diffs[t];
        const double gap = v.dot(metric.A * v) - cache.sq_norms[t];
        g.noalias() += (2.0 * cfg.mu * gap) * (v * v.transpose());
    }
    return 0.5 * (g + g.transpose());
}

PsdMetric project_psd(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("project_psd: matrix must be square");
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw std::invalid_argument("project_psd: matrix must be symmetric");

    const SymmetricEigen eig = eigen_sym_sorted(0.5 * (m + m.transpose()));
    Eigen::VectorXd clipped = eig.values.cwiseMax(0.0);
    Eigen::MatrixXd a = eig.vectors * clipped.asDiagonal() * eig.vectors.transpose();
    return PsdMetric{0.5 * (a + a.transpose())};
}

PsdMetric train_ldmlr(const LabeledDataset& data, const LdmlrConfig& cfg,
                      std::vector<double>* objective_trace) {
    cfg.validate();
    if (data.count() < 1) throw std::invalid_argument("train_ldmlr: empty dataset");
    if (!data.is_grouped())
        throw std::invalid_argument("train_ldmlr: dataset must be grouped by label");

    const Eigen::Index d = data.dim();
    const NeighborGraph nbrs = find_target_neighbors(data, cfg.K);
    const Eigen::MatrixXd scatter = weighted_scatter(data, cfg.p);
    const PairCache cache = cache_pairs(data, nbrs);

    PsdMetric metric{Eigen::MatrixXd::Identity(d, d)};
    if (objective_trace) objective_trace->push_back(ldmlr_objective(metric, data, nbrs, cfg));

    for (int t = 0; t < cfg.t_max; ++t) {
        Eigen::MatrixXd g = -scatter;
        for (std::size_t q = 0; q < cache.diffs.size(); ++q) {
            const Eigen::VectorXd& v = cache.diffs[q];
            const double gap = v.dot(metric.A * v) - cache.sq_norms[q];
            g.noalias() += (2.0 * cfg.mu * gap) * (v * v.transpose());
        }
        g = 0.5 * (g + g.transpose());

        metric = project_psd(metric.A - cfg.step * g);
        if (!metric.A.allFinite())
            throw numerical_error("train_ldmlr: iterate is not finite", t);
        if (objective_trace) {
            const double h = ldmlr_objective(metric, data, nbrs, cfg);
            if (!std::isfinite(h)) throw numerical_error("train_ldmlr: objective is not finite", t);
            objective_trace->push_back(h);
        }
    }
    return metric;
}

LinearMetric linear_from_psd(const PsdMetric& metric, Eigen::VectorXd center_offset) {
    if (metric.A.rows() != metric.A.cols())
        throw std::invalid_argument("linear_from_psd: matrix must be square");
    if (center_offset.size() != metric.A.rows())
        throw std::invalid_argument("linear_from_psd: offset dimension mismatch");

    const SymmetricEigen eig = eigen_sym_sorted(metric.A);
    const Eigen::Index d = metric.A.rows();
    LinearMetric out;
    out.L.resize(d, d);
    for (Eigen::Index k = 0; k < d; ++k)
        out.L.row(k) = std::sqrt(std::max(eig.values[k], 0.0)) * eig.vectors.col(k).transpose();
    out.c = 1.0;
    out.center_offset = std::move(center_offset);
    return out;
}

}  // namespace cmdsdml
