#include "cmdsdml/metric_learner.hpp"

#include <cmath>
#include <stdexcept>

namespace cmdsdml {

namespace {

struct PairInfo {
    Eigen::Index i;
    Eigen::Index j;
    double sq_norm;  // ||x_i - x_j||^2, fixed over the whole run
};

struct ObjectiveContext {
    const Eigen::MatrixXd& X;  // n x d samples
    const Eigen::MatrixXd& Y;  // n x s targets
    std::vector<PairInfo> pairs;
    double mu;
};

ObjectiveContext make_context(const LabeledDataset& data, const EmbeddingSet& targets,
                              const NeighborGraph& nbrs, double mu) {
    ObjectiveContext ctx{data.features, targets.points, {}, mu};
    ctx.pairs.reserve(nbrs.pairs.size());
    const Eigen::Index n = data.count();
    for (const auto& [i, j] : nbrs.pairs) {
        if (i < 0 || i >= n || j < 0 || j >= n)
            throw std::invalid_argument("neighbor pair index out of range");
        ctx.pairs.push_back({i, j, (data.features.row(i) - data.features.row(j)).squaredNorm()});
    }
    return ctx;
}

double objective_impl(const ObjectiveContext& ctx, const Eigen::MatrixXd& L, double c) {
    const Eigen::MatrixXd P = ctx.X * L.transpose();  // rows are L x_i
    const double fit = 0.5 * (P - c * ctx.Y).squaredNorm();
    double local = 0.0;
    for (const PairInfo& p : ctx.pairs) {
        const double dl2 = (P.row(p.i) - P.row(p.j)).squaredNorm();
        const double t = dl2 - p.sq_norm;
        local += t * t;
    }
    return fit + ctx.mu * local;
}

std::pair<Eigen::MatrixXd, double> gradient_impl(const ObjectiveContext& ctx,
                                                 const Eigen::MatrixXd& L, double c) {
    const Eigen::MatrixXd P = ctx.X * L.transpose();
    const Eigen::MatrixXd R = P - c * ctx.Y;
    Eigen::MatrixXd gl = R.transpose() * ctx.X;  // sum (L x_i - c y_i) x_i^T
    double gc = c * ctx.Y.squaredNorm() - ctx.Y.cwiseProduct(P).sum();
    for (const PairInfo& p : ctx.pairs) {
        const Eigen::VectorXd lv = (P.row(p.i) - P.row(p.j)).transpose();
        const double w = 4.0 * ctx.mu * (lv.squaredNorm() - p.sq_norm);
        if (w == 0.0) continue;
        const Eigen::VectorXd v = (ctx.X.row(p.i) - ctx.X.row(p.j)).transpose();
        gl.noalias() += w * lv * v.transpose();
    }
    return {std::move(gl), gc};
}

void check_dims(const LinearMetric& metric, const LabeledDataset& data,
                const EmbeddingSet& targets) {
    if (metric.in_dim() != data.dim())
        throw std::invalid_argument("metric input dimension does not match the data");
    if (targets.count() != data.count())
        throw std::invalid_argument("target count does not match the sample count");
    if (targets.dim() != metric.out_dim())
        throw std::invalid_argument("target dimension does not match the metric output dimension");
}

}  // namespace

void TrainConfig::validate() const {
    if (!(mu > 0.0)) throw std::invalid_argument("TrainConfig: mu must be positive");
    if (!(gamma > 0.0)) throw std::invalid_argument("TrainConfig: gamma must be positive");
    if (!(rho > 0.0 && rho < 1.0)) throw std::invalid_argument("TrainConfig: rho must lie in (0,1)");
    if (!(sigma > 0.0 && sigma < 1.0))
        throw std::invalid_argument("TrainConfig: sigma must lie in (0,1)");
    if (max_linesearch < 1) throw std::invalid_argument("TrainConfig: max_linesearch must be positive");
    if (!(epsilon > 0.0)) throw std::invalid_argument("TrainConfig: epsilon must be positive");
    if (max_iters < 1) throw std::invalid_argument("TrainConfig: max_iters must be positive");
    if (s < 1) throw std::invalid_argument("TrainConfig: s must be positive");
    if (K < 1) throw std::invalid_argument("TrainConfig: K must be positive");
}

const char* to_string(TrainStatus status) {
    switch (status) {
        case TrainStatus::Converged: return "Converged";
        case TrainStatus::MaxIters: return "MaxIters";
        case TrainStatus::LineSearchExhausted: return "LineSearchExhausted";
    }
    return "?";
}

double objective(const LinearMetric& metric, const LabeledDataset& data,
                 const EmbeddingSet& targets, const NeighborGraph& nbrs, double mu) {
    check_dims(metric, data, targets);
    return objective_impl(make_context(data, targets, nbrs, mu), metric.L, metric.c);
}

std::pair<Eigen::MatrixXd, double> gradient(const LinearMetric& metric,
                                            const LabeledDataset& data,
                                            const EmbeddingSet& targets,
                                            const NeighborGraph& nbrs, double mu) {
    check_dims(metric, data, targets);
    return gradient_impl(make_context(data, targets, nbrs, mu), metric.L, metric.c);
}

std::pair<LinearMetric, TrainTrace> train(const LabeledDataset& data, const TrainConfig& cfg) {
    cfg.validate();
    if (data.count() < 1) throw std::invalid_argument("train: empty dataset");
    if (cfg.s > data.dim())
        throw std::invalid_argument("train: s must not exceed the feature dimension");
    if (!data.is_grouped()) throw std::invalid_argument("train: dataset must be grouped by label");

    const Eigen::Index n = data.count();
    const Eigen::Index d = data.dim();

    // Targets: group-compressed embedding whenever the label count is below
    // the sample count, full classical scaling otherwise.
    EmbeddingSet targets;
    if (data.distinct_labels().size() < n) {
        targets = embed_labels(data.labels, cfg.beta, cfg.s);
    } else {
        targets = cmds_embed(build_label_edm(data.labels, cfg.beta), cfg.s);
    }

    const NeighborGraph nbrs = find_target_neighbors(data, cfg.K);
    const ObjectiveContext ctx = make_context(data, targets, nbrs, cfg.mu);

    Eigen::MatrixXd L = Eigen::MatrixXd::Identity(cfg.s, d);
    double c = 1.0;

    TrainTrace trace;
    double f_cur = objective_impl(ctx, L, c);
    if (!std::isfinite(f_cur)) throw numerical_error("train: objective is not finite", 0);
    trace.objective.push_back(f_cur);

    TrainStatus status = TrainStatus::MaxIters;
    double gnorm = 0.0;
    bool have_final_gnorm = false;

    for (int k = 0; k < cfg.max_iters; ++k) {
        const auto [gl, gc] = gradient_impl(ctx, L, c);
        gnorm = std::sqrt(gl.squaredNorm() + gc * gc);
        if (!std::isfinite(gnorm)) throw numerical_error("train: gradient is not finite", k);
        if (gnorm <= cfg.epsilon) {
            status = TrainStatus::Converged;
            have_final_gnorm = true;
            break;
        }

        const double dir_dot = -(gnorm * gnorm);  // grad^T d for d = -grad
        bool accepted = false;
        double alpha = cfg.gamma;
        double f_new = 0.0;
        for (int m = 0; m <= cfg.max_linesearch; ++m) {
            f_new = objective_impl(ctx, L - alpha * gl, c - alpha * gc);
            if (!std::isfinite(f_new)) throw numerical_error("train: objective is not finite", k);
            if (f_new - f_cur <= cfg.sigma * alpha * dir_dot) {
                accepted = true;
                break;
            }
            alpha *= cfg.rho;
        }
        if (!accepted) {
            status = TrainStatus::LineSearchExhausted;
            have_final_gnorm = true;
            break;
        }

        L.noalias() -= alpha * gl;
        c -= alpha * gc;
        f_cur = f_new;
        trace.objective.push_back(f_cur);
    }

    if (!have_final_gnorm) {  // ran to the iteration cap
        const auto [gl, gc] = gradient_impl(ctx, L, c);
        gnorm = std::sqrt(gl.squaredNorm() + gc * gc);
    }

    trace.iterations = static_cast<int>(trace.objective.size()) - 1;
    trace.final_grad_norm = gnorm;
    trace.status = status;

    LinearMetric metric;
    metric.L = std::move(L);
    metric.c = c;
    metric.center_offset = Eigen::VectorXd::Zero(d);
    return {std::move(metric), std::move(trace)};
}

}  // namespace cmdsdml
