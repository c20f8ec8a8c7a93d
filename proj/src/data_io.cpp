#include "cmdsdml/data_io.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "cmdsdml/linalg.hpp"
#include "cmdsdml/rng.hpp"
#include "text_util.hpp"

namespace cmdsdml {

LabeledDataset load_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());

    std::string line;
    long lineno = 0;

    if (!std::getline(in, line)) throw parse_error("missing header row", 1);
    ++lineno;
    const auto header = detail::split(line, ',');
    Eigen::Index label_col = -1;
    for (std::size_t c = 0; c < header.size(); ++c)
        if (detail::trim(header[c]) == "label") {
            label_col = static_cast<Eigen::Index>(c);
            break;
        }
    if (label_col < 0) throw parse_error("no column named \"label\"", 1);
    const std::size_t n_fields = header.size();
    const Eigen::Index d = static_cast<Eigen::Index>(n_fields) - 1;

    std::vector<double> labels;
    std::vector<double> values;  // row-major features
    while (std::getline(in, line)) {
        ++lineno;
        if (detail::trim(line).empty()) {
            if (in.peek() == std::char_traits<char>::eof()) break;  // trailing newline
            throw parse_error("empty row", lineno);
        }
        const auto fields = detail::split(line, ',');
        if (fields.size() != n_fields) {
            std::ostringstream msg;
            msg << "expected " << n_fields << " fields, got " << fields.size();
            throw parse_error(msg.str(), lineno);
        }
        for (std::size_t c = 0; c < fields.size(); ++c) {
            double v = 0.0;
            if (!detail::parse_double(fields[c], v)) {
                std::ostringstream msg;
                msg << "field " << c + 1 << " is not numeric: \"" << std::string(fields[c]) << "\"";
                throw parse_error(msg.str(), lineno);
            }
            if (static_cast<Eigen::Index>(c) == label_col) labels.push_back(v);
            else values.push_back(v);
        }
    }
    if (labels.empty()) throw parse_error("no data rows", lineno + 1);

    const Eigen::Index n = static_cast<Eigen::Index>(labels.size());
    Eigen::MatrixXd features(n, d);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < d; ++j)
            features(i, j) = values[static_cast<std::size_t>(i * d + j)];
    Eigen::VectorXd label_vec = Eigen::Map<Eigen::VectorXd>(labels.data(), n);

    return LabeledDataset::grouped(features, label_vec);
}

void save_csv(const std::filesystem::path& path, const LabeledDataset& data) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");

    out << "label";
    for (Eigen::Index j = 0; j < data.dim(); ++j) out << ",f" << j;
    out << '\n';
    for (Eigen::Index i = 0; i < data.count(); ++i) {
        out << detail::format_double(data.labels[i]);
        for (Eigen::Index j = 0; j < data.dim(); ++j)
            out << ',' << detail::format_double(data.features(i, j));
        out << '\n';
    }
    if (!out.good()) throw std::runtime_error("failed writing " + path.string());
}

std::pair<LabeledDataset, Eigen::VectorXd> center(const LabeledDataset& data) {
    if (data.count() < 1) throw std::invalid_argument("center: empty dataset");
    const Eigen::VectorXd offset = data.features.colwise().mean().transpose();
    LabeledDataset out = data;
    out.features.rowwise() -= offset.transpose();
    return {std::move(out), offset};
}

PcaModel fit_pca(const LabeledDataset& data, Eigen::Index d_target) {
    const Eigen::Index n = data.count();
    const Eigen::Index d = data.dim();
    if (d_target < 1 || d_target > std::min(n - 1, d))
        throw std::invalid_argument("fit_pca: d_target must lie in [1, min(n-1, d)]");

    PcaModel model;
    model.mean = data.features.colwise().mean().transpose();
    Eigen::MatrixXd centered = data.features.rowwise() - model.mean.transpose();
    const Eigen::MatrixXd cov =
        centered.transpose() * centered / static_cast<double>(n - 1);

    const SymmetricEigen eig = eigen_sym_sorted(cov);
    model.components = eig.vectors.leftCols(d_target).transpose();
    model.variances = eig.values.head(d_target);
    model.input_dim = d;
    model.output_dim = d_target;
    return model;
}

Eigen::MatrixXd apply_pca(const PcaModel& model, const Eigen::MatrixXd& points) {
    if (points.cols() != model.input_dim)
        throw std::invalid_argument("apply_pca: point dimension does not match the model");
    return (points.rowwise() - model.mean.transpose()) * model.components.transpose();
}

LabeledDataset apply_pca(const PcaModel& model, const LabeledDataset& data) {
    LabeledDataset out;
    out.features = apply_pca(model, data.features);
    out.labels = data.labels;
    return out;
}

std::pair<LabeledDataset, LabeledDataset> split(const LabeledDataset& data,
                                                const SplitSpec& spec) {
    if (spec.per_label_train < 1)
        throw std::invalid_argument("split: per-label train count must be positive");
    const auto spans = data.group_spans();

    SplitMix64 rng(spec.seed);
    std::vector<Eigen::Index> train_rows, test_rows;
    for (const GroupSpan& span : spans) {
        if (spec.per_label_train > span.count) {
            std::ostringstream msg;
            msg << "split: label " << span.label << " has " << span.count
                << " samples but " << spec.per_label_train << " were requested for training";
            throw std::invalid_argument(msg.str());
        }
        std::vector<Eigen::Index> members(static_cast<std::size_t>(span.count));
        std::iota(members.begin(), members.end(), span.start);
        // Fisher-Yates; only the first per_label_train slots matter.
        for (std::size_t t = 0; t + 1 < members.size(); ++t) {
            const std::size_t pick =
                t + static_cast<std::size_t>(rng.next_below(members.size() - t));
            std::swap(members[t], members[pick]);
        }
        std::vector<Eigen::Index> chosen(members.begin(),
                                         members.begin() + spec.per_label_train);
        std::vector<Eigen::Index> rest(members.begin() + spec.per_label_train, members.end());
        std::sort(chosen.begin(), chosen.end());  // keep original within-group order
        std::sort(rest.begin(), rest.end());
        train_rows.insert(train_rows.end(), chosen.begin(), chosen.end());
        test_rows.insert(test_rows.end(), rest.begin(), rest.end());
    }

    auto take = [&](const std::vector<Eigen::Index>& rows) {
        LabeledDataset out;
        out.features.resize(static_cast<Eigen::Index>(rows.size()), data.dim());
        out.labels.resize(static_cast<Eigen::Index>(rows.size()));
        for (std::size_t i = 0; i < rows.size(); ++i) {
            out.features.row(static_cast<Eigen::Index>(i)) = data.features.row(rows[i]);
            out.labels[static_cast<Eigen::Index>(i)] = data.labels[rows[i]];
        }
        return out;
    };
    return {take(train_rows), take(test_rows)};
}

Eigen::Index distractor_start(Eigen::Index dim) { return dim - dim / 2; }

LabeledDataset synth(const SynthSpec& spec) {
    if (spec.labels.empty()) throw std::invalid_argument("synth: need at least one label");
    {
        std::set<double> seen(spec.labels.begin(), spec.labels.end());
        if (seen.size() != spec.labels.size())
            throw std::invalid_argument("synth: labels must be distinct");
    }
    if (spec.per_group < 1) throw std::invalid_argument("synth: per_group must be positive");
    if (spec.dim < 1) throw std::invalid_argument("synth: dim must be positive");
    if (spec.noise_sigma < 0.0 || spec.distractor_sigma < 0.0)
        throw std::invalid_argument("synth: sigmas must be nonnegative");

    const Eigen::Index m = static_cast<Eigen::Index>(spec.labels.size());
    const Eigen::Index n = m * spec.per_group;
    const Eigen::Index d = spec.dim;
    const Eigen::Index dstart = distractor_start(d);

    SplitMix64 rng(spec.seed);
    LabeledDataset data;
    data.features.resize(n, d);
    data.labels.resize(n);

    Eigen::Index row = 0;
    for (Eigen::Index t = 0; t < m; ++t) {
        const double label = spec.labels[static_cast<std::size_t>(t)];
        for (Eigen::Index k = 0; k < spec.per_group; ++k, ++row) {
            data.labels[row] = label;
            for (Eigen::Index j = 0; j < d; ++j) {
                double v = (j == 0 ? label * spec.signal_gap : 0.0);
                v += spec.noise_sigma * rng.next_gaussian();
                if (j >= dstart) v += spec.distractor_sigma * rng.next_gaussian();
                data.features(row, j) = v;
            }
        }
    }
    return data;
}

}  // namespace cmdsdml
