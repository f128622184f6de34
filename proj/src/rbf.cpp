#include "mopls/rbf.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mopls {

namespace {

constexpr double kInitialRidge = 1e-8;
constexpr double kMaxRidge = 1e4;
constexpr Eigen::Index kPredictBlock = 256;
constexpr double kMinRcond = 1e-16;
constexpr double kMaxBackwardError = 1e-12;

Eigen::MatrixXd to_matrix(std::span<const DecisionVector> rows, std::size_t d)
{
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != d) throw DimensionError("training inputs of different length");
        for (std::size_t j = 0; j < d; ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
    return m;
}

// Saddle-point system [Phi + rI, P; P^T, -rI].
Eigen::MatrixXd augmented_system(const Eigen::MatrixXd& phi, const Eigen::MatrixXd& poly, double ridge)
{
    const Eigen::Index n = phi.rows();
    const Eigen::Index q = poly.cols();
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n + q, n + q);
    a.topLeftCorner(n, n) = phi;
    a.topRightCorner(n, q) = poly;
    a.bottomLeftCorner(q, n) = poly.transpose();
    if (ridge > 0.0) {
        a.topLeftCorner(n, n).diagonal().array() += ridge;
        a.bottomRightCorner(q, q).diagonal().array() -= ridge;
    }
    return a;
}

} // namespace

RbfSurrogate::RbfSurrogate(std::shared_ptr<const Eigen::MatrixXd> centers, Eigen::VectorXd weights,
                           Eigen::VectorXd tail, double ridge)
    : centers_(std::move(centers)), weights_(std::move(weights)), tail_(std::move(tail)), ridge_(ridge)
{
    if (!centers_ || centers_->rows() != weights_.size() || tail_.size() != centers_->cols() + 1) {
        throw ContractViolation("inconsistent RBF surrogate shapes");
    }
}

Eigen::MatrixXd cubic_kernel(const Eigen::MatrixXd& points, const Eigen::MatrixXd& centers)
{
    if (points.cols() != centers.cols()) {
        throw DimensionError("points and centers have different dimension");
    }
    const Eigen::VectorXd pn = points.rowwise().squaredNorm();
    const Eigen::VectorXd cn = centers.rowwise().squaredNorm();
    Eigen::MatrixXd sq = -2.0 * points * centers.transpose();
    sq.colwise() += pn;
    sq.rowwise() += cn.transpose();
    return sq.unaryExpr([](double s) {
        const double r = std::sqrt(std::max(s, 0.0));
        return r * r * r;
    });
}

double RbfSurrogate::predict(std::span<const double> x) const
{
    if (x.size() != dimension()) {
        throw DimensionError("prediction point has the wrong dimension");
    }
    Eigen::MatrixXd row(1, static_cast<Eigen::Index>(x.size()));
    for (std::size_t j = 0; j < x.size(); ++j) row(0, static_cast<Eigen::Index>(j)) = x[j];
    return predict(row)(0);
}

Eigen::VectorXd RbfSurrogate::predict(const Eigen::MatrixXd& points) const
{
    const RbfSurrogate* self = this;
    return predict_many(std::span<const RbfSurrogate>(self, 1), points).col(0);
}

Eigen::MatrixXd predict_many(std::span<const RbfSurrogate> models, const Eigen::MatrixXd& points)
{
    Eigen::MatrixXd out(points.rows(), static_cast<Eigen::Index>(models.size()));
    for (const auto& model : models) {
        if (points.cols() != model.centers().cols()) {
            throw DimensionError("prediction points have the wrong dimension");
        }
    }
    const Eigen::Index d = points.cols();
    // Row blocks keep the kernel small enough to stay in cache.
    for (Eigen::Index start = 0; start < points.rows(); start += kPredictBlock) {
        const Eigen::Index rows = std::min(kPredictBlock, points.rows() - start);
        const Eigen::MatrixXd block = points.middleRows(start, rows);
        const Eigen::MatrixXd* cached_centers = nullptr;
        Eigen::MatrixXd kernel;
        for (std::size_t m = 0; m < models.size(); ++m) {
            const auto& model = models[m];
            if (cached_centers != &model.centers()) {
                kernel = cubic_kernel(block, model.centers());
                cached_centers = &model.centers();
            }
            Eigen::VectorXd v = kernel * model.weights();
            v.array() += model.tail()(0);
            v.noalias() += block * model.tail().tail(d);
            out.col(static_cast<Eigen::Index>(m)).segment(start, rows) = v;
        }
    }
    return out;
}

std::vector<RbfSurrogate> fit_multi(std::span<const DecisionVector> inputs,
                                    std::span<const std::vector<double>> values)
{
    if (inputs.empty()) {
        throw ArgumentError("RBF fit needs at least one training point");
    }
    if (values.size() != inputs.size()) {
        throw DimensionError("training inputs and values have different counts");
    }
    const std::size_t d = inputs.front().size();
    const std::size_t k = values.front().size();

    // Collapse exact duplicates, keeping the first occurrence.
    for (const auto& v : values) {
        if (v.size() != k) throw DimensionError("training values of different length");
    }
    std::vector<std::size_t> order(inputs.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return inputs[a] != inputs[b] ? inputs[a] < inputs[b] : a < b;
    });
    std::vector<bool> duplicate(inputs.size(), false);
    for (std::size_t i = 1; i < order.size(); ++i) {
        if (inputs[order[i]] == inputs[order[i - 1]]) duplicate[order[i]] = true;
    }
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        if (!duplicate[i]) keep.push_back(i);
    }
    std::vector<DecisionVector> xs;
    xs.reserve(keep.size());
    for (std::size_t i : keep) xs.push_back(inputs[i]);

    auto centers = std::make_shared<const Eigen::MatrixXd>(to_matrix(xs, d));
    const Eigen::Index n = centers->rows();
    const Eigen::Index q = static_cast<Eigen::Index>(d) + 1;

    const Eigen::MatrixXd phi = cubic_kernel(*centers, *centers);
    Eigen::MatrixXd poly(n, q);
    poly.col(0).setOnes();
    poly.rightCols(q - 1) = *centers;

    Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(n + q, static_cast<Eigen::Index>(k));
    for (Eigen::Index i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            rhs(i, static_cast<Eigen::Index>(j)) = values[keep[static_cast<std::size_t>(i)]][j];
        }
    }

    for (double ridge = 0.0; ridge <= kMaxRidge; ridge = ridge == 0.0 ? kInitialRidge : ridge * 10.0) {
        const Eigen::MatrixXd a = augmented_system(phi, poly, ridge);
        Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
        if (!(lu.rcond() > kMinRcond)) {
            continue;
        }
        const Eigen::MatrixXd sol = lu.solve(rhs);
        if (!sol.allFinite()) {
            continue;
        }
        // Normwise backward error of the solve.
        const double residual = (a * sol - rhs).cwiseAbs().maxCoeff();
        const double scale = a.cwiseAbs().rowwise().sum().maxCoeff() * sol.cwiseAbs().maxCoeff() +
                             rhs.cwiseAbs().maxCoeff();
        if (residual > kMaxBackwardError * scale) {
            continue;
        }
        std::vector<RbfSurrogate> out;
        out.reserve(k);
        for (std::size_t j = 0; j < k; ++j) {
            const auto col = sol.col(static_cast<Eigen::Index>(j));
            out.emplace_back(centers, col.head(n), col.tail(q), ridge);
        }
        return out;
    }
    throw Error("RBF system could not be solved even with maximal regularization");
}

RbfSurrogate fit(std::span<const std::pair<DecisionVector, double>> training)
{
    std::vector<DecisionVector> xs;
    std::vector<std::vector<double>> ys;
    xs.reserve(training.size());
    ys.reserve(training.size());
    for (const auto& [x, y] : training) {
        xs.push_back(x);
        ys.push_back({y});
    }
    return std::move(fit_multi(xs, ys).front());
}

std::vector<PointId> select_training_set(const DecisionVector& center, const EvaluationArchive& archive,
                                         std::size_t cap)
{
    const auto& pts = archive.points();
    std::vector<std::pair<double, PointId>> dist;
    dist.reserve(pts.size());
    for (const auto& p : pts) {
        dist.emplace_back(euclidean_distance(center, p.decision), p.id);
    }
    const std::size_t take = std::min(cap, dist.size());
    std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(take), dist.end());
    std::vector<PointId> out;
    out.reserve(take);
    for (std::size_t i = 0; i < take; ++i) out.push_back(dist[i].second);
    return out;
}

std::vector<RbfSurrogate> fit_all_objectives(const DecisionVector& center, const EvaluationArchive& archive,
                                             std::size_t cap)
{
    if (archive.empty()) {
        throw ArgumentError("cannot fit surrogates on an empty archive");
    }
    const auto ids = select_training_set(center, archive, cap);
    std::vector<DecisionVector> xs;
    std::vector<std::vector<double>> ys;
    xs.reserve(ids.size());
    ys.reserve(ids.size());
    for (PointId id : ids) {
        xs.push_back(archive.at(id).decision);
        ys.push_back(archive.at(id).objectives);
    }
    return fit_multi(xs, ys);
}

} // namespace mopls
