#pragma once

#include "mopls/archive.hpp"
#include "mopls/types.hpp"

#include <Eigen/Dense>

#include <memory>
#include <span>
#include <utility>
#include <vector>

namespace mopls {

/// Cubic radial basis interpolant with a linear polynomial tail:
///
///     s(x) = sum_i w_i * |x - c_i|^3 + t_0 + sum_j t_j * x_j
///
/// Models fitted together by fit_multi() share one centers matrix, which
/// lets predict_many() reuse the distance computation across objectives.
class RbfSurrogate {
public:
    RbfSurrogate(std::shared_ptr<const Eigen::MatrixXd> centers, Eigen::VectorXd weights,
                 Eigen::VectorXd tail, double ridge);

    double predict(std::span<const double> x) const;

    /// One prediction per row of `points`.
    Eigen::VectorXd predict(const Eigen::MatrixXd& points) const;

    std::size_t dimension() const noexcept { return static_cast<std::size_t>(centers_->cols()); }
    std::size_t size() const noexcept { return static_cast<std::size_t>(centers_->rows()); }

    const Eigen::MatrixXd& centers() const noexcept { return *centers_; }
    const std::shared_ptr<const Eigen::MatrixXd>& shared_centers() const noexcept { return centers_; }
    const Eigen::VectorXd& weights() const noexcept { return weights_; }
    const Eigen::VectorXd& tail() const noexcept { return tail_; }

    /// Ridge actually used to solve the system (0 when unregularized).
    double ridge() const noexcept { return ridge_; }

private:
    std::shared_ptr<const Eigen::MatrixXd> centers_;
    Eigen::VectorXd weights_;
    Eigen::VectorXd tail_;
    double ridge_;
};

/// Rows of `points` against rows of `centers`: the matrix of |p - c|^3.
Eigen::MatrixXd cubic_kernel(const Eigen::MatrixXd& points, const Eigen::MatrixXd& centers);

/// Fits one surrogate per column of `values` on shared inputs. Exact
/// duplicate inputs collapse to their first occurrence. Singular or
/// ill-conditioned systems are retried with a ridge of 1e-8, growing 10x.
std::vector<RbfSurrogate> fit_multi(std::span<const DecisionVector> inputs,
                                    std::span<const std::vector<double>> values);

RbfSurrogate fit(std::span<const std::pair<DecisionVector, double>> training);

/// Predictions for each model at each row: result is rows x models.
Eigen::MatrixXd predict_many(std::span<const RbfSurrogate> models, const Eigen::MatrixXd& points);

/// Ordinals of the min(cap, m) archive points nearest `center`, nearest
/// first; equal distances go to the lower ordinal.
std::vector<PointId> select_training_set(const DecisionVector& center,
                                         const EvaluationArchive& archive,
                                         std::size_t cap = 500);

/// One surrogate per objective, fitted on the shared local training set.
std::vector<RbfSurrogate> fit_all_objectives(const DecisionVector& center,
                                             const EvaluationArchive& archive,
                                             std::size_t cap = 500);

} // namespace mopls
