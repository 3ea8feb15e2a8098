#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <vector>

#include "raincorr/core.hpp"
#include "raincorr/features.hpp"
#include "raincorr/numerics/cholesky.hpp"
#include "raincorr/numerics/kernel.hpp"

namespace raincorr {

struct GprOptions {
    std::vector<IntensityClass> classes = default_intensity_classes();
    // Hyperparameter grid, in normalised units.
    std::vector<double> rho_grid{0.05, 0.1, 0.2, 0.5, 1.0};
    std::vector<double> sigma2_grid{0.25, 1.0};
    std::vector<double> noise_grid{1e-4, 1e-2, 1e-1};
    double nu = 1.5;
    /// Rows per class kept for the final model (seeded uniform subsample).
    std::size_t max_rows = 2000;
    /// Rows per class used to score the hyperparameter grid.
    std::size_t selection_rows = 500;
    std::size_t min_rows = 5;
    std::uint64_t seed = 0;
};

/// Log marginal likelihood of y under a zero-mean GP with kernel K + noise I.
double gpr_log_marginal_likelihood(const Eigen::MatrixXd& inputs, const Eigen::VectorXd& targets,
                                   const numerics::KernelSpec& kernel, double noise);

/// GP posterior for one intensity class, in normalised feature space.
class GprClassModel {
public:
    /// Class without training data: predictions return the input.
    static GprClassModel passthrough(IntensityClass cls);

    /// Factorises K(X,X) + noise I and caches the weight vector.
    GprClassModel(IntensityClass cls, Eigen::MatrixXd inputs, Eigen::VectorXd targets,
                  numerics::Matern kernel, double noise, FeatureScaling scaling);

    bool is_passthrough() const noexcept { return !factor_.has_value(); }
    const IntensityClass& intensity_class() const noexcept { return cls_; }
    const Eigen::MatrixXd& inputs() const noexcept { return inputs_; }
    const Eigen::VectorXd& targets() const noexcept { return targets_; }
    const numerics::Matern& kernel() const noexcept { return kernel_; }
    double noise() const noexcept { return noise_; }
    const FeatureScaling& scaling() const noexcept { return scaling_; }
    const Eigen::VectorXd& weights() const noexcept { return weights_; }
    const numerics::Cholesky& factor() const { return *factor_; }

    /// Posterior mean and variance at normalised inputs (one per row).
    Eigen::VectorXd posterior_mean(const Eigen::MatrixXd& inputs) const;
    Eigen::VectorXd posterior_variance(const Eigen::MatrixXd& inputs) const;

    /// De-normalised posterior mean, clipped at 0.
    double predict(double x_t, double x_tm1) const;

private:
    explicit GprClassModel(IntensityClass cls) : cls_(cls) {}

    IntensityClass cls_;
    Eigen::MatrixXd inputs_;
    Eigen::VectorXd targets_;
    numerics::Matern kernel_;
    double noise_ = 0.0;
    FeatureScaling scaling_;
    std::optional<numerics::Cholesky> factor_;
    Eigen::VectorXd weights_;
};

/// One GP per intensity class; SRE-dry inputs pass through unchanged.
class GprModel {
public:
    explicit GprModel(std::vector<GprClassModel> classes);

    const std::vector<GprClassModel>& classes() const noexcept { return classes_; }
    std::vector<IntensityClass> partition() const;

    double predict(double x_t, double x_tm1) const;
    /// Class model that serves `x_t`, or nullptr for pass-through inputs.
    const GprClassModel* route(double x_t) const;

private:
    std::vector<GprClassModel> classes_;
};

/// Per-class grid search on the log marginal likelihood, then a final fit
/// on up to max_rows rows. Classes with fewer than min_rows rows pass
/// through. Throws FitError when every class is empty.
GprModel gpr_fit(const PairedSeries& pair, const GprOptions& options = {});

/// Fits one class from prepared rows (exposed for testing).
GprClassModel gpr_fit_class(const ClassRows& rows, const GprOptions& options, std::uint64_t seed);

inline double gpr_predict(const GprModel& model, double x_t, double x_tm1) {
    return model.predict(x_t, x_tm1);
}

/// Normalised posterior variance for raw (x_t, x_tm1) inputs; 0 for
/// pass-through inputs.
double gpr_posterior_variance(const GprModel& model, double x_t, double x_tm1);

}  // namespace raincorr
