#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "raincorr/core.hpp"
#include "raincorr/features.hpp"
#include "raincorr/numerics/kernel.hpp"
#include "raincorr/numerics/smo.hpp"

namespace raincorr {

struct SvrOptions {
    std::vector<IntensityClass> classes = default_intensity_classes();
    std::vector<double> c_grid{1.0, 10.0, 100.0};
    std::vector<double> epsilon_grid{0.01, 0.05, 0.1};  ///< normalised target units
    std::vector<double> lambda_grid{0.1, 0.3, 1.0};
    double v2 = 1.0;
    std::size_t max_rows = 2000;
    /// Rows per class used for the chronological 80/20 grid search.
    std::size_t selection_rows = 500;
    double validation_fraction = 0.2;
    std::size_t min_rows = 5;
    std::uint64_t seed = 0;
    numerics::SmoOptions smo;
};

class SvrClassModel {
public:
    static SvrClassModel passthrough(IntensityClass cls);

    /// Keeps only rows with a non-zero dual coefficient.
    SvrClassModel(IntensityClass cls, const Eigen::MatrixXd& inputs, const Eigen::VectorXd& dual,
                  double bias, numerics::Rbf kernel, double c, double epsilon,
                  FeatureScaling scaling, double kkt_residual);

    bool is_passthrough() const noexcept { return passthrough_; }
    const IntensityClass& intensity_class() const noexcept { return cls_; }
    const Eigen::MatrixXd& support_vectors() const noexcept { return support_; }
    const Eigen::VectorXd& dual_coefficients() const noexcept { return dual_; }
    double bias() const noexcept { return bias_; }
    const numerics::Rbf& kernel() const noexcept { return kernel_; }
    double c() const noexcept { return c_; }
    double epsilon() const noexcept { return epsilon_; }
    const FeatureScaling& scaling() const noexcept { return scaling_; }
    /// KKT violation of the dual solution on the full training set.
    double kkt_residual() const noexcept { return kkt_residual_; }

    /// sum_i (a_i - a*_i) K(x_i, u) + b at a normalised input.
    double decision(const Eigen::Vector2d& u) const;
    /// De-normalised, clipped at 0.
    double predict(double x_t, double x_tm1) const;

private:
    explicit SvrClassModel(IntensityClass cls) : cls_(cls), passthrough_(true) {}

    IntensityClass cls_;
    bool passthrough_ = false;
    Eigen::MatrixXd support_;
    Eigen::VectorXd dual_;
    double bias_ = 0.0;
    numerics::Rbf kernel_;
    double c_ = 0.0;
    double epsilon_ = 0.0;
    FeatureScaling scaling_;
    double kkt_residual_ = 0.0;
};

class SvrModel {
public:
    explicit SvrModel(std::vector<SvrClassModel> classes);

    const std::vector<SvrClassModel>& classes() const noexcept { return classes_; }
    const SvrClassModel* route(double x_t) const;
    double predict(double x_t, double x_tm1) const;

private:
    std::vector<SvrClassModel> classes_;
};

/// Trains one epsilon-SVR class model with fixed hyperparameters.
SvrClassModel svr_train(IntensityClass cls, const Eigen::MatrixXd& inputs,
                        const Eigen::VectorXd& targets, const FeatureScaling& scaling, double c,
                        double epsilon, double lambda, double v2, const numerics::SmoOptions& smo);

/// Grid search then final fit for one class (exposed for testing).
SvrClassModel svr_fit_class(const ClassRows& rows, const SvrOptions& options, std::uint64_t seed);

/// Throws FitError when every class is empty and ConvergenceError (naming
/// the class) when the final SMO solve does not converge.
SvrModel svr_fit(const PairedSeries& pair, const SvrOptions& options = {});

inline double svr_predict(const SvrModel& model, double x_t, double x_tm1) {
    return model.predict(x_t, x_tm1);
}

}  // namespace raincorr
