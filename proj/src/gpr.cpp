#include "raincorr/gpr.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "raincorr/errors.hpp"

namespace raincorr {

double gpr_log_marginal_likelihood(const Eigen::MatrixXd& inputs, const Eigen::VectorXd& targets,
                                   const numerics::KernelSpec& kernel, double noise) {
    Eigen::MatrixXd k = numerics::gram(kernel, inputs);
    k.diagonal().array() += noise;
    const numerics::Cholesky chol(k);
    const Eigen::VectorXd alpha = chol.solve(targets);
    const double n = static_cast<double>(targets.size());
    return -0.5 * targets.dot(alpha) - 0.5 * chol.log_determinant() -
           0.5 * n * std::log(2.0 * std::numbers::pi);
}

GprClassModel GprClassModel::passthrough(IntensityClass cls) { return GprClassModel(cls); }

GprClassModel::GprClassModel(IntensityClass cls, Eigen::MatrixXd inputs, Eigen::VectorXd targets,
                             numerics::Matern kernel, double noise, FeatureScaling scaling)
    : cls_(cls),
      inputs_(std::move(inputs)),
      targets_(std::move(targets)),
      kernel_(kernel),
      noise_(noise),
      scaling_(scaling) {
    numerics::validate(kernel_);
    if (inputs_.rows() == 0 || inputs_.rows() != targets_.size())
        throw FitError("GPR class model needs matching, non-empty inputs and targets");
    if (!(noise_ > 0.0)) throw DomainError("GPR noise variance must be positive");
    Eigen::MatrixXd k = numerics::gram(kernel_, inputs_);
    k.diagonal().array() += noise_;
    factor_.emplace(k);
    weights_ = factor_->solve(targets_);
}

Eigen::VectorXd GprClassModel::posterior_mean(const Eigen::MatrixXd& inputs) const {
    if (is_passthrough()) return Eigen::VectorXd::Zero(inputs.rows());
    return numerics::gram(kernel_, inputs, inputs_) * weights_;
}

Eigen::VectorXd GprClassModel::posterior_variance(const Eigen::MatrixXd& inputs) const {
    const double prior = numerics::kernel_variance(kernel_);
    if (is_passthrough()) return Eigen::VectorXd::Constant(inputs.rows(), prior);
    const Eigen::MatrixXd cross = numerics::gram(kernel_, inputs_, inputs);  // n x m
    const Eigen::MatrixXd v = factor_->solve_lower(cross);
    Eigen::VectorXd out(inputs.rows());
    for (Eigen::Index j = 0; j < inputs.rows(); ++j)
        out[j] = std::max(0.0, prior - v.col(j).squaredNorm());
    return out;
}

double GprClassModel::predict(double x_t, double x_tm1) const {
    if (is_passthrough()) return x_t;
    const Eigen::Vector2d u = scaling_.input(x_t, x_tm1);
    double mean = 0.0;
    for (Eigen::Index i = 0; i < inputs_.rows(); ++i)
        mean += numerics::kernel_at_distance(kernel_, (inputs_.row(i).transpose() - u).norm()) *
                weights_[i];
    const double value = scaling_.target.inverse(mean);
    return std::isfinite(value) ? std::max(0.0, value) : 0.0;
}

GprModel::GprModel(std::vector<GprClassModel> classes) : classes_(std::move(classes)) {
    const auto p = partition();
    validate_partition(p);
}

std::vector<IntensityClass> GprModel::partition() const {
    std::vector<IntensityClass> out;
    for (const auto& c : classes_) out.push_back(c.intensity_class());
    return out;
}

const GprClassModel* GprModel::route(double x_t) const {
    if (!(x_t >= kWetThreshold)) return nullptr;
    for (const auto& c : classes_) {
        if (c.intensity_class().contains(x_t)) return c.is_passthrough() ? nullptr : &c;
    }
    return nullptr;
}

double GprModel::predict(double x_t, double x_tm1) const {
    const GprClassModel* model = route(x_t);
    return model ? model->predict(x_t, x_tm1) : x_t;
}

double gpr_posterior_variance(const GprModel& model, double x_t, double x_tm1) {
    const GprClassModel* c = model.route(x_t);
    if (!c) return 0.0;
    Eigen::MatrixXd u(1, 2);
    u.row(0) = c->scaling().input(x_t, x_tm1).transpose();
    return c->posterior_variance(u)[0];
}

GprClassModel gpr_fit_class(const ClassRows& all_rows, const GprOptions& options, std::uint64_t seed) {
    if (all_rows.size() < std::max<std::size_t>(options.min_rows, 1))
        return GprClassModel::passthrough(all_rows.cls);

    const auto kept = seeded_subsample(all_rows.size(), options.max_rows, seed);
    const ClassRows rows = all_rows.select(kept);
    const FeatureScaling scaling = fit_scaling(rows);
    const Eigen::MatrixXd x = scaled_inputs(rows, scaling);
    const Eigen::VectorXd y = scaled_targets(rows, scaling);

    const auto pick = seeded_subsample(rows.size(), options.selection_rows, seed ^ 0x5eedULL);
    Eigen::MatrixXd xs(static_cast<Eigen::Index>(pick.size()), 2);
    Eigen::VectorXd ys(static_cast<Eigen::Index>(pick.size()));
    for (std::size_t i = 0; i < pick.size(); ++i) {
        xs.row(static_cast<Eigen::Index>(i)) = x.row(static_cast<Eigen::Index>(pick[i]));
        ys[static_cast<Eigen::Index>(i)] = y[static_cast<Eigen::Index>(pick[i])];
    }

    double best = -std::numeric_limits<double>::infinity();
    std::optional<std::pair<numerics::Matern, double>> choice;
    for (double rho : options.rho_grid) {
        for (double sigma2 : options.sigma2_grid) {
            for (double noise : options.noise_grid) {
                const numerics::Matern k{options.nu, sigma2, rho};
                double lml;
                try {
                    lml = gpr_log_marginal_likelihood(xs, ys, k, noise);
                } catch (const FactorizationError&) {
                    continue;
                }
                if (lml > best) {
                    best = lml;
                    choice.emplace(k, noise);
                }
            }
        }
    }
    if (!choice) throw FitError("GPR: no grid point gave a positive-definite kernel matrix");
    return GprClassModel(rows.cls, x, y, choice->first, choice->second, scaling);
}

GprModel gpr_fit(const PairedSeries& pair, const GprOptions& options) {
    validate_partition(options.classes);
    if (pair.train_size() < 2)
        throw FitError("GPR: training partition of station '" + pair.station_id() +
                       "' has fewer than 2 days");
    const auto rows = class_training_rows(pair, options.classes);
    std::vector<GprClassModel> classes;
    bool any = false;
    for (std::size_t k = 0; k < rows.size(); ++k) {
        classes.push_back(gpr_fit_class(rows[k], options, derive_seed(options.seed, "gpr-class", k)));
        any = any || !classes.back().is_passthrough();
    }
    if (!any) throw FitError("GPR: no intensity class has enough training rows");
    return GprModel(std::move(classes));
}

}  // namespace raincorr
