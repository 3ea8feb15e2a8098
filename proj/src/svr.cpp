#include "raincorr/svr.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "raincorr/errors.hpp"

namespace raincorr {

namespace {

std::string describe(const IntensityClass& c) {
    std::ostringstream os;
    os << '[' << c.lower << ", ";
    if (c.upper)
        os << *c.upper << ')';
    else
        os << "inf)";
    return os.str();
}

}  // namespace

SvrClassModel SvrClassModel::passthrough(IntensityClass cls) { return SvrClassModel(cls); }

SvrClassModel::SvrClassModel(IntensityClass cls, const Eigen::MatrixXd& inputs,
                             const Eigen::VectorXd& dual, double bias, numerics::Rbf kernel,
                             double c, double epsilon, FeatureScaling scaling, double kkt_residual)
    : cls_(cls),
      bias_(bias),
      kernel_(kernel),
      c_(c),
      epsilon_(epsilon),
      scaling_(scaling),
      kkt_residual_(kkt_residual) {
    numerics::validate(kernel_);
    Eigen::Index count = 0;
    for (Eigen::Index i = 0; i < dual.size(); ++i) count += dual[i] != 0.0;
    support_.resize(count, inputs.cols());
    dual_.resize(count);
    Eigen::Index k = 0;
    for (Eigen::Index i = 0; i < dual.size(); ++i) {
        if (dual[i] == 0.0) continue;
        support_.row(k) = inputs.row(i);
        dual_[k] = dual[i];
        ++k;
    }
}

double SvrClassModel::decision(const Eigen::Vector2d& u) const {
    double f = bias_;
    for (Eigen::Index i = 0; i < support_.rows(); ++i)
        f += dual_[i] * numerics::kernel_at_distance(kernel_, (support_.row(i).transpose() - u).norm());
    return f;
}

double SvrClassModel::predict(double x_t, double x_tm1) const {
    if (passthrough_) return x_t;
    const double value = scaling_.target.inverse(decision(scaling_.input(x_t, x_tm1)));
    return std::isfinite(value) ? std::max(0.0, value) : 0.0;
}

SvrModel::SvrModel(std::vector<SvrClassModel> classes) : classes_(std::move(classes)) {
    std::vector<IntensityClass> p;
    for (const auto& c : classes_) p.push_back(c.intensity_class());
    validate_partition(p);
}

const SvrClassModel* SvrModel::route(double x_t) const {
    if (!(x_t >= kWetThreshold)) return nullptr;
    for (const auto& c : classes_) {
        if (c.intensity_class().contains(x_t)) return c.is_passthrough() ? nullptr : &c;
    }
    return nullptr;
}

double SvrModel::predict(double x_t, double x_tm1) const {
    const SvrClassModel* c = route(x_t);
    return c ? c->predict(x_t, x_tm1) : x_t;
}

SvrClassModel svr_train(IntensityClass cls, const Eigen::MatrixXd& inputs,
                        const Eigen::VectorXd& targets, const FeatureScaling& scaling, double c,
                        double epsilon, double lambda, double v2, const numerics::SmoOptions& smo) {
    const numerics::Rbf kernel{v2, lambda};
    const Eigen::MatrixXd k = numerics::gram(kernel, inputs);
    const auto sol = numerics::smo_solve(k, targets, c, epsilon, smo);
    const double kkt = numerics::svr_kkt_residual(k, targets, c, epsilon, sol.alpha, sol.alpha_star);
    return SvrClassModel(cls, inputs, sol.dual_coefficients(), sol.b, kernel, c, epsilon, scaling, kkt);
}

SvrClassModel svr_fit_class(const ClassRows& all_rows, const SvrOptions& options, std::uint64_t seed) {
    if (all_rows.size() < std::max<std::size_t>(options.min_rows, 2))
        return SvrClassModel::passthrough(all_rows.cls);

    const auto kept = seeded_subsample(all_rows.size(), options.max_rows, seed);
    const ClassRows rows = all_rows.select(kept);
    const FeatureScaling scaling = fit_scaling(rows);
    const Eigen::MatrixXd x = scaled_inputs(rows, scaling);
    const Eigen::VectorXd y = scaled_targets(rows, scaling);

    // Chronological split of a (sorted) subsample: earliest rows train.
    const auto pick = seeded_subsample(rows.size(), options.selection_rows, seed ^ 0x5eedULL);
    const auto m = static_cast<Eigen::Index>(pick.size());
    auto n_valid = static_cast<Eigen::Index>(std::ceil(options.validation_fraction * static_cast<double>(m)));
    n_valid = std::clamp<Eigen::Index>(n_valid, 1, m - 1);
    const Eigen::Index n_fit = m - n_valid;
    Eigen::MatrixXd xf(n_fit, 2), xv(n_valid, 2);
    Eigen::VectorXd yf(n_fit), yv(n_valid);
    for (Eigen::Index i = 0; i < m; ++i) {
        const auto src = static_cast<Eigen::Index>(pick[static_cast<std::size_t>(i)]);
        if (i < n_fit) {
            xf.row(i) = x.row(src);
            yf[i] = y[src];
        } else {
            xv.row(i - n_fit) = x.row(src);
            yv[i - n_fit] = y[src];
        }
    }

    double best = std::numeric_limits<double>::infinity();
    double best_c = 0.0, best_eps = 0.0, best_lambda = 0.0;
    for (double c : options.c_grid) {
        for (double eps : options.epsilon_grid) {
            for (double lambda : options.lambda_grid) {
                std::optional<SvrClassModel> model;
                try {
                    model.emplace(svr_train(rows.cls, xf, yf, scaling, c, eps, lambda, options.v2,
                                            options.smo));
                } catch (const ConvergenceError&) {
                    continue;
                }
                double mae = 0.0;
                for (Eigen::Index i = 0; i < n_valid; ++i)
                    mae += std::fabs(model->decision(xv.row(i).transpose()) - yv[i]);
                mae = mae * scaling.target.range / static_cast<double>(n_valid);
                if (mae < best) {
                    best = mae;
                    best_c = c;
                    best_eps = eps;
                    best_lambda = lambda;
                }
            }
        }
    }
    if (!std::isfinite(best))
        throw ConvergenceError("SVR: no grid point converged for class " + describe(rows.cls));
    try {
        return svr_train(rows.cls, x, y, scaling, best_c, best_eps, best_lambda, options.v2, options.smo);
    } catch (const ConvergenceError& e) {
        throw ConvergenceError("SVR class " + describe(rows.cls) + ": " + e.what());
    }
}

SvrModel svr_fit(const PairedSeries& pair, const SvrOptions& options) {
    validate_partition(options.classes);
    if (pair.train_size() < 2)
        throw FitError("SVR: training partition of station '" + pair.station_id() +
                       "' has fewer than 2 days");
    const auto rows = class_training_rows(pair, options.classes);
    std::vector<SvrClassModel> classes;
    bool any = false;
    for (std::size_t k = 0; k < rows.size(); ++k) {
        classes.push_back(svr_fit_class(rows[k], options, derive_seed(options.seed, "svr-class", k)));
        any = any || !classes.back().is_passthrough();
    }
    if (!any) throw FitError("SVR: no intensity class has enough training rows");
    return SvrModel(std::move(classes));
}

}  // namespace raincorr
