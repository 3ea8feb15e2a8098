#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "raincorr/errors.hpp"
#include "raincorr/svr.hpp"
#include "support.hpp"

using namespace raincorr;

namespace {

ClassRows random_rows(std::uint64_t seed, std::size_t n, bool identity) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.85, 4.99);
    std::normal_distribution<double> z(0.0, 0.4);
    ClassRows r;
    r.cls = {0.85, 5.0};
    for (std::size_t i = 0; i < n; ++i) {
        r.today.push_back(u(rng));
        r.yesterday.push_back(u(rng));
        r.target.push_back(identity ? r.today.back() : std::max(0.0, 0.6 * r.today.back() + z(rng)));
    }
    return r;
}

SvrOptions small_options() {
    SvrOptions opt;
    opt.max_rows = 300;
    opt.selection_rows = 200;
    return opt;
}

}  // namespace

TEST_CASE("fixed-hyperparameter training matches the exact QP minimum") {
    std::mt19937_64 rng(201);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 12; ++t) {
        const Eigen::Index n = 3 + t % 4;
        Eigen::MatrixXd x(n, 2);
        Eigen::VectorXd y(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            x(i, 0) = u(rng);
            x(i, 1) = u(rng);
            y[i] = u(rng);
        }
        const double c = t % 2 ? 1.0 : 10.0, eps = 0.05, lambda = 0.3;
        numerics::SmoOptions smo;
        smo.tolerance = 1e-8;
        const auto m = svr_train({0.85, 5.0}, x, y, FeatureScaling{}, c, eps, lambda, 1.0, smo);
        const Eigen::MatrixXd k = numerics::gram(numerics::Rbf{1.0, lambda}, x);
        Eigen::VectorXd ref;
        const double best = oracles::svr_qp_minimum(k, y, c, eps, &ref);
        // Reconstruct the full dual vector from the kept support rows.
        Eigen::VectorXd d = Eigen::VectorXd::Zero(n);
        for (Eigen::Index s = 0; s < m.support_vectors().rows(); ++s)
            for (Eigen::Index i = 0; i < n; ++i)
                if (m.support_vectors().row(s) == x.row(i)) d[i] = m.dual_coefficients()[s];
        CHECK(oracles::svr_objective(k, y, eps, d) == doctest::Approx(best).epsilon(1e-6));
        CHECK((d - ref).cwiseAbs().maxCoeff() < 1e-4);
        for (Eigen::Index i = 0; i < n; ++i) {
            const double f = m.decision(x.row(i).transpose());
            const double expect = (k.row(i).dot(ref)) + m.bias();
            CHECK(f == doctest::Approx(expect).epsilon(1e-4));
        }
    }
}

TEST_CASE("a single support vector gives the closed-form decision") {
    Eigen::MatrixXd x(2, 2);
    x << 0.2, 0.4, 0.9, 0.9;
    Eigen::VectorXd dual(2);
    dual << 0.5, 0.0;
    FeatureScaling scaling;
    scaling.today = {1.0, 4.0};
    scaling.yesterday = {0.0, 10.0};
    scaling.target = {0.5, 3.0};
    const SvrClassModel m({0.85, 5.0}, x, dual, 0.1, numerics::Rbf{2.0, 0.5}, 1.0, 0.05, scaling, 0.0);
    CHECK(m.support_vectors().rows() == 1);
    const double xt = 2.0, xp = 3.0;
    const double u0 = (xt - 1.0) / 4.0, u1 = xp / 10.0;
    const double d2 = (u0 - 0.2) * (u0 - 0.2) + (u1 - 0.4) * (u1 - 0.4);
    const double f = 0.5 * 2.0 * std::exp(-d2 / (2 * 0.25)) + 0.1;
    CHECK(m.predict(xt, xp) == doctest::Approx(0.5 + 3.0 * f).epsilon(1e-12));
}

TEST_CASE("identity mapping stays within the epsilon tube") {
    const auto rows = random_rows(202, 250, true);
    const auto m = svr_fit_class(rows, small_options(), 5);
    REQUIRE_FALSE(m.is_passthrough());
    double mae = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) mae += std::fabs(m.predict(rows.today[i], rows.yesterday[i]) - rows.target[i]);
    mae /= static_cast<double>(rows.size());
    CHECK(mae <= (m.epsilon() + 1e-3) * m.scaling().target.range);
}

TEST_CASE("constant targets give no support vectors and bias at the constant") {
    auto rows = random_rows(203, 60, false);
    for (auto& v : rows.target) v = 2.5;
    const auto m = svr_fit_class(rows, small_options(), 1);
    CHECK(m.support_vectors().rows() == 0);
    CHECK(m.predict(1.0, 0.0) == doctest::Approx(2.5).epsilon(1e-9));
    CHECK(m.predict(4.0, 7.0) == doctest::Approx(2.5).epsilon(1e-9));
}

TEST_CASE("fitted class models satisfy the dual constraints") {
    SynthSpec spec;
    spec.years = 14;
    spec.start_year = 1990;
    spec.seed = 11;
    const auto pair = testing::synth_pair(spec);
    auto opt = small_options();
    opt.seed = 3;
    const auto model = svr_fit(pair, opt);
    int fitted = 0;
    for (const auto& c : model.classes()) {
        if (c.is_passthrough()) continue;
        ++fitted;
        CHECK(c.kkt_residual() <= 1e-3);
        CHECK(c.dual_coefficients().cwiseAbs().maxCoeff() <= c.c() + 1e-12);
        CHECK(std::fabs(c.dual_coefficients().sum()) < 1e-9);
    }
    CHECK(fitted >= 2);

    CHECK(svr_predict(model, 0.0, 3.0) == 0.0);
    CHECK(svr_predict(model, 0.5, 3.0) == 0.5);
    // Continuity inside a class.
    for (double x = 1.0; x < 4.9; x += 0.37) {
        const double a = svr_predict(model, x, 2.0), b = svr_predict(model, x + 1e-7, 2.0);
        CHECK(std::fabs(a - b) < 1e-4);
    }
    const auto again = svr_fit(pair, opt);
    for (double x = 0.9; x < 120; x *= 1.3) CHECK(svr_predict(model, x, 1.0) == svr_predict(again, x, 1.0));
}

TEST_CASE("hitting the iteration cap names the class") {
    const auto rows = random_rows(204, 40, false);
    auto opt = small_options();
    opt.smo.max_passes = 0;
    try {
        (void)svr_fit_class(rows, opt, 1);
        FAIL("expected ConvergenceError");
    } catch (const ConvergenceError& e) {
        CHECK(std::string(e.what()).find("[0.85, 5)") != std::string::npos);
    }
}

TEST_CASE("empty and tiny classes") {
    const auto few = random_rows(205, 3, false);
    CHECK(svr_fit_class(few, small_options(), 1).is_passthrough());
    const auto dry = testing::paired(std::vector<double>(400, 0.2), std::vector<double>(400, 0.2), 300);
    CHECK_THROWS_AS(svr_fit(dry, small_options()), FitError);
}
