#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <span>
#include <vector>

#include "raincorr/core.hpp"

namespace raincorr {

/// Min-max scaling onto [0,1]; a zero range maps everything to 0.
struct Normalization {
    double min = 0.0;
    double range = 1.0;

    static Normalization fit(std::span<const double> values);
    double forward(double x) const noexcept { return (x - min) / range; }
    double inverse(double u) const noexcept { return min + u * range; }
    friend bool operator==(const Normalization&, const Normalization&) = default;
};

/// Scaling of the two regression features (same-day and previous-day SRE)
/// and of the gauge target for one intensity class.
struct FeatureScaling {
    Normalization today;
    Normalization yesterday;
    Normalization target;

    Eigen::Vector2d input(double x_t, double x_tm1) const {
        return {today.forward(x_t), yesterday.forward(x_tm1)};
    }
    friend bool operator==(const FeatureScaling&, const FeatureScaling&) = default;
};

/// Training rows of one intensity class in chronological order.
struct ClassRows {
    IntensityClass cls;
    std::vector<double> today;
    std::vector<double> yesterday;
    std::vector<double> target;

    std::size_t size() const noexcept { return target.size(); }
    /// Keeps only the given row indices (ascending).
    ClassRows select(std::span<const std::size_t> rows) const;
};

/// Routes each training day whose SRE value is at least kWetThreshold to
/// the class containing it. Previous-day values are 0 after a gap.
std::vector<ClassRows> class_training_rows(const PairedSeries& pair,
                                           std::span<const IntensityClass> classes);

/// At most `cap` distinct indices from [0, n), uniformly at random, sorted
/// ascending. Returns every index when n <= cap.
std::vector<std::size_t> seeded_subsample(std::size_t n, std::size_t cap, std::uint64_t seed);

FeatureScaling fit_scaling(const ClassRows& rows);
Eigen::MatrixXd scaled_inputs(const ClassRows& rows, const FeatureScaling& scaling);
Eigen::VectorXd scaled_targets(const ClassRows& rows, const FeatureScaling& scaling);

/// Stable 64-bit mixing of a seed with a string and an integer tag.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag, std::uint64_t extra = 0);

}  // namespace raincorr
