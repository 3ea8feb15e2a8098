#include "raincorr/features.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace raincorr {

Normalization Normalization::fit(std::span<const double> values) {
    Normalization n;
    if (values.empty()) return n;
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    n.min = *lo;
    n.range = *hi > *lo ? *hi - *lo : 1.0;
    return n;
}

ClassRows ClassRows::select(std::span<const std::size_t> rows) const {
    ClassRows out{cls, {}, {}, {}};
    for (std::size_t r : rows) {
        out.today.push_back(today[r]);
        out.yesterday.push_back(yesterday[r]);
        out.target.push_back(target[r]);
    }
    return out;
}

std::vector<ClassRows> class_training_rows(const PairedSeries& pair,
                                           std::span<const IntensityClass> classes) {
    std::vector<ClassRows> out;
    for (const auto& c : classes) out.push_back({c, {}, {}, {}});
    const auto prev = previous_day_values(pair.dates(), pair.sre());
    for (std::size_t i = 0; i < pair.train_size(); ++i) {
        const double x = pair.sre()[i];
        if (x < kWetThreshold) continue;
        if (const auto k = find_class(classes, x)) {
            auto& rows = out[*k];
            rows.today.push_back(x);
            rows.yesterday.push_back(prev[i]);
            rows.target.push_back(pair.gauge()[i]);
        }
    }
    return out;
}

std::vector<std::size_t> seeded_subsample(std::size_t n, std::size_t cap, std::uint64_t seed) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    if (n <= cap) return idx;
    // Partial Fisher-Yates with an explicit engine so the draw does not
    // depend on the standard library's distribution implementations.
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < cap; ++i) {
        const std::size_t span = n - i;
        const std::size_t j = i + static_cast<std::size_t>(rng() % span);
        std::swap(idx[i], idx[j]);
    }
    idx.resize(cap);
    std::sort(idx.begin(), idx.end());
    return idx;
}

FeatureScaling fit_scaling(const ClassRows& rows) {
    return {Normalization::fit(rows.today), Normalization::fit(rows.yesterday),
            Normalization::fit(rows.target)};
}

Eigen::MatrixXd scaled_inputs(const ClassRows& rows, const FeatureScaling& scaling) {
    Eigen::MatrixXd x(static_cast<Eigen::Index>(rows.size()), 2);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto r = static_cast<Eigen::Index>(i);
        x(r, 0) = scaling.today.forward(rows.today[i]);
        x(r, 1) = scaling.yesterday.forward(rows.yesterday[i]);
    }
    return x;
}

Eigen::VectorXd scaled_targets(const ClassRows& rows, const FeatureScaling& scaling) {
    Eigen::VectorXd y(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        y[static_cast<Eigen::Index>(i)] = scaling.target.forward(rows.target[i]);
    return y;
}

std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag, std::uint64_t extra) {
    // FNV-1a over the tag, then splitmix64 finalisation.
    std::uint64_t h = 1469598103934665603ULL ^ seed;
    for (unsigned char c : tag) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    h ^= extra + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h += 0x9e3779b97f4a7c15ULL;
    h = (h ^ (h >> 30)) * 0xbf58476d1ce4e5b9ULL;
    h = (h ^ (h >> 27)) * 0x94d049bb133111ebULL;
    return h ^ (h >> 31);
}

}  // namespace raincorr
