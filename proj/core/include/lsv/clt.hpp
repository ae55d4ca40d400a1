#pragma once

#include "lsv/inducing.hpp"

#include <cstdint>
#include <vector>

namespace lsv {

enum class Which { FullMap, InducedMap };

/// M normalized ergodic sums S_n psi^ / sqrt(n), one per independent
/// trajectory. Regenerating with the same seed reproduces values bitwise.
struct CltSample {
    double alpha = 0.0;
    std::size_t n = 0;
    std::vector<double> values;
    std::uint64_t seed = 0;
    Which which = Which::FullMap;
};

/// Trajectories start Lebesgue-uniform (on [0,1] or on Y) and are burned in
/// before accumulation; psi must already be centered. The induced variant
/// needs the marker table, the full-map one ignores it.
CltSample birkhoff_samples(const MapParams& p, const MarkerTable& markers,
                           const Observable& psi, std::size_t n, std::size_t M,
                           std::size_t burn_in, std::uint64_t seed, Which which);

struct KsResult {
    double distance = 0.0;
    bool degenerate = false; // zero sample variance
};

/// Kolmogorov-Smirnov distance between the empirical law of values/sigma and
/// the standard normal distribution.
KsResult ks_normal(const CltSample& sample, double sigma_sq);

struct BatchMeans {
    double estimate = 0.0;
    double stderr_ = 0.0; // jackknife
};

/// Time-series variance estimator: one long full-map orbit split into
/// batches; var of batch means times batch length estimates the CLT variance.
BatchMeans batch_means_variance(const MapParams& p, const Observable& psi,
                                std::size_t total_steps, std::size_t n_batches,
                                std::size_t burn_in, std::uint64_t seed);

} // namespace lsv
