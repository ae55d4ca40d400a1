#pragma once

#include "lsv/map.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace lsv {

/// State of the left-branch pullback recurrence after n steps:
///   z_n = g^n(z_0),   z'_n = d z_n / d z_0,   dalpha = d z_n / d alpha.
/// Differentiating f(z_n) = z_{n-1} gives
///   z'_n = z'_{n-1} / f'(z_n),
///   dalpha_n = (dalpha_{n-1} - d_alpha f(z_n)) / f'(z_n),
/// seeded by z'_0 = 1, dalpha_0 = 0.
struct PullbackState {
    double z;
    double dz;
    double dalpha;
    std::size_t n;
};

/// States 0..n (inclusive) of the recurrence started at z0 in (1/2, 1].
std::vector<PullbackState> pullback_sequence(const MapParams& p, double z0, std::size_t n);

/// log clipped at 1 for arguments <= e (regularized log for scaling bounds).
double logg(double x);

enum class LemmaBound { K0, K1, K4, K6 };

struct BoundReport {
    double sup_scaled = 0.0;
    std::size_t argmax_n = 0;
    double argmax_z = 0.0;
    /// sup over z samples of the scaled quantity, per n in [n_min, n_max].
    std::vector<double> per_n_sup;
    std::size_t n_min = 0;
};

/// Scaled sup-bound diagnostics for the pullback recurrences:
///   K0: |z'_n|                        (bound 1)
///   K1: |z'_n| n^{(alpha+1)/alpha}
///   K4: |dalpha z_n| n^{1/alpha} / logg(n)^2
///   K6: |dalpha of branch-n inverse| n^{1/alpha} / logg(n)^2
///       (the branch-n inverse is z -> (g^{n-1}(z)+1)/2, so its alpha
///        partial is dalpha_{n-1}/2)
/// A bounded, non-growing supremum across the n range is the pass condition;
/// the constants themselves are not pinned down by the theory.
BoundReport lemma_bound_check(const MapParams& p, LemmaBound which,
                              std::size_t n_min, std::size_t n_max,
                              std::span<const double> z_samples);

} // namespace lsv
