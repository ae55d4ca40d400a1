#pragma once

#include "lsv/map.hpp"
#include "lsv/markers.hpp"
#include "lsv/observable.hpp"

#include <cstddef>
#include <vector>

namespace lsv {

/// First return time of x in (1/2,1] to (1/2,1], read off the marker table
/// (equals the count of map iterations until the orbit re-enters Y).
std::size_t return_time(const MarkerTable& markers, double x);

/// The induced map F(x) = f^{tau(x)}(x), again in (1/2, 1].
double induced_apply(const MapParams& p, const MarkerTable& markers, double x);

/// Inverse of F restricted to branch n: the unique x in I_n with F(x) = z,
/// namely x = (g^{n-1}(z) + 1)/2 where g is the left-branch inverse.
double branch_inverse(const MapParams& p, std::size_t n, double z);

/// Centered induced observable: the block sum of (psi - center) along the
/// return block of x. psi.center must already be set.
double induced_observable(const MapParams& p, const MarkerTable& markers,
                          const Observable& psi, double x);

/// Uncentered block sum of psi along the return block of x.
double induced_block_sum(const MapParams& p, const MarkerTable& markers,
                         const Observable& psi, double x);

/// Least n with F^n(x), F^n(y) in distinct return-time cylinders, capped at
/// `cap` (a return value of cap means ">= cap").
std::size_t separation_time(const MapParams& p, const MarkerTable& markers,
                            double x, double y, std::size_t cap);

/// Empirical lower bound for the theta-metric Lipschitz seminorm of the
/// induced observable on I_r, from `samples` quasi-uniform point pairs.
double lip_seminorm_estimate(const MapParams& p, const MarkerTable& markers,
                             const Observable& psi, std::size_t r, double theta,
                             std::size_t samples = 200);

struct TailFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

/// Least-squares slope of log m(I_r) against log r over [r_min, r_max].
/// For 0 < alpha < 1/2 the slope approaches -(1 + 1/alpha); a poor r_squared
/// flags non-power-law tails (e.g. geometric ones at alpha = 0).
TailFit tail_exponent_fit(const MarkerTable& markers, std::size_t r_min, std::size_t r_max);

/// Least-squares fit helper for (x, y) data; shared by tail and decay fits.
TailFit linear_fit(const std::vector<double>& xs, const std::vector<double>& ys);

} // namespace lsv
