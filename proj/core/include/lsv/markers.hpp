#pragma once

#include "lsv/map.hpp"

#include <cstddef>
#include <vector>

namespace lsv {

/// Marker sequences encoding the return-time structure of Y = (1/2, 1]:
///   x_0 = 1,  x_{n+1} = left-branch preimage of x_n (decreasing to 0),
///   y_{n+1} = (x_n + 1)/2 (right-branch preimage, exact since that branch
///   is affine),  y_1 = 1.
/// The return-time cylinders are I_n = (y_{n+1}, y_n], on which tau = n,
/// and J_n = (x_{n+1}, x_n]. Immutable after construction.
class MarkerTable {
public:
    MarkerTable(const MapParams& p, std::size_t n_max = 100000);

    double alpha() const { return alpha_; }
    std::size_t n_max() const { return x_.size() - 1; }

    /// x_n, 0 <= n <= n_max.
    double x(std::size_t n) const { return x_[n]; }
    /// y_n, 1 <= n <= n_max + 1.
    double y(std::size_t n) const { return 0.5 * (x_[n - 1] + 1.0); }

    /// m(I_r) = y_r - y_{r+1} = (x_{r-1} - x_r)/2, 1 <= r <= n_max.
    double interval_length(std::size_t r) const { return 0.5 * (x_[r - 1] - x_[r]); }

    /// The index n with x in I_n = (y_{n+1}, y_n]. Requires x in (1/2, 1];
    /// throws TailOverflow when x <= y_{n_max+1} (table too shallow).
    std::size_t locate(double x) const;

private:
    double alpha_;
    std::vector<double> x_;
};

} // namespace lsv
