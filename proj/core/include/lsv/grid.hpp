#pragma once

#include "lsv/markers.hpp"

#include <cstddef>
#include <vector>

namespace lsv {

/// Piecewise representation of a function on the resolved part of (1/2, 1]
/// over a cylinder-aligned mesh: breakpoints include every marker y_n for
/// n <= n_branch, each cylinder I_n subdivided uniformly. Values live at
/// cell midpoints; quadrature weights are the cell lengths. The unresolved
/// tail mass (y_{n_branch+1} - 1/2) is tracked explicitly as `deficit`.
struct GridFunction {
    std::vector<double> breaks;        // ascending, size cells()+1
    std::vector<double> mid;           // cell midpoints
    std::vector<double> values;        // one per cell
    std::vector<double> weights;       // cell lengths
    std::vector<std::size_t> cell_branch; // cylinder index of each cell
    double deficit = 0.0;

    std::size_t cells() const { return mid.size(); }

    /// Midpoint-rule integral over the resolved region.
    double integral() const;

    /// Sum of |values| * weights.
    double abs_integral() const;

    /// Piecewise-linear interpolation of the midpoint values, clamped to the
    /// nearest midpoint at the region edges. Interpolation never crosses a
    /// cylinder boundary (the represented functions jump there).
    double interpolate(double x) const;

    /// Cell index containing x; requires breaks.front() < x <= breaks.back().
    std::size_t cell_of(double x) const;

    /// Interpolation stencil at x: value(x) ~= wi * values[i] + wj * values[j].
    struct Stencil {
        std::size_t i, j;
        double wi, wj;
    };
    Stencil stencil(double x) const;
};

/// Cylinder-aligned mesh covering I_1 .. I_{n_branch} with all values zero.
/// Each I_n receives max(4, ceil(cells_l * m(I_n)/m(I_1))) uniform cells.
GridFunction make_mesh(const MarkerTable& markers, std::size_t n_branch,
                       std::size_t cells_l = 64);

} // namespace lsv
