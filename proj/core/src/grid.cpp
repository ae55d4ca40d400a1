#include "lsv/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lsv {

double GridFunction::integral() const {
    double s = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i)
        s += values[i] * weights[i];
    return s;
}

double GridFunction::abs_integral() const {
    double s = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i)
        s += std::abs(values[i]) * weights[i];
    return s;
}

std::size_t GridFunction::cell_of(double x) const {
    if (!(x > breaks.front() && x <= breaks.back()))
        throw std::domain_error("lsv: point outside mesh");
    auto it = std::lower_bound(breaks.begin(), breaks.end(), x);
    std::size_t idx = static_cast<std::size_t>(it - breaks.begin());
    return idx - 1; // breaks[idx-1] < x <= breaks[idx]
}

GridFunction::Stencil GridFunction::stencil(double x) const {
    // Clamp below the resolved region (tail values repeat the deepest cell).
    if (x <= breaks.front()) return {0, 0, 1.0, 0.0};
    std::size_t i = (x > breaks.back()) ? mid.size() - 1 : cell_of(x);

    // Linear interpolation against the neighbor on the side of x, staying
    // within the cylinder (the represented functions jump at its edges). At a
    // cylinder edge the opposite-side neighbor extrapolates instead, which
    // keeps the representation second-order accurate up to the jump.
    const auto in_same = [&](std::size_t k) {
        return k < mid.size() && cell_branch[k] == cell_branch[i];
    };
    std::size_t j = i;
    if (x >= mid[i]) {
        if (in_same(i + 1)) j = i + 1;
        else if (i > 0 && in_same(i - 1)) j = i - 1;
    } else {
        if (i > 0 && in_same(i - 1)) j = i - 1;
        else if (in_same(i + 1)) j = i + 1;
    }
    if (j == i || mid[j] == mid[i]) return {i, i, 1.0, 0.0};
    double t = (x - mid[i]) / (mid[j] - mid[i]);
    return {i, j, 1.0 - t, t};
}

double GridFunction::interpolate(double x) const {
    Stencil s = stencil(x);
    return s.wi * values[s.i] + s.wj * values[s.j];
}

GridFunction make_mesh(const MarkerTable& markers, std::size_t n_branch, std::size_t cells_l) {
    if (n_branch < 1 || n_branch > markers.n_max())
        throw std::domain_error("lsv: n_branch outside marker table");
    // Cylinders too deep to resolve in double precision (their width rounds
    // to zero near 1/2, e.g. for alpha = 0 beyond n ~ 52) are folded into
    // the tail deficit instead of producing zero-width cells.
    std::size_t nb = n_branch;
    while (nb > 1 &&
           !(markers.y(nb) - markers.y(nb + 1) > 0.0 && markers.y(nb + 1) > 0.5))
        --nb;

    GridFunction g;
    g.deficit = markers.y(nb + 1) - 0.5;
    const double m1 = markers.interval_length(1);

    // Assemble ascending: deepest cylinder first.
    g.breaks.push_back(markers.y(nb + 1));
    for (std::size_t n = nb; n >= 1; --n) {
        double lo = markers.y(n + 1), hi = markers.y(n);
        double len = hi - lo;
        auto cells = static_cast<std::size_t>(
            std::max<double>(4.0, std::ceil(static_cast<double>(cells_l) * len / m1)));
        for (std::size_t c = 1; c <= cells; ++c) {
            double r = lo + len * static_cast<double>(c) / static_cast<double>(cells);
            if (c == cells) r = hi; // exact cylinder edge
            double l = g.breaks.back();
            if (!(r > l)) continue; // merge subdivisions below the float scale
            g.breaks.push_back(r);
            double mdpt = 0.5 * (l + r);
            if (!(mdpt > l)) mdpt = r; // one-ulp cell: keep the midpoint inside
            g.mid.push_back(mdpt);
            g.weights.push_back(r - l);
            g.values.push_back(0.0);
            g.cell_branch.push_back(n);
        }
        if (n == 1) break;
    }
    return g;
}

} // namespace lsv
