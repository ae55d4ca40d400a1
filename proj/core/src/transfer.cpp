#include "lsv/transfer.hpp"
#include "lsv/errors.hpp"
#include "lsv/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace lsv {

InducedTransfer::InducedTransfer(const MapParams& p, const MarkerTable& markers,
                                 std::size_t n_branch, std::size_t cells_l)
    : mesh_(make_mesh(markers, n_branch, cells_l)), n_branch_(n_branch) {
    const std::size_t m = mesh_.cells();
    matrix_.assign(m * m, 0.0);

    for (std::size_t row = 0; row < m; ++row) {
        const double z = mesh_.mid[row];
        // Branch n uses the pullback chain of depth n-1 started at z.
        double w = z, dw = 1.0;
        double last_g = 0.0;
        for (std::size_t n = 1; n <= n_branch_; ++n) {
            if (n > 1) {
                double g = left_inverse(p, w);
                dw /= derivative(p, g);
                w = g;
            }
            double point = 0.5 * (w + 1.0);
            double gain = 0.5 * dw;
            last_g = gain;
            GridFunction::Stencil s = mesh_.stencil(point);
            matrix_[row * m + s.i] += gain * s.wi;
            matrix_[row * m + s.j] += gain * s.wj;
        }
        // Tail of the branch sum beyond n_branch, extrapolated from the
        // power-law decay of the branch weights.
        double nb = static_cast<double>(n_branch_);
        double tail = last_g * (p.alpha > 0.0 ? p.alpha * nb : 1.0);
        if (tail > tail_deficit_) tail_deficit_ = tail;
    }

    // First moment of the cylinder tail beyond the deepest resolved mesh
    // cylinder, accumulated small-to-large for accuracy.
    const std::size_t nb_eff = mesh_.cell_branch.front();
    for (std::size_t n = markers.n_max(); n > nb_eff; --n)
        kac_tail_moment_ += static_cast<double>(n) * markers.interval_length(n);
}

GridFunction InducedTransfer::apply(const GridFunction& phi) const {
    const std::size_t m = mesh_.cells();
    if (phi.cells() != m)
        throw std::domain_error("lsv: grid function does not match operator mesh");
    GridFunction out = mesh_;
    for (std::size_t i = 0; i < m; ++i) {
        const double* row = &matrix_[i * m];
        double acc = 0.0;
        for (std::size_t j = 0; j < m; ++j)
            acc += row[j] * phi.values[j];
        out.values[i] = acc;
    }
    return out;
}

DensityReport invariant_density_induced(const InducedTransfer& op, double tol, int max_iter) {
    GridFunction h = op.mesh();
    for (auto& v : h.values) v = 1.0;
    double mass = h.integral();
    for (auto& v : h.values) v /= mass;

    int it = 0;
    for (; it < max_iter; ++it) {
        GridFunction next = op.apply(h);
        double nm = next.integral();
        for (auto& v : next.values) v /= nm;
        double incr = 0.0;
        for (std::size_t i = 0; i < h.cells(); ++i)
            incr += std::abs(next.values[i] - h.values[i]) * h.weights[i];
        h = std::move(next);
        if (incr < tol) break;
    }
    if (it == max_iter)
        throw ConvergenceFailure("lsv: density power iteration did not converge");

    DensityReport rep;
    GridFunction ph = op.apply(h);
    rep.residual = 0.0;
    for (std::size_t i = 0; i < h.cells(); ++i)
        rep.residual += std::abs(ph.values[i] - h.values[i]) * h.weights[i];
    rep.kac = 0.0;
    for (std::size_t i = 0; i < h.cells(); ++i)
        rep.kac += static_cast<double>(h.cell_branch[i]) * h.values[i] * h.weights[i];
    // The density is continuous at the unresolved left edge, so the cylinder
    // tail beyond the mesh contributes h(edge) times its first moment, and
    // the same edge value carries the unresolved mass in the normalization.
    double h_edge = h.values.front();
    rep.kac_tail_moment = op.kac_tail_moment();
    rep.kac = (rep.kac + h_edge * rep.kac_tail_moment) /
              (1.0 + h_edge * h.deficit);
    rep.nu_Y = 1.0 / rep.kac;
    rep.iterations = it + 1;
    rep.h = std::move(h);
    return rep;
}

std::vector<HistogramBin> full_density_histogram(const MapParams& p, std::size_t bins,
                                                 std::size_t n_steps, std::size_t burn_in,
                                                 std::uint64_t seed) {
    if (bins < 10) throw std::domain_error("lsv: need at least 10 bins");
    // Quadratically graded edges refine toward the neutral fixed point.
    std::vector<double> edges(bins + 1);
    for (std::size_t j = 0; j <= bins; ++j) {
        double t = static_cast<double>(j) / static_cast<double>(bins);
        edges[j] = t * t;
    }
    std::vector<std::size_t> counts(bins, 0);

    auto gen = derived_stream(seed, 0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double x = unif(gen);
    for (std::size_t i = 0; i < burn_in; ++i) x = apply(p, x);
    for (std::size_t i = 0; i < n_steps; ++i) {
        double t = std::sqrt(x);
        auto j = static_cast<std::size_t>(t * static_cast<double>(bins));
        if (j >= bins) j = bins - 1;
        ++counts[j];
        x = apply(p, x);
    }

    std::vector<HistogramBin> out(bins);
    for (std::size_t j = 0; j < bins; ++j)
        out[j] = {edges[j], edges[j + 1],
                  static_cast<double>(counts[j]) / static_cast<double>(n_steps)};
    return out;
}

double orbit_fraction_in_Y(const MapParams& p, std::size_t n_steps,
                           std::size_t burn_in, std::uint64_t seed) {
    auto gen = derived_stream(seed, 1);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double x = unif(gen);
    for (std::size_t i = 0; i < burn_in; ++i) x = apply(p, x);
    std::size_t hits = 0;
    for (std::size_t i = 0; i < n_steps; ++i) {
        if (x > 0.5) ++hits;
        x = apply(p, x);
    }
    return static_cast<double>(hits) / static_cast<double>(n_steps);
}

} // namespace lsv
