#include "lsv/green_kubo.hpp"
#include "lsv/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace lsv {

double CorrelationSeries::green_kubo_sum() const {
    if (terms.empty()) return 0.0;
    double s = terms[0].value;
    for (std::size_t i = 1; i < terms.size(); ++i)
        s += 2.0 * terms[i].value;
    return s;
}

namespace {

/// Centered block sums evaluated exactly at every mesh midpoint (the induced
/// observable jumps across cylinder boundaries, so it is never interpolated).
std::vector<double> block_sums_on_mesh(const MapParams& p, const GridFunction& mesh,
                                       const Observable& psi, bool centered) {
    std::vector<double> out(mesh.cells());
    for (std::size_t i = 0; i < mesh.cells(); ++i) {
        double x = mesh.mid[i];
        std::size_t tau = mesh.cell_branch[i];
        double s = 0.0;
        for (std::size_t k = 0; k < tau; ++k) {
            s += psi.value(x);
            x = apply(p, x);
        }
        if (centered) s -= static_cast<double>(tau) * psi.center;
        out[i] = s;
    }
    return out;
}

void fit_decay_envelope(CorrelationSeries& cs) {
    // Geometric-rate fit on log|C_k| over the tail k in [5, truncation].
    std::vector<double> ks, ls;
    for (const auto& t : cs.terms) {
        if (t.k < 5) continue;
        double a = std::abs(t.value);
        if (a <= 0.0) continue;
        ks.push_back(static_cast<double>(t.k));
        ls.push_back(std::log(a));
    }
    if (ks.size() < 3) {
        cs.fit_ok = false;
        cs.tail_bound = cs.terms.empty() ? 0.0 : std::abs(cs.terms.back().value);
        return;
    }
    TailFit f = linear_fit(ks, ls);
    double r = std::exp(f.slope);
    cs.fit_r_squared = f.r_squared;
    if (r > 0.0 && r < 1.0) {
        cs.fit_ok = true;
        cs.gap_theta_fit = 1.0 - r;
        cs.tail_bound = std::abs(cs.terms.back().value) * r / (1.0 - r);
    } else {
        cs.fit_ok = false;
        cs.gap_theta_fit = 0.0;
        cs.tail_bound = std::abs(cs.terms.back().value);
    }
}

} // namespace

Observable center_observable(const MapParams& p, const MarkerTable& /*markers*/,
                             Observable psi, const DensityReport& density) {
    std::vector<double> raw = block_sums_on_mesh(p, density.h, psi, false);
    double num = 0.0;
    for (std::size_t i = 0; i < density.h.cells(); ++i)
        num += raw[i] * density.h.values[i] * density.h.weights[i];
    // Tail correction matching the one in the Kac integral: blocks beyond
    // the mesh carry the per-step average of the deepest resolved cylinder
    // (the orbit lingers near 0 there), weighted by h at the edge.
    const GridFunction& h = density.h;
    double h_edge = h.values.front();
    double per_step = raw.front() / static_cast<double>(h.cell_branch.front());
    num = (num + h_edge * density.kac_tail_moment * per_step) /
          (1.0 + h_edge * h.deficit);
    psi.center = num / density.kac;
    return psi;
}

double drift_coefficient(const MapParams& p, const MarkerTable& markers,
                         const DensityReport& density, const Observable& phi) {
    Observable c = center_observable(p, markers, phi, density);
    
    return c.center;
}

CorrelationSeries correlation_operator(const MapParams& p, const MarkerTable& /*markers*/,
                                       const InducedTransfer& op, const DensityReport& density,
                                       const Observable& psi, const GreenKuboSettings& s) {
    const GridFunction& h = density.h;
    std::vector<double> blocks = block_sums_on_mesh(p, h, psi, true);

    GridFunction phi = h; // phi_0 = Psi^ h
    for (std::size_t i = 0; i < phi.cells(); ++i)
        phi.values[i] = blocks[i] * h.values[i];

    CorrelationSeries cs;
    cs.method = Method::Operator;
    std::size_t small_streak = 0;
    for (std::size_t k = 0; k <= s.k_max; ++k) {
        if (k > 0) phi = op.apply(phi);
        double c = 0.0;
        for (std::size_t i = 0; i < phi.cells(); ++i)
            c += phi.values[i] * blocks[i] * phi.weights[i];
        cs.terms.push_back({k, c, std::nullopt});
        small_streak = (std::abs(c) < s.abs_tol) ? small_streak + 1 : 0;
        if (k >= 1 && small_streak >= 3) break;
    }
    cs.truncation_k = cs.terms.back().k;
    fit_decay_envelope(cs);
    return cs;
}

CorrelationSeries correlation_mc(const MapParams& p, const MarkerTable& markers,
                                 const Observable& psi, std::size_t k_max,
                                 const GreenKuboSettings& s) {
    const std::size_t batches = std::max<std::size_t>(2, s.mc_batches);
    const std::size_t per_batch = s.mc_samples / batches;
    std::vector<std::vector<double>> batch_sum(batches, std::vector<double>(k_max + 1, 0.0));

    std::vector<double> vals(k_max + 1);
    for (std::size_t b = 0; b < batches; ++b) {
        for (std::size_t t = 0; t < per_batch; ++t) {
            auto gen = derived_stream(s.seed, b * per_batch + t);
            std::uniform_real_distribution<double> unif(0.5, 1.0);
            double x = unif(gen);
            if (x <= 0.5) x = std::nextafter(0.5, 1.0);
            for (std::size_t i = 0; i < s.mc_burn_in; ++i)
                x = induced_apply(p, markers, x);
            for (std::size_t k = 0; k <= k_max; ++k) {
                vals[k] = induced_observable(p, markers, psi, x);
                x = induced_apply(p, markers, x);
            }
            for (std::size_t k = 0; k <= k_max; ++k)
                batch_sum[b][k] += vals[0] * vals[k];
        }
    }

    CorrelationSeries cs;
    cs.method = Method::MonteCarlo;
    const double n_tot = static_cast<double>(per_batch * batches);
    for (std::size_t k = 0; k <= k_max; ++k) {
        double mean = 0.0;
        for (std::size_t b = 0; b < batches; ++b) mean += batch_sum[b][k];
        mean /= n_tot;
        double var_bm = 0.0;
        for (std::size_t b = 0; b < batches; ++b) {
            double bm = batch_sum[b][k] / static_cast<double>(per_batch);
            var_bm += (bm - mean) * (bm - mean);
        }
        var_bm /= static_cast<double>(batches - 1) * static_cast<double>(batches);
        cs.terms.push_back({k, mean, std::sqrt(var_bm)});
    }
    cs.truncation_k = k_max;
    fit_decay_envelope(cs);
    return cs;
}

VarianceReport sigma_sq(const MapParams& p, const Observable& psi,
                        const GreenKuboSettings& s, Method method) {
    MarkerTable markers(p, s.marker_depth);
    InducedTransfer op(p, markers, s.n_branch, s.cells_l);
    DensityReport density = invariant_density_induced(op, s.power_tol, s.power_max_iter);
    return sigma_sq_with(p, markers, op, density, psi, s, method);
}

VarianceReport sigma_sq_with(const MapParams& p, const MarkerTable& markers,
                             const InducedTransfer& op, const DensityReport& density,
                             const Observable& psi, const GreenKuboSettings& s,
                             Method method) {
    Observable centered = center_observable(p, markers, psi, density);

    VarianceReport rep;
    rep.alpha = p.alpha;
    rep.kac = density.kac;

    if (method == Method::Operator || method == Method::Both) {
        rep.series = correlation_operator(p, markers, op, density, centered, s);
    } else {
        rep.series = correlation_mc(p, markers, centered, std::min<std::size_t>(s.k_max, 30), s);
    }
    rep.sigma_tilde_sq = rep.series.green_kubo_sum();
    rep.sigma_sq = rep.sigma_tilde_sq / rep.kac;
    rep.error_bracket = (2.0 * rep.series.tail_bound + op.tail_deficit()) / rep.kac;

    if (method == Method::Both) {
        CorrelationSeries mc =
            correlation_mc(p, markers, centered, std::min<std::size_t>(s.k_max, 30), s);
        rep.method_agreement =
            std::abs(mc.green_kubo_sum() - rep.sigma_tilde_sq) / rep.kac;
    }
    return rep;
}

} // namespace lsv
