#include "lsv/inducing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lsv {

std::size_t return_time(const MarkerTable& markers, double x) {
    return markers.locate(x);
}

double induced_apply(const MapParams& p, const MarkerTable& markers, double x) {
    std::size_t tau = return_time(markers, x);
    double z = x;
    for (std::size_t k = 0; k < tau; ++k)
        z = apply(p, z);
    // Guard against a rounding step leaving Y at the cylinder edge.
    if (z <= 0.5) z = std::nextafter(0.5, 1.0);
    if (z > 1.0) z = 1.0;
    return z;
}

double branch_inverse(const MapParams& p, std::size_t n, double z) {
    if (n == 0) throw std::domain_error("lsv: branch index starts at 1");
    double w = z;
    for (std::size_t k = 1; k < n; ++k)
        w = left_inverse(p, w);
    return 0.5 * (w + 1.0);
}

double induced_block_sum(const MapParams& p, const MarkerTable& markers,
                         const Observable& psi, double x) {
    std::size_t tau = return_time(markers, x);
    double s = 0.0, z = x;
    for (std::size_t k = 0; k < tau; ++k) {
        s += psi.value(z);
        z = apply(p, z);
    }
    return s;
}

double induced_observable(const MapParams& p, const MarkerTable& markers,
                          const Observable& psi, double x) {
    std::size_t tau = return_time(markers, x);
    return induced_block_sum(p, markers, psi, x) - static_cast<double>(tau) * psi.center;
}

std::size_t separation_time(const MapParams& p, const MarkerTable& markers,
                            double x, double y, std::size_t cap) {
    double a = x, b = y;
    for (std::size_t n = 0; n < cap; ++n) {
        std::size_t ra = return_time(markers, a);
        std::size_t rb = return_time(markers, b);
        if (ra != rb) return n;
        a = induced_apply(p, markers, a);
        b = induced_apply(p, markers, b);
    }
    return cap;
}

double lip_seminorm_estimate(const MapParams& p, const MarkerTable& markers,
                             const Observable& psi, std::size_t r, double theta,
                             std::size_t samples) {
    if (r > markers.n_max())
        throw std::domain_error("lsv: r exceeds marker table depth");
    const double lo = markers.y(r + 1);
    const double len = markers.interval_length(r);
    constexpr std::size_t sep_cap = 60;

    // Quasi-uniform pair placement via a golden-ratio sequence.
    const double phi = 0.6180339887498949;
    double best = 0.0;
    double u = 0.12, v = 0.57;
    for (std::size_t i = 0; i < samples; ++i) {
        u = u + phi; u -= std::floor(u);
        v = v + phi * phi; v -= std::floor(v);
        double a = lo + (0.02 + 0.96 * u) * len;
        double b = lo + (0.02 + 0.96 * v) * len;
        if (a == b) continue;
        std::size_t s = separation_time(p, markers, a, b, sep_cap);
        if (s >= sep_cap) continue;
        double q = std::abs(induced_observable(p, markers, psi, a) -
                            induced_observable(p, markers, psi, b)) *
                   std::pow(theta, static_cast<double>(s));
        best = std::max(best, q);
    }
    return best;
}

TailFit linear_fit(const std::vector<double>& xs, const std::vector<double>& ys) {
    const std::size_t n = xs.size();
    if (n < 2 || ys.size() != n)
        throw std::domain_error("lsv: linear_fit needs >= 2 matched points");
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) { mx += xs[i]; my += ys[i]; }
    mx /= n; my /= n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double dx = xs[i] - mx, dy = ys[i] - my;
        sxx += dx * dx; sxy += dx * dy; syy += dy * dy;
    }
    TailFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    f.r_squared = (syy > 0.0) ? (sxy * sxy) / (sxx * syy) : 1.0;
    return f;
}

TailFit tail_exponent_fit(const MarkerTable& markers, std::size_t r_min, std::size_t r_max) {
    if (r_min < 1 || r_max > markers.n_max() || r_min >= r_max)
        throw std::domain_error("lsv: bad tail fit range");
    std::vector<double> lx, ly;
    lx.reserve(r_max - r_min + 1);
    ly.reserve(r_max - r_min + 1);
    for (std::size_t r = r_min; r <= r_max; ++r) {
        double m = markers.interval_length(r);
        if (m <= 0.0) continue;
        lx.push_back(std::log(static_cast<double>(r)));
        ly.push_back(std::log(m));
    }
    return linear_fit(lx, ly);
}

} // namespace lsv
