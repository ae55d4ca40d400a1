#include "lsv/pullback.hpp"

#include <cmath>
#include <stdexcept>

namespace lsv {

std::vector<PullbackState> pullback_sequence(const MapParams& p, double z0, std::size_t n) {
    if (!(z0 > 0.5 && z0 <= 1.0))
        throw std::domain_error("lsv: pullback starts in (1/2, 1]");
    std::vector<PullbackState> out;
    out.reserve(n + 1);
    PullbackState s{z0, 1.0, 0.0, 0};
    out.push_back(s);
    for (std::size_t k = 1; k <= n; ++k) {
        double z = left_inverse(p, s.z);
        double fp = derivative(p, z);
        s.dz = s.dz / fp;
        s.dalpha = (s.dalpha - alpha_partial(p, z)) / fp;
        s.z = z;
        s.n = k;
        out.push_back(s);
    }
    return out;
}

double logg(double x) {
    constexpr double e = 2.718281828459045;
    return x <= e ? 1.0 : std::log(x);
}

namespace {

double scaled_quantity(LemmaBound which, double alpha, const PullbackState& s,
                       const PullbackState& prev) {
    const double n = static_cast<double>(s.n);
    switch (which) {
    case LemmaBound::K0:
        return std::abs(s.dz);
    case LemmaBound::K1:
        return std::abs(s.dz) * std::pow(n, (alpha + 1.0) / alpha);
    case LemmaBound::K4: {
        double lg = logg(n);
        return std::abs(s.dalpha) * std::pow(n, 1.0 / alpha) / (lg * lg);
    }
    case LemmaBound::K6: {
        // Branch-n inverse uses the chain of depth n-1.
        double lg = logg(n);
        return 0.5 * std::abs(prev.dalpha) * std::pow(n, 1.0 / alpha) / (lg * lg);
    }
    }
    return 0.0;
}

} // namespace

BoundReport lemma_bound_check(const MapParams& p, LemmaBound which,
                              std::size_t n_min, std::size_t n_max,
                              std::span<const double> z_samples) {
    if (n_min < 1 || n_min > n_max)
        throw std::domain_error("lsv: bad lemma_bound_check range");
    if ((which == LemmaBound::K1 || which == LemmaBound::K4 || which == LemmaBound::K6) &&
        p.alpha <= 0.0)
        throw std::domain_error("lsv: scaled bounds need alpha > 0");

    BoundReport rep;
    rep.n_min = n_min;
    rep.per_n_sup.assign(n_max - n_min + 1, 0.0);
    for (double z0 : z_samples) {
        PullbackState s{z0, 1.0, 0.0, 0};
        PullbackState prev = s;
        for (std::size_t k = 1; k <= n_max; ++k) {
            prev = s;
            double z = left_inverse(p, s.z);
            double fp = derivative(p, z);
            s.dz /= fp;
            s.dalpha = (s.dalpha - alpha_partial(p, z)) / fp;
            s.z = z;
            s.n = k;
            if (k < n_min) continue;
            double q = scaled_quantity(which, p.alpha, s, prev);
            double& cell = rep.per_n_sup[k - n_min];
            if (q > cell) cell = q;
            if (q > rep.sup_scaled) {
                rep.sup_scaled = q;
                rep.argmax_n = k;
                rep.argmax_z = z0;
            }
        }
    }
    return rep;
}

} // namespace lsv
