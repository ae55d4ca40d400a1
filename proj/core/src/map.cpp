#include "lsv/map.hpp"
#include "lsv/errors.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace lsv {

namespace {

// (2x)^alpha via exp(alpha log(2x)), short-circuited at x = 0 so that the
// alpha = 0 case stays exact (avoids the 0^0 ambiguity of pow).
inline double two_x_pow_alpha(double alpha, double x) {
    if (x <= 0.0) return 0.0;
    if (alpha == 0.0) return 1.0;
    return std::exp(alpha * std::log(2.0 * x));
}

inline void check_unit_interval(double x) {
    if (!(x >= 0.0 && x <= 1.0))
        throw std::domain_error("lsv: point outside [0,1]");
}

} // namespace

MapParams::MapParams(double alpha_, double tol, int max_iter)
    : alpha(alpha_), newton_tol(tol), newton_max_iter(max_iter) {
    if (!(alpha >= 0.0 && alpha < 0.5))
        throw std::domain_error("lsv: alpha must lie in [0, 1/2)");
    if (!(newton_tol > 0.0))
        throw std::domain_error("lsv: newton_tol must be positive");
    if (newton_max_iter <= 0)
        throw std::domain_error("lsv: newton_max_iter must be positive");
}

MapParams::MapParams(raw_tag, double alpha_, double tol, int max_iter)
    : alpha(alpha_), newton_tol(tol), newton_max_iter(max_iter) {}

MapParams MapParams::raw(double alpha_, double tol, int max_iter) {
    return MapParams(raw_tag{}, alpha_, tol, max_iter);
}

double apply(const MapParams& p, double x) {
    check_unit_interval(x);
    if (x <= 0.5)
        return x * (1.0 + two_x_pow_alpha(p.alpha, x));
    return 2.0 * x - 1.0;
}

double derivative(const MapParams& p, double x) {
    check_unit_interval(x);
    if (x <= 0.5)
        return 1.0 + (p.alpha + 1.0) * two_x_pow_alpha(p.alpha, x);
    return 2.0;
}

double alpha_partial(const MapParams& p, double x) {
    check_unit_interval(x);
    if (x > 0.5 || x == 0.0) return 0.0;
    return x * two_x_pow_alpha(p.alpha, x) * std::log(2.0 * x);
}

double left_inverse(const MapParams& p, double y) {
    check_unit_interval(y);
    if (y == 0.0) return 0.0;

    double lo = 0.0, hi = 0.5;
    double x = 0.5 * y;
    // Relative residual test: preimages deep in the laminar region are tiny,
    // and an absolute test would accept garbage there.
    const double tol =
        std::max(p.newton_tol * y, std::numeric_limits<double>::min());
    for (int it = 0; it < p.newton_max_iter; ++it) {
        double r = apply(p, x) - y;
        if (std::abs(r) <= tol) return x;
        if (r > 0.0) hi = x; else lo = x;
        double step = r / derivative(p, x);
        double next = x - step;
        if (!(next > lo && next < hi))
            next = 0.5 * (lo + hi);
        x = next;
    }
    throw ConvergenceFailure("lsv: left_inverse did not converge");
}

std::vector<double> orbit(const MapParams& p, double x0, std::size_t n) {
    std::vector<double> out;
    out.reserve(n);
    double x = x0;
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(x);
        x = apply(p, x);
    }
    return out;
}

} // namespace lsv
