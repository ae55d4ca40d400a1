#include "lsv/markers.hpp"
#include "lsv/errors.hpp"

#include <stdexcept>

namespace lsv {

MarkerTable::MarkerTable(const MapParams& p, std::size_t n_max) : alpha_(p.alpha) {
    if (n_max == 0) throw std::domain_error("lsv: MarkerTable needs n_max >= 1");
    x_.reserve(n_max + 1);
    x_.push_back(1.0);
    for (std::size_t n = 0; n < n_max; ++n)
        x_.push_back(left_inverse(p, x_.back()));
}

std::size_t MarkerTable::locate(double z) const {
    if (!(z > 0.5 && z <= 1.0))
        throw std::domain_error("lsv: locate requires a point in (1/2, 1]");
    if (z <= y(n_max() + 1))
        throw TailOverflow("lsv: point below resolved markers; enlarge n_max");
    // Find the least n with y_{n+1} < z, i.e. z in (y_{n+1}, y_n].
    std::size_t lo = 1, hi = n_max();
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (y(mid + 1) < z) hi = mid; else lo = mid + 1;
    }
    return lo;
}

} // namespace lsv
