#include "lsv/observable.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lsv {

Observable obs_coordinate() {
    return {[](double x) { return x; },
            [](double) { return 1.0; },
            [](double) { return 0.0; },
            0.0, "x"};
}

Observable obs_cos2pi() {
    constexpr double tp = 2.0 * std::numbers::pi;
    return {[=](double x) { return std::cos(tp * x); },
            [=](double x) { return -tp * std::sin(tp * x); },
            [=](double x) { return -tp * tp * std::cos(tp * x); },
            0.0, "cos2pi"};
}

Observable obs_square() {
    return {[](double x) { return x * x; },
            [](double x) { return 2.0 * x; },
            [](double) { return 2.0; },
            0.0, "x2"};
}

Observable obs_constant(double c) {
    return {[=](double) { return c; },
            [](double) { return 0.0; },
            [](double) { return 0.0; },
            0.0, "const"};
}

Observable obs_by_name(const std::string& name) {
    if (name == "x") return obs_coordinate();
    if (name == "cos2pi") return obs_cos2pi();
    if (name == "x2") return obs_square();
    if (name.rfind("const:", 0) == 0) return obs_constant(std::stod(name.substr(6)));
    throw std::invalid_argument("lsv: unknown observable '" + name + "'");
}

} // namespace lsv
