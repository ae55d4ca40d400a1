#pragma once

#include <functional>
#include <string>

namespace lsv {

/// A C^2 test function on [0,1] given by evaluation rules for the value and
/// its first two derivatives, plus the centering constant (the equilibrium
/// average, filled in by green_kubo::center_observable).
struct Observable {
    std::function<double(double)> value;
    std::function<double(double)> d1;
    std::function<double(double)> d2;
    double center = 0.0;
    std::string name;

    double centered(double x) const { return value(x) - center; }
};

Observable obs_coordinate();         // psi(x) = x
Observable obs_cos2pi();             // psi(x) = cos(2 pi x)
Observable obs_square();             // psi(x) = x^2
Observable obs_constant(double c);

/// Look up a builtin by name ("x", "cos2pi", "x2", "const:<c>").
/// Throws std::invalid_argument on unknown names.
Observable obs_by_name(const std::string& name);

} // namespace lsv
