#pragma once

#include <cstddef>
#include <vector>

namespace lsv {

/// Parameter bundle for the intermittent interval map
///   f_a(x) = x(1 + 2^a x^a)  on [0, 1/2],   2x - 1  on (1/2, 1].
///
/// The admissible range is 0 <= alpha < 1/2 (normal diffusion regime);
/// alpha = 0 is the doubling map and serves as an exactly solvable anchor.
struct MapParams {
    double alpha;
    double newton_tol = 1e-14;
    int newton_max_iter = 100;

    /// Validating constructor; rejects alpha outside [0, 1/2).
    explicit MapParams(double alpha_, double tol = 1e-14, int max_iter = 100);

    /// Test hook: skips the alpha range check (used e.g. for closed-form
    /// checks at alpha = 1). Not part of the supported surface.
    static MapParams raw(double alpha_, double tol = 1e-14, int max_iter = 100);

private:
    struct raw_tag {};
    MapParams(raw_tag, double alpha_, double tol, int max_iter);
};

enum class Branch { Left, Right };

/// x = 1/2 belongs to the left branch, matching the defining inequalities.
inline Branch branch_of(double x) { return x <= 0.5 ? Branch::Left : Branch::Right; }

/// One step of the map. Domain error outside [0,1].
double apply(const MapParams& p, double x);

/// f'(x) = 1 + (alpha+1) (2x)^alpha on the left branch, 2 on the right.
double derivative(const MapParams& p, double x);

/// d/dalpha f_alpha(x) = x (2x)^alpha log(2x) on the left branch, 0 on the right.
/// Continuous limit 0 as x -> 0+.
double alpha_partial(const MapParams& p, double x);

/// Inverse of the left branch: the unique x in [0,1/2] with f(x) = y.
/// Safeguarded Newton (bisection fallback on [0,1/2]); f' >= 1 keeps the
/// bracket well conditioned. Throws ConvergenceFailure past newton_max_iter.
double left_inverse(const MapParams& p, double y);

/// (x0, f x0, ..., f^{n-1} x0).
std::vector<double> orbit(const MapParams& p, double x0, std::size_t n);

} // namespace lsv
