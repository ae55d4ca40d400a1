#pragma once

#include "lsv/grid.hpp"
#include "lsv/markers.hpp"
#include "lsv/observable.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace lsv {

/// Discretized transfer operator of the induced map on the cylinder-aligned
/// mesh. The operator acts on densities phi via the inverse-branch expansion
///   (P phi)(z) = sum_n phi(w_n(z)) |w_n'(z)|,   w_n(z) = (g^{n-1}(z)+1)/2,
/// truncated at n_branch branches. Branch inverses and their derivatives are
/// precomputed at all mesh midpoints, and the interpolation is folded into a
/// dense matrix so one application is a matvec.
class InducedTransfer {
public:
    InducedTransfer(const MapParams& p, const MarkerTable& markers,
                    std::size_t n_branch = 400, std::size_t cells_l = 64);

    /// P phi at the mesh midpoints. phi must live on this mesh.
    GridFunction apply(const GridFunction& phi) const;

    /// Zero-valued copy of the mesh.
    const GridFunction& mesh() const { return mesh_; }
    std::size_t n_branch() const { return n_branch_; }

    /// Upper estimate of the mass lost per application to the branches
    /// beyond n_branch (power-law tail extrapolation of the branch weights).
    double tail_deficit() const { return tail_deficit_; }

    /// First moment sum_{n > nb} n m(I_n) of the return-time cylinders
    /// beyond the deepest resolved mesh cylinder, summed from the marker
    /// table; lets the Kac integral account for the unresolved tail.
    double kac_tail_moment() const { return kac_tail_moment_; }

private:
    GridFunction mesh_;
    std::size_t n_branch_;
    double tail_deficit_ = 0.0;
    double kac_tail_moment_ = 0.0;
    std::vector<double> matrix_; // row-major, cells x cells
};

struct DensityReport {
    GridFunction h;        // induced invariant density, integral 1 on (1/2,1]
    double kac = 0.0;      // mean return time, sum_n n mu(I_n)
    double nu_Y = 0.0;     // 1/kac (Kac's lemma)
    double residual = 0.0; // L1 fixed-point residual ||P h - h||_1
    double kac_tail_moment = 0.0; // sum_{n > nb} n m(I_n) beyond the mesh
    int iterations = 0;
};

/// Power iteration from the uniform density until the L1 increment drops
/// below tol. Throws ConvergenceFailure after max_iter sweeps.
DensityReport invariant_density_induced(const InducedTransfer& op,
                                        double tol = 1e-12, int max_iter = 2000);

struct HistogramBin {
    double lo, hi, mass;
};

/// Birkhoff-average histogram of a long full-map orbit (diagnostic proxy for
/// the absolutely continuous invariant density). Bin edges are graded toward
/// the indifferent fixed point at 0.
std::vector<HistogramBin> full_density_histogram(const MapParams& p, std::size_t bins,
                                                 std::size_t n_steps, std::size_t burn_in,
                                                 std::uint64_t seed);

/// Fraction of a long full-map orbit spent in Y = (1/2, 1]; independent
/// Monte Carlo estimator of nu(Y).
double orbit_fraction_in_Y(const MapParams& p, std::size_t n_steps,
                           std::size_t burn_in, std::uint64_t seed);

} // namespace lsv
