#pragma once

#include "lsv/inducing.hpp"
#include "lsv/transfer.hpp"

#include <cstdint>
#include <optional>

namespace lsv {

enum class Method { Operator, MonteCarlo, Both };

struct CorrelationTerm {
    std::size_t k;
    double value;
    std::optional<double> stderr_; // Monte Carlo only
};

/// Autocorrelation series of the centered induced observable under the
/// induced map, C_k = int Psi^ * Psi^ o F^k dmu, starting at k = 0.
struct CorrelationSeries {
    std::vector<CorrelationTerm> terms;
    double gap_theta_fit = 0.0; // fitted geometric rate: |C_k| ~ C (1-theta)^k
    double fit_r_squared = 0.0;
    bool fit_ok = false;
    std::size_t truncation_k = 0;
    double tail_bound = 0.0;
    Method method = Method::Operator;

    /// C_0 + 2 sum_{k>=1} C_k over the computed terms.
    double green_kubo_sum() const;
};

struct GreenKuboSettings {
    std::size_t n_branch = 400;
    std::size_t cells_l = 64;
    std::size_t marker_depth = 100000;
    std::size_t k_max = 200;
    double abs_tol = 1e-10;      // truncation: three consecutive |C_k| below this
    double power_tol = 1e-12;
    int power_max_iter = 2000;
    std::uint64_t seed = 0x5a17u;
    std::size_t mc_samples = 200000;
    std::size_t mc_burn_in = 32;
    std::size_t mc_batches = 100;
};

struct VarianceReport {
    double alpha = 0.0;
    double sigma_tilde_sq = 0.0; // induced-map variance
    double kac = 0.0;            // mean return time
    double sigma_sq = 0.0;       // sigma_tilde_sq / kac
    CorrelationSeries series;
    double error_bracket = 0.0;  // tail + truncation allowance on sigma_sq
    std::optional<double> method_agreement; // |operator - MC| when both run
};

/// Fill in psi.center with the equilibrium average of psi for the full map,
/// computed through the induced representation: the integral of the
/// uncentered block sum against the induced density, divided by the mean
/// return time. The centered block sums then integrate to zero over Y.
Observable center_observable(const MapParams& p, const MarkerTable& markers,
                             Observable psi, const DensityReport& density);

/// Equilibrium average of an (uncentered) observable for the full map; the
/// drift coefficient of the associated deterministic diffusion.
double drift_coefficient(const MapParams& p, const MarkerTable& markers,
                         const DensityReport& density, const Observable& phi);

/// Deterministic correlation series via transfer-operator iteration of
/// phi_0 = Psi^ h. Truncates per GreenKuboSettings and fits the geometric
/// decay envelope on the tail k >= 5.
CorrelationSeries correlation_operator(const MapParams& p, const MarkerTable& markers,
                                       const InducedTransfer& op, const DensityReport& density,
                                       const Observable& psi, const GreenKuboSettings& s);

/// Monte Carlo estimate of the same series from independent trajectories
/// started Lebesgue-uniform on Y and burned in. Per-trajectory streams are
/// derived deterministically from the master seed; the reduction order is
/// fixed, so results are bitwise reproducible.
CorrelationSeries correlation_mc(const MapParams& p, const MarkerTable& markers,
                                 const Observable& psi, std::size_t k_max,
                                 const GreenKuboSettings& s);

/// Full pipeline: density -> centering -> correlations -> variance report.
/// psi enters uncentered; the centering constant is computed internally.
VarianceReport sigma_sq(const MapParams& p, const Observable& psi,
                        const GreenKuboSettings& s, Method method = Method::Operator);

/// Same pipeline on prebuilt markers/operator/density (reused across
/// observables or sweep diagnostics).
VarianceReport sigma_sq_with(const MapParams& p, const MarkerTable& markers,
                             const InducedTransfer& op, const DensityReport& density,
                             const Observable& psi, const GreenKuboSettings& s,
                             Method method = Method::Operator);

} // namespace lsv
