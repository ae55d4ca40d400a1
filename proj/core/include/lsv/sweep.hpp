#pragma once

#include "lsv/green_kubo.hpp"

#include <span>
#include <string>
#include <vector>

namespace lsv {

struct SweepRow {
    double alpha = 0.0;
    double sigma_sq = 0.0;
    double sigma_tilde_sq = 0.0;
    double kac = 0.0;
    double drift = 0.0;
    double error_bracket = 0.0;
    bool valid = false;
    std::string error; // failure message when !valid
};

struct SweepTable {
    std::vector<SweepRow> rows;

    std::vector<double> column(const std::string& name) const; // "sigma_sq" etc.
};

/// Per-alpha variance pipeline over an increasing grid. All rows share the
/// same mesh/truncation settings so alpha-differences are not contaminated
/// by discretization jumps. Row failures are recorded, not fatal.
/// Deterministic (operator) method only; finite differences of Monte Carlo
/// output would be noise-dominated.
SweepTable sweep_sigma(std::span<const double> alphas, const Observable& psi,
                       const GreenKuboSettings& settings);

struct FdPoint {
    double alpha = 0.0;
    double slope = 0.0;         // central difference at step h
    double two_scale_gap = 0.0; // |slope(h) - slope(2h)| / max(|slope(h)|, eps)
};

/// Central finite differences of a sweep column on a uniform grid (>= 5
/// points). Points are reported where both the h and 2h stencils fit.
std::vector<FdPoint> fd_derivative(const SweepTable& table, const std::string& column);

struct SmoothnessReport {
    double value_modulus = 0.0;      // max step-to-step change of sigma_sq
    double derivative_modulus = 0.0; // max step-to-step change of its FD derivative
    double max_two_scale_gap = 0.0;
    double derivative_total_variation = 0.0;
    double derivative_range = 0.0;
    bool pass = false;
    std::string label;
    std::vector<FdPoint> derivative;
};

/// Diagnostic of C^1-consistency of alpha -> sigma^2 on the sweep grid.
/// Thresholds: all two-scale gaps <= 5% and TV of the FD derivative <= 3x
/// its range. Explicitly labeled a numerical diagnostic, not a proof.
SmoothnessReport smoothness_report(const SweepTable& table);

} // namespace lsv
