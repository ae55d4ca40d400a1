#include "lsv/sweep.hpp"
#include "lsv/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace lsv {

std::vector<double> SweepTable::column(const std::string& name) const {
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) {
        if (name == "sigma_sq") out.push_back(r.sigma_sq);
        else if (name == "sigma_tilde_sq") out.push_back(r.sigma_tilde_sq);
        else if (name == "kac") out.push_back(r.kac);
        else if (name == "drift") out.push_back(r.drift);
        else if (name == "alpha") out.push_back(r.alpha);
        else throw std::invalid_argument("lsv: unknown sweep column '" + name + "'");
    }
    return out;
}

SweepTable sweep_sigma(std::span<const double> alphas, const Observable& psi,
                       const GreenKuboSettings& settings) {
    SweepTable table;
    table.rows.reserve(alphas.size());
    for (double a : alphas) {
        SweepRow row;
        row.alpha = a;
        try {
            MapParams p(a, 1e-14, 100);
            MarkerTable markers(p, settings.marker_depth);
            InducedTransfer op(p, markers, settings.n_branch, settings.cells_l);
            DensityReport density =
                invariant_density_induced(op, settings.power_tol, settings.power_max_iter);
            VarianceReport rep =
                sigma_sq_with(p, markers, op, density, psi, settings, Method::Operator);
            row.sigma_sq = rep.sigma_sq;
            row.sigma_tilde_sq = rep.sigma_tilde_sq;
            row.kac = rep.kac;
            row.error_bracket = rep.error_bracket;
            row.drift = drift_coefficient(p, markers, density, psi);
            row.valid = true;
        } catch (const std::exception& e) {
            row.valid = false;
            row.error = e.what();
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

std::vector<FdPoint> fd_derivative(const SweepTable& table, const std::string& column) {
    const auto& rows = table.rows;
    if (rows.size() < 5)
        throw std::domain_error("lsv: fd_derivative needs >= 5 grid points");
    const double h = rows[1].alpha - rows[0].alpha;
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (std::abs((rows[i].alpha - rows[i - 1].alpha) - h) > 1e-9 * std::abs(h))
            throw std::domain_error("lsv: fd_derivative needs a uniform grid");

    std::vector<double> v = table.column(column);
    std::vector<FdPoint> out;
    constexpr double eps = 1e-12;
    for (std::size_t i = 2; i + 2 < v.size(); ++i) {
        FdPoint pt;
        pt.alpha = rows[i].alpha;
        pt.slope = (v[i + 1] - v[i - 1]) / (2.0 * h);
        double slope2 = (v[i + 2] - v[i - 2]) / (4.0 * h);
        pt.two_scale_gap = std::abs(pt.slope - slope2) / std::max(std::abs(pt.slope), eps);
        out.push_back(pt);
    }
    return out;
}

SmoothnessReport smoothness_report(const SweepTable& table) {
    SmoothnessReport rep;
    rep.label = "numerical diagnostic consistent with C1, not a proof";
    rep.derivative = fd_derivative(table, "sigma_sq");

    std::vector<double> v = table.column("sigma_sq");
    for (std::size_t i = 1; i < v.size(); ++i)
        rep.value_modulus = std::max(rep.value_modulus, std::abs(v[i] - v[i - 1]));

    double dmin = rep.derivative.front().slope, dmax = dmin;
    for (const auto& pt : rep.derivative) {
        rep.max_two_scale_gap = std::max(rep.max_two_scale_gap, pt.two_scale_gap);
        dmin = std::min(dmin, pt.slope);
        dmax = std::max(dmax, pt.slope);
    }
    for (std::size_t i = 1; i < rep.derivative.size(); ++i) {
        double step = std::abs(rep.derivative[i].slope - rep.derivative[i - 1].slope);
        rep.derivative_modulus = std::max(rep.derivative_modulus, step);
        rep.derivative_total_variation += step;
    }
    rep.derivative_range = dmax - dmin;

    const bool gaps_ok = rep.max_two_scale_gap <= 0.05;
    const bool tv_ok =
        rep.derivative_total_variation <= 3.0 * std::max(rep.derivative_range, 1e-12);
    rep.pass = gaps_ok && tv_ok;
    return rep;
}

} // namespace lsv
