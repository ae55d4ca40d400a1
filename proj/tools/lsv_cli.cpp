// Command-line front end for the LSV diffusion-coefficient library.
//
// Subcommands: density, kac, sigma, clt, bounds, sweep, tails.
// Each run writes one primary output file (CSV for tables, JSON for nested
// reports) plus a <output>.meta.json sidecar holding every setting, seed and
// the wall time, sufficient to reproduce the run.

#include "lsv/clt.hpp"
#include "lsv/errors.hpp"
#include "lsv/green_kubo.hpp"
#include "lsv/pullback.hpp"
#include "lsv/sweep.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

constexpr int kExitUsage = 2;
constexpr int kExitNoConvergence = 3;
constexpr int kExitTailOverflow = 4;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct CommonOpts {
    double alpha = 0.2;
    std::string obs = "x";
    std::string method = "operator";
    std::uint64_t seed = 0x5a17;
    std::string out;
    std::string format; // "csv" or "json"; defaulted per command
    lsv::GreenKuboSettings gk;
};

std::string default_out_dir() {
    const char* env = std::getenv("LSV_OUTPUT_DIR");
    return env ? std::string(env) : std::string(".");
}

std::string resolve_out(const std::string& out, const std::string& fallback) {
    if (!out.empty()) {
        if (out.find('/') != std::string::npos) return out;
        return default_out_dir() + "/" + out;
    }
    return default_out_dir() + "/" + fallback;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    f << text;
}

void write_sidecar(const std::string& out_path, const std::string& command,
                   const json& settings, double wall_s) {
    json meta;
    meta["command"] = command;
    meta["settings"] = settings;
    meta["library_version"] = kVersion;
    meta["wall_time_s"] = wall_s;
    meta["output"] = out_path;
    write_text(out_path + ".meta.json", meta.dump(2) + "\n");
}

json settings_json(const CommonOpts& o) {
    return json{{"alpha", o.alpha},
                {"obs", o.obs},
                {"method", o.method},
                {"seed", o.seed},
                {"n_branch", o.gk.n_branch},
                {"cells_l", o.gk.cells_l},
                {"marker_depth", o.gk.marker_depth},
                {"k_max", o.gk.k_max},
                {"abs_tol", o.gk.abs_tol},
                {"power_tol", o.gk.power_tol},
                {"power_max_iter", o.gk.power_max_iter},
                {"mc_samples", o.gk.mc_samples},
                {"mc_burn_in", o.gk.mc_burn_in},
                {"mc_batches", o.gk.mc_batches}};
}

json series_json(const lsv::CorrelationSeries& s) {
    json terms = json::array();
    for (const auto& t : s.terms) {
        json e{{"k", t.k}, {"value", t.value}};
        if (t.stderr_) e["stderr"] = *t.stderr_;
        terms.push_back(e);
    }
    return json{{"terms", terms},
                {"gap_theta_fit", s.gap_theta_fit},
                {"fit_r_squared", s.fit_r_squared},
                {"fit_ok", s.fit_ok},
                {"truncation_k", s.truncation_k},
                {"tail_bound", s.tail_bound},
                {"method", s.method == lsv::Method::Operator ? "operator" : "mc"}};
}

void add_common(CLI::App* cmd, CommonOpts& o, bool with_alpha = true) {
    cmd->fallthrough(); // top-level options (e.g. --config) work after the subcommand
    if (with_alpha)
        cmd->add_option("--alpha", o.alpha, "map parameter in [0, 1/2)")
            ->check(CLI::Range(0.0, 0.5).description("[0, 0.5)"));
    cmd->add_option("--obs", o.obs, "observable: x | cos2pi | x2 | const:<c>");
    cmd->add_option("--seed", o.seed, "master seed for Monte Carlo streams");
    cmd->add_option("--out", o.out, "output file (default into $LSV_OUTPUT_DIR)");
    cmd->add_option("--format", o.format, "csv | json (default per command)");
    cmd->add_option("--n-branch", o.gk.n_branch, "transfer-operator branch truncation");
    cmd->add_option("--cells", o.gk.cells_l, "mesh refinement per cylinder");
    cmd->add_option("--marker-depth", o.gk.marker_depth, "marker table depth");
    cmd->add_option("--k-max", o.gk.k_max, "correlation series cap");
    cmd->add_option("--mc-samples", o.gk.mc_samples, "Monte Carlo trajectories");
    cmd->add_option("--power-tol", o.gk.power_tol, "power-iteration tolerance");
}

lsv::Method parse_method(const std::string& m) {
    if (m == "operator") return lsv::Method::Operator;
    if (m == "mc") return lsv::Method::MonteCarlo;
    if (m == "both") return lsv::Method::Both;
    throw CLI::ValidationError("--method", "must be operator | mc | both");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"diffusion coefficient of the LSV intermittent map family"};
    app.require_subcommand(1);
    app.set_config("--config")->description("flat key = value configuration file");

    CommonOpts o;

    // --- density ---------------------------------------------------------
    auto* density = app.add_subcommand("density", "induced invariant density and Kac integral");
    add_common(density, o);
    density->callback([&] {
        auto t0 = std::chrono::steady_clock::now();
        lsv::MapParams p(o.alpha);
        lsv::MarkerTable markers(p, o.gk.marker_depth);
        lsv::InducedTransfer op(p, markers, o.gk.n_branch, o.gk.cells_l);
        auto rep = lsv::invariant_density_induced(op, o.gk.power_tol, o.gk.power_max_iter);

        json out{{"alpha", o.alpha},
                 {"kac", rep.kac},
                 {"nu_Y", rep.nu_Y},
                 {"residual", rep.residual},
                 {"iterations", rep.iterations},
                 {"mesh_deficit", rep.h.deficit},
                 {"mid", rep.h.mid},
                 {"h", rep.h.values}};
        std::string path = resolve_out(o.out, "density.json");
        write_text(path, out.dump(2) + "\n");
        double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        write_sidecar(path, "density", settings_json(o), wall);
        std::cout << "kac = " << fmt17(rep.kac) << "  nu_Y = " << fmt17(rep.nu_Y) << "\n";
    });

    // --- kac -------------------------------------------------------------
    auto* kac = app.add_subcommand("kac", "mean return time and Kac identity");
    add_common(kac, o);
    kac->callback([&] {
        auto t0 = std::chrono::steady_clock::now();
        lsv::MapParams p(o.alpha);
        lsv::MarkerTable markers(p, o.gk.marker_depth);
        lsv::InducedTransfer op(p, markers, o.gk.n_branch, o.gk.cells_l);
        auto rep = lsv::invariant_density_induced(op, o.gk.power_tol, o.gk.power_max_iter);

        json out{{"alpha", o.alpha}, {"kac", rep.kac}, {"nu_Y", rep.nu_Y},
                 {"residual", rep.residual}};
        std::string path = resolve_out(o.out, "kac.json");
        write_text(path, out.dump(2) + "\n");
        double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        write_sidecar(path, "kac", settings_json(o), wall);
        std::cout << "kac = " << fmt17(rep.kac) << "\n";
    });

    // --- sigma -----------------------------------------------------------
    auto* sigma = app.add_subcommand("sigma", "Green-Kubo diffusion coefficient");
    add_common(sigma, o);
    sigma->add_option("--method", o.method, "operator | mc | both");
    sigma->callback([&] {
        auto t0 = std::chrono::steady_clock::now();
        lsv::MapParams p(o.alpha);
        lsv::GreenKuboSettings gk = o.gk;
        gk.seed = o.seed;
        auto rep = lsv::sigma_sq(p, lsv::obs_by_name(o.obs), gk, parse_method(o.method));

        json out{{"alpha", rep.alpha},
                 {"sigma_sq", rep.sigma_sq},
                 {"sigma_tilde_sq", rep.sigma_tilde_sq},
                 {"kac", rep.kac},
                 {"error_bracket", rep.error_bracket},
                 {"series", series_json(rep.series)}};
        if (rep.method_agreement) out["method_agreement"] = *rep.method_agreement;
        std::string path = resolve_out(o.out, "sigma.json");
        write_text(path, out.dump(2) + "\n");
        double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        write_sidecar(path, "sigma", settings_json(o), wall);
        std::cout << "sigma_sq = " << fmt17(rep.sigma_sq) << "\n";
    });

    // --- clt -------------------------------------------------------------
    auto* clt = app.add_subcommand("clt", "CLT sampling and KS distance to normal");
    std::size_t clt_n = 10000, clt_m = 10000, clt_burn = 1000;
    std::string clt_which = "full";
    add_common(clt, o);
    clt->add_option("--n", clt_n, "horizon of each ergodic sum");
    clt->add_option("--M", clt_m, "number of trajectories");
    clt->add_option("--burn-in", clt_burn, "burn-in steps");
    clt->add_option("--which", clt_which, "full | induced");
    clt->callback([&] {
        auto t0 = std::chrono::steady_clock::now();
        lsv::MapParams p(o.alpha);
        lsv::GreenKuboSettings gk = o.gk;
        gk.seed = o.seed;
        auto rep = lsv::sigma_sq(p, lsv::obs_by_name(o.obs), gk, lsv::Method::Operator);

        lsv::MarkerTable markers(p, o.gk.marker_depth);
        lsv::MapParams pc(o.alpha);
        lsv::InducedTransfer op(pc, markers, gk.n_branch, gk.cells_l);
        auto density = lsv::invariant_density_induced(op, gk.power_tol, gk.power_max_iter);
        auto psi = lsv::center_observable(pc, markers, lsv::obs_by_name(o.obs), density);

        auto which = clt_which == "induced" ? lsv::Which::InducedMap : lsv::Which::FullMap;
        auto sample = lsv::birkhoff_samples(p, markers, psi, clt_n, clt_m, clt_burn, o.seed, which);
        double target = which == lsv::Which::InducedMap ? rep.sigma_tilde_sq : rep.sigma_sq;
        auto ks = lsv::ks_normal(sample, target);

        double sv = 0.0, mean = 0.0;
        for (double v : sample.values) mean += v;
        mean /= static_cast<double>(sample.values.size());
        for (double v : sample.values) sv += (v - mean) * (v - mean);
        sv /= static_cast<double>(sample.values.size() - 1);

        json out{{"alpha", o.alpha},        {"n", clt_n},
                 {"M", clt_m},              {"which", clt_which},
                 {"sigma_sq_target", target}, {"ks_distance", ks.distance},
                 {"degenerate", ks.degenerate}, {"sample_variance", sv}};
        std::string path = resolve_out(o.out, "clt.json");
        write_text(path, out.dump(2) + "\n");
        double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        json st = settings_json(o);
        st["n"] = clt_n; st["M"] = clt_m; st["burn_in"] = clt_burn; st["which"] = clt_which;
        write_sidecar(path, "clt", st, wall);
        std::cout << "ks_distance = " << fmt17(ks.distance) << "\n";
    });

    // --- bounds ----------------------------------------------------------
    auto* bounds = app.add_subcommand("bounds", "scaled sup-checks of the pullback bounds");
    std::size_t b_nmin = 10, b_nmax = 10000, b_zsamples = 32;
    add_common(bounds, o);
    bounds->add_option("--n-min", b_nmin);
    bounds->add_option("--n-max", b_nmax);
    bounds->add_option("--z-samples", b_zsamples);
    bounds->callback([&] {
        auto t0 = std::chrono::steady_clock::now();
        lsv::MapParams p(o.alpha);
        std::vector<double> zs(b_zsamples);
        for (std::size_t i = 0; i < b_zsamples; ++i)
            zs[i] = 0.5 + (static_cast<double>(i) + 1.0) / (2.0 * static_cast<double>(b_zsamples));

        json out{{"alpha", o.alpha}, {"n_min", b_nmin}, {"n_max", b_nmax}};
        const std::pair<lsv::LemmaBound, const char*> checks[] = {
            {lsv::LemmaBound::K0, "K0"}, {lsv::LemmaBound::K1, "K1"},
            {lsv::LemmaBound::K4, "K4"}, {lsv::LemmaBound::K6, "K6"}};
        for (auto [which, name] : checks) {
            if (o.alpha == 0.0 && which != lsv::LemmaBound::K0) continue;
            auto rep = lsv::lemma_bound_check(p, which, b_nmin, b_nmax, zs);
            out[name] = {{"sup_scaled", rep.sup_scaled},
                         {"argmax_n", rep.argmax_n},
                         {"argmax_z", rep.argmax_z}};
        }
        std::string path = resolve_out(o.out, "bounds.json");
        write_text(path, out.dump(2) + "\n");
        double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        write_sidecar(path, "bounds", settings_json(o), wall);
        std::cout << "bounds written to " << path << "\n";
    });

    // --- tails -----------------------------------------------------------
    auto* tails = app.add_subcommand("tails", "cylinder measures and tail-exponent fit");
    std::size_t t_rmin = 50, t_rmax = 2000;
    add_common(tails, o);
    tails->add_option("--r-min", t_rmin);
    tails->add_option("--r-max", t_rmax);
    tails->callback([&] {
        auto t0 = std::chrono::steady_clock::now();
        lsv::MapParams p(o.alpha);
        lsv::MarkerTable markers(p, std::max(o.gk.marker_depth, t_rmax + 1));
        auto fit = lsv::tail_exponent_fit(markers, t_rmin, t_rmax);

        std::string csv = "r,m_I_r\n";
        for (std::size_t r = t_rmin; r <= t_rmax; ++r)
            csv += std::to_string(r) + "," + fmt17(markers.interval_length(r)) + "\n";
        std::string path = resolve_out(o.out, "tails.csv");
        write_text(path, csv);
        double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        json st = settings_json(o);
        st["r_min"] = t_rmin;
        st["r_max"] = t_rmax;
        st["fit"] = {{"slope", fit.slope}, {"intercept", fit.intercept},
                     {"r_squared", fit.r_squared}};
        write_sidecar(path, "tails", st, wall);
        std::cout << "slope = " << fmt17(fit.slope) << "\n";
    });

    // --- sweep -----------------------------------------------------------
    auto* sweep = app.add_subcommand("sweep", "alpha sweep of the diffusion coefficient");
    double s_amin = 0.05, s_amax = 0.45;
    std::size_t s_points = 21;
    add_common(sweep, o, /*with_alpha=*/false);
    sweep->add_option("--alpha-min", s_amin);
    sweep->add_option("--alpha-max", s_amax);
    sweep->add_option("--points", s_points);
    sweep->callback([&] {
        auto t0 = std::chrono::steady_clock::now();
        if (!(s_amin > 0.0 && s_amax < 0.5 && s_amin < s_amax) || s_points < 2)
            throw CLI::ValidationError("sweep", "need 0 < alpha-min < alpha-max < 0.5");
        std::vector<double> grid(s_points);
        for (std::size_t i = 0; i < s_points; ++i)
            grid[i] = s_amin + (s_amax - s_amin) * static_cast<double>(i) /
                                   static_cast<double>(s_points - 1);
        auto table = lsv::sweep_sigma(grid, lsv::obs_by_name(o.obs), o.gk);

        std::string csv = "alpha,sigma_sq,sigma_tilde_sq,kac,drift,error_bracket,valid\n";
        for (const auto& r : table.rows) {
            csv += fmt17(r.alpha) + "," + fmt17(r.sigma_sq) + "," + fmt17(r.sigma_tilde_sq) +
                   "," + fmt17(r.kac) + "," + fmt17(r.drift) + "," + fmt17(r.error_bracket) +
                   "," + (r.valid ? "1" : "0") + "\n";
        }
        std::string path = resolve_out(o.out, "sweep.csv");
        write_text(path, csv);

        json st = settings_json(o);
        st["alpha_min"] = s_amin;
        st["alpha_max"] = s_amax;
        st["points"] = s_points;
        if (s_points >= 5) {
            auto rep = lsv::smoothness_report(table);
            st["smoothness"] = {{"label", rep.label},
                                {"pass", rep.pass},
                                {"max_two_scale_gap", rep.max_two_scale_gap},
                                {"value_modulus", rep.value_modulus},
                                {"derivative_modulus", rep.derivative_modulus},
                                {"derivative_total_variation", rep.derivative_total_variation},
                                {"derivative_range", rep.derivative_range}};
        }
        double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        write_sidecar(path, "sweep", st, wall);
        std::cout << "sweep written to " << path << "\n";
    });

    try {
        app.parse(argc, argv);
        return 0;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    } catch (const lsv::TailOverflow& e) {
        std::cerr << "tail overflow: " << e.what() << "\n";
        return kExitTailOverflow;
    } catch (const lsv::ConvergenceFailure& e) {
        std::cerr << "no convergence: " << e.what() << "\n";
        return kExitNoConvergence;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
