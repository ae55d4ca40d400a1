#include "lsv/clt.hpp"
#include "lsv/rng.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lsv {

CltSample birkhoff_samples(const MapParams& p, const MarkerTable& markers,
                           const Observable& psi, std::size_t n, std::size_t M,
                           std::size_t burn_in, std::uint64_t seed, Which which) {
    if (n == 0 || M == 0)
        throw std::domain_error("lsv: birkhoff_samples needs n, M >= 1");
    CltSample out;
    out.alpha = p.alpha;
    out.n = n;
    out.seed = seed;
    out.which = which;
    out.values.reserve(M);

    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t t = 0; t < M; ++t) {
        auto gen = derived_stream(seed, t);
        double s = 0.0;
        if (which == Which::FullMap) {
            std::uniform_real_distribution<double> unif(0.0, 1.0);
            double x = unif(gen);
            for (std::size_t i = 0; i < burn_in; ++i) x = apply(p, x);
            for (std::size_t i = 0; i < n; ++i) {
                s += psi.value(x) - psi.center;
                x = apply(p, x);
            }
        } else {
            std::uniform_real_distribution<double> unif(0.5, 1.0);
            double x = unif(gen);
            if (x <= 0.5) x = std::nextafter(0.5, 1.0);
            for (std::size_t i = 0; i < burn_in; ++i) x = induced_apply(p, markers, x);
            for (std::size_t i = 0; i < n; ++i) {
                s += induced_observable(p, markers, psi, x);
                x = induced_apply(p, markers, x);
            }
        }
        out.values.push_back(s * inv_sqrt_n);
    }
    return out;
}

namespace {

inline double std_normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

} // namespace

KsResult ks_normal(const CltSample& sample, double sigma_sq) {
    if (!(sigma_sq > 0.0))
        throw std::domain_error("lsv: ks_normal needs sigma_sq > 0");
    const std::size_t m = sample.values.size();
    if (m == 0) throw std::domain_error("lsv: empty sample");

    std::vector<double> v = sample.values;
    std::sort(v.begin(), v.end());
    if (v.front() == v.back()) return {0.0, true};

    const double sigma = std::sqrt(sigma_sq);
    double d = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        double f = std_normal_cdf(v[i] / sigma);
        double lo = static_cast<double>(i) / static_cast<double>(m);
        double hi = static_cast<double>(i + 1) / static_cast<double>(m);
        d = std::max({d, std::abs(f - lo), std::abs(hi - f)});
    }
    return {d, false};
}

BatchMeans batch_means_variance(const MapParams& p, const Observable& psi,
                                std::size_t total_steps, std::size_t n_batches,
                                std::size_t burn_in, std::uint64_t seed) {
    if (n_batches < 3)
        throw std::domain_error("lsv: need at least 3 batches");
    if (total_steps / n_batches < 1000)
        throw std::domain_error("lsv: batch length must be >= 1000");
    const std::size_t blen = total_steps / n_batches;

    auto gen = derived_stream(seed, 0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double x = unif(gen);
    for (std::size_t i = 0; i < burn_in; ++i) x = apply(p, x);

    std::vector<double> bm(n_batches, 0.0);
    for (std::size_t b = 0; b < n_batches; ++b) {
        double s = 0.0;
        for (std::size_t i = 0; i < blen; ++i) {
            s += psi.value(x) - psi.center;
            x = apply(p, x);
        }
        bm[b] = s / static_cast<double>(blen);
    }

    double mean = 0.0;
    for (double v : bm) mean += v;
    mean /= static_cast<double>(n_batches);
    double var = 0.0;
    for (double v : bm) var += (v - mean) * (v - mean);
    var /= static_cast<double>(n_batches - 1);
    const double est = var * static_cast<double>(blen);

    // Jackknife over batches.
    std::vector<double> loo(n_batches);
    for (std::size_t j = 0; j < n_batches; ++j) {
        double mj = (mean * n_batches - bm[j]) / static_cast<double>(n_batches - 1);
        double vj = 0.0;
        for (std::size_t b = 0; b < n_batches; ++b) {
            if (b == j) continue;
            vj += (bm[b] - mj) * (bm[b] - mj);
        }
        vj /= static_cast<double>(n_batches - 2);
        loo[j] = vj * static_cast<double>(blen);
    }
    double lm = 0.0;
    for (double v : loo) lm += v;
    lm /= static_cast<double>(n_batches);
    double jv = 0.0;
    for (double v : loo) jv += (v - lm) * (v - lm);
    jv *= static_cast<double>(n_batches - 1) / static_cast<double>(n_batches);

    return {est, std::sqrt(jv)};
}

} // namespace lsv
