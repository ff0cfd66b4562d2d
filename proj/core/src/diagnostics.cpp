#include "gess/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace gess {

namespace {

double series_mean(std::span<const double> s) {
    double m = 0.0;
    for (const double v : s) {
        m += v;
    }
    return m / static_cast<double>(s.size());
}

double series_var(std::span<const double> s, double mean) {
    double acc = 0.0;
    for (const double v : s) {
        acc += (v - mean) * (v - mean);
    }
    return acc / static_cast<double>(s.size() - 1);
}

} // namespace

double spectrum0_ar(std::span<const double> series, int max_order) {
    const auto n = static_cast<std::int64_t>(series.size());
    if (n < 10) {
        throw std::invalid_argument("spectrum0_ar: series too short");
    }
    const double mean = series_mean(series);
    const double var = series_var(series, mean);
    if (!(var > 0.0)) {
        return 0.0;
    }

    // Autocovariances of the z-scored series (biased, 1/N normalization).
    const int order_cap = static_cast<int>(std::min<std::int64_t>(max_order, n - 2));
    std::vector<double> acov(static_cast<std::size_t>(order_cap) + 1, 0.0);
    for (int lag = 0; lag <= order_cap; ++lag) {
        double acc = 0.0;
        for (std::int64_t i = lag; i < n; ++i) {
            acc += (series[static_cast<std::size_t>(i)] - mean) *
                   (series[static_cast<std::size_t>(i - lag)] - mean);
        }
        acov[static_cast<std::size_t>(lag)] = acc / (static_cast<double>(n) * var);
    }

    // Levinson-Durbin recursion; pick the AR order by AIC, then take the
    // innovation variance over the squared one-minus-coefficient-sum.
    std::vector<double> phi(static_cast<std::size_t>(order_cap) + 1, 0.0);
    std::vector<double> phi_prev(phi);
    double v = acov[0]; // = 1 after z-scoring
    double best_aic = static_cast<double>(n) * std::log(v);
    double best_spec = v; // order 0

    for (int p = 1; p <= order_cap; ++p) {
        double num = acov[static_cast<std::size_t>(p)];
        for (int j = 1; j < p; ++j) {
            num -= phi_prev[static_cast<std::size_t>(j)] *
                   acov[static_cast<std::size_t>(p - j)];
        }
        const double kappa = num / v;
        phi[static_cast<std::size_t>(p)] = kappa;
        for (int j = 1; j < p; ++j) {
            phi[static_cast<std::size_t>(j)] = phi_prev[static_cast<std::size_t>(j)] -
                kappa * phi_prev[static_cast<std::size_t>(p - j)];
        }
        v *= (1.0 - kappa * kappa);
        if (!(v > 0.0)) {
            break;
        }
        const double aic = static_cast<double>(n) * std::log(v) + 2.0 * p;
        if (aic < best_aic) {
            best_aic = aic;
            double sum = 0.0;
            for (int j = 1; j <= p; ++j) {
                sum += phi[static_cast<std::size_t>(j)];
            }
            const double denom = (1.0 - sum) * (1.0 - sum);
            // Small-sample correction on the innovation variance, as in the
            // reference spectral estimator.
            const double v_adj = v * static_cast<double>(n) /
                                 static_cast<double>(n - (p + 1));
            best_spec = v_adj / denom;
        }
        std::copy(phi.begin(), phi.end(), phi_prev.begin());
    }
    return best_spec;
}

EssEstimate effective_sample_size(std::span<const double> series) {
    if (series.size() < 100) {
        throw std::invalid_argument("effective_sample_size: need at least 100 points");
    }
    const double mean = series_mean(series);
    const double var = series_var(series, mean);
    if (!(var > 0.0)) {
        return {0.0, true};
    }
    const double spec0 = spectrum0_ar(series);
    if (!(spec0 > 0.0)) {
        return {0.0, true};
    }
    // spec0 is on the z-scored scale, so var/spec0 reduces to 1/spec0.
    return {static_cast<double>(series.size()) / spec0, false};
}

double geweke_z(std::span<const double> series, double first_frac, double last_frac) {
    if (!(first_frac > 0.0) || !(last_frac > 0.0) || first_frac + last_frac > 1.0) {
        throw std::invalid_argument("geweke_z: invalid segment fractions");
    }
    const auto n = static_cast<std::int64_t>(series.size());
    const auto n_first = static_cast<std::int64_t>(std::floor(first_frac * n));
    const auto n_last = static_cast<std::int64_t>(std::floor(last_frac * n));
    if (n_first < 10 || n_last < 10) {
        throw std::invalid_argument("geweke_z: segments too short");
    }
    const auto first = series.subspan(0, static_cast<std::size_t>(n_first));
    const auto last = series.subspan(static_cast<std::size_t>(n - n_last));

    const double mean_first = series_mean(first);
    const double mean_last = series_mean(last);
    const double var_first = series_var(first, mean_first);
    const double var_last = series_var(last, mean_last);

    // Spectral densities come back on each segment's z-scored scale; undo.
    const double s_first = spectrum0_ar(first) * var_first;
    const double s_last = spectrum0_ar(last) * var_last;
    const double denom = s_first / static_cast<double>(n_first) +
                         s_last / static_cast<double>(n_last);
    if (!(denom > 0.0)) {
        return 0.0;
    }
    return (mean_first - mean_last) / std::sqrt(denom);
}

std::vector<double> pooled_loglik_series(const RunResult& run) {
    const std::size_t n_rounds = run.kept_rounds.size();
    std::vector<double> pooled(n_rounds, 0.0);
    for (const auto& chain : run.loglik) {
        for (std::size_t j = 0; j < n_rounds; ++j) {
            pooled[j] += chain[j];
        }
    }
    return pooled;
}

MixingReport mixing_report_from_loglik(const std::vector<std::vector<double>>& loglik,
                                       std::int64_t n_evals, double wall_seconds,
                                       double geweke_threshold) {
    MixingReport report;
    report.geweke_threshold = geweke_threshold;
    report.n_evals = n_evals;
    report.wall_seconds = wall_seconds;
    report.n_chains = static_cast<std::int64_t>(loglik.size());
    report.n_kept_rounds = loglik.empty()
        ? 0
        : static_cast<std::int64_t>(loglik.front().size());

    std::vector<double> pooled(loglik.empty() ? 0 : loglik.front().size(), 0.0);
    for (const auto& chain : loglik) {
        for (std::size_t j = 0; j < pooled.size(); ++j) {
            pooled[j] += chain[j];
        }
    }
    const double nan = std::numeric_limits<double>::quiet_NaN();
    if (pooled.size() < 100) {
        report.ess_pooled = nan;
        report.effective_samples = nan;
        report.ess_per_second = nan;
        report.ess_per_eval = nan;
        report.geweke_z = nan;
        report.degenerate = true;
        return report;
    }

    const EssEstimate ess = effective_sample_size(pooled);
    report.degenerate = ess.degenerate;
    report.geweke_z = geweke_z(pooled);
    report.converged = !ess.degenerate && std::abs(report.geweke_z) < geweke_threshold;

    if (report.converged) {
        report.ess_pooled = ess.value;
        report.effective_samples = ess.value * static_cast<double>(report.n_chains);
        report.ess_per_second =
            report.wall_seconds > 0.0 ? report.effective_samples / report.wall_seconds : nan;
        report.ess_per_eval =
            report.n_evals > 0 ? report.effective_samples / static_cast<double>(report.n_evals)
                               : nan;
    } else {
        // Metrics are omitted when the convergence gate fails.
        report.ess_pooled = nan;
        report.effective_samples = nan;
        report.ess_per_second = nan;
        report.ess_per_eval = nan;
    }
    return report;
}

} // namespace gess
