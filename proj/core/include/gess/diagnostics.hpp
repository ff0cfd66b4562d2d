#ifndef GESS_DIAGNOSTICS_HPP
#define GESS_DIAGNOSTICS_HPP

#include "gess/engine.hpp"

#include <span>
#include <vector>

namespace gess {

struct EssEstimate {
    double value = 0.0;
    bool degenerate = false; // constant input
};

/// Spectral density at frequency zero of the (z-scored) series, estimated by
/// an AR model with the order chosen by AIC up to max_order. Returned on the
/// z-scored scale; multiply by the series variance to undo.
double spectrum0_ar(std::span<const double> series, int max_order = 20);

/// Effective sample size N * var / spec0 with the AR spectral estimator.
/// Requires at least 100 points; a constant series yields 0 with the
/// degenerate flag set.
EssEstimate effective_sample_size(std::span<const double> series);

/// Geweke convergence z-score between the first and last fractions of the
/// series, each segment's variance taken from its spectral density at zero.
double geweke_z(std::span<const double> series, double first_frac = 0.1,
                double last_frac = 0.5);

struct MixingReport {
    double ess_pooled = 0.0;        // ESS of the pooled log-likelihood series
    double effective_samples = 0.0; // n_chains * ess_pooled
    double ess_per_second = 0.0;
    double ess_per_eval = 0.0;
    double geweke_z = 0.0;
    bool converged = false;
    bool degenerate = false;
    std::int64_t n_evals = 0;
    double wall_seconds = 0.0;
    std::int64_t n_chains = 0;
    std::int64_t n_kept_rounds = 0;

    double geweke_threshold = 2.0;
};

/// Pooled product-distribution log-likelihood series: per kept round, the sum
/// of log pi over every chain of both groups.
std::vector<double> pooled_loglik_series(const RunResult& run);

/// Mixing metrics from per-chain log-density traces plus cost totals: ESS of
/// the pooled series scaled by chain count, normalized per second and per
/// density evaluation, gated by the Geweke diagnostic. The normalized metrics
/// are NaN when the gate fails.
MixingReport mixing_report_from_loglik(const std::vector<std::vector<double>>& loglik,
                                       std::int64_t n_evals, double wall_seconds,
                                       double geweke_threshold = 2.0);

MixingReport mixing_report(const RunResult& run, double geweke_threshold = 2.0);

} // namespace gess

#endif
