#include "gess/baselines.hpp"

#include "gess/ess.hpp" // NonTerminationError
#include "gess/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace gess {

BaselineResult slice_update(const Vector& x, const Vector& direction, const LogDensityFn& log_pi,
                            Rng& rng, const SliceOptions& opts,
                            std::optional<double> log_pi_x) {
    int n_evals = 0;
    double lp_x;
    if (log_pi_x) {
        lp_x = *log_pi_x;
    } else {
        lp_x = log_pi(x);
        ++n_evals;
    }
    if (!std::isfinite(lp_x)) {
        throw std::domain_error("slice_update: log density at the current state is not finite");
    }
    if (std::abs(direction.norm() - 1.0) > 1e-9) {
        throw std::invalid_argument("slice_update: direction must be unit length");
    }

    const double threshold = lp_x + std::log(rng.uniform01());
    const double w = opts.width;

    // Place the initial interval uniformly around t = 0, then step out.
    const double r = rng.uniform(0.0, 1.0);
    double t_lo = -r * w;
    double t_hi = t_lo + w;

    auto lp_at = [&](double t) {
        ++n_evals;
        return log_pi(x + t * direction);
    };

    // Split the expansion budget randomly between the two sides; keeps the
    // capped interval reversible.
    int budget_lo = static_cast<int>(std::floor(
        rng.uniform(0.0, 1.0) * (opts.max_expansions + 1)));
    int budget_hi = opts.max_expansions - budget_lo;
    while (budget_lo > 0 && lp_at(t_lo) > threshold) {
        t_lo -= w;
        --budget_lo;
    }
    while (budget_hi > 0 && lp_at(t_hi) > threshold) {
        t_hi += w;
        --budget_hi;
    }

    std::int64_t proposals = 0;
    for (;;) {
        if (++proposals > opts.max_proposals) {
            throw NonTerminationError("slice_update: proposal cap exceeded");
        }
        const double t = rng.uniform(t_lo, t_hi);
        const double lp = lp_at(t);
        if (lp > threshold) {
            BaselineResult out;
            out.x_new = x + t * direction;
            out.log_pi_new = lp;
            out.n_evals = n_evals;
            return out;
        }
        if (t < 0.0) {
            t_lo = t;
        } else {
            t_hi = t;
        }
    }
}

BaselineResult rdss_update(const Vector& x, const LogDensityFn& log_pi, Rng& rng,
                           const SliceOptions& opts, std::optional<double> log_pi_x) {
    Vector direction(x.size());
    double norm2 = 0.0;
    do {
        for (Eigen::Index i = 0; i < direction.size(); ++i) {
            direction(i) = rng.normal();
        }
        norm2 = direction.squaredNorm();
    } while (!(norm2 > 0.0));
    direction /= std::sqrt(norm2);
    return slice_update(x, direction, log_pi, rng, opts, log_pi_x);
}

BaselineResult cwss_update(const Vector& x, const LogDensityFn& log_pi, Rng& rng,
                           const SliceOptions& opts, std::optional<double> log_pi_x) {
    const auto dim = static_cast<std::uint64_t>(x.size());
    const auto axis = static_cast<Eigen::Index>(rng.next_u64() % dim);
    Vector direction = Vector::Zero(x.size());
    direction(axis) = 1.0;
    return slice_update(x, direction, log_pi, rng, opts, log_pi_x);
}

void StepSizeTuner::observe(bool accepted) {
    if (frozen_) {
        return;
    }
    ++n_observed_;
    const double rate = 1.0 / std::sqrt(static_cast<double>(n_observed_));
    log_step_ += rate * ((accepted ? 1.0 : 0.0) - target_accept_);
}

BaselineResult mh_update(const Vector& x, const LogDensityFn& log_pi, Rng& rng, double step,
                         std::optional<double> log_pi_x) {
    int n_evals = 0;
    double lp_x;
    if (log_pi_x) {
        lp_x = *log_pi_x;
    } else {
        lp_x = log_pi(x);
        ++n_evals;
    }
    if (!std::isfinite(lp_x)) {
        throw std::domain_error("mh_update: log density at the current state is not finite");
    }
    Vector proposal(x.size());
    for (Eigen::Index i = 0; i < proposal.size(); ++i) {
        proposal(i) = x(i) + step * rng.normal();
    }
    const double lp_prop = log_pi(proposal);
    ++n_evals;

    BaselineResult out;
    out.n_evals = n_evals;
    if (std::log(rng.uniform01()) < lp_prop - lp_x) {
        out.x_new = std::move(proposal);
        out.log_pi_new = lp_prop;
        out.accepted = true;
    } else {
        out.x_new = x;
        out.log_pi_new = lp_x;
        out.accepted = false;
    }
    return out;
}

AmhHistory::AmhHistory(int dim)
    : mean_(Vector::Zero(dim)), m2_(Matrix::Zero(dim, dim)) {}

void AmhHistory::push(const Vector& x) {
    ++n_;
    const Vector delta = x - mean_;
    mean_ += delta / static_cast<double>(n_);
    m2_ += delta * (x - mean_).transpose();
}

Matrix AmhHistory::covariance() const {
    if (n_ < 2) {
        return Matrix::Zero(mean_.size(), mean_.size());
    }
    // m2_ accumulates delta * delta'^T which is asymmetric per term;
    // symmetrize on the way out.
    Matrix cov = m2_ / static_cast<double>(n_ - 1);
    return 0.5 * (cov + cov.transpose());
}

BaselineResult amh_update(const Vector& x, AmhHistory& history, const LogDensityFn& log_pi,
                          Rng& rng, const AmhOptions& opts, std::optional<double> log_pi_x) {
    const auto dim = static_cast<double>(x.size());
    int n_evals = 0;
    double lp_x;
    if (log_pi_x) {
        lp_x = *log_pi_x;
    } else {
        lp_x = log_pi(x);
        ++n_evals;
    }
    if (!std::isfinite(lp_x)) {
        throw std::domain_error("amh_update: log density at the current state is not finite");
    }

    const bool adapted_ready = history.count() > x.size();
    const bool use_adapted = adapted_ready && rng.uniform01() >= opts.beta;

    Vector proposal(x.size());
    if (use_adapted) {
        Matrix scaled = (2.38 * 2.38 / dim) * history.covariance();
        scaled.diagonal().array() += opts.epsilon;
        const SpdMatrix prop_cov(scaled);
        Vector z(x.size());
        for (Eigen::Index i = 0; i < z.size(); ++i) {
            z(i) = rng.normal();
        }
        proposal = x + prop_cov.chol().triangularView<Eigen::Lower>() * z;
    } else {
        const double scale = opts.spherical_scale / std::sqrt(dim);
        for (Eigen::Index i = 0; i < proposal.size(); ++i) {
            proposal(i) = x(i) + scale * rng.normal();
        }
    }

    const double lp_prop = log_pi(proposal);
    ++n_evals;

    BaselineResult out;
    out.n_evals = n_evals;
    if (std::log(rng.uniform01()) < lp_prop - lp_x) {
        out.x_new = std::move(proposal);
        out.log_pi_new = lp_prop;
        out.accepted = true;
    } else {
        out.x_new = x;
        out.log_pi_new = lp_x;
        out.accepted = false;
    }
    if (!history.frozen()) {
        history.push(out.x_new);
    }
    return out;
}

TemperatureLadder TemperatureLadder::geometric(int n_rungs, double t_max, int swap_interval) {
    if (n_rungs < 1) {
        throw std::invalid_argument("TemperatureLadder: need at least one rung");
    }
    if (n_rungs > 1 && !(t_max > 1.0)) {
        throw std::invalid_argument("TemperatureLadder: t_max must exceed 1");
    }
    TemperatureLadder ladder;
    ladder.swap_interval = swap_interval;
    ladder.temperatures.resize(static_cast<std::size_t>(n_rungs));
    ladder.temperatures[0] = 1.0;
    for (int k = 1; k < n_rungs; ++k) {
        ladder.temperatures[static_cast<std::size_t>(k)] =
            std::pow(t_max, static_cast<double>(k) / static_cast<double>(n_rungs - 1));
    }
    return ladder;
}

PtStepStats pt_step(PtEnsemble& ensemble, const TemperatureLadder& ladder,
                    const InnerUpdateFn& inner_update, const LogDensityFn& log_pi,
                    Rng& swap_rng, std::int64_t round_index) {
    const std::size_t n_rungs = ladder.temperatures.size();
    if (ensemble.states.size() != n_rungs || ensemble.rngs.size() != n_rungs ||
        ensemble.loglik.size() != n_rungs) {
        throw std::invalid_argument("pt_step: ensemble/ladder size mismatch");
    }

    PtStepStats stats;
    for (std::size_t k = 0; k < n_rungs; ++k) {
        const double t = ladder.temperatures[k];
        const double inv_t = 1.0 / t;
        const LogDensityFn tempered = [&](const Vector& z) { return log_pi(z) * inv_t; };
        BaselineResult r = inner_update(ensemble.states[k], tempered, ensemble.rngs[k],
                                        ensemble.loglik[k] * inv_t);
        ensemble.states[k] = std::move(r.x_new);
        ensemble.loglik[k] = r.log_pi_new * t; // back to the untempered scale
        stats.n_evals += r.n_evals;
    }

    if (ladder.swap_interval > 0 && (round_index + 1) % ladder.swap_interval == 0) {
        for (std::size_t k = 0; k + 1 < n_rungs; ++k) {
            const double inv_t_low = 1.0 / ladder.temperatures[k];
            const double inv_t_high = 1.0 / ladder.temperatures[k + 1];
            // Swap x_k <-> x_{k+1}: accept with
            // [pi(x_{k+1}) / pi(x_k)]^(1/t_k - 1/t_{k+1}).
            const double log_ratio =
                (ensemble.loglik[k + 1] - ensemble.loglik[k]) * (inv_t_low - inv_t_high);
            ++stats.swaps_proposed;
            if (std::log(swap_rng.uniform01()) < log_ratio) {
                std::swap(ensemble.states[k], ensemble.states[k + 1]);
                std::swap(ensemble.loglik[k], ensemble.loglik[k + 1]);
                ++stats.swaps_accepted;
            }
        }
    }
    return stats;
}

} // namespace gess
