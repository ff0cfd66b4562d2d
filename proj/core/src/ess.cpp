#include "gess/ess.hpp"

#include "gess/distributions.hpp"

#include <cmath>
#include <numbers>

namespace gess {

Vector ellipse_point(const Vector& x, const Vector& aux, const Vector& mu, double theta) {
    return (x - mu) * std::cos(theta) + (aux - mu) * std::sin(theta) + mu;
}

EssResult ess_update(const Vector& x, const Vector& mu, const Matrix& sigma_chol,
                     const LogDensityFn& log_l, Rng& rng, const EssOptions& opts) {
    const double log_l_x = log_l(x);
    EssResult out = ess_update(x, log_l_x, mu, sigma_chol, log_l, rng, opts);
    out.trace.n_loglik_evals += 1; // the threshold-setting evaluation
    return out;
}

EssResult ess_update(const Vector& x, double log_l_x, const Vector& mu,
                     const Matrix& sigma_chol, const LogDensityFn& log_l, Rng& rng,
                     const EssOptions& opts) {
    constexpr double tau = 2.0 * std::numbers::pi;
    if (!std::isfinite(log_l_x)) {
        throw std::domain_error("ess_update: log-likelihood at the current state is not finite");
    }

    EssResult out;
    out.trace.aux_point = sample_mvn(mu, sigma_chol, rng);
    out.trace.log_threshold = log_l_x + std::log(rng.uniform01());

    double theta = rng.uniform(0.0, tau);
    double theta_min = theta - tau;
    double theta_max = theta;

    for (;;) {
        out.trace.thetas.push_back(theta);
        ++out.trace.n_proposals;
        ++out.trace.n_loglik_evals;
        Vector proposal = ellipse_point(x, out.trace.aux_point, mu, theta);
        const double log_l_prop = log_l(proposal);
        if (log_l_prop > out.trace.log_threshold) {
            out.trace.accepted_theta = theta;
            out.x_new = std::move(proposal);
            out.log_l_new = log_l_prop;
            return out;
        }
        if (out.trace.n_proposals >= opts.max_proposals) {
            throw NonTerminationError("ess_update: proposal cap exceeded");
        }
        if (theta < 0.0) {
            theta_min = theta;
        } else {
            theta_max = theta;
        }
        theta = rng.uniform(theta_min, theta_max);
    }
}

} // namespace gess
