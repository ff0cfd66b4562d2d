#include "gess/gess.hpp"

#include "gess/distributions.hpp"

#include <cmath>
#include <stdexcept>

namespace gess {

std::pair<double, double> ig_posterior_params(const Vector& x, const TApprox& t) {
    if (x.size() != t.dim()) {
        throw std::invalid_argument("ig_posterior_params: dimension mismatch");
    }
    const double d = static_cast<double>(t.dim());
    const double alpha_prime = 0.5 * (d + t.nu);
    const double beta_prime = 0.5 * (t.nu + t.sigma.quad_form(x - t.mu));
    return {alpha_prime, beta_prime};
}

GessResult gess_update(const Vector& x, const TApprox& t, const LogDensityFn& log_pi,
                       Rng& rng, std::optional<double> log_pi_x, const EssOptions& opts) {
    const auto [alpha_prime, beta_prime] = ig_posterior_params(x, t);
    const double s = sample_inverse_gamma(alpha_prime, beta_prime, rng);

    // Residual likelihood against the unscaled t approximation; built by
    // subtraction in log space so log L + log T == log pi bit-identically.
    double last_log_pi = 0.0;
    const LogDensityFn residual = [&](const Vector& z) {
        last_log_pi = log_pi(z);
        return last_log_pi - log_mvt_pdf(z, t);
    };

    const double log_pi_here = log_pi_x ? *log_pi_x : log_pi(x);
    const double residual_here = log_pi_here - log_mvt_pdf(x, t);

    // Ellipse covariance is s * Sigma; scale the stored factor rather than
    // refactorizing (a fresh s is drawn every update).
    const Matrix scaled_chol = std::sqrt(s) * t.sigma.chol();
    EssResult inner = ess_update(x, residual_here, t.mu, scaled_chol, residual, rng, opts);

    GessResult out;
    out.x_new = std::move(inner.x_new);
    out.trace = std::move(inner.trace);
    out.scale = GaussianScaleState{s, alpha_prime, beta_prime};
    out.log_pi_new = last_log_pi;
    if (!log_pi_x) {
        out.trace.n_loglik_evals += 1; // the entry evaluation of log pi
    }
    return out;
}

} // namespace gess
