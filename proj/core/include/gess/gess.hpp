#ifndef GESS_GESS_HPP
#define GESS_GESS_HPP

#include "gess/ess.hpp"
#include "gess/linalg.hpp"
#include "gess/rng.hpp"
#include "gess/types.hpp"

#include <optional>

namespace gess {

/// Inverse-gamma posterior parameters of the auxiliary scale given x:
///   alpha' = (D + nu) / 2,   beta' = (nu + (x-mu)^T Sigma^-1 (x-mu)) / 2.
std::pair<double, double> ig_posterior_params(const Vector& x, const TApprox& t);

struct GessResult {
    Vector x_new;
    EssTrace trace;
    GaussianScaleState scale;
    double log_pi_new = 0.0; // target log-density at x_new
};

/// One generalized elliptical slice sampling update S(x -> x'; nu, mu, Sigma):
/// draw s ~ IG(alpha', beta'), form the residual log L = log pi - log T, and
/// run an elliptical slice update with mean mu and covariance s * Sigma. The
/// composite operator leaves pi stationary for any valid TApprox.
///
/// log_pi_x, when provided, must equal log_pi(x); the parallel engine passes
/// its per-chain cache so the threshold costs no extra density evaluation.
GessResult gess_update(const Vector& x, const TApprox& t, const LogDensityFn& log_pi,
                       Rng& rng, std::optional<double> log_pi_x = std::nullopt,
                       const EssOptions& opts = {});

} // namespace gess

#endif
