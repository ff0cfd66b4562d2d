#ifndef GESS_ESS_HPP
#define GESS_ESS_HPP

#include "gess/rng.hpp"
#include "gess/types.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace gess {

/// Raised when a slice update exceeds its proposal cap. The shrinking loop
/// terminates almost surely, so hitting the cap points at a broken
/// log-likelihood, not bad luck.
class NonTerminationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Record of one elliptical slice sampling update.
struct EssTrace {
    double accepted_theta = 0.0;   // in (-2*pi, 2*pi]
    int n_proposals = 0;
    int n_loglik_evals = 0;        // calls made inside the update
    Vector aux_point;              // the Gaussian draw defining the ellipse
    double log_threshold = 0.0;    // log L(x) + log u
    std::vector<double> thetas;    // every proposed angle, accepted one last
};

struct EssResult {
    Vector x_new;
    EssTrace trace;
    double log_l_new = 0.0;
};

struct EssOptions {
    std::int64_t max_proposals = 1'000'000;
};

/// Point on the ellipse through (x, aux) at angle theta:
///   x'(theta) = (x - mu) cos(theta) + (aux - mu) sin(theta) + mu.
Vector ellipse_point(const Vector& x, const Vector& aux, const Vector& mu, double theta);

/// One elliptical slice sampling update. Draws the auxiliary point from
/// N(mu, L L^T), sets the threshold from log_l(x), and returns the first
/// point on the ellipse whose log-likelihood beats it, shrinking the angle
/// bracket toward zero after each rejection.
///
/// Throws std::domain_error when log_l(x) is not finite and
/// NonTerminationError past opts.max_proposals.
EssResult ess_update(const Vector& x, const Vector& mu, const Matrix& sigma_chol,
                     const LogDensityFn& log_l, Rng& rng, const EssOptions& opts = {});

/// Overload for callers that already hold log_l(x) (the parallel engine keeps
/// per-chain caches); skips the threshold-setting evaluation.
EssResult ess_update(const Vector& x, double log_l_x, const Vector& mu,
                     const Matrix& sigma_chol, const LogDensityFn& log_l, Rng& rng,
                     const EssOptions& opts = {});

} // namespace gess

#endif
