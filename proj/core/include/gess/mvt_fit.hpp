#ifndef GESS_MVT_FIT_HPP
#define GESS_MVT_FIT_HPP

#include "gess/linalg.hpp"
#include "gess/types.hpp"

#include <stdexcept>
#include <vector>

namespace gess {

class FitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct FitOptions {
    double tol = 1e-4;   // stop when |nu_t - nu_{t-1}| < tol
    int max_iter = 200;
};

struct FitReport {
    TApprox result;
    int n_iterations = 0;
    double final_nu_delta = 0.0;
    std::vector<double> loglik_trace;
    bool regularized = false;
    int projection_dim = 0;       // 0 when unregularized
    bool converged = false;
    bool nu_clamped = false;      // nu-equation root sat at a bracket edge
    bool spherical_fallback = false;
};

/// Maximum-likelihood multivariate-t fit by EM: distance/weight passes under
/// the current parameters, weighted mean and covariance updates, then a
/// degrees-of-freedom update solving the profile score equation by bisection
/// on log(nu). Requires at least max(2, 2*dim) points of equal dimension.
FitReport fit_mvt(const std::vector<Vector>& points, const FitOptions& opts = {});

/// PCA-regularized fit for small populations: center, project onto the top
/// J = floor(K/2) principal directions, fit there, and lift back with an
/// epsilon * I diagonal pad (epsilon = median diagonal of the projected
/// covariance). Requires K >= 4.
FitReport fit_mvt_regularized(const std::vector<Vector>& points, const FitOptions& opts = {});

/// Spherical fallback when a population is too small for either fitter:
/// nu = nu_max, mu = point mean, Sigma = I * mean squared coordinate
/// deviation (1.0 when that is zero or undefined).
FitReport spherical_fallback_fit(const std::vector<Vector>& points);

/// Dispatch: K >= 2D -> fit_mvt, 4 <= K < 2D -> fit_mvt_regularized,
/// otherwise the spherical fallback. Errors on an empty input.
FitReport select_fit(const std::vector<Vector>& points, const FitOptions& opts = {});

} // namespace gess

#endif
