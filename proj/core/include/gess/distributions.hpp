#ifndef GESS_DISTRIBUTIONS_HPP
#define GESS_DISTRIBUTIONS_HPP

#include "gess/linalg.hpp"
#include "gess/rng.hpp"
#include "gess/types.hpp"

namespace gess {

/// Normalized log N(x; mu, Sigma), computed through the triangular factor.
double log_mvn_pdf(const Vector& x, const Vector& mu, const SpdMatrix& sigma);

/// Normalized log T_nu(x; mu, Sigma).
double log_mvt_pdf(const Vector& x, const TApprox& t);

/// x = mu + L z with z iid standard normal. The factor may be scaled by the
/// caller (the GESS update passes sqrt(s) * chol(Sigma)).
Vector sample_mvn(const Vector& mu, const Matrix& sigma_chol, Rng& rng);

/// Marsaglia-Tsang gamma draw, shape alpha > 0, unit scale. Shapes below one
/// use the alpha+1 boost.
double sample_gamma(double alpha, Rng& rng);

/// Inverse gamma IG(alpha, beta), drawn as beta / Gamma(alpha, 1).
double sample_inverse_gamma(double alpha, double beta, Rng& rng);

/// Wishart(I_dim, dof) via the Bartlett decomposition. Requires dof >= dim.
SpdMatrix sample_wishart(int dim, int dof, Rng& rng);

/// Digamma function (shift-and-asymptotic-series evaluation).
double digamma(double x);

} // namespace gess

#endif
