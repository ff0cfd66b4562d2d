#ifndef GESS_LINALG_HPP
#define GESS_LINALG_HPP

#include "gess/types.hpp"

namespace gess {

/// Symmetric positive-definite matrix that carries its lower Cholesky factor.
///
/// Quadratic forms and log-determinants go through the triangular factor;
/// nothing here forms an explicit inverse. Construction throws
/// std::invalid_argument on an asymmetric input and std::runtime_error when
/// factorization fails even after one diagonal-jitter retry.
class SpdMatrix {
public:
    explicit SpdMatrix(const Matrix& m);

    /// Wraps an already-computed lower-triangular factor L, with entries LL^T.
    static SpdMatrix from_factor(const Matrix& chol_lower);

    int dim() const { return static_cast<int>(entries_.rows()); }
    const Matrix& matrix() const { return entries_; }
    const Matrix& chol() const { return chol_; }

    /// (x - mu)^T Sigma^-1 (x - mu) via one triangular solve.
    double quad_form(const Vector& centered) const;

    /// log det Sigma = 2 sum log L_ii.
    double log_det() const;

    double trace() const { return entries_.trace(); }

private:
    SpdMatrix() = default;

    Matrix entries_;
    Matrix chol_; // lower triangular
};

/// Multivariate-t parameters (nu, mu, Sigma): the GESS approximation.
struct TApprox {
    double nu = 0.0;
    Vector mu;
    SpdMatrix sigma;

    TApprox(double nu_, Vector mu_, SpdMatrix sigma_);

    int dim() const { return sigma.dim(); }

    static constexpr double nu_min = 0.5;
    static constexpr double nu_max = 1e6;
};

/// Inverse-gamma scale state drawn inside one generalized-ESS update.
struct GaussianScaleState {
    double s = 0.0;
    double alpha_prime = 0.0;
    double beta_prime = 0.0;
};

} // namespace gess

#endif
