#include "gess/linalg.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace gess {

namespace {

bool try_factorize(const Matrix& m, Matrix& chol_out) {
    Eigen::LLT<Matrix> llt(m);
    if (llt.info() != Eigen::Success) {
        return false;
    }
    chol_out = llt.matrixL();
    // LLT can report success on borderline inputs; insist on positive pivots.
    for (int i = 0; i < chol_out.rows(); ++i) {
        if (!(chol_out(i, i) > 0.0) || !std::isfinite(chol_out(i, i))) {
            return false;
        }
    }
    return true;
}

} // namespace

SpdMatrix::SpdMatrix(const Matrix& m) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw std::invalid_argument("SpdMatrix: matrix must be square and non-empty");
    }
    const double scale = m.cwiseAbs().maxCoeff();
    const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
    if (scale > 0.0 && asym > 1e-12 * scale) {
        throw std::invalid_argument("SpdMatrix: matrix is not symmetric");
    }
    // Work with the symmetrized matrix so the stored entries match the factor.
    entries_ = 0.5 * (m + m.transpose());
    if (!try_factorize(entries_, chol_)) {
        // One retry with diagonal jitter; fitted covariances from
        // near-degenerate populations can be numerically indefinite.
        const double jitter = 1e-9 * entries_.diagonal().mean();
        Matrix jittered = entries_;
        jittered.diagonal().array() += jitter;
        if (!(jitter > 0.0) || !try_factorize(jittered, chol_)) {
            throw std::runtime_error("SpdMatrix: Cholesky factorization failed");
        }
        entries_ = std::move(jittered);
    }
}

SpdMatrix SpdMatrix::from_factor(const Matrix& chol_lower) {
    if (chol_lower.rows() != chol_lower.cols() || chol_lower.rows() == 0) {
        throw std::invalid_argument("SpdMatrix: factor must be square and non-empty");
    }
    for (int i = 0; i < chol_lower.rows(); ++i) {
        if (!(chol_lower(i, i) > 0.0)) {
            throw std::invalid_argument("SpdMatrix: factor has a non-positive pivot");
        }
    }
    SpdMatrix out;
    out.chol_ = chol_lower.template triangularView<Eigen::Lower>();
    out.entries_ = out.chol_ * out.chol_.transpose();
    return out;
}

double SpdMatrix::quad_form(const Vector& centered) const {
    if (centered.size() != dim()) {
        throw std::invalid_argument("SpdMatrix::quad_form: dimension mismatch");
    }
    const Vector z = chol_.triangularView<Eigen::Lower>().solve(centered);
    return z.squaredNorm();
}

double SpdMatrix::log_det() const {
    return 2.0 * chol_.diagonal().array().log().sum();
}

TApprox::TApprox(double nu_, Vector mu_, SpdMatrix sigma_)
    : nu(nu_), mu(std::move(mu_)), sigma(std::move(sigma_)) {
    if (!(nu >= nu_min) || !(nu <= nu_max)) {
        throw std::invalid_argument("TApprox: nu outside [" + std::to_string(nu_min) +
                                    ", " + std::to_string(nu_max) + "]");
    }
    if (mu.size() != sigma.dim()) {
        throw std::invalid_argument("TApprox: mu/sigma dimension mismatch");
    }
}

} // namespace gess
