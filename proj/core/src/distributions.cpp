#include "gess/distributions.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gess {

namespace {
constexpr double kLog2Pi = 1.8378770664093454836;
}

double log_mvn_pdf(const Vector& x, const Vector& mu, const SpdMatrix& sigma) {
    if (x.size() != sigma.dim() || mu.size() != sigma.dim()) {
        throw std::invalid_argument("log_mvn_pdf: dimension mismatch");
    }
    const double q = sigma.quad_form(x - mu);
    const double d = static_cast<double>(sigma.dim());
    return -0.5 * (d * kLog2Pi + sigma.log_det() + q);
}

double log_mvt_pdf(const Vector& x, const TApprox& t) {
    if (x.size() != t.dim()) {
        throw std::invalid_argument("log_mvt_pdf: dimension mismatch");
    }
    const double d = static_cast<double>(t.dim());
    const double nu = t.nu;
    const double q = t.sigma.quad_form(x - t.mu);
    return std::lgamma(0.5 * (nu + d)) - std::lgamma(0.5 * nu)
         - 0.5 * d * std::log(nu * std::numbers::pi)
         - 0.5 * t.sigma.log_det()
         - 0.5 * (nu + d) * std::log1p(q / nu);
}

Vector sample_mvn(const Vector& mu, const Matrix& sigma_chol, Rng& rng) {
    Vector z(mu.size());
    for (Eigen::Index i = 0; i < z.size(); ++i) {
        z(i) = rng.normal();
    }
    return mu + sigma_chol.triangularView<Eigen::Lower>() * z;
}

double sample_gamma(double alpha, Rng& rng) {
    if (!(alpha > 0.0)) {
        throw std::invalid_argument("sample_gamma: alpha must be positive");
    }
    if (alpha < 1.0) {
        const double g = sample_gamma(alpha + 1.0, rng);
        return g * std::pow(rng.uniform01(), 1.0 / alpha);
    }
    const double d = alpha - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x;
        double v;
        do {
            x = rng.normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = rng.uniform01();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) {
            return d * v;
        }
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) {
            return d * v;
        }
    }
}

double sample_inverse_gamma(double alpha, double beta, Rng& rng) {
    if (!(alpha > 0.0) || !(beta > 0.0)) {
        throw std::invalid_argument("sample_inverse_gamma: parameters must be positive");
    }
    return beta / sample_gamma(alpha, rng);
}

SpdMatrix sample_wishart(int dim, int dof, Rng& rng) {
    if (dim < 1) {
        throw std::invalid_argument("sample_wishart: dim must be positive");
    }
    if (dof < dim) {
        throw std::invalid_argument("sample_wishart: dof must be >= dim");
    }
    Matrix bartlett = Matrix::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) {
        const double chi2 = 2.0 * sample_gamma(0.5 * static_cast<double>(dof - i), rng);
        bartlett(i, i) = std::sqrt(chi2);
        for (int j = 0; j < i; ++j) {
            bartlett(i, j) = rng.normal();
        }
    }
    return SpdMatrix::from_factor(bartlett);
}

double digamma(double x) {
    if (!(x > 0.0)) {
        throw std::invalid_argument("digamma: requires x > 0");
    }
    double result = 0.0;
    while (x < 6.0) {
        result -= 1.0 / x;
        x += 1.0;
    }
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    result += std::log(x) - 0.5 * inv
            - inv2 * (1.0 / 12.0 - inv2 * (1.0 / 120.0 - inv2 * (1.0 / 252.0 - inv2 / 240.0)));
    return result;
}

} // namespace gess
