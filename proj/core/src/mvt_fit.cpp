#include "gess/mvt_fit.hpp"

#include "gess/distributions.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace gess {

namespace {

Vector mean_of(const std::vector<Vector>& points) {
    Vector m = Vector::Zero(points.front().size());
    for (const auto& p : points) {
        m += p;
    }
    return m / static_cast<double>(points.size());
}

void check_dims(const std::vector<Vector>& points) {
    const auto d = points.front().size();
    for (const auto& p : points) {
        if (p.size() != d) {
            throw std::invalid_argument("fit_mvt: points have mixed dimensions");
        }
    }
}

// Profile score in nu for fixed distances; the weights inside depend on the
// unknown nu. Zero at the maximum-likelihood nu.
double nu_score(double nu, double dim, const std::vector<double>& distances) {
    const double n = static_cast<double>(distances.size());
    double mean_term = 0.0;
    for (const double delta : distances) {
        const double w = (nu + dim) / (nu + delta);
        mean_term += std::log(w) - w;
    }
    mean_term /= n;
    return -digamma(0.5 * nu) + std::log(0.5 * nu) + mean_term
         + digamma(0.5 * (nu + dim)) - std::log(0.5 * (nu + dim)) + 1.0;
}

struct NuSolution {
    double nu = 0.0;
    bool clamped = false;
};

NuSolution solve_nu(double dim, const std::vector<double>& distances) {
    double lo = std::log(TApprox::nu_min);
    double hi = std::log(TApprox::nu_max);
    double f_lo = nu_score(std::exp(lo), dim, distances);
    double f_hi = nu_score(std::exp(hi), dim, distances);
    if (!std::isfinite(f_lo) || !std::isfinite(f_hi)) {
        throw FitError("fit_mvt: nu score is not finite on the bracket");
    }
    if (f_lo * f_hi > 0.0) {
        // No sign change: the maximizer sits at a bracket edge.
        return {std::abs(f_hi) < std::abs(f_lo) ? TApprox::nu_max : TApprox::nu_min, true};
    }
    while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = nu_score(std::exp(mid), dim, distances);
        if (!std::isfinite(f_mid)) {
            throw FitError("fit_mvt: nu score is not finite inside the bracket");
        }
        if ((f_mid > 0.0) == (f_lo > 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return {std::exp(0.5 * (lo + hi)), false};
}

double data_loglik(const std::vector<Vector>& points, const TApprox& t) {
    double total = 0.0;
    for (const auto& p : points) {
        total += log_mvt_pdf(p, t);
    }
    return total;
}

SpdMatrix factorize_or_fit_error(const Matrix& cov) {
    try {
        return SpdMatrix(cov);
    } catch (const std::exception& e) {
        throw FitError(std::string("fit_mvt: degenerate covariance: ") + e.what());
    }
}

} // namespace

FitReport fit_mvt(const std::vector<Vector>& points, const FitOptions& opts) {
    if (points.size() < 2) {
        throw std::invalid_argument("fit_mvt: need at least 2 points");
    }
    check_dims(points);
    const int dim = static_cast<int>(points.front().size());
    const auto n = static_cast<double>(points.size());
    if (points.size() < 2 * static_cast<std::size_t>(dim)) {
        throw std::invalid_argument("fit_mvt: fewer than 2*dim points; use fit_mvt_regularized");
    }

    Vector mu = mean_of(points);
    Matrix cov = Matrix::Zero(dim, dim);
    for (const auto& p : points) {
        const Vector c = p - mu;
        cov += c * c.transpose();
    }
    cov /= n;
    cov.diagonal().array() += 1e-8 * cov.diagonal().mean();
    double nu = 10.0;
    SpdMatrix sigma = factorize_or_fit_error(cov);

    FitReport report{TApprox(nu, mu, sigma)};
    report.loglik_trace.push_back(data_loglik(points, report.result));

    std::vector<double> weights(points.size());
    std::vector<double> distances(points.size());
    for (int iter = 0; iter < opts.max_iter; ++iter) {
        for (std::size_t i = 0; i < points.size(); ++i) {
            const double delta = sigma.quad_form(points[i] - mu);
            weights[i] = (nu + dim) / (nu + delta);
        }

        double weight_sum = 0.0;
        Vector mu_next = Vector::Zero(dim);
        for (std::size_t i = 0; i < points.size(); ++i) {
            mu_next += weights[i] * points[i];
            weight_sum += weights[i];
        }
        mu_next /= weight_sum;

        Matrix cov_next = Matrix::Zero(dim, dim);
        for (std::size_t i = 0; i < points.size(); ++i) {
            const Vector c = points[i] - mu_next;
            cov_next += weights[i] * (c * c.transpose());
        }
        cov_next /= n;

        SpdMatrix sigma_next = factorize_or_fit_error(cov_next);
        for (std::size_t i = 0; i < points.size(); ++i) {
            distances[i] = sigma_next.quad_form(points[i] - mu_next);
        }

        const NuSolution sol = solve_nu(dim, distances);
        const double nu_delta = std::abs(sol.nu - nu);

        mu = mu_next;
        sigma = sigma_next;
        nu = sol.nu;

        report.result = TApprox(nu, mu, sigma);
        report.n_iterations = iter + 1;
        report.final_nu_delta = nu_delta;
        report.nu_clamped = sol.clamped;
        report.loglik_trace.push_back(data_loglik(points, report.result));
        if (nu_delta < opts.tol) {
            report.converged = true;
            break;
        }
    }
    return report;
}

FitReport fit_mvt_regularized(const std::vector<Vector>& points, const FitOptions& opts) {
    if (points.size() < 4) {
        throw std::invalid_argument("fit_mvt_regularized: need at least 4 points");
    }
    check_dims(points);
    const int dim = static_cast<int>(points.front().size());
    const int n_points = static_cast<int>(points.size());
    const int proj_dim = std::min(n_points / 2, dim);

    const Vector center = mean_of(points);
    Matrix centered(n_points, dim);
    for (int i = 0; i < n_points; ++i) {
        centered.row(i) = (points[i] - center).transpose();
    }

    // Principal directions from the SVD of the centered data matrix; Eigen
    // orders singular values descending, ties resolved by input order.
    Eigen::BDCSVD<Matrix> svd(centered, Eigen::ComputeThinV);
    const Matrix basis = svd.matrixV().leftCols(proj_dim); // dim x proj_dim

    std::vector<Vector> projected(points.size());
    for (int i = 0; i < n_points; ++i) {
        projected[i] = basis.transpose() * (points[i] - center);
    }

    FitReport inner = fit_mvt(projected, opts);

    std::vector<double> diag(inner.result.sigma.matrix().diagonal().begin(),
                             inner.result.sigma.matrix().diagonal().end());
    std::sort(diag.begin(), diag.end());
    const std::size_t half = diag.size() / 2;
    const double epsilon = (diag.size() % 2 == 1)
        ? diag[half]
        : 0.5 * (diag[half - 1] + diag[half]);

    Matrix lifted = basis * inner.result.sigma.matrix() * basis.transpose();
    lifted.diagonal().array() += epsilon;

    FitReport report{TApprox(inner.result.nu, basis * inner.result.mu + center,
                             SpdMatrix(lifted))};
    report.n_iterations = inner.n_iterations;
    report.final_nu_delta = inner.final_nu_delta;
    report.loglik_trace = std::move(inner.loglik_trace);
    report.regularized = true;
    report.projection_dim = proj_dim;
    report.converged = inner.converged;
    report.nu_clamped = inner.nu_clamped;
    return report;
}

FitReport spherical_fallback_fit(const std::vector<Vector>& points) {
    if (points.empty()) {
        throw std::invalid_argument("spherical_fallback_fit: empty input");
    }
    check_dims(points);
    const int dim = static_cast<int>(points.front().size());
    const Vector center = mean_of(points);
    double msd = 0.0;
    for (const auto& p : points) {
        msd += (p - center).squaredNorm();
    }
    msd /= static_cast<double>(points.size() * dim);
    if (!(msd > 0.0) || !std::isfinite(msd)) {
        msd = 1.0;
    }
    FitReport report{TApprox(TApprox::nu_max, center,
                             SpdMatrix(Matrix::Identity(dim, dim) * msd))};
    report.converged = true;
    report.spherical_fallback = true;
    return report;
}

FitReport select_fit(const std::vector<Vector>& points, const FitOptions& opts) {
    if (points.empty()) {
        throw std::invalid_argument("select_fit: empty input");
    }
    const auto n = points.size();
    const auto dim = static_cast<std::size_t>(points.front().size());
    if (n >= 2 * dim) {
        return fit_mvt(points, opts);
    }
    if (n >= 4) {
        return fit_mvt_regularized(points, opts);
    }
    return spherical_fallback_fit(points);
}

} // namespace gess
