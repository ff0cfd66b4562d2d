#include "gess/targets.hpp"

#include "gess/distributions.hpp"
#include "gess/rng.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

namespace gess {

namespace {

constexpr double kLog2Pi = 1.8378770664093454836;

double log_normal_1d(double x, double variance) {
    return -0.5 * (kLog2Pi + std::log(variance) + x * x / variance);
}

double logistic_log1p_exp(double z) {
    // log(1 + e^z) without overflow.
    return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

} // namespace

TargetDensity funnel(int dim) {
    if (dim < 2) {
        throw std::invalid_argument("funnel: dim must be >= 2");
    }
    TargetDensity t;
    t.dim = dim;
    t.name = "funnel";
    t.log_density = [dim](const Vector& x) {
        double total = log_normal_1d(x(0), 9.0);
        const double v = x(0);
        // log N(x_i; 0, e^v) = -0.5 (log 2pi + v + x_i^2 e^-v)
        const double inv_var = std::exp(-v);
        for (int i = 1; i < dim; ++i) {
            total += -0.5 * (kLog2Pi + v + x(i) * x(i) * inv_var);
        }
        return total;
    };
    GroundTruth gt;
    gt.mean = Vector::Zero(dim);
    Vector marginal_std(dim);
    marginal_std(0) = 3.0;
    // x_i is a scale mixture: Var(x_i) = E[e^v] = e^{9/2}.
    for (int i = 1; i < dim; ++i) {
        marginal_std(i) = std::exp(9.0 / 4.0);
    }
    gt.marginal_std = marginal_std;
    t.ground_truth = gt;
    return t;
}

TargetDensity gaussian_mixture(int dim, int n_components, std::uint64_t seed) {
    if (dim < 1 || n_components < 1) {
        throw std::invalid_argument("gaussian_mixture: dim and n_components must be positive");
    }
    Rng rng(seed, 0x6d6978ULL, 0); // private stream for the centers
    std::vector<Vector> centers(static_cast<std::size_t>(n_components));
    for (auto& c : centers) {
        c.resize(dim);
        for (int d = 0; d < dim; ++d) {
            c(d) = rng.uniform(-2.0, 2.0);
        }
    }
    const double log_weight = -std::log(static_cast<double>(n_components));
    TargetDensity t;
    t.dim = dim;
    t.name = "mixture";
    t.log_density = [centers, log_weight, dim](const Vector& x) {
        double best = -std::numeric_limits<double>::infinity();
        std::vector<double> terms;
        terms.reserve(centers.size());
        for (const auto& c : centers) {
            const double term = -0.5 * (dim * kLog2Pi + (x - c).squaredNorm());
            terms.push_back(term);
            best = std::max(best, term);
        }
        double acc = 0.0;
        for (const double term : terms) {
            acc += std::exp(term - best);
        }
        return log_weight + best + std::log(acc);
    };
    return t;
}

TargetDensity logistic_posterior(const Dataset& data, double prior_var) {
    if (!(prior_var > 0.0)) {
        throw std::invalid_argument("logistic_posterior: prior_var must be positive");
    }
    for (const int y : data.labels) {
        if (y != 0 && y != 1) {
            throw DataError("logistic_posterior: labels must be 0 or 1");
        }
    }
    const auto n = data.features.rows();
    if (static_cast<std::size_t>(n) != data.labels.size()) {
        throw DataError("logistic_posterior: feature/label row mismatch");
    }
    const int p = static_cast<int>(data.features.cols());
    const Matrix features = data.features;
    const std::vector<int> labels = data.labels;
    TargetDensity t;
    t.dim = p + 1; // intercept first
    t.name = "logistic";
    t.log_density = [features, labels, prior_var, p](const Vector& beta) {
        const double intercept = beta(0);
        const Vector coef = beta.tail(p);
        const Vector z = (features * coef).array() + intercept;
        double loglik = 0.0;
        for (Eigen::Index i = 0; i < z.size(); ++i) {
            // y log sigma(z) + (1-y) log(1 - sigma(z)) = y z - log(1 + e^z)
            loglik += labels[static_cast<std::size_t>(i)] * z(i) - logistic_log1p_exp(z(i));
        }
        double logprior = 0.0;
        for (Eigen::Index d = 0; d < beta.size(); ++d) {
            logprior += log_normal_1d(beta(d), prior_var);
        }
        return loglik + logprior;
    };
    return t;
}

TargetDensity wishart_gaussian(int dim, std::uint64_t seed) {
    if (dim < 2) {
        throw std::invalid_argument("wishart_gaussian: dim must be >= 2");
    }
    Rng rng(seed, 0x776973ULL, 0); // private stream for the precision draw
    const SpdMatrix precision = sample_wishart(dim, dim, rng);
    const double log_det_precision = precision.log_det();

    // Marginal std deviations from the covariance; solve through the factor
    // column by column rather than forming the inverse densely.
    const Matrix identity = Matrix::Identity(dim, dim);
    Vector marginal_std(dim);
    for (int d = 0; d < dim; ++d) {
        const Vector col = precision.chol().triangularView<Eigen::Lower>().solve(identity.col(d));
        marginal_std(d) = std::sqrt(col.squaredNorm());
    }

    TargetDensity t;
    t.dim = dim;
    t.name = "wishart";
    t.log_density = [precision, log_det_precision, dim](const Vector& x) {
        const double quad = x.transpose() * precision.matrix() * x;
        return -0.5 * dim * kLog2Pi + 0.5 * log_det_precision - 0.5 * quad;
    };
    GroundTruth gt;
    gt.mean = Vector::Zero(dim);
    gt.marginal_std = marginal_std;
    t.ground_truth = gt;
    return t;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    for (const char ch : line) {
        if (ch == ',') {
            fields.push_back(current);
            current.clear();
        } else if (ch != '\r') {
            current += ch;
        }
    }
    fields.push_back(current);
    return fields;
}

bool parse_double(const std::string& s, double& out) {
    const char* begin = s.data();
    const char* end = begin + s.size();
    while (begin != end && std::isspace(static_cast<unsigned char>(*begin))) ++begin;
    while (end != begin && std::isspace(static_cast<unsigned char>(*(end - 1)))) --end;
    if (begin == end) {
        return false;
    }
    const auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc{} && ptr == end;
}

} // namespace

Dataset load_csv_dataset(const std::string& path, const std::string& label_column,
                         bool standardize) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("load_csv_dataset: cannot open " + path);
    }

    std::vector<std::vector<double>> rows;
    std::vector<std::string> header;
    bool has_header = false;
    std::string line;
    int line_no = 0;
    std::size_t n_cols = 0;

    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        const auto fields = split_csv_line(line);
        if (rows.empty() && header.empty()) {
            // First non-empty line: a header iff any field is non-numeric.
            double ignored;
            const bool numeric = std::all_of(fields.begin(), fields.end(),
                [&](const std::string& f) { return parse_double(f, ignored); });
            n_cols = fields.size();
            if (!numeric) {
                header = fields;
                has_header = true;
                continue;
            }
        }
        if (fields.size() != n_cols) {
            throw DataError("load_csv_dataset: line " + std::to_string(line_no) +
                            ": expected " + std::to_string(n_cols) + " fields, got " +
                            std::to_string(fields.size()));
        }
        std::vector<double> row(fields.size());
        for (std::size_t c = 0; c < fields.size(); ++c) {
            if (!parse_double(fields[c], row[c])) {
                throw DataError("load_csv_dataset: line " + std::to_string(line_no) +
                                ": field '" + fields[c] + "' is not numeric");
            }
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) {
        throw DataError("load_csv_dataset: no data rows in " + path);
    }

    std::size_t label_idx = n_cols;
    if (has_header) {
        const auto it = std::find(header.begin(), header.end(), label_column);
        if (it != header.end()) {
            label_idx = static_cast<std::size_t>(it - header.begin());
        }
    }
    if (label_idx == n_cols) {
        double idx_val;
        if (parse_double(label_column, idx_val) && idx_val >= 0.0 &&
            idx_val < static_cast<double>(n_cols) && idx_val == std::floor(idx_val)) {
            label_idx = static_cast<std::size_t>(idx_val);
        } else {
            throw DataError("load_csv_dataset: label column '" + label_column + "' not found");
        }
    }

    Dataset ds;
    const std::size_t n = rows.size();
    const std::size_t p = n_cols - 1;
    ds.features.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(p));
    ds.labels.resize(n);
    for (std::size_t c = 0, f = 0; c < n_cols; ++c) {
        if (c == label_idx) {
            continue;
        }
        if (has_header) {
            ds.feature_names.push_back(header[c]);
        } else {
            ds.feature_names.push_back("col" + std::to_string(c));
        }
        ++f;
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double label = rows[i][label_idx];
        if (label != 0.0 && label != 1.0) {
            throw DataError("load_csv_dataset: non-binary label at data row " +
                            std::to_string(i + 1));
        }
        ds.labels[i] = static_cast<int>(label);
        for (std::size_t c = 0, f = 0; c < n_cols; ++c) {
            if (c == label_idx) {
                continue;
            }
            ds.features(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(f)) = rows[i][c];
            ++f;
        }
    }

    ds.scaling.assign(p, 1.0);
    if (standardize) {
        for (std::size_t c = 0; c < p; ++c) {
            const auto col = ds.features.col(static_cast<Eigen::Index>(c));
            const double mean = col.mean();
            const double var = (col.array() - mean).square().sum() / static_cast<double>(n - 1);
            if (!(var > 0.0)) {
                throw DataError("load_csv_dataset: column '" + ds.feature_names[c] +
                                "' has zero variance and cannot be standardized");
            }
            const double sd = std::sqrt(var);
            ds.features.col(static_cast<Eigen::Index>(c)) /= sd;
            ds.scaling[c] = sd;
        }
    }
    return ds;
}

} // namespace gess
