#ifndef GESS_TARGETS_HPP
#define GESS_TARGETS_HPP

#include "gess/types.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gess {

/// Known moments of a benchmark target, filled where closed forms exist.
struct GroundTruth {
    std::optional<Vector> mean;
    std::optional<Vector> marginal_std;
};

/// A benchmark target: an unnormalized log-density over R^dim.
struct TargetDensity {
    int dim = 0;
    std::string name;
    LogDensityFn log_density;
    std::optional<GroundTruth> ground_truth;
};

class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Ingested binary-classification table. Feature columns are rescaled to
/// unit variance when standardize is requested at load time.
struct Dataset {
    Matrix features;                  // N x p
    std::vector<int> labels;          // in {0, 1}
    std::vector<double> scaling;      // per-column std deviations applied
    std::vector<std::string> feature_names;
};

/// Neal's funnel: v ~ N(0, 9), x_i | v ~ N(0, e^v) for i = 2..D.
TargetDensity funnel(int dim = 10);

/// Equal-weight mixture of unit-variance spherical Gaussians with centers
/// drawn uniformly in [-2, 2]^dim from the seed.
TargetDensity gaussian_mixture(int dim = 8, int n_components = 8, std::uint64_t seed = 0);

/// Bayesian logistic regression posterior with intercept and N(0, prior_var)
/// priors on every coefficient. Dimension is p + 1.
TargetDensity logistic_posterior(const Dataset& data, double prior_var = 100.0);

/// Zero-mean Gaussian whose precision is a Wishart(I, dim) draw from the
/// seed. Ground truth stores the exact marginal standard deviations.
TargetDensity wishart_gaussian(int dim, std::uint64_t seed = 0);

/// Parses a rectangular numeric CSV with an optional header row. The label
/// column may be given by name (requires a header) or by zero-based index
/// ("0", "1", ...). Labels must be 0/1. Remaining columns become features,
/// each scaled to unit variance when standardize is set.
Dataset load_csv_dataset(const std::string& path, const std::string& label_column,
                         bool standardize = true);

} // namespace gess

#endif
