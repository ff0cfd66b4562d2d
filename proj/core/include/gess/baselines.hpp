#ifndef GESS_BASELINES_HPP
#define GESS_BASELINES_HPP

#include "gess/rng.hpp"
#include "gess/types.hpp"

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace gess {

/// Outcome shared by the baseline transition kernels.
struct BaselineResult {
    Vector x_new;
    double log_pi_new = 0.0;
    int n_evals = 0;       // log-density evaluations made inside the update
    bool accepted = true;  // MH kernels only; slice kernels always move
};

struct SliceOptions {
    double width = 1.0;
    int max_expansions = 30;
    std::int64_t max_proposals = 1'000'000;
};

/// One-dimensional slice update along x + t * direction: threshold draw,
/// stepping-out expansion (expansion budget split randomly between the two
/// sides), then shrinkage toward t = 0. direction must be unit length.
BaselineResult slice_update(const Vector& x, const Vector& direction, const LogDensityFn& log_pi,
                            Rng& rng, const SliceOptions& opts = {},
                            std::optional<double> log_pi_x = std::nullopt);

/// Slice update along a uniformly random direction on the sphere.
BaselineResult rdss_update(const Vector& x, const LogDensityFn& log_pi, Rng& rng,
                           const SliceOptions& opts = {},
                           std::optional<double> log_pi_x = std::nullopt);

/// Slice update along a uniformly chosen coordinate axis.
BaselineResult cwss_update(const Vector& x, const LogDensityFn& log_pi, Rng& rng,
                           const SliceOptions& opts = {},
                           std::optional<double> log_pi_x = std::nullopt);

/// Robbins-Monro step-size tuner targeting a fixed acceptance rate; the
/// adaptation rate decays as 1/sqrt(iteration) and freezes at burn-in end.
class StepSizeTuner {
public:
    explicit StepSizeTuner(double initial_step = 1.0, double target_accept = 0.234)
        : log_step_(std::log(initial_step)), target_accept_(target_accept) {}

    double step() const { return std::exp(log_step_); }
    double log_step() const { return log_step_; }
    double target_accept() const { return target_accept_; }
    bool frozen() const { return frozen_; }

    void observe(bool accepted);
    void freeze() { frozen_ = true; }

private:
    double log_step_;
    double target_accept_;
    std::int64_t n_observed_ = 0;
    bool frozen_ = false;
};

/// Spherical-proposal Metropolis-Hastings update.
BaselineResult mh_update(const Vector& x, const LogDensityFn& log_pi, Rng& rng, double step,
                         std::optional<double> log_pi_x = std::nullopt);

struct AmhOptions {
    double beta = 0.05;      // weight of the spherical safety component
    double epsilon = 1e-6;   // diagonal pad on the adapted covariance
    double spherical_scale = 0.1;
};

/// Per-chain history moments for adaptive MH, maintained incrementally.
class AmhHistory {
public:
    explicit AmhHistory(int dim);

    void push(const Vector& x);
    void freeze() { frozen_ = true; }
    bool frozen() const { return frozen_; }

    std::int64_t count() const { return n_; }
    const Vector& mean() const { return mean_; }
    Matrix covariance() const; // unbiased; zero matrix until two points

private:
    std::int64_t n_ = 0;
    Vector mean_;
    Matrix m2_;
    bool frozen_ = false;
};

/// Adaptive MH: proposes from the history-adapted Gaussian mixed with a small
/// spherical component; falls back to the spherical component alone until the
/// history holds more than dim points. The new state is pushed into the
/// history unless it is frozen.
BaselineResult amh_update(const Vector& x, AmhHistory& history, const LogDensityFn& log_pi,
                          Rng& rng, const AmhOptions& opts = {},
                          std::optional<double> log_pi_x = std::nullopt);

/// Geometric temperature ladder with t_1 = 1 exactly.
struct TemperatureLadder {
    std::vector<double> temperatures;
    int swap_interval = 10;

    static TemperatureLadder geometric(int n_rungs, double t_max, int swap_interval = 10);
};

/// One parallel-tempering ensemble: a state, RNG stream, and cached log pi
/// per temperature rung.
struct PtEnsemble {
    std::vector<Vector> states;
    std::vector<Rng> rngs;
    std::vector<double> loglik; // untempered log pi per rung
};

using InnerUpdateFn = std::function<BaselineResult(const Vector&, const LogDensityFn&, Rng&,
                                                   std::optional<double>)>;

struct PtStepStats {
    int n_evals = 0;
    int swaps_proposed = 0;
    int swaps_accepted = 0;
};

/// One PT round: update each rung against pi^(1/t_k), then (on rounds that
/// hit the swap cadence) sweep adjacent swap proposals accepted with
/// min(1, [pi(x_j)/pi(x_k)]^(1/t_k - 1/t_j)). Samples come from rung 0 only.
PtStepStats pt_step(PtEnsemble& ensemble, const TemperatureLadder& ladder,
                    const InnerUpdateFn& inner_update, const LogDensityFn& log_pi,
                    Rng& swap_rng, std::int64_t round_index);

} // namespace gess

#endif
