#ifndef GESS_ENGINE_HPP
#define GESS_ENGINE_HPP

#include "gess/gess.hpp"
#include "gess/linalg.hpp"
#include "gess/mvt_fit.hpp"
#include "gess/rng.hpp"
#include "gess/targets.hpp"
#include "gess/thread_pool.hpp"
#include "gess/types.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gess {

/// One group of chains. Each chain owns its RNG stream and a cached value of
/// log pi at its current position, so threshold evaluations cost nothing.
struct ChainGroupState {
    std::vector<Vector> positions;
    std::vector<Rng> rng_streams;
    std::vector<double> loglik_cache;
    // Bumped on every update pass; fits assert they never see a group
    // mid-update.
    std::uint64_t version = 0;

    std::size_t size() const { return positions.size(); }
};

struct EngineConfig {
    int n_chains_per_group = 0; // 0 -> worker_count
    int reuse_rounds = 100;     // refit cadence r
    int burn_in = 0;
    int n_samples = 0;          // post-burn-in rounds
    std::uint64_t seed = 0;
    int worker_count = 0;       // 0 -> hardware concurrency
    int thin = 1;
    std::int64_t max_proposals = 1'000'000;
    std::optional<double> time_budget_seconds; // stop at a round boundary once exceeded
};

/// Spherical Gaussian initial distribution.
struct InitSpec {
    Vector center;     // empty -> origin
    double stddev = 1.0;
};

struct FitEvent {
    std::int64_t round = 0;
    int group = 0;       // the group that was fitted (the source)
    double nu = 0.0;
    double trace_sigma = 0.0;
    bool fallback = false;
    std::string note;
};

struct RunResult {
    int dim = 0;
    int n_chains_per_group = 0;
    int n_groups = 2;
    std::vector<std::int64_t> kept_rounds;

    // samples[k] is the flattened position trace of global chain k
    // (group * K + chain), kept rounds by dim.
    std::vector<std::vector<double>> samples;
    // loglik[k][j] = log pi at kept round j for global chain k.
    std::vector<std::vector<double>> loglik;

    std::vector<std::int64_t> eval_counts;     // per global chain, update evals
    std::vector<std::int64_t> proposal_counts; // per global chain
    std::int64_t n_init_evals = 0;

    std::int64_t rounds_completed = 0;
    std::int64_t fit_count = 0;       // fits actually performed (both groups)
    std::vector<FitEvent> fit_events;
    std::vector<std::string> fit_failures;

    double wall_seconds = 0.0;
    double fit_seconds = 0.0;
    double update_seconds = 0.0;

    std::int64_t total_evals() const;
};

struct HalfStepResult {
    TApprox approx;
    std::optional<FitReport> fit;
    bool used_fallback = false;
    std::string fit_error;
};

/// One Q_i application: optionally refit the approximation from
/// fitting_source (only when round_index is a multiple of reuse_rounds),
/// then update every chain of `updating` in parallel with gess_update.
/// The fitting source is never touched. A failed fit falls back to the
/// previous approximation when one exists, else to the spherical fallback.
///
/// When accounting is given, per-chain eval/proposal counts are added at
/// eval_slot_base + chain index.
HalfStepResult half_step(ChainGroupState& updating, const ChainGroupState& fitting_source,
                         const std::optional<TApprox>& approx, std::int64_t round_index,
                         const TargetDensity& target, const EngineConfig& config,
                         WorkerPool& pool, RunResult* accounting = nullptr,
                         std::size_t eval_slot_base = 0);

/// Full GESS run: initialize both groups, alternate Q1/Q2 for
/// burn_in + n_samples rounds, and collect thinned samples and log-density
/// traces from both groups. Deterministic in (seed, config) regardless of
/// worker_count.
RunResult run(const TargetDensity& target, const EngineConfig& config, const InitSpec& init);

} // namespace gess

#endif
