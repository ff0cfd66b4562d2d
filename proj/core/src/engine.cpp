#include "gess/engine.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace gess {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

int resolve_workers(const EngineConfig& config) {
    if (config.worker_count > 0) {
        return config.worker_count;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

} // namespace

std::int64_t RunResult::total_evals() const {
    return n_init_evals +
           std::accumulate(eval_counts.begin(), eval_counts.end(), std::int64_t{0});
}

HalfStepResult half_step(ChainGroupState& updating, const ChainGroupState& fitting_source,
                         const std::optional<TApprox>& approx, std::int64_t round_index,
                         const TargetDensity& target, const EngineConfig& config,
                         WorkerPool& pool, RunResult* accounting, std::size_t eval_slot_base) {
    if (!updating.size() || !fitting_source.size()) {
        throw std::invalid_argument("half_step: empty chain group");
    }
    const int reuse = std::max(1, config.reuse_rounds);
    const bool refit = (round_index % reuse == 0);
    if (!approx && !refit) {
        throw std::invalid_argument("half_step: no approximation and not a refit round");
    }

    std::optional<TApprox> current = approx;
    std::optional<FitReport> fit_report;
    bool used_fallback = false;
    std::string fit_error;

    if (refit) {
        const std::uint64_t version_before = fitting_source.version;
        const auto fit_start = Clock::now();
        try {
            FitReport report = select_fit(fitting_source.positions);
            used_fallback = report.spherical_fallback;
            current = report.result;
            fit_report = std::move(report);
        } catch (const std::exception& e) {
            fit_error = e.what();
            if (!current) {
                FitReport report = spherical_fallback_fit(fitting_source.positions);
                current = report.result;
                fit_report = std::move(report);
                used_fallback = true;
            }
            // else: keep reusing the previous approximation
        }
        if (fitting_source.version != version_before) {
            throw std::logic_error("half_step: fitting source mutated during a fit");
        }
        if (accounting) {
            accounting->fit_seconds += seconds_since(fit_start);
            if (fit_report) {
                ++accounting->fit_count;
            }
            if (!fit_error.empty()) {
                accounting->fit_failures.push_back(fit_error);
            }
        }
    }

    const TApprox& shared = *current;
    updating.version += 1;
    const EssOptions ess_opts{config.max_proposals};
    const auto update_start = Clock::now();
    pool.run(updating.size(), [&](std::size_t k) {
        GessResult r = gess_update(updating.positions[k], shared, target.log_density,
                                   updating.rng_streams[k], updating.loglik_cache[k],
                                   ess_opts);
        updating.positions[k] = std::move(r.x_new);
        updating.loglik_cache[k] = r.log_pi_new;
        if (accounting) {
            const std::size_t slot = eval_slot_base + k;
            accounting->eval_counts[slot] += r.trace.n_loglik_evals;
            accounting->proposal_counts[slot] += r.trace.n_proposals;
        }
    });
    if (accounting) {
        accounting->update_seconds += seconds_since(update_start);
    }

    HalfStepResult out{shared, std::move(fit_report), used_fallback, std::move(fit_error)};
    return out;
}

RunResult run(const TargetDensity& target, const EngineConfig& config, const InitSpec& init) {
    if (config.burn_in < 0 || config.n_samples < 0 || config.thin < 1 ||
        config.reuse_rounds < 1) {
        throw std::invalid_argument("run: invalid engine configuration");
    }
    const int workers = resolve_workers(config);
    const int chains = config.n_chains_per_group > 0 ? config.n_chains_per_group : workers;
    if (chains < 1) {
        throw std::invalid_argument("run: need at least one chain per group");
    }

    Vector center = init.center;
    if (center.size() == 0) {
        center = Vector::Zero(target.dim);
    }
    if (center.size() != target.dim) {
        throw std::invalid_argument("run: init center dimension mismatch");
    }
    if (!(init.stddev > 0.0)) {
        throw std::invalid_argument("run: init stddev must be positive");
    }

    const auto wall_start = Clock::now();

    RunResult result;
    result.dim = target.dim;
    result.n_chains_per_group = chains;
    result.eval_counts.assign(static_cast<std::size_t>(2 * chains), 0);
    result.proposal_counts.assign(static_cast<std::size_t>(2 * chains), 0);
    result.samples.resize(static_cast<std::size_t>(2 * chains));
    result.loglik.resize(static_cast<std::size_t>(2 * chains));

    std::array<ChainGroupState, 2> groups;
    for (int g = 0; g < 2; ++g) {
        auto& group = groups[g];
        group.positions.resize(static_cast<std::size_t>(chains));
        group.loglik_cache.resize(static_cast<std::size_t>(chains));
        group.rng_streams.reserve(static_cast<std::size_t>(chains));
        for (int k = 0; k < chains; ++k) {
            group.rng_streams.emplace_back(config.seed, static_cast<std::uint64_t>(g),
                                           static_cast<std::uint64_t>(k));
        }
        for (int k = 0; k < chains; ++k) {
            auto& pos = group.positions[static_cast<std::size_t>(k)];
            pos.resize(target.dim);
            auto& rng = group.rng_streams[static_cast<std::size_t>(k)];
            for (int d = 0; d < target.dim; ++d) {
                pos(d) = center(d) + init.stddev * rng.normal();
            }
            const double lp = target.log_density(pos);
            ++result.n_init_evals;
            if (!std::isfinite(lp)) {
                throw std::runtime_error("run: non-finite log density at initialization of group " +
                                         std::to_string(g) + " chain " + std::to_string(k));
            }
            group.loglik_cache[static_cast<std::size_t>(k)] = lp;
        }
    }

    WorkerPool pool(workers);
    std::array<std::optional<TApprox>, 2> approx; // approx[g] updates group g

    const std::int64_t total_rounds = config.burn_in + config.n_samples;
    for (std::int64_t round = 0; round < total_rounds; ++round) {
        // Q1: fit from group 1, update group 0; Q2: fit from the fresh group 0.
        for (int g = 0; g < 2; ++g) {
            const std::size_t slot_base =
                static_cast<std::size_t>(g) * static_cast<std::size_t>(chains);
            HalfStepResult hs = half_step(groups[g], groups[1 - g], approx[g], round, target,
                                          config, pool, &result, slot_base);
            approx[g] = std::move(hs.approx);
            if (hs.fit) {
                result.fit_events.push_back(FitEvent{round, 1 - g, approx[g]->nu,
                                                     approx[g]->sigma.trace(),
                                                     hs.used_fallback, hs.fit_error});
            }
        }

        result.rounds_completed = round + 1;
        if (round >= config.burn_in && (round - config.burn_in) % config.thin == 0) {
            result.kept_rounds.push_back(round);
            for (int g = 0; g < 2; ++g) {
                for (int k = 0; k < chains; ++k) {
                    const std::size_t slot =
                        static_cast<std::size_t>(g) * static_cast<std::size_t>(chains) +
                        static_cast<std::size_t>(k);
                    const auto& pos = groups[g].positions[static_cast<std::size_t>(k)];
                    auto& trace = result.samples[slot];
                    trace.insert(trace.end(), pos.data(), pos.data() + pos.size());
                    result.loglik[slot].push_back(groups[g].loglik_cache[static_cast<std::size_t>(k)]);
                }
            }
        }

        if (config.time_budget_seconds &&
            seconds_since(wall_start) >= *config.time_budget_seconds) {
            break;
        }
    }

    result.wall_seconds = seconds_since(wall_start);
    return result;
}

} // namespace gess
