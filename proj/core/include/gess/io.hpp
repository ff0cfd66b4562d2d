#ifndef GESS_IO_HPP
#define GESS_IO_HPP

#include "gess/diagnostics.hpp"
#include "gess/engine.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace gess {

/// Per-chain log-density traces as stored in loglik.csv.
struct LoglikTable {
    std::vector<std::int64_t> kept_rounds;
    std::vector<std::vector<double>> loglik; // [group * K + chain][round index]
    int n_groups = 0;
    int n_chains_per_group = 0;
};

/// samples.csv: one row per (round, group, chain), coordinates to 17
/// significant digits so the in-memory trace round-trips exactly.
void write_samples_csv(const std::string& path, const RunResult& run);

/// loglik.csv: one row per (round, group, chain).
void write_loglik_csv(const std::string& path, const RunResult& run);

LoglikTable read_loglik_csv(const std::string& path);

/// Reads samples.csv back into the RunResult trace layout (samples[slot]
/// flattened round-major). Used by tests and the diagnose command.
struct SamplesTable {
    std::vector<std::int64_t> kept_rounds;
    std::vector<std::vector<double>> samples;
    int n_groups = 0;
    int n_chains_per_group = 0;
    int dim = 0;
};

SamplesTable read_samples_csv(const std::string& path);

/// Metadata echoed into report.json alongside the mixing numbers.
struct ReportContext {
    std::string target_name;
    int target_dim = 0;
    std::string sampler_name;
};

std::string render_report_json(const ReportContext& ctx, const RunResult& run,
                               const MixingReport& mixing);

/// Replaces the mixing section of an existing report with a recomputed one;
/// everything else is carried over verbatim.
std::string replace_report_mixing(const std::string& report_json, const MixingReport& mixing);

/// Recomputes the mixing report from stored traces plus the evaluation and
/// timing totals recorded in the original report.
MixingReport mixing_report_from_table(const LoglikTable& table, std::int64_t n_evals,
                                      double wall_seconds, double geweke_threshold = 2.0);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

} // namespace gess

#endif
