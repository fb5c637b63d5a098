#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nfdm/metrics.hpp"
#include "nfdm/system_config.hpp"

namespace nfdm {

struct CellOutcome {
    ExperimentRecord record;
    std::string stop_reason;  // "errors", "cap", or "guard-violation"
    bool valid = true;
};

/// One Monte-Carlo cell: fixed (receiver, power, Nb, seed); frames run until
/// the stopping rule (>= min_bit_errors or the frame cap). Frames execute
/// concurrently in fixed-size batches; results are independent of the thread
/// count.
CellOutcome run_cell(const ExperimentConfig& cfg, const std::string& receiver, double power_dbm,
                     int Nb, uint64_t seed, bool progress = false);

struct SweepResult {
    std::vector<CellOutcome> cells;  // canonical order: receiver, Nb, power, seed
    std::string results_csv;
    std::string summary_csv;
};

/// Full sweep over receivers x burst lengths x powers x seeds; emits the
/// per-cell CSV and the per-(receiver, Nb, seed) optimal-power summary.
SweepResult run_experiment(const ExperimentConfig& cfg, const std::string& out_dir,
                           bool progress = true);

struct CausalityDemoResult {
    std::string csv;                 // t, |q8|, |q6|
    double dev_after_raw = 0.0;      // max rel deviation for t > -t6
    double dev_after_margin = 0.0;   // same, from -t6 + (4 sigma - Ts/2)
    double dev_before = 0.0;         // max rel deviation for t < -t6
    double t6 = 0.0;
};

/// Synthesizes the optical signal of an 8-symbol burst and of its first 6
/// symbols and compares them around -t6: they agree beyond it (up to the
/// pulse-tail overlap at the edge) and differ before it.
CausalityDemoResult demo_causality(const SystemConfig& cfg);

}  // namespace nfdm
