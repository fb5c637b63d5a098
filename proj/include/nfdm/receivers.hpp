#pragma once

#include "nfdm/framing.hpp"
#include "nfdm/nft_engine.hpp"
#include "nfdm/qam.hpp"
#include "nfdm/system_config.hpp"
#include "nfdm/types.hpp"

namespace nfdm {

struct DetectionResult {
    std::vector<int> decided_symbols;      // alphabet indices, length Nb
    std::vector<double> per_symbol_metric; // winning metric per symbol
    double elapsed = 0.0;                  // seconds per burst
    uint64_t glm_point_solves = 0;
    uint64_t glm_cg_iterations = 0;
};

/// Shared transmit path: pulse shaping, deterministic launch-power scaling,
/// NIS encoding, precompensation and backward synthesis. The decision-
/// feedback detector builds its trial waveforms through the same code path.
class TxChain {
public:
    TxChain(const SystemConfig& cfg, const QamAlphabet& alphabet);

    const SystemConfig& config() const { return cfg_; }
    const QamAlphabet& alphabet() const { return *alphabet_; }
    const FrameGeometry& geometry() const { return geom_; }
    const NftGrid& grid() const { return grid_; }

    // QAM-signal amplitude for the configured launch power. The NFDM value
    // solves the average-spectrum energy identity; the conventional value is
    // the exact linear-domain scaling.
    double amplitude() const { return amplitude_; }
    double conventional_amplitude() const { return conventional_amplitude_; }

    // A_s-scaled QAM signal s(t) on the frame grid (normalized units).
    ComplexEnvelope qam_signal(const SymbolBurst& burst, double amp) const;

    // rho(lambda) of the scaled QAM signal (no precompensation).
    ContinuousSpectrum encode(const SymbolBurst& burst) const;

    // Normalized optical frame q(0, t): encode -> precompensate -> backward
    // transform on the full frame grid.
    ComplexEnvelope tx_waveform(const SymbolBurst& burst,
                                ExecPolicy policy = ExecPolicy::OpenMP) const;

private:
    SystemConfig cfg_;
    const QamAlphabet* alphabet_;
    FrameGeometry geom_;
    NftGrid grid_;
    double amplitude_ = 0.0;
    double conventional_amplitude_ = 0.0;
};

/// Matched filter against the transmit pulse, sampled at the pulse centers,
/// then per-symbol minimum-distance decisions on y_k / scale.
DetectionResult matched_filter_decide(const ComplexEnvelope& s_hat, const SystemConfig& cfg,
                                      const QamAlphabet& alphabet, double scale);

/// Conventional receiver: forward transform of the received frame, NIS
/// decoding, matched filtering, symbol-by-symbol decisions.
DetectionResult fnft_receiver(const ComplexEnvelope& q_rx, const TxChain& tx,
                              ExecPolicy policy = ExecPolicy::OpenMP);

/// Decision-feedback detector: symbols are decided sequentially; for each
/// position the M candidate waveforms are synthesized through the transmit
/// path and compared with the received frame on the window
/// [-t_k, -t_{k-1}] only (trapezoid metric, shared edges half weight). Ties
/// break toward the lowest alphabet index.
DetectionResult df_bnft_receiver(const ComplexEnvelope& q_rx, const TxChain& tx,
                                 ExecPolicy policy = ExecPolicy::Serial);

}  // namespace nfdm
