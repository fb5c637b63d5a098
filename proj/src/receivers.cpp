#include "nfdm/receivers.hpp"

#include <chrono>
#include <cmath>
#include <limits>

namespace nfdm {

namespace {

double now_seconds() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

// |FT(unit-energy truncated Gaussian)|^2 at angular frequency w.
double pulse_spectrum_abs2(double w, double sigma) {
    const double erf4 = std::erf(4.0);
    const double c2 = 1.0 / (sigma * std::sqrt(kPi) * erf4);
    const double g = sigma * std::sqrt(2.0 * kPi) * std::exp(-0.5 * sigma * sigma * w * w);
    return c2 * g * g;
}

}  // namespace

TxChain::TxChain(const SystemConfig& cfg, const QamAlphabet& alphabet)
    : cfg_(cfg), alphabet_(&alphabet), geom_(FrameGeometry::from_config(cfg)) {
    SymbolBurst probe;
    probe.alphabet = alphabet_;
    probe.symbols.assign(static_cast<std::size_t>(cfg.Nb), Cd(1.0, 0.0));
    const ComplexEnvelope ref = shape_pulses(probe, cfg_);
    grid_ = NftGrid::for_envelope(ref);

    const double p_norm = cfg_.power_watt() / cfg_.scales().P0;
    const double target_energy = p_norm * static_cast<double>(cfg_.Nb);

    // Ensemble-average squared spectrum of the unit-amplitude QAM signal:
    // E|S(-2 lambda)|^2 = Nb |G(-2 lambda)|^2 for a unit-energy alphabet.
    std::vector<double> rho_abs2(grid_.nlambda);
    for (std::size_t k = 0; k < grid_.nlambda; ++k) {
        const double lambda = grid_.lambda_min + static_cast<double>(k) * grid_.dlambda;
        rho_abs2[k] = static_cast<double>(cfg_.Nb) *
                      pulse_spectrum_abs2(-2.0 * lambda, cfg_.pulse_rms_width);
    }
    amplitude_ = solve_amplitude_for_energy(rho_abs2, grid_.dlambda, target_energy);
    conventional_amplitude_ = std::sqrt(p_norm);
}

ComplexEnvelope TxChain::qam_signal(const SymbolBurst& burst, double amp) const {
    ComplexEnvelope s = shape_pulses(burst, cfg_);
    for (Cd& v : s.samples) v *= amp;
    return s;
}

ContinuousSpectrum TxChain::encode(const SymbolBurst& burst) const {
    return nis_encode(qam_signal(burst, amplitude_));
}

ComplexEnvelope TxChain::tx_waveform(const SymbolBurst& burst, ExecPolicy policy) const {
    const ContinuousSpectrum pre = precompensate(encode(burst), cfg_.L_norm());
    GlmSolver solver(pre, grid_);
    return solver.full_warm(policy);
}

DetectionResult matched_filter_decide(const ComplexEnvelope& s_hat, const SystemConfig& cfg,
                                      const QamAlphabet& alphabet, double scale) {
    require_units(s_hat, Units::Normalized, "matched_filter_decide");
    const double t_begin = now_seconds();
    const FrameGeometry geom = FrameGeometry::from_config(cfg);
    if (s_hat.size() != geom.n_samples)
        throw FramingError("matched_filter_decide: frame size mismatch");

    const double sigma = cfg.pulse_rms_width;
    const long reach = static_cast<long>(std::ceil(4.0 * sigma / geom.dt));

    DetectionResult res;
    res.decided_symbols.resize(static_cast<std::size_t>(geom.Nb));
    res.per_symbol_metric.resize(static_cast<std::size_t>(geom.Nb));
    for (int k = 1; k <= geom.Nb; ++k) {
        const double c = geom.center(k);
        const long j0 = std::lround((c - geom.t_start) / geom.dt);
        Cd y(0.0, 0.0);
        for (long j = j0 - reach; j <= j0 + reach; ++j) {
            if (j < 0 || j >= static_cast<long>(geom.n_samples)) continue;
            const double t = geom.time_at(static_cast<std::size_t>(j));
            y += s_hat.samples[static_cast<std::size_t>(j)] * gaussian_pulse(t - c, sigma);
        }
        y *= geom.dt / scale;
        const int idx = alphabet.nearest(y);
        res.decided_symbols[static_cast<std::size_t>(k - 1)] = idx;
        res.per_symbol_metric[static_cast<std::size_t>(k - 1)] =
            std::norm(y - alphabet.points[static_cast<std::size_t>(idx)]);
    }
    res.elapsed = now_seconds() - t_begin;
    return res;
}

DetectionResult fnft_receiver(const ComplexEnvelope& q_rx, const TxChain& tx, ExecPolicy policy) {
    require_units(q_rx, Units::Normalized, "fnft_receiver");
    const double t_begin = now_seconds();

    // TX precompensation already cancels the channel's spectral phase, so the
    // recovered rho is compared directly.
    const ContinuousSpectrum rho_rx = fnft_continuous(q_rx, tx.grid(), policy);
    const ComplexEnvelope s_rx = nis_decode(rho_rx, tx.grid());
    DetectionResult res = matched_filter_decide(s_rx, tx.config(), tx.alphabet(), tx.amplitude());
    res.elapsed = now_seconds() - t_begin;
    return res;
}

DetectionResult df_bnft_receiver(const ComplexEnvelope& q_rx, const TxChain& tx,
                                 ExecPolicy policy) {
    require_units(q_rx, Units::Normalized, "df_bnft_receiver");
    const double t_begin = now_seconds();

    const FrameGeometry& geom = tx.geometry();
    const QamAlphabet& alphabet = tx.alphabet();
    const SystemConfig& cfg = tx.config();
    if (q_rx.size() != geom.n_samples ||
        std::abs(q_rx.t0 - geom.t_start) > 1e-9 ||
        std::abs(q_rx.dt - geom.dt) > 1e-12)
        throw FramingError("df_bnft_receiver: received frame grid does not match the TX framing");

    const int M = alphabet.order;
    const int Nb = geom.Nb;
    const std::size_t wpts = static_cast<std::size_t>(geom.sps) + 1;

    DetectionResult res;
    res.decided_symbols.resize(static_cast<std::size_t>(Nb));
    res.per_symbol_metric.resize(static_cast<std::size_t>(Nb));

    SymbolBurst trial;
    trial.alphabet = &alphabet;
    trial.symbols.assign(static_cast<std::size_t>(Nb), Cd(0.0, 0.0));

    std::vector<GlmWarmState> warm(wpts);
    CVec trial_vals(wpts);

    for (int k = 1; k <= Nb; ++k) {
        const auto [i_lo, i_hi] = geom.window_range(k);
        if (i_hi - i_lo + 1 != wpts)
            throw FramingError("df_bnft_receiver: malformed detection window");
        const double t_lo = geom.time_at(i_lo);

        for (GlmWarmState& w : warm) w.valid = false;

        double best_metric = std::numeric_limits<double>::infinity();
        int best_idx = 0;
        for (int i = 0; i < M; ++i) {
            trial.symbols[static_cast<std::size_t>(k - 1)] =
                alphabet.points[static_cast<std::size_t>(i)];

            // Same encoding as the TX; the precompensation/channel spectral
            // phases cancel by construction, so the trial spectrum is used
            // unrotated.
            const ContinuousSpectrum rho = tx.encode(trial);
            GlmSolver solver(rho, tx.grid());

            const long npts = static_cast<long>(wpts);
#pragma omp parallel for schedule(static) if (policy == ExecPolicy::OpenMP)
            for (long j = 0; j < npts; ++j) {
                const double t = t_lo + static_cast<double>(j) * geom.dt;
                trial_vals[static_cast<std::size_t>(j)] =
                    solver.solve_point_warm(t, warm[static_cast<std::size_t>(j)]);
            }

            double metric = 0.0;
            for (std::size_t j = 0; j < wpts; ++j) {
                const double w = (j == 0 || j + 1 == wpts) ? 0.5 * geom.dt : geom.dt;
                metric += w * std::norm(q_rx.samples[i_lo + j] - trial_vals[j]);
            }
            if (metric < best_metric) {
                best_metric = metric;
                best_idx = i;
            }

            res.glm_point_solves += solver.stats().point_solves.load();
            res.glm_cg_iterations += solver.stats().cg_iterations.load();
        }

        res.decided_symbols[static_cast<std::size_t>(k - 1)] = best_idx;
        res.per_symbol_metric[static_cast<std::size_t>(k - 1)] = best_metric;
        trial.symbols[static_cast<std::size_t>(k - 1)] =
            alphabet.points[static_cast<std::size_t>(best_idx)];
    }

    (void)cfg;
    res.elapsed = now_seconds() - t_begin;
    return res;
}

}  // namespace nfdm
