#include "nfdm/framing.hpp"

#include <cmath>

namespace nfdm {

FrameGeometry FrameGeometry::from_config(const SystemConfig& cfg) {
    FrameGeometry g;
    g.Nb = cfg.Nb;
    g.Ng = cfg.Ng;
    g.sps = cfg.samples_per_symbol;
    if (g.sps % 2 != 0)
        throw ConfigError("FrameGeometry: samples_per_symbol must be even (window edges on-grid)");
    g.dt = 1.0 / static_cast<double>(g.sps);
    g.t_start = -(static_cast<double>(g.Ng) / 2.0 + 0.5);
    g.n_samples = static_cast<std::size_t>(g.Nb + g.Ng) * static_cast<std::size_t>(g.sps);

    // The guard (plus the half-symbol margin) must absorb the pulse tails.
    const double reach = 4.0 * cfg.pulse_rms_width;
    if (-g.t_start < reach)
        throw ConfigError("FrameGeometry: grid too short for burst plus guard (pulse tail clipped)");
    return g;
}

std::size_t FrameGeometry::index_of(double t) const {
    const double x = (t - t_start) / dt;
    const long i = std::lround(x);
    if (std::abs(x - static_cast<double>(i)) > 1e-9)
        throw FramingError("FrameGeometry: time not on the sample grid");
    if (i < 0 || static_cast<std::size_t>(i) >= n_samples)
        throw FramingError("FrameGeometry: time outside the frame grid");
    return static_cast<std::size_t>(i);
}

std::pair<std::size_t, std::size_t> FrameGeometry::window_range(int k) const {
    if (k < 1 || k > Nb) throw FramingError("FrameGeometry: window index out of range");
    return {index_of(-t_edge(k)), index_of(-t_edge(k - 1))};
}

double gaussian_pulse(double t, double sigma) {
    if (std::abs(t) > 4.0 * sigma) return 0.0;
    // Unit energy over the truncated support.
    static const double erf4 = std::erf(4.0);  // truncation correction
    const double c = 1.0 / std::sqrt(sigma * std::sqrt(kPi) * erf4);
    return c * std::exp(-t * t / (2.0 * sigma * sigma));
}

ComplexEnvelope shape_pulses(const SymbolBurst& burst, const SystemConfig& cfg) {
    if (burst.symbols.empty()) throw UsageError("shape_pulses: empty burst");
    if (static_cast<int>(burst.symbols.size()) != cfg.Nb)
        throw UsageError("shape_pulses: burst length does not match cfg.Nb");

    const FrameGeometry geom = FrameGeometry::from_config(cfg);
    const double sigma = cfg.pulse_rms_width;

    ComplexEnvelope env;
    env.t0 = geom.t_start;
    env.dt = geom.dt;
    env.units = Units::Normalized;
    env.samples.assign(geom.n_samples, Cd(0.0, 0.0));

    const long reach = static_cast<long>(std::ceil(4.0 * sigma / geom.dt));
    for (int k = 1; k <= geom.Nb; ++k) {
        const Cd x = burst.symbols[static_cast<std::size_t>(k - 1)];
        if (x == Cd(0.0, 0.0)) continue;
        const double c = geom.center(k);
        const long j0 = std::lround((c - geom.t_start) / geom.dt);
        for (long j = j0 - reach; j <= j0 + reach; ++j) {
            if (j < 0 || j >= static_cast<long>(geom.n_samples)) continue;
            const double t = geom.time_at(static_cast<std::size_t>(j));
            env.samples[static_cast<std::size_t>(j)] += x * gaussian_pulse(t - c, sigma);
        }
    }
    return env;
}

ComplexEnvelope normalize(const ComplexEnvelope& env, const NormalizationScales& scales) {
    require_units(env, Units::Physical, "normalize");
    ComplexEnvelope out;
    out.t0 = env.t0 / scales.T0;
    out.dt = env.dt / scales.T0;
    out.units = Units::Normalized;
    const double inv_amp = 1.0 / std::sqrt(scales.P0);
    out.samples.resize(env.samples.size());
    for (std::size_t i = 0; i < env.samples.size(); ++i) out.samples[i] = env.samples[i] * inv_amp;
    return out;
}

ComplexEnvelope denormalize(const ComplexEnvelope& env, const NormalizationScales& scales) {
    require_units(env, Units::Normalized, "denormalize");
    ComplexEnvelope out;
    out.t0 = env.t0 * scales.T0;
    out.dt = env.dt * scales.T0;
    out.units = Units::Physical;
    const double amp = std::sqrt(scales.P0);
    out.samples.resize(env.samples.size());
    for (std::size_t i = 0; i < env.samples.size(); ++i) out.samples[i] = env.samples[i] * amp;
    return out;
}

}  // namespace nfdm
