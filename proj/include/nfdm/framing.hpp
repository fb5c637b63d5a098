#pragma once

#include "nfdm/qam.hpp"
#include "nfdm/system_config.hpp"
#include "nfdm/types.hpp"

namespace nfdm {

/// Burst/guard layout in normalized time (Ts = 1). Symbol k (1-based) is
/// centered at c_k = (k-1) and owns the window [t_{k-1}, t_k] with
/// t_k = (k - 1/2); in the synthesized optical signal the same symbol is
/// decided on the mirrored window [-t_k, -t_{k-1}].
struct FrameGeometry {
    int Nb = 0;
    int Ng = 0;
    int sps = 0;
    double dt = 0.0;       // 1/sps
    double t_start = 0.0;  // -(Ng/2 + 1/2)
    std::size_t n_samples = 0;

    static FrameGeometry from_config(const SystemConfig& cfg);

    double center(int k) const { return static_cast<double>(k - 1); }      // k in 1..Nb
    double t_edge(int k) const { return static_cast<double>(k) - 0.5; }    // t_k, k in 0..Nb
    double time_at(std::size_t i) const { return t_start + static_cast<double>(i) * dt; }

    // Nearest-sample index of time t; throws FramingError if outside the grid.
    std::size_t index_of(double t) const;

    // Inclusive sample range of the detection window [-t_k, -t_{k-1}].
    std::pair<std::size_t, std::size_t> window_range(int k) const;
};

/// Unit-energy Gaussian pulse of RMS width sigma (normalized time), truncated
/// to |t| <= 4 sigma.
double gaussian_pulse(double t, double sigma);

/// s(t) = sum_k x_k g(t - c_k) on the frame grid; normalized units.
ComplexEnvelope shape_pulses(const SymbolBurst& burst, const SystemConfig& cfg);

/// Physical <-> normalized unit conversion: t/T0, amplitude/sqrt(P0).
ComplexEnvelope normalize(const ComplexEnvelope& env, const NormalizationScales& scales);
ComplexEnvelope denormalize(const ComplexEnvelope& env, const NormalizationScales& scales);

}  // namespace nfdm
