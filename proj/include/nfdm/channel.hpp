#pragma once

#include <cstdint>
#include <random>

#include "nfdm/system_config.hpp"
#include "nfdm/types.hpp"

namespace nfdm {

constexpr double kPlanck = 6.62607015e-34;       // J s
constexpr double kCarrierFreq = 193.41e12;       // Hz (1550 nm)

/// Deterministic per-stream RNG. mt19937_64 seeded by splitmix-mixing
/// (seed, stream); normals via Box-Muller because std::normal_distribution
/// is implementation-defined and noise must be reproducible bit-for-bit.
class RngStream {
public:
    RngStream(uint64_t seed, uint64_t stream);
    double uniform();   // [0, 1)
    double gauss();     // standard normal
    uint32_t bit();

private:
    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

struct ChannelParams {
    double beta2 = 0.0;    // s^2/m
    double gamma = 0.0;    // 1/(W m)
    double alpha = 0.0;    // 1/m
    double L = 0.0;        // m
    double eta_sp = 0.0;
    int nz = 1;
    bool noise_on = true;
    uint64_t seed = 0;
    uint64_t stream = 0;   // per-frame noise stream

    static ChannelParams from_config(const SystemConfig& cfg);
};

/// Symmetric split-step integration of i q_z = (beta2/2) q_tt - gamma |q|^2 q
/// under ideal distributed amplification (loss exactly compensated); when
/// noise_on, each step adds circular white Gaussian noise of per-sample
/// variance eta_sp h nu alpha dz / dt. Physical units required.
ComplexEnvelope ssfm_propagate(const ComplexEnvelope& q, const ChannelParams& p);

/// Zero-noise backward propagation (beta2 -> -beta2, gamma -> -gamma).
ComplexEnvelope dbp(const ComplexEnvelope& q, const ChannelParams& p);

/// Electronic dispersion compensation: multiply the spectrum by
/// exp(-j (beta2/2) omega^2 L).
ComplexEnvelope edc(const ComplexEnvelope& q, const ChannelParams& p);

/// Brick-wall filter zeroing all discrete frequencies with |f| > B (Hz when
/// the envelope is physical, cycles per time-unit otherwise). Idempotent.
ComplexEnvelope ideal_lowpass(const ComplexEnvelope& q, double B);

}  // namespace nfdm
