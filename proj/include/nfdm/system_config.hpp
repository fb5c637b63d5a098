#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "nfdm/types.hpp"

namespace nfdm {

/// Time/distance/power scales mapping the physical NLSE
///   i A_z = (beta2/2) A_tt - gamma |A|^2 A
/// onto the normalized form used by the scattering transforms.
struct NormalizationScales {
    double T0 = 0.0;  // s
    double Z0 = 0.0;  // m,  Z0 = 2 T0^2 / |beta2|
    double P0 = 0.0;  // W,  P0 = 2 / (gamma Z0) = |beta2| / (gamma T0^2)

    static NormalizationScales from_fiber(double T0, double beta2, double gamma);
    void validate(double beta2, double gamma) const;
};

/// All physical and numerical parameters of one simulation cell.
struct SystemConfig {
    double Rs = 50e9;              // symbol rate, Hz
    double L = 400e3;              // link length, m
    double beta2 = -20.39e-27;     // GVD, s^2/m
    double alpha_db_km = 0.2;      // attenuation, dB/km (converted on use)
    double gamma = 1.22e-3;        // nonlinearity, 1/(W m)
    double eta_sp = 4.0;           // spontaneous emission factor
    double B_dacadc = 100e9;       // DAC/ADC one-sided bandwidth, Hz
    int Nb = 16;                   // burst length, symbols
    int Ng = 400;                  // guard symbols per burst
    int samples_per_symbol = 16;
    int nz = 400;                  // SSFM step count
    double power_dbm = -4.0;       // launch power
    uint64_t seed = 1;
    double pulse_rms_width = 0.2;  // RMS width of the Gaussian pulse, in Ts
    bool noise_on = true;

    double Ts() const { return 1.0 / Rs; }
    double alpha_per_m() const;         // linear attenuation, 1/m
    double power_watt() const;          // launch power in W
    NormalizationScales scales() const; // with T0 = Ts
    double L_norm() const { return L / scales().Z0; }

    // Throws ConfigError on hard violations; appends soft warnings.
    void validate(std::vector<std::string>* warnings = nullptr) const;
};

/// Experiment-level settings parsed from the same config file.
struct ExperimentConfig {
    SystemConfig system;
    std::vector<double> powers_dbm;       // sweep; if empty, {system.power_dbm}
    std::vector<int> burst_lengths;       // sweep; if empty, {system.Nb}
    std::vector<std::string> receivers;   // subset of {fnft, df-bnft, edc, dbp}
    std::vector<uint64_t> seeds;          // if empty, {system.seed}
    int min_bit_errors = 100;             // stopping rule
    int max_frames = 10000;               // stopping rule cap

    void validate() const;
};

/// Flat "key = value" file with [section] headers and # comments.
/// Sections: [system], [sweep], [stop]. Unknown keys are errors with
/// line-level diagnostics.
ExperimentConfig load_experiment_config(const std::string& path);

/// Apply "key=value" or "section.key=value" overrides.
void apply_overrides(ExperimentConfig& cfg, const std::vector<std::string>& sets);

}  // namespace nfdm
