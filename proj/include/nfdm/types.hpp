#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace nfdm {

using Cd = std::complex<double>;
using CVec = std::vector<Cd>;

constexpr double kPi = 3.14159265358979323846;

// Error categories used across the library.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UsageError : std::logic_error {
    using std::logic_error::logic_error;
};
struct FramingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct GuardViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Units : uint8_t { Physical, Normalized };

/// Uniformly sampled complex baseband waveform with its time grid.
struct ComplexEnvelope {
    CVec samples;
    double t0 = 0.0;  // time of samples[0]
    double dt = 1.0;  // sample spacing, > 0
    Units units = Units::Normalized;

    ComplexEnvelope() = default;
    ComplexEnvelope(CVec s, double t0_, double dt_, Units u)
        : samples(std::move(s)), t0(t0_), dt(dt_), units(u) {
        validate();
    }

    std::size_t size() const { return samples.size(); }
    double time_at(std::size_t i) const { return t0 + static_cast<double>(i) * dt; }
    double t_end() const { return time_at(samples.empty() ? 0 : samples.size() - 1); }

    // Sum |x|^2 dt over the grid.
    double energy() const {
        double e = 0.0;
        for (const Cd& v : samples) e += std::norm(v);
        return e * dt;
    }

    void validate() const {
        if (samples.size() < 2) throw UsageError("ComplexEnvelope: need at least 2 samples");
        if (!(dt > 0.0)) throw UsageError("ComplexEnvelope: dt must be positive");
    }
};

inline void require_units(const ComplexEnvelope& env, Units u, const char* where) {
    if (env.units != u)
        throw UsageError(std::string(where) + ": envelope has wrong units flag");
}

}  // namespace nfdm
