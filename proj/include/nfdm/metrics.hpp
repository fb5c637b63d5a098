#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "nfdm/qam.hpp"
#include "nfdm/receivers.hpp"
#include "nfdm/types.hpp"

namespace nfdm {

/// erfc^{-1}(y) on (0, 2), accurate to ~1e-15 relative (rational initial
/// guess refined by Newton on std::erfc).
double erfc_inv(double y);

/// Q^2 in dB: 20 log10( sqrt(2) erfc^{-1}(2 Pb) ). Domain (0, 0.5);
/// outside it the value is unmeasurable and an error is thrown.
double qfactor_db2(double Pb);

/// Nb / (Ng + Nb).
double rate_efficiency(int Nb, int Ng);

/// Gray-demaps both sides and counts differing bits.
std::pair<uint64_t, uint64_t> count_bit_errors(const SymbolBurst& tx, const DetectionResult& rx,
                                               const QamAlphabet& alphabet);

/// One row of the experiment CSV. Field order is the file schema.
struct ExperimentRecord {
    double power_dbm = 0.0;
    int Nb = 0;
    int Ng = 0;
    std::string receiver;
    uint64_t frames = 0;
    uint64_t bit_errors = 0;
    uint64_t bits_total = 0;
    double Pb = 0.0;
    std::optional<double> Q_db2;  // empty -> "unmeasurable"
    double eta = 0.0;
    uint64_t seed = 0;
    double wall_time = 0.0;

    static const char* csv_header();
    std::string csv_row() const;
};

}  // namespace nfdm
