#include "nfdm/metrics.hpp"

#include <cmath>
#include <cstdio>

namespace nfdm {

double erfc_inv(double y) {
    if (!(y > 0.0 && y < 2.0)) throw UsageError("erfc_inv: argument outside (0, 2)");
    // Initial guess from the normal-quantile relation, then Newton on erfc.
    const double p = y / 2.0;  // upper-tail probability of N(0,1) at sqrt(2) x
    double t = std::sqrt(-2.0 * std::log(p < 0.5 ? p : 1.0 - p));
    double z = t - (2.30753 + 0.27061 * t) / (1.0 + t * (0.99229 + 0.04481 * t));
    if (p > 0.5) z = -z;
    double x = z / std::sqrt(2.0);
    for (int it = 0; it < 4; ++it) {
        const double err = std::erfc(x) - y;
        const double deriv = -2.0 / std::sqrt(kPi) * std::exp(-x * x);
        x -= err / deriv;
    }
    return x;
}

double qfactor_db2(double Pb) {
    if (!(Pb > 0.0 && Pb < 0.5))
        throw UsageError("qfactor_db2: Pb outside (0, 0.5) is unmeasurable");
    return 20.0 * std::log10(std::sqrt(2.0) * erfc_inv(2.0 * Pb));
}

double rate_efficiency(int Nb, int Ng) {
    if (Nb < 0 || Ng < 0 || Nb + Ng == 0) throw UsageError("rate_efficiency: bad arguments");
    return static_cast<double>(Nb) / static_cast<double>(Ng + Nb);
}

std::pair<uint64_t, uint64_t> count_bit_errors(const SymbolBurst& tx, const DetectionResult& rx,
                                               const QamAlphabet& alphabet) {
    if (tx.symbols.size() != rx.decided_symbols.size())
        throw UsageError("count_bit_errors: burst length mismatch");
    const std::vector<uint8_t> tx_bits = demap_burst(tx);
    const std::vector<uint8_t> rx_bits = demap_indices(rx.decided_symbols, alphabet);
    uint64_t errors = 0;
    for (std::size_t i = 0; i < tx_bits.size(); ++i)
        if (tx_bits[i] != rx_bits[i]) ++errors;
    return {errors, tx_bits.size()};
}

const char* ExperimentRecord::csv_header() {
    return "power_dbm,Nb,Ng,receiver,frames,bit_errors,bits_total,Pb,Q_db2,eta,seed,wall_time";
}

std::string ExperimentRecord::csv_row() const {
    char buf[320];
    char qbuf[40];
    if (Q_db2.has_value())
        std::snprintf(qbuf, sizeof(qbuf), "%.6f", *Q_db2);
    else
        std::snprintf(qbuf, sizeof(qbuf), "unmeasurable");
    std::snprintf(buf, sizeof(buf), "%.2f,%d,%d,%s,%llu,%llu,%llu,%.10e,%s,%.8f,%llu,%.3f",
                  power_dbm, Nb, Ng, receiver.c_str(), static_cast<unsigned long long>(frames),
                  static_cast<unsigned long long>(bit_errors),
                  static_cast<unsigned long long>(bits_total), Pb, qbuf, eta,
                  static_cast<unsigned long long>(seed), wall_time);
    return std::string(buf);
}

}  // namespace nfdm
