#include "nfdm/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "nfdm/channel.hpp"
#include "nfdm/framing.hpp"
#include "nfdm/receivers.hpp"

namespace nfdm {

namespace {

uint64_t fnv1a(const std::string& s) {
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

struct FrameResult {
    uint64_t bit_errors = 0;
    uint64_t bits = 0;
    bool guard_violation = false;
    std::string error;  // non-empty: a numerical failure to re-throw
};

// One TX -> channel -> RX -> error-count pass.
FrameResult run_frame(const SystemConfig& cfg, const TxChain& tx, const std::string& receiver,
                      uint64_t cell_hash, uint64_t frame) {
    FrameResult out;
    const QamAlphabet& alphabet = tx.alphabet();
    const int bps = alphabet.bits_per_symbol();

    RngStream sym_rng(cfg.seed, cell_hash ^ (2 * frame));
    std::vector<uint8_t> bits(static_cast<std::size_t>(cfg.Nb) * static_cast<std::size_t>(bps));
    for (uint8_t& b : bits) b = static_cast<uint8_t>(sym_rng.bit());
    const SymbolBurst burst = map_bits_to_burst(bits, alphabet);

    const NormalizationScales scales = cfg.scales();
    ChannelParams chan = ChannelParams::from_config(cfg);
    chan.stream = cell_hash ^ (2 * frame + 1);

    const bool nfdm = (receiver == "fnft" || receiver == "df-bnft");

    try {
        ComplexEnvelope tx_norm = nfdm ? tx.tx_waveform(burst, ExecPolicy::Serial)
                                       : tx.qam_signal(burst, tx.conventional_amplitude());
        ComplexEnvelope launched =
            ideal_lowpass(denormalize(tx_norm, scales), cfg.B_dacadc);
        ComplexEnvelope received = ssfm_propagate(launched, chan);
        ComplexEnvelope filtered = ideal_lowpass(received, cfg.B_dacadc);

        DetectionResult det;
        if (receiver == "fnft") {
            det = fnft_receiver(normalize(filtered, scales), tx, ExecPolicy::Serial);
        } else if (receiver == "df-bnft") {
            det = df_bnft_receiver(normalize(filtered, scales), tx, ExecPolicy::Serial);
        } else {
            ComplexEnvelope equalized =
                (receiver == "dbp") ? dbp(filtered, chan) : edc(filtered, chan);
            det = matched_filter_decide(normalize(equalized, scales), cfg, alphabet,
                                        tx.conventional_amplitude());
        }
        auto [errors, total] = count_bit_errors(burst, det, alphabet);
        out.bit_errors = errors;
        out.bits = total;
    } catch (const GuardViolation&) {
        out.guard_violation = true;
    } catch (const std::exception& e) {
        std::ostringstream os;
        os << e.what() << " (frame " << frame << ")";
        out.error = os.str();
    }
    return out;
}

}  // namespace

CellOutcome run_cell(const ExperimentConfig& cfg, const std::string& receiver, double power_dbm,
                     int Nb, uint64_t seed, bool progress) {
    const auto t_begin = std::chrono::steady_clock::now();

    SystemConfig sys = cfg.system;
    sys.power_dbm = power_dbm;
    sys.Nb = Nb;
    sys.seed = seed;
    std::vector<std::string> warnings;
    sys.validate(&warnings);
    for (const std::string& w : warnings) std::cerr << "warning: " << w << "\n";

    static const QamAlphabet alphabet = QamAlphabet::square(16);
    const TxChain tx(sys, alphabet);

    std::ostringstream key;
    key << receiver << "|" << power_dbm << "|" << Nb;
    const uint64_t cell_hash = fnv1a(key.str());

    CellOutcome out;
    out.record.power_dbm = power_dbm;
    out.record.Nb = Nb;
    out.record.Ng = sys.Ng;
    out.record.receiver = receiver;
    out.record.seed = seed;
    out.record.eta = rate_efficiency(Nb, sys.Ng);

    uint64_t errors = 0, bits = 0, frames = 0;
    bool guard = false;
    constexpr uint64_t kBatch = 16;  // fixed batch keeps stopping deterministic
    std::vector<FrameResult> batch(kBatch);

    while (true) {
        const long nb = static_cast<long>(kBatch);
#pragma omp parallel for schedule(dynamic)
        for (long i = 0; i < nb; ++i)
            batch[static_cast<std::size_t>(i)] =
                run_frame(sys, tx, receiver, cell_hash, frames + static_cast<uint64_t>(i));
        for (const FrameResult& fr : batch) {
            if (!fr.error.empty()) throw NumericalError(fr.error);
            errors += fr.bit_errors;
            bits += fr.bits;
            guard = guard || fr.guard_violation;
        }
        frames += kBatch;
        if (guard) {
            out.stop_reason = "guard-violation";
            out.valid = false;
            break;
        }
        if (errors >= static_cast<uint64_t>(cfg.min_bit_errors)) {
            out.stop_reason = "errors";
            break;
        }
        if (frames >= static_cast<uint64_t>(cfg.max_frames)) {
            out.stop_reason = "cap";
            break;
        }
        if (progress && frames % 256 == 0)
            std::cerr << "    ... " << receiver << " P=" << power_dbm << " Nb=" << Nb << " seed="
                      << seed << ": " << frames << " frames, " << errors << " errors\r";
    }

    out.record.frames = frames;
    out.record.bit_errors = errors;
    out.record.bits_total = bits;
    out.record.Pb = bits > 0 ? static_cast<double>(errors) / static_cast<double>(bits) : 0.0;
    if (out.valid && out.record.Pb > 0.0 && out.record.Pb < 0.5)
        out.record.Q_db2 = qfactor_db2(out.record.Pb);
    out.record.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_begin).count();
    return out;
}

SweepResult run_experiment(const ExperimentConfig& cfg, const std::string& out_dir,
                           bool progress) {
    SweepResult res;
    std::ostringstream csv;
    csv << ExperimentRecord::csv_header() << "\n";

    for (const std::string& receiver : cfg.receivers) {
        for (int Nb : cfg.burst_lengths) {
            for (double power : cfg.powers_dbm) {
                for (uint64_t seed : cfg.seeds) {
                    CellOutcome cell = run_cell(cfg, receiver, power, Nb, seed, progress);
                    if (progress) {
                        std::cerr << "cell " << receiver << " P=" << power << " dBm Nb=" << Nb
                                  << " seed=" << seed << ": Pb=" << cell.record.Pb << " ("
                                  << cell.record.frames << " frames, stop=" << cell.stop_reason
                                  << ")\n";
                    }
                    csv << cell.record.csv_row() << "\n";
                    res.cells.push_back(std::move(cell));
                }
            }
        }
    }
    res.results_csv = csv.str();

    // Optimal power per (receiver, Nb, seed): max measurable Q over the sweep.
    std::ostringstream sum;
    sum << "receiver,Nb,seed,eta,best_power_dbm,best_Q_db2\n";
    for (const std::string& receiver : cfg.receivers) {
        for (int Nb : cfg.burst_lengths) {
            for (uint64_t seed : cfg.seeds) {
                std::optional<double> best_q;
                double best_p = 0.0;
                for (const CellOutcome& c : res.cells) {
                    if (c.record.receiver != receiver || c.record.Nb != Nb ||
                        c.record.seed != seed || !c.valid || !c.record.Q_db2.has_value())
                        continue;
                    if (!best_q.has_value() || *c.record.Q_db2 > *best_q) {
                        best_q = c.record.Q_db2;
                        best_p = c.record.power_dbm;
                    }
                }
                sum << receiver << "," << Nb << "," << seed << ","
                    << rate_efficiency(Nb, cfg.system.Ng) << ",";
                if (best_q.has_value())
                    sum << best_p << "," << *best_q << "\n";
                else
                    sum << "unmeasurable,unmeasurable\n";
            }
        }
    }
    res.summary_csv = sum.str();

    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        std::ofstream rf(out_dir + "/results.csv");
        rf << res.results_csv;
        std::ofstream sf(out_dir + "/summary.csv");
        sf << res.summary_csv;
    }
    return res;
}

CausalityDemoResult demo_causality(const SystemConfig& cfg_in) {
    SystemConfig cfg = cfg_in;
    cfg.Nb = 8;
    cfg.noise_on = false;

    static const QamAlphabet alphabet = QamAlphabet::square(16);
    const TxChain tx(cfg, alphabet);

    RngStream rng(cfg.seed, fnv1a("causality-demo"));
    SymbolBurst b8;
    b8.alphabet = &alphabet;
    for (int k = 0; k < 8; ++k) {
        const int idx = static_cast<int>(rng.uniform() * 16.0) % 16;
        b8.symbols.push_back(alphabet.points[static_cast<std::size_t>(idx)]);
    }
    SymbolBurst b6 = b8;
    b6.symbols[6] = Cd(0.0, 0.0);
    b6.symbols[7] = Cd(0.0, 0.0);

    // Transmit-side property: no precompensation involved.
    GlmSolver s8(tx.encode(b8), tx.grid());
    GlmSolver s6(tx.encode(b6), tx.grid());
    const ComplexEnvelope q8 = s8.full();
    const ComplexEnvelope q6 = s6.full();

    const double t6 = tx.geometry().t_edge(6);
    const double margin = 4.0 * cfg.pulse_rms_width - 0.5;  // pulse-tail reach past t6

    double peak = 0.0;
    for (const Cd& v : q8.samples) peak = std::max(peak, std::abs(v));

    CausalityDemoResult out;
    out.t6 = t6;
    std::ostringstream csv;
    csv << "t,abs_q8,abs_q6\n";
    for (std::size_t j = 0; j < q8.size(); ++j) {
        const double t = q8.time_at(j);
        const double dev = std::abs(q8.samples[j] - q6.samples[j]) / peak;
        if (t > -t6) out.dev_after_raw = std::max(out.dev_after_raw, dev);
        if (t > -t6 + margin) out.dev_after_margin = std::max(out.dev_after_margin, dev);
        if (t < -t6) out.dev_before = std::max(out.dev_before, dev);
        csv << t << "," << std::abs(q8.samples[j]) << "," << std::abs(q6.samples[j]) << "\n";
    }
    out.csv = csv.str();
    return out;
}

}  // namespace nfdm
