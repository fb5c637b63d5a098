#include "nfdm/selftest.hpp"

#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>

#include "nfdm/channel.hpp"
#include "nfdm/framing.hpp"
#include "nfdm/metrics.hpp"
#include "nfdm/nft_engine.hpp"
#include "nfdm/receivers.hpp"

namespace nfdm {

namespace {

SystemConfig small_config() {
    SystemConfig cfg;
    cfg.Nb = 8;
    cfg.Ng = 56;
    cfg.samples_per_symbol = 8;
    cfg.nz = 50;
    cfg.L = 50e3;
    cfg.power_dbm = -2.0;
    cfg.noise_on = false;
    return cfg;
}

ComplexEnvelope random_burst_envelope(uint64_t seed, double amp) {
    SystemConfig cfg = small_config();
    const QamAlphabet alphabet = QamAlphabet::square(16);
    RngStream rng(seed, 7);
    SymbolBurst b;
    b.alphabet = &alphabet;
    for (int k = 0; k < cfg.Nb; ++k)
        b.symbols.push_back(alphabet.points[static_cast<std::size_t>(
            static_cast<int>(rng.uniform() * 16.0) % 16)]);
    ComplexEnvelope s = shape_pulses(b, cfg);
    for (Cd& v : s.samples) v *= amp;
    return s;
}

}  // namespace

std::vector<SelfTestResult> run_selftests(bool verbose) {
    std::vector<SelfTestResult> out;
    auto check = [&](const std::string& name, const std::function<std::pair<bool, std::string>()>& fn) {
        SelfTestResult r;
        r.name = name;
        try {
            auto [ok, detail] = fn();
            r.pass = ok;
            r.detail = detail;
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = std::string("exception: ") + e.what();
        }
        if (verbose)
            std::cout << (r.pass ? "[ OK ] " : "[FAIL] ") << r.name
                      << (r.detail.empty() ? "" : "  (" + r.detail + ")") << "\n";
        out.push_back(std::move(r));
    };

    check("16-QAM Gray labels differ by one bit between nearest neighbours", [] {
        const QamAlphabet a = QamAlphabet::square(16);
        double dmin = 1e9;
        for (int i = 0; i < 16; ++i)
            for (int j = i + 1; j < 16; ++j)
                dmin = std::min(dmin, std::abs(a.points[i] - a.points[j]));
        for (int i = 0; i < 16; ++i)
            for (int j = 0; j < 16; ++j) {
                if (i == j) continue;
                if (std::abs(a.points[i] - a.points[j]) < dmin * 1.001) {
                    const uint32_t x = a.label(i) ^ a.label(j);
                    if ((x & (x - 1)) != 0 || x == 0) return std::make_pair(false, std::string());
                }
            }
        return std::make_pair(true, std::string());
    });

    check("16-QAM has unit average energy", [] {
        const QamAlphabet a = QamAlphabet::square(16);
        double e = 0.0;
        for (const Cd& p : a.points) e += std::norm(p);
        e /= 16.0;
        std::ostringstream os;
        os << "mean |X|^2 = " << e;
        return std::make_pair(std::abs(e - 1.0) < 1e-12, os.str());
    });

    check("pulse shaping is linear in the symbols", [] {
        SystemConfig cfg = small_config();
        const QamAlphabet a = QamAlphabet::square(16);
        SymbolBurst x, y, z;
        x.alphabet = y.alphabet = z.alphabet = &a;
        RngStream rng(3, 1);
        for (int k = 0; k < cfg.Nb; ++k) {
            const Cd xv = a.points[static_cast<std::size_t>(static_cast<int>(rng.uniform() * 16) % 16)];
            const Cd yv = a.points[static_cast<std::size_t>(static_cast<int>(rng.uniform() * 16) % 16)];
            x.symbols.push_back(xv);
            y.symbols.push_back(yv);
            z.symbols.push_back(2.0 * xv + Cd(0.0, 1.0) * yv);
        }
        const ComplexEnvelope sx = shape_pulses(x, cfg), sy = shape_pulses(y, cfg),
                              sz = shape_pulses(z, cfg);
        double worst = 0.0;
        for (std::size_t j = 0; j < sx.size(); ++j)
            worst = std::max(worst,
                             std::abs(sz.samples[j] - (2.0 * sx.samples[j] + Cd(0.0, 1.0) * sy.samples[j])));
        return std::make_pair(worst < 1e-12, std::string());
    });

    check("normalize/denormalize round-trip at 1 ulp", [] {
        const NormalizationScales sc = NormalizationScales::from_fiber(20e-12, -20.39e-27, 1.22e-3);
        ComplexEnvelope e = random_burst_envelope(5, 1.0);
        ComplexEnvelope p = denormalize(e, sc);
        ComplexEnvelope back = normalize(p, sc);
        double worst = 0.0, scale = 0.0;
        for (std::size_t j = 0; j < e.size(); ++j) {
            worst = std::max(worst, std::abs(back.samples[j] - e.samples[j]));
            scale = std::max(scale, std::abs(e.samples[j]));
        }
        return std::make_pair(worst <= 4e-16 * scale, std::string());
    });

    check("vacuum scattering: a = 1, b = 0", [] {
        ComplexEnvelope q = random_burst_envelope(1, 0.0);
        const ContinuousSpectrum s = fnft_continuous(q, NftGrid::for_envelope(q));
        double worst = 0.0;
        for (std::size_t k = 0; k < s.n; ++k)
            worst = std::max({worst, std::abs(s.a[k] - 1.0), std::abs(s.b[k])});
        return std::make_pair(worst < 1e-12, std::string());
    });

    check("unimodularity |a|^2 + |b|^2 = 1", [] {
        ComplexEnvelope q = random_burst_envelope(2, 0.35);
        const ContinuousSpectrum s = fnft_continuous(q, NftGrid::for_envelope(q));
        std::ostringstream os;
        os << "defect " << s.unimodularity_defect();
        return std::make_pair(s.unimodularity_defect() < 1e-6, os.str());
    });

    check("nis_decode inverts nis_encode", [] {
        ComplexEnvelope s = random_burst_envelope(3, 0.2);
        const ContinuousSpectrum spec = nis_encode(s);
        const ComplexEnvelope back = nis_decode(spec, NftGrid::for_envelope(s));
        double worst = 0.0;
        for (std::size_t j = 0; j < s.size(); ++j)
            worst = std::max(worst, std::abs(back.samples[j] - s.samples[j]));
        return std::make_pair(worst < 1e-12, std::string());
    });

    check("backward transform of the vacuum is zero", [] {
        ComplexEnvelope s = random_burst_envelope(4, 0.0);
        ContinuousSpectrum spec = nis_encode(s);
        const ComplexEnvelope q = bnft_glm(spec, NftGrid::for_envelope(s));
        double worst = 0.0;
        for (const Cd& v : q.samples) worst = std::max(worst, std::abs(v));
        return std::make_pair(worst < 1e-14, std::string());
    });

    check("round trip BNFT(FNFT(q)) recovers q", [] {
        ComplexEnvelope q = random_burst_envelope(6, 0.3);
        const NftGrid grid = NftGrid::for_envelope(q);
        const ComplexEnvelope back = bnft_glm(fnft_continuous(q, grid), grid);
        double num = 0.0, den = 0.0;
        for (std::size_t j = 0; j < q.size(); ++j) {
            num += std::norm(back.samples[j] - q.samples[j]);
            den += std::norm(q.samples[j]);
        }
        std::ostringstream os;
        os << "rel L2 " << std::sqrt(num / den);
        return std::make_pair(std::sqrt(num / den) < 1e-3, os.str());
    });

    check("SPM-only propagation is exact", [] {
        SystemConfig cfg = small_config();
        cfg.beta2 = -1e-40;  // negligible dispersion
        ComplexEnvelope s = random_burst_envelope(8, 0.5);
        s = denormalize(s, cfg.scales());
        ChannelParams p = ChannelParams::from_config(cfg);
        p.beta2 = 0.0;
        p.noise_on = false;
        const ComplexEnvelope outp = ssfm_propagate(s, p);
        double worst = 0.0;
        for (std::size_t j = 0; j < s.size(); ++j) {
            const double phi = p.gamma * std::norm(s.samples[j]) * p.L;
            const Cd expect = s.samples[j] * Cd(std::cos(phi), std::sin(phi));
            worst = std::max(worst, std::abs(outp.samples[j] - expect));
        }
        return std::make_pair(worst < 1e-12, std::string());
    });

    check("EDC inverts the linear channel", [] {
        SystemConfig cfg = small_config();
        ComplexEnvelope s = denormalize(random_burst_envelope(9, 0.3), cfg.scales());
        ChannelParams p = ChannelParams::from_config(cfg);
        p.gamma = 0.0;
        p.noise_on = false;
        const ComplexEnvelope back = edc(ssfm_propagate(s, p), p);
        double worst = 0.0, scale = 0.0;
        for (std::size_t j = 0; j < s.size(); ++j) {
            worst = std::max(worst, std::abs(back.samples[j] - s.samples[j]));
            scale = std::max(scale, std::abs(s.samples[j]));
        }
        return std::make_pair(worst < 1e-10 * scale, std::string());
    });

    check("ideal_lowpass is idempotent", [] {
        SystemConfig cfg = small_config();
        ComplexEnvelope s = denormalize(random_burst_envelope(10, 0.3), cfg.scales());
        const ComplexEnvelope once = ideal_lowpass(s, cfg.B_dacadc);
        const ComplexEnvelope twice = ideal_lowpass(once, cfg.B_dacadc);
        double worst = 0.0, scale = 0.0;
        for (std::size_t j = 0; j < s.size(); ++j) {
            worst = std::max(worst, std::abs(twice.samples[j] - once.samples[j]));
            scale = std::max(scale, std::abs(once.samples[j]));
        }
        return std::make_pair(worst < 1e-13 * scale, std::string());
    });

    check("Q-factor matches the erfc oracle", [] {
        const double p1 = 0.5 * std::erfc(1.0 / std::sqrt(2.0));
        const double p2 = 0.5 * std::erfc(std::sqrt(2.0));
        const double q1 = qfactor_db2(p1);
        const double q2 = qfactor_db2(p2);
        return std::make_pair(std::abs(q1) < 1e-6 && std::abs(q2 - 20.0 * std::log10(2.0)) < 1e-6,
                              std::string());
    });

    check("windowed backward transform equals the full restriction", [] {
        ComplexEnvelope s = random_burst_envelope(11, 0.25);
        const NftGrid grid = NftGrid::for_envelope(s);
        ContinuousSpectrum spec = nis_encode(s);
        GlmSolver solver(spec, grid);
        const ComplexEnvelope fullq = solver.full();
        const CVec win = solver.window(fullq.t0 + 40.0 * fullq.dt, fullq.t0 + 72.0 * fullq.dt);
        double worst = 0.0;
        for (std::size_t j = 0; j < win.size(); ++j)
            worst = std::max(worst, std::abs(win[j] - fullq.samples[40 + j]));
        return std::make_pair(worst == 0.0, std::string());
    });

    return out;
}

}  // namespace nfdm
