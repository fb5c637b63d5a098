#include "nfdm/system_config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace nfdm {

NormalizationScales NormalizationScales::from_fiber(double T0, double beta2, double gamma) {
    if (!(T0 > 0.0)) throw ConfigError("NormalizationScales: T0 must be positive");
    if (!(beta2 < 0.0)) throw ConfigError("NormalizationScales: anomalous dispersion (beta2 < 0) required");
    if (!(gamma > 0.0)) throw ConfigError("NormalizationScales: gamma must be positive");
    NormalizationScales s;
    s.T0 = T0;
    s.Z0 = 2.0 * T0 * T0 / std::abs(beta2);
    s.P0 = 2.0 / (gamma * s.Z0);
    return s;
}

void NormalizationScales::validate(double beta2, double gamma) const {
    if (!(T0 > 0.0 && Z0 > 0.0 && P0 > 0.0))
        throw ConfigError("NormalizationScales: scales must be strictly positive");
    const double z0_ref = 2.0 * T0 * T0 / std::abs(beta2);
    const double p0_ref = 2.0 / (gamma * z0_ref);
    if (std::abs(Z0 - z0_ref) > 1e-12 * z0_ref || std::abs(P0 - p0_ref) > 1e-12 * p0_ref)
        throw ConfigError("NormalizationScales: Z0/P0 inconsistent with T0, beta2, gamma");
}

double SystemConfig::alpha_per_m() const {
    // dB/km -> 1/m (field-power attenuation coefficient)
    return alpha_db_km * std::log(10.0) / 10.0 / 1000.0;
}

double SystemConfig::power_watt() const { return 1e-3 * std::pow(10.0, power_dbm / 10.0); }

NormalizationScales SystemConfig::scales() const {
    return NormalizationScales::from_fiber(Ts(), beta2, gamma);
}

void SystemConfig::validate(std::vector<std::string>* warnings) const {
    if (!(Rs > 0.0)) throw ConfigError("SystemConfig: Rs must be positive");
    if (!(L > 0.0)) throw ConfigError("SystemConfig: L must be positive");
    if (!(beta2 < 0.0)) throw ConfigError("SystemConfig: beta2 must be negative (anomalous dispersion)");
    if (!(gamma > 0.0)) throw ConfigError("SystemConfig: gamma must be positive");
    if (!(alpha_db_km >= 0.0)) throw ConfigError("SystemConfig: alpha must be non-negative");
    if (!(eta_sp >= 0.0)) throw ConfigError("SystemConfig: eta_sp must be non-negative");
    if (!(B_dacadc > 0.0)) throw ConfigError("SystemConfig: B_dacadc must be positive");
    if (Nb < 1) throw ConfigError("SystemConfig: Nb must be >= 1");
    if (Ng < 0) throw ConfigError("SystemConfig: Ng must be >= 0");
    if (samples_per_symbol < 2) throw ConfigError("SystemConfig: samples_per_symbol must be >= 2");
    if (nz < 1) throw ConfigError("SystemConfig: nz must be >= 1");
    if (!(pulse_rms_width > 0.0)) throw ConfigError("SystemConfig: pulse_rms_width must be positive");

    // Nyquist for the ideal DAC/ADC filters.
    if (static_cast<double>(samples_per_symbol) * Rs < 2.0 * B_dacadc)
        throw ConfigError("SystemConfig: samples_per_symbol * Rs < 2 * B_dacadc (Nyquist violated)");

    // Guard must cover the dispersion memory 2*pi*B*|beta2|*L.
    const double memory_s = 2.0 * kPi * B_dacadc * std::abs(beta2) * L;
    if (static_cast<double>(Ng) * Ts() < memory_s && warnings != nullptr) {
        std::ostringstream os;
        os << "guard interval Ng*Ts = " << static_cast<double>(Ng) * Ts()
           << " s does not cover the dispersion memory " << memory_s << " s";
        warnings->push_back(os.str());
    }
}

void ExperimentConfig::validate() const {
    system.validate(nullptr);
    for (const std::string& r : receivers)
        if (r != "fnft" && r != "df-bnft" && r != "edc" && r != "dbp")
            throw ConfigError("ExperimentConfig: unknown receiver '" + r + "'");
    for (int nb : burst_lengths)
        if (nb < 1) throw ConfigError("ExperimentConfig: burst length must be >= 1");
    if (min_bit_errors < 1) throw ConfigError("ExperimentConfig: min_bit_errors must be >= 1");
    if (max_frames < 1) throw ConfigError("ExperimentConfig: max_frames must be >= 1");
}

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

[[noreturn]] void fail_at(const std::string& path, int line, const std::string& msg) {
    std::ostringstream os;
    os << path << ":" << line << ": " << msg;
    throw ConfigError(os.str());
}

double parse_double(const std::string& path, int line, const std::string& v) {
    try {
        std::size_t pos = 0;
        double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        fail_at(path, line, "expected a number, got '" + v + "'");
    }
}

long long parse_int(const std::string& path, int line, const std::string& v) {
    try {
        std::size_t pos = 0;
        long long i = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return i;
    } catch (const std::exception&) {
        fail_at(path, line, "expected an integer, got '" + v + "'");
    }
}

bool parse_bool(const std::string& path, int line, const std::string& v) {
    if (v == "true" || v == "on" || v == "1") return true;
    if (v == "false" || v == "off" || v == "0") return false;
    fail_at(path, line, "expected a boolean, got '" + v + "'");
}

// Applies one key to the config. `where` is "path:line" for diagnostics.
void apply_key(ExperimentConfig& cfg, const std::string& section, const std::string& key,
               const std::string& value, const std::string& path, int line) {
    SystemConfig& s = cfg.system;
    if (section == "system" || section.empty()) {
        if (key == "Rs_hz") { s.Rs = parse_double(path, line, value); return; }
        if (key == "L_km") { s.L = 1e3 * parse_double(path, line, value); return; }
        if (key == "beta2_ps2_km") { s.beta2 = 1e-27 * parse_double(path, line, value); return; }
        if (key == "alpha_db_km") { s.alpha_db_km = parse_double(path, line, value); return; }
        if (key == "gamma_w_km") { s.gamma = 1e-3 * parse_double(path, line, value); return; }
        if (key == "eta_sp") { s.eta_sp = parse_double(path, line, value); return; }
        if (key == "B_dacadc_hz") { s.B_dacadc = parse_double(path, line, value); return; }
        if (key == "Nb") { s.Nb = static_cast<int>(parse_int(path, line, value)); return; }
        if (key == "Ng") { s.Ng = static_cast<int>(parse_int(path, line, value)); return; }
        if (key == "samples_per_symbol") { s.samples_per_symbol = static_cast<int>(parse_int(path, line, value)); return; }
        if (key == "nz") { s.nz = static_cast<int>(parse_int(path, line, value)); return; }
        if (key == "power_dbm") { s.power_dbm = parse_double(path, line, value); return; }
        if (key == "seed") { s.seed = static_cast<uint64_t>(parse_int(path, line, value)); return; }
        if (key == "pulse_rms_width") { s.pulse_rms_width = parse_double(path, line, value); return; }
        if (key == "noise_on") { s.noise_on = parse_bool(path, line, value); return; }
        fail_at(path, line, "unknown [system] key '" + key + "'");
    }
    if (section == "sweep") {
        if (key == "powers_dbm") {
            cfg.powers_dbm.clear();
            for (const std::string& p : split_list(value))
                cfg.powers_dbm.push_back(parse_double(path, line, p));
            return;
        }
        if (key == "burst_lengths") {
            cfg.burst_lengths.clear();
            for (const std::string& p : split_list(value))
                cfg.burst_lengths.push_back(static_cast<int>(parse_int(path, line, p)));
            return;
        }
        if (key == "receivers") {
            cfg.receivers = split_list(value);
            return;
        }
        if (key == "seeds") {
            cfg.seeds.clear();
            for (const std::string& p : split_list(value))
                cfg.seeds.push_back(static_cast<uint64_t>(parse_int(path, line, p)));
            return;
        }
        fail_at(path, line, "unknown [sweep] key '" + key + "'");
    }
    if (section == "stop") {
        if (key == "min_bit_errors") { cfg.min_bit_errors = static_cast<int>(parse_int(path, line, value)); return; }
        if (key == "max_frames") { cfg.max_frames = static_cast<int>(parse_int(path, line, value)); return; }
        fail_at(path, line, "unknown [stop] key '" + key + "'");
    }
    fail_at(path, line, "unknown section [" + section + "]");
}

}  // namespace

ExperimentConfig load_experiment_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");

    ExperimentConfig cfg;
    std::string section = "system";
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string s = trim(raw);
        std::size_t hash = s.find('#');
        if (hash != std::string::npos) s = trim(s.substr(0, hash));
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']') fail_at(path, line, "malformed section header");
            section = trim(s.substr(1, s.size() - 2));
            continue;
        }
        std::size_t eq = s.find('=');
        if (eq == std::string::npos) fail_at(path, line, "expected 'key = value'");
        std::string key = trim(s.substr(0, eq));
        std::string value = trim(s.substr(eq + 1));
        if (key.empty()) fail_at(path, line, "empty key");
        apply_key(cfg, section, key, value, path, line);
    }

    if (cfg.powers_dbm.empty()) cfg.powers_dbm = {cfg.system.power_dbm};
    if (cfg.burst_lengths.empty()) cfg.burst_lengths = {cfg.system.Nb};
    if (cfg.receivers.empty()) cfg.receivers = {"fnft", "df-bnft", "edc", "dbp"};
    if (cfg.seeds.empty()) cfg.seeds = {cfg.system.seed};
    cfg.validate();
    return cfg;
}

void apply_overrides(ExperimentConfig& cfg, const std::vector<std::string>& sets) {
    for (const std::string& kv : sets) {
        std::size_t eq = kv.find('=');
        if (eq == std::string::npos)
            throw ConfigError("override '" + kv + "' is not of the form key=value");
        std::string key = trim(kv.substr(0, eq));
        std::string value = trim(kv.substr(eq + 1));
        std::string section;
        std::size_t dot = key.find('.');
        if (dot != std::string::npos) {
            section = key.substr(0, dot);
            key = key.substr(dot + 1);
            apply_key(cfg, section, key, value, "<override>", 0);
            continue;
        }
        // No section given: try each in turn, re-throwing value errors.
        for (const char* sec : {"system", "sweep", "stop"}) {
            try {
                apply_key(cfg, sec, key, value, "<override>", 0);
                section = sec;
                break;
            } catch (const ConfigError& e) {
                if (std::string(e.what()).find("unknown") == std::string::npos) throw;
            }
        }
        if (section.empty())
            throw ConfigError("override key '" + key + "' matches no known setting");
    }
    if (cfg.powers_dbm.empty()) cfg.powers_dbm = {cfg.system.power_dbm};
    if (cfg.burst_lengths.empty()) cfg.burst_lengths = {cfg.system.Nb};
    if (cfg.seeds.empty()) cfg.seeds = {cfg.system.seed};
    cfg.validate();
}

}  // namespace nfdm
