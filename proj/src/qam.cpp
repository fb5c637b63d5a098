#include "nfdm/qam.hpp"

#include <cmath>
#include <limits>

namespace nfdm {

namespace {

// Reflected binary (Gray) code of n.
uint32_t gray(uint32_t n) { return n ^ (n >> 1); }

uint32_t gray_inverse(uint32_t g) {
    uint32_t n = 0;
    for (; g; g >>= 1) n ^= g;
    return n;
}

}  // namespace

int QamAlphabet::bits_per_symbol() const {
    int b = 0;
    for (int m = order; m > 1; m >>= 1) ++b;
    return b;
}

int QamAlphabet::nearest(Cd y) const {
    int best = 0;
    double best_d = std::numeric_limits<double>::max();
    for (int i = 0; i < order; ++i) {
        double d = std::norm(y - points[static_cast<std::size_t>(i)]);
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    return best;
}

QamAlphabet QamAlphabet::square(int order) {
    if (order < 4) throw ConfigError("QamAlphabet: order must be >= 4");
    int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(order))));
    if (side * side != order || (side & (side - 1)) != 0)
        throw ConfigError("QamAlphabet: order must be a perfect square power of 4");

    int bits_per_dim = 0;
    for (int m = side; m > 1; m >>= 1) ++bits_per_dim;

    // PAM levels -side+1, ..., -1, 1, ..., side-1; unit mean symbol energy.
    double mean_e = 0.0;
    std::vector<double> levels(static_cast<std::size_t>(side));
    for (int l = 0; l < side; ++l) {
        levels[static_cast<std::size_t>(l)] = static_cast<double>(2 * l - side + 1);
        mean_e += levels[static_cast<std::size_t>(l)] * levels[static_cast<std::size_t>(l)];
    }
    mean_e = 2.0 * mean_e / static_cast<double>(side);
    const double scale = 1.0 / std::sqrt(mean_e);

    QamAlphabet a;
    a.order = order;
    a.points.resize(static_cast<std::size_t>(order));
    a.bit_map.resize(static_cast<std::size_t>(order));
    for (int i = 0; i < side; ++i) {
        for (int q = 0; q < side; ++q) {
            int idx = i * side + q;
            a.points[static_cast<std::size_t>(idx)] =
                Cd(levels[static_cast<std::size_t>(i)], levels[static_cast<std::size_t>(q)]) * scale;
            // I bits (Gray over the I level index) in the high half, Q bits low.
            uint32_t lab = (gray(static_cast<uint32_t>(i)) << bits_per_dim) |
                           gray(static_cast<uint32_t>(q));
            a.bit_map[static_cast<std::size_t>(idx)] = lab;
        }
    }
    (void)gray_inverse;  // kept for symmetry with gray(); used in tests
    return a;
}

SymbolBurst map_bits_to_burst(const std::vector<uint8_t>& bits, const QamAlphabet& alphabet) {
    const int bps = alphabet.bits_per_symbol();
    if (bits.size() % static_cast<std::size_t>(bps) != 0)
        throw UsageError("map_bits_to_burst: bit count not divisible by log2(M)");

    // Label -> point index lookup.
    std::vector<int> by_label(static_cast<std::size_t>(alphabet.order));
    for (int i = 0; i < alphabet.order; ++i)
        by_label[alphabet.bit_map[static_cast<std::size_t>(i)]] = i;

    SymbolBurst burst;
    burst.alphabet = &alphabet;
    burst.symbols.reserve(bits.size() / static_cast<std::size_t>(bps));
    for (std::size_t k = 0; k + static_cast<std::size_t>(bps) <= bits.size();
         k += static_cast<std::size_t>(bps)) {
        uint32_t lab = 0;
        for (int b = 0; b < bps; ++b) lab = (lab << 1) | (bits[k + static_cast<std::size_t>(b)] & 1u);
        burst.symbols.push_back(alphabet.points[static_cast<std::size_t>(by_label[lab])]);
    }
    return burst;
}

std::vector<uint8_t> demap_burst(const SymbolBurst& burst) {
    if (burst.alphabet == nullptr) throw UsageError("demap_burst: burst has no alphabet");
    std::vector<int> idx(burst.symbols.size());
    for (std::size_t k = 0; k < burst.symbols.size(); ++k)
        idx[k] = burst.alphabet->nearest(burst.symbols[k]);
    return demap_indices(idx, *burst.alphabet);
}

std::vector<uint8_t> demap_indices(const std::vector<int>& indices, const QamAlphabet& alphabet) {
    const int bps = alphabet.bits_per_symbol();
    std::vector<uint8_t> bits;
    bits.reserve(indices.size() * static_cast<std::size_t>(bps));
    for (int i : indices) {
        uint32_t lab = alphabet.label(i);
        for (int b = bps - 1; b >= 0; --b) bits.push_back(static_cast<uint8_t>((lab >> b) & 1u));
    }
    return bits;
}

}  // namespace nfdm
