#pragma once

#include <cstdint>
#include <vector>

#include "nfdm/types.hpp"

namespace nfdm {

/// Square M-QAM alphabet with per-quadrature reflected Gray labels and
/// unit average symbol energy (mean |X|^2 = 1).
struct QamAlphabet {
    int order = 0;                    // M, a perfect square power of 4
    CVec points;                      // M constellation points
    std::vector<uint32_t> bit_map;    // Gray label of points[i]

    int bits_per_symbol() const;

    // Index of the nearest constellation point (Euclidean).
    int nearest(Cd y) const;

    // Gray label of point index.
    uint32_t label(int index) const { return bit_map[static_cast<std::size_t>(index)]; }

    static QamAlphabet square(int order);  // order in {4, 16, 64, ...}
};

struct SymbolBurst {
    CVec symbols;
    const QamAlphabet* alphabet = nullptr;

    std::size_t size() const { return symbols.size(); }
};

/// bits.size() must be a multiple of log2(M); bits are consumed
/// most-significant-first per symbol.
SymbolBurst map_bits_to_burst(const std::vector<uint8_t>& bits, const QamAlphabet& alphabet);

/// Inverse of map_bits_to_burst for exact alphabet members.
std::vector<uint8_t> demap_burst(const SymbolBurst& burst);

/// Alphabet indices -> bits (used on detector output).
std::vector<uint8_t> demap_indices(const std::vector<int>& indices, const QamAlphabet& alphabet);

}  // namespace nfdm
