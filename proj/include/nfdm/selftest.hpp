#pragma once

#include <string>
#include <vector>

namespace nfdm {

struct SelfTestResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Fast invariant checks across the library (alphabet, framing, transforms,
/// channel, metrics). Each entry prints one line; returns all results.
std::vector<SelfTestResult> run_selftests(bool verbose = true);

}  // namespace nfdm
