#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qmk/kernels.hpp"

namespace qmk {

// Kernel-vs-oracle equivalence over seeded random inputs: exact equality on
// dyadic rationals, componentwise absolute error on binary64 inputs drawn
// from [-1,1).
struct KernelCheck {
    KernelId id;
    long rational_mismatches = 0;
    double max_abs_err = 0.0;
};

struct VerifyReport {
    long trials = 0;
    double tolerance = 0.0;
    std::vector<KernelCheck> kernels; // sq, qt, sqt
    bool passed = false;
};

VerifyReport verify_kernels(long trials, std::uint64_t seed, double tolerance = 1e-13);

std::string format_report(const VerifyReport& report, bool json);

} // namespace qmk
