#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qmk/kernels.hpp"

namespace qmk {

enum class OverflowPolicy { saturate, error };

struct FxOverflowError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Two's-complement Q-format: integer_bits includes the sign bit, step is
// 2^-fraction_bits, total width at most 64 bits.
struct FxFormat {
    int integer_bits = 2;
    int fraction_bits = 16;
    OverflowPolicy policy = OverflowPolicy::saturate;

    friend bool operator==(const FxFormat&, const FxFormat&) = default;
};

void validate(const FxFormat& fmt); // throws std::invalid_argument

// Saturation events since the last reset, for the current thread.
long fx_overflow_count();
void fx_reset_overflow_count();

class FxValue {
public:
    FxValue() = default;
    FxValue(std::int64_t raw, const FxFormat& fmt) : raw_(raw), fmt_(fmt) {}

    std::int64_t raw() const { return raw_; }
    const FxFormat& format() const { return fmt_; }
    double to_double() const;

    friend FxValue operator+(const FxValue& a, const FxValue& b);
    friend FxValue operator-(const FxValue& a, const FxValue& b);
    friend FxValue operator-(const FxValue& a);
    // Exact double-width product, rounded once to nearest-even.
    friend FxValue operator*(const FxValue& a, const FxValue& b);

private:
    std::int64_t raw_ = 0;
    FxFormat fmt_;
};

// Round-to-nearest-even of x * 2^fraction_bits; overflow handled per policy.
FxValue quantize(double x, const FxFormat& fmt);

// Generator constants for a kernel evaluation. sq uses (alpha, beta), qt
// uses (gamma, delta), sqt uses all four, and direct treats the four values
// as the components of a full constant quaternion.
struct KernelConstants {
    double alpha = 0, beta = 0, gamma = 0, delta = 0;
};

struct FxEvalResult {
    std::array<double, 4> value;   // fixed-point result, widened to double
    std::array<double, 4> abs_err; // vs the binary64 evaluation
    long overflows = 0;
};

// Evaluates the kernel entirely in fixed point (quantized constants and
// inputs, single-rounded multiplies) and compares against the binary64
// kernel on the unquantized data.
FxEvalResult fxp_kernel_eval(KernelId id, const KernelConstants& consts,
                             const std::array<double, 4>& q, const FxFormat& fmt);

struct SweepRow {
    int fraction_bits;
    double max_abs_err;
    double rms_err;
    long overflows;
};

struct SweepSpec {
    int frac_min = 8;
    int frac_max = 24;
    int frac_step = 4;
    int integer_bits = 8;
    OverflowPolicy policy = OverflowPolicy::saturate;
};

// Error statistics over `trials` random draws from [-1,1). With `fixed`
// set, the kernel constants stay pinned and only the inputs vary; otherwise
// fresh constants are drawn per trial. The generator is reseeded per
// fraction width so every row sees the same sample; rows are therefore
// directly comparable and the whole table is reproducible from
// (kernel, spec, trials, seed).
std::vector<SweepRow> error_sweep(KernelId id, const SweepSpec& spec, long trials,
                                  std::uint64_t seed,
                                  std::optional<KernelConstants> fixed = std::nullopt);

std::string sweep_csv(const std::vector<SweepRow>& rows);

} // namespace qmk
