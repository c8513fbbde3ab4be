#include "qmk/fixedpoint.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

namespace qmk {

namespace {

thread_local long g_overflows = 0;

using Wide = __int128;

Wide raw_min(const FxFormat& fmt) {
    return -(Wide(1) << (fmt.integer_bits + fmt.fraction_bits - 1));
}

Wide raw_max(const FxFormat& fmt) {
    return (Wide(1) << (fmt.integer_bits + fmt.fraction_bits - 1)) - 1;
}

std::int64_t clamp_raw(Wide raw, const FxFormat& fmt) {
    const Wide lo = raw_min(fmt), hi = raw_max(fmt);
    if (raw >= lo && raw <= hi) return static_cast<std::int64_t>(raw);
    if (fmt.policy == OverflowPolicy::error) throw FxOverflowError("fixed-point overflow");
    ++g_overflows;
    return static_cast<std::int64_t>(raw < lo ? lo : hi);
}

// Arithmetic shift right by `shift` with round-to-nearest, ties to even.
Wide shift_round_even(Wide v, int shift) {
    if (shift == 0) return v;
    const Wide floor_q = v >> shift;
    const Wide rem = v - (floor_q << shift); // in [0, 2^shift)
    const Wide half = Wide(1) << (shift - 1);
    if (rem > half) return floor_q + 1;
    if (rem == half) return floor_q + (floor_q & 1);
    return floor_q;
}

void check_same_format(const FxValue& a, const FxValue& b) {
    if (!(a.format() == b.format()))
        throw std::invalid_argument("fixed-point operands have different formats");
}

} // namespace

void validate(const FxFormat& fmt) {
    if (fmt.integer_bits < 1) throw std::invalid_argument("integer_bits must be >= 1");
    if (fmt.fraction_bits < 0) throw std::invalid_argument("fraction_bits must be >= 0");
    if (fmt.integer_bits + fmt.fraction_bits > 64)
        throw std::invalid_argument("fixed-point format wider than 64 bits");
}

long fx_overflow_count() { return g_overflows; }
void fx_reset_overflow_count() { g_overflows = 0; }

double FxValue::to_double() const {
    return std::ldexp(static_cast<double>(raw_), -fmt_.fraction_bits);
}

FxValue operator+(const FxValue& a, const FxValue& b) {
    check_same_format(a, b);
    return {clamp_raw(Wide(a.raw_) + Wide(b.raw_), a.fmt_), a.fmt_};
}

FxValue operator-(const FxValue& a, const FxValue& b) {
    check_same_format(a, b);
    return {clamp_raw(Wide(a.raw_) - Wide(b.raw_), a.fmt_), a.fmt_};
}

FxValue operator-(const FxValue& a) {
    return {clamp_raw(-Wide(a.raw_), a.fmt_), a.fmt_};
}

FxValue operator*(const FxValue& a, const FxValue& b) {
    check_same_format(a, b);
    const Wide product = Wide(a.raw_) * Wide(b.raw_); // 2f fraction bits, exact
    return {clamp_raw(shift_round_even(product, a.fmt_.fraction_bits), a.fmt_), a.fmt_};
}

FxValue quantize(double x, const FxFormat& fmt) {
    validate(fmt);
    const double scaled = std::ldexp(x, fmt.fraction_bits); // exact: power-of-2 scale
    if (!std::isfinite(scaled)) throw std::invalid_argument("quantize of non-finite value");
    const double limit = std::ldexp(1.0, fmt.integer_bits + fmt.fraction_bits - 1);
    if (scaled >= limit || scaled < -limit) {
        // Out of range before rounding; resolve via policy without llrint,
        // whose domain would overflow for wide formats.
        const Wide raw = scaled < 0 ? raw_min(fmt) - 1 : raw_max(fmt) + 1;
        return {clamp_raw(raw, fmt), fmt};
    }
    // llrint under the default FE_TONEAREST mode rounds ties to even.
    return {clamp_raw(Wide(std::llrint(scaled)), fmt), fmt};
}

namespace {

template <ScalarRing S>
Quaternion<S> run_kernel(KernelId id, const std::array<S, 4>& c, const Quaternion<S>& q) {
    switch (id) {
    case KernelId::direct: return mul_direct(Quaternion<S>{c[0], c[1], c[2], c[3]}, q);
    case KernelId::sq: return left_mul(precompute_left(IQuaternion<S>{c[0], c[1]}), q);
    case KernelId::qt: return right_mul(q, precompute_right(JQuaternion<S>{c[2], c[3]}));
    case KernelId::sqt:
        return two_sided_mul(precompute_two_sided(IQuaternion<S>{c[0], c[1]},
                                                  JQuaternion<S>{c[2], c[3]}),
                             q);
    }
    throw std::invalid_argument("bad kernel id");
}

// The plans store precomputed constants, so the fixed-point run quantizes
// each stored constant from its exact real value (ROM model) rather than
// recomputing sums in fixed point.
Quaternion<FxValue> run_kernel_fx(KernelId id, const KernelConstants& c,
                                  const Quaternion<FxValue>& q, const FxFormat& fmt) {
    const auto fx = [&](double v) { return quantize(v, fmt); };
    switch (id) {
    case KernelId::direct:
        return mul_direct(Quaternion<FxValue>{fx(c.alpha), fx(c.beta), fx(c.gamma), fx(c.delta)},
                          q);
    case KernelId::sq:
        return left_mul(LeftPlan<FxValue>{fx(c.alpha), fx(c.alpha + c.beta),
                                          fx(c.alpha - c.beta)},
                        q);
    case KernelId::qt:
        return right_mul(q, RightPlan<FxValue>{fx(c.gamma), fx(c.gamma + c.delta),
                                               fx(c.gamma - c.delta)});
    case KernelId::sqt: {
        const double sa[3] = {c.alpha, c.alpha + c.beta, c.alpha - c.beta};
        const double tg[3] = {c.gamma, c.gamma + c.delta, c.gamma - c.delta};
        TwoSidedPlan<FxValue> plan{{fx(tg[0] * sa[0]), fx(tg[0] * sa[1]), fx(tg[0] * sa[2]),
                                    fx(tg[1] * sa[0]), fx(tg[1] * sa[1]), fx(tg[1] * sa[2]),
                                    fx(tg[2] * sa[0]), fx(tg[2] * sa[1]), fx(tg[2] * sa[2])}};
        return two_sided_mul(plan, q);
    }
    }
    throw std::invalid_argument("bad kernel id");
}

} // namespace

FxEvalResult fxp_kernel_eval(KernelId id, const KernelConstants& consts,
                             const std::array<double, 4>& q, const FxFormat& fmt) {
    validate(fmt);
    const long overflows_before = g_overflows;

    const Quaternion<double> ref =
        run_kernel<double>(id, {consts.alpha, consts.beta, consts.gamma, consts.delta},
                           Quaternion<double>{q[0], q[1], q[2], q[3]});

    const Quaternion<FxValue> qfx{quantize(q[0], fmt), quantize(q[1], fmt), quantize(q[2], fmt),
                                  quantize(q[3], fmt)};
    const Quaternion<FxValue> out = run_kernel_fx(id, consts, qfx, fmt);

    FxEvalResult r;
    r.value = {out.q0.to_double(), out.q1.to_double(), out.q2.to_double(), out.q3.to_double()};
    const std::array<double, 4> want = {ref.q0, ref.q1, ref.q2, ref.q3};
    for (int i = 0; i < 4; ++i) r.abs_err[i] = std::abs(r.value[i] - want[i]);
    r.overflows = g_overflows - overflows_before;
    return r;
}

std::vector<SweepRow> error_sweep(KernelId id, const SweepSpec& spec, long trials,
                                  std::uint64_t seed, std::optional<KernelConstants> fixed) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (spec.frac_step < 1 || spec.frac_min < 0 || spec.frac_max < spec.frac_min)
        throw std::invalid_argument("bad fraction-bit range");

    std::vector<SweepRow> rows;
    for (int f = spec.frac_min; f <= spec.frac_max; f += spec.frac_step) {
        const FxFormat fmt{spec.integer_bits, f, spec.policy};
        validate(fmt);

        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> unit(-1.0, 1.0);

        SweepRow row{f, 0.0, 0.0, 0};
        double sum_sq = 0.0;
        for (long t = 0; t < trials; ++t) {
            const KernelConstants consts =
                fixed ? *fixed : KernelConstants{unit(rng), unit(rng), unit(rng), unit(rng)};
            const std::array<double, 4> q = {unit(rng), unit(rng), unit(rng), unit(rng)};
            const FxEvalResult r = fxp_kernel_eval(id, consts, q, fmt);
            for (double e : r.abs_err) {
                row.max_abs_err = std::max(row.max_abs_err, e);
                sum_sq += e * e;
            }
            row.overflows += r.overflows;
        }
        row.rms_err = std::sqrt(sum_sq / (4.0 * static_cast<double>(trials)));
        rows.push_back(row);
    }
    return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream os;
    os << "fraction_bits,max_abs_err,rms_err,overflows\n";
    char buf[128];
    for (const SweepRow& r : rows) {
        std::snprintf(buf, sizeof buf, "%d,%.9e,%.9e,%ld\n", r.fraction_bits, r.max_abs_err,
                      r.rms_err, r.overflows);
        os << buf;
    }
    return os.str();
}

} // namespace qmk
