#include "qmk/verify.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "qmk/rational.hpp"

namespace qmk {

namespace {

constexpr unsigned kDyadicBits = 10; // numerators in [-2^10, 2^10), step 2^-10

template <class Rng>
Rational rand_rational(Rng& rng) {
    std::uniform_int_distribution<long long> num(-(1 << kDyadicBits), (1 << kDyadicBits) - 1);
    return dyadic(num(rng), kDyadicBits);
}

template <class Rng>
Quaternion<Rational> rand_rational_quat(Rng& rng) {
    return {rand_rational(rng), rand_rational(rng), rand_rational(rng), rand_rational(rng)};
}

template <class Rng>
Quaternion<double> rand_double_quat(Rng& rng) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    return {unit(rng), unit(rng), unit(rng), unit(rng)};
}

template <ScalarRing S>
Quaternion<S> kernel_eval(KernelId id, const IQuaternion<S>& s, const JQuaternion<S>& t,
                          const Quaternion<S>& q) {
    switch (id) {
    case KernelId::sq: return left_mul(precompute_left(s), q);
    case KernelId::qt: return right_mul(q, precompute_right(t));
    case KernelId::sqt: return two_sided_mul(precompute_two_sided(s, t), q);
    default: throw std::invalid_argument("verify covers the factorized kernels only");
    }
}

template <ScalarRing S>
Quaternion<S> oracle_eval(KernelId id, const IQuaternion<S>& s, const JQuaternion<S>& t,
                          const Quaternion<S>& q) {
    switch (id) {
    case KernelId::sq: return mul_direct(embed_i(s), q);
    case KernelId::qt: return mul_direct(q, embed_j(t));
    case KernelId::sqt: return mul_direct(mul_direct(embed_i(s), q), embed_j(t));
    default: throw std::invalid_argument("verify covers the factorized kernels only");
    }
}

double max_component_diff(const Quaternion<double>& a, const Quaternion<double>& b) {
    double m = std::abs(a.q0 - b.q0);
    m = std::max(m, std::abs(a.q1 - b.q1));
    m = std::max(m, std::abs(a.q2 - b.q2));
    m = std::max(m, std::abs(a.q3 - b.q3));
    return m;
}

} // namespace

VerifyReport verify_kernels(long trials, std::uint64_t seed, double tolerance) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");

    VerifyReport report;
    report.trials = trials;
    report.tolerance = tolerance;

    for (KernelId id : {KernelId::sq, KernelId::qt, KernelId::sqt}) {
        KernelCheck check{id};

        std::mt19937_64 rng(seed);
        for (long i = 0; i < trials; ++i) {
            const IQuaternion<Rational> s{rand_rational(rng), rand_rational(rng)};
            const JQuaternion<Rational> t{rand_rational(rng), rand_rational(rng)};
            const Quaternion<Rational> q = rand_rational_quat(rng);
            if (kernel_eval(id, s, t, q) != oracle_eval(id, s, t, q)) check.rational_mismatches++;
        }

        std::mt19937_64 rng64(seed + 1);
        std::uniform_real_distribution<double> unit(-1.0, 1.0);
        for (long i = 0; i < trials; ++i) {
            const IQuaternion<double> s{unit(rng64), unit(rng64)};
            const JQuaternion<double> t{unit(rng64), unit(rng64)};
            const Quaternion<double> q = rand_double_quat(rng64);
            check.max_abs_err = std::max(
                check.max_abs_err,
                max_component_diff(kernel_eval(id, s, t, q), oracle_eval(id, s, t, q)));
        }

        report.kernels.push_back(check);
    }

    report.passed = true;
    for (const KernelCheck& c : report.kernels)
        if (c.rational_mismatches != 0 || c.max_abs_err > tolerance) report.passed = false;
    return report;
}

std::string format_report(const VerifyReport& report, bool json) {
    std::ostringstream os;
    char buf[160];
    if (json) {
        os << "{\"trials\":" << report.trials << ",\"tolerance\":" << report.tolerance
           << ",\"kernels\":[";
        for (std::size_t i = 0; i < report.kernels.size(); ++i) {
            const KernelCheck& c = report.kernels[i];
            if (i) os << ",";
            std::snprintf(buf, sizeof buf,
                          "{\"kernel\":\"%s\",\"rational_mismatches\":%ld,\"max_abs_err\":%.3e}",
                          kernel_name(c.id), c.rational_mismatches, c.max_abs_err);
            os << buf;
        }
        os << "],\"passed\":" << (report.passed ? "true" : "false") << "}\n";
        return os.str();
    }
    for (const KernelCheck& c : report.kernels) {
        const bool ok = c.rational_mismatches == 0 && c.max_abs_err <= report.tolerance;
        std::snprintf(buf, sizeof buf,
                      "%-6s rational mismatches %ld/%ld, binary64 max abs err %.3e (tol %.0e)  %s\n",
                      kernel_name(c.id), c.rational_mismatches, report.trials, c.max_abs_err,
                      report.tolerance, ok ? "ok" : "FAIL");
        os << buf;
    }
    os << (report.passed ? "all kernels match the direct-product oracle\n"
                         : "kernel/oracle mismatch detected\n");
    return os.str();
}

} // namespace qmk
