// Acceptance suite: one check per shipping criterion, each printed as a
// single PASS/FAIL line. Exit status is nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>

#include "qmk/dqft.hpp"
#include "qmk/fixedpoint.hpp"
#include "qmk/netlist.hpp"
#include "qmk/rational.hpp"
#include "qmk/verify.hpp"
#include "test_util.hpp"

using namespace qmk;

namespace {

int g_failures = 0;

class Criterion {
public:
    Criterion(int number, std::string title, double time_limit_s)
        : number_(number), title_(std::move(title)), limit_(time_limit_s),
          start_(std::chrono::steady_clock::now()) {}

    void require(bool ok, const std::string& detail) {
        if (!ok) {
            failed_ = true;
            details_ += (details_.empty() ? "" : "; ") + detail;
        }
    }

    ~Criterion() {
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start_;
        if (elapsed.count() >= limit_) {
            failed_ = true;
            details_ += (details_.empty() ? "" : "; ") + std::string("time limit exceeded");
        }
        std::printf("[%s] criterion %d: %s (%.2fs)%s%s\n", failed_ ? "FAIL" : "PASS", number_,
                    title_.c_str(), elapsed.count(), details_.empty() ? "" : " -- ",
                    details_.c_str());
        if (failed_) g_failures++;
    }

private:
    int number_;
    std::string title_;
    double limit_;
    std::chrono::steady_clock::time_point start_;
    bool failed_ = false;
    std::string details_;
};

// --- 1: exact operation counts -----------------------------------------

void criterion_operation_counts() {
    Criterion c(1, "operation counts match the claimed costs exactly", 1.0);

    const auto expect = [&](KernelId id, long mul, long add, std::map<int, int> hist) {
        const OpTally t = count_ops(id);
        const CostReport r = cost_report(build_graph(id));
        std::ostringstream what;
        what << kernel_name(id) << " counted " << t.mul << "m/" << t.add << "a, netlist "
             << r.mult_count << "m/" << r.two_input_equiv << "a-equiv";
        c.require(t.mul == mul && t.add == add, what.str());
        c.require(r.mult_count == mul && r.two_input_equiv == add && r.adder_hist == hist,
                  what.str());
    };
    expect(KernelId::direct, 16, 12, {{2, 12}});
    expect(KernelId::sq, 6, 6, {{2, 6}});
    expect(KernelId::qt, 6, 6, {{2, 6}});
    expect(KernelId::sqt, 9, 18, {{2, 6}, {4, 4}});
}

// --- 2: oracle equivalence ----------------------------------------------

void criterion_oracle_equivalence() {
    Criterion c(2, "kernels equal the direct product over 1e5 random inputs", 30.0);
    const VerifyReport report = verify_kernels(100000, 0, 1e-13);
    for (const KernelCheck& k : report.kernels) {
        c.require(k.rational_mismatches == 0,
                  std::string(kernel_name(k.id)) + " has rational mismatches");
        c.require(k.max_abs_err <= 1e-13,
                  std::string(kernel_name(k.id)) + " binary64 error above 1e-13");
    }
}

// --- 3: factored-form reconstruction ------------------------------------

void criterion_factored_reconstruction() {
    Criterion c(3, "factored matrices reproduce left multiplication", 30.0);

    // worked instance, expected value computed by the term-by-term reference
    const IQuaternion<Rational> s{test::rat(2), test::rat(3)};
    const Quaternion<Rational> q{test::rat(1), test::rat(2), test::rat(3), test::rat(4)};
    const Quaternion<Rational> want = test::hamilton_reference(embed_i(s), q);
    c.require(want == Quaternion<Rational>{test::rat(-4), test::rat(7), test::rat(-6),
                                           test::rat(17)},
              "reference value for the worked instance is off");
    const auto y = apply_factored(factor_matrices(precompute_left(s)), {q.q0, q.q1, q.q2, q.q3});
    c.require(y == std::array<Rational, 4>{want.q0, want.q1, want.q2, want.q3},
              "worked instance mismatch");

    std::mt19937_64 rng(0);
    long bad = 0;
    for (int n = 0; n < 10000; ++n) {
        const IQuaternion<Rational> rs{test::rand_dyadic(rng), test::rand_dyadic(rng)};
        const Quaternion<Rational> rq = test::rand_rational_quat(rng);
        const auto got =
            apply_factored(factor_matrices(precompute_left(rs)), {rq.q0, rq.q1, rq.q2, rq.q3});
        const Quaternion<Rational> ref = mul_direct(embed_i(rs), rq);
        if (got != std::array<Rational, 4>{ref.q0, ref.q1, ref.q2, ref.q3}) bad++;
    }
    c.require(bad == 0, std::to_string(bad) + " of 10000 random (s,q) mismatched");
}

// --- 4: netlist fidelity --------------------------------------------------

void criterion_netlist_fidelity() {
    Criterion c(4, "netlists evaluate exactly like their kernels; exports deterministic", 30.0);

    std::mt19937_64 rng(1);
    for (KernelId id : {KernelId::sq, KernelId::qt, KernelId::sqt}) {
        const DataflowGraph g = build_graph(id);
        long bad = 0;
        for (int n = 0; n < 1000; ++n) {
            const IQuaternion<Rational> s{test::rand_dyadic(rng), test::rand_dyadic(rng)};
            const JQuaternion<Rational> t{test::rand_dyadic(rng), test::rand_dyadic(rng)};
            const Quaternion<Rational> q = test::rand_rational_quat(rng);
            const std::array<Rational, 4> x = {q.q0, q.q1, q.q2, q.q3};

            Quaternion<Rational> ref;
            ConstBindings<Rational> bind;
            switch (id) {
            case KernelId::sq:
                ref = left_mul(precompute_left(s), q);
                bind = graph_bindings(precompute_left(s));
                break;
            case KernelId::qt:
                ref = right_mul(q, precompute_right(t));
                bind = graph_bindings(precompute_right(t));
                break;
            default:
                ref = two_sided_mul(precompute_two_sided(s, t), q);
                bind = graph_bindings(precompute_two_sided(s, t));
                break;
            }
            if (evaluate_graph(g, x, bind) !=
                std::array<Rational, 4>{ref.q0, ref.q1, ref.q2, ref.q3})
                bad++;
        }
        c.require(bad == 0, std::string(kernel_name(id)) + " netlist diverged");
    }

    // direct netlist against mul_direct
    const DataflowGraph gd = build_graph(KernelId::direct);
    long bad = 0;
    for (int n = 0; n < 1000; ++n) {
        const Quaternion<Rational> p = test::rand_rational_quat(rng);
        const Quaternion<Rational> q = test::rand_rational_quat(rng);
        const Quaternion<Rational> ref = mul_direct(p, q);
        if (evaluate_graph(gd, {q.q0, q.q1, q.q2, q.q3}, graph_bindings(p)) !=
            std::array<Rational, 4>{ref.q0, ref.q1, ref.q2, ref.q3})
            bad++;
    }
    c.require(bad == 0, "direct netlist diverged");

    for (KernelId id : {KernelId::direct, KernelId::sq, KernelId::qt, KernelId::sqt})
        for (ExportFormat f : {ExportFormat::dot, ExportFormat::json})
            c.require(export_graph(build_graph(id), f) == export_graph(build_graph(id), f),
                      "non-deterministic export");
}

// --- 5: transform properties ----------------------------------------------

void criterion_dqft_properties() {
    Criterion c(5, "transform round-trip, method agreement, constant-image spectrum", 60.0);

    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    const auto random_image = [&](int n) {
        QImage img = make_qimage(n, n);
        for (Quat& q : img.pix) q = {unit(rng), unit(rng), unit(rng), unit(rng)};
        return img;
    };
    const auto diff = [](const QImage& a, const QImage& b) {
        double worst = 0.0;
        for (std::size_t i = 0; i < a.pix.size(); ++i)
            worst = std::max(worst, test::max_abs_diff(a.pix[i], b.pix[i]));
        return worst;
    };

    for (int n : {8, 16}) {
        const QImage img = random_image(n);
        const double err = diff(dqft_inverse(dqft_forward(img, Method::rowcol), Method::rowcol),
                                img);
        c.require(err <= 1e-9, "round-trip error " + std::to_string(err) + " at size " +
                                   std::to_string(n));
    }
    for (int n : {4, 8}) {
        const QImage img = random_image(n);
        const double err =
            diff(dqft_forward(img, Method::naive), dqft_forward(img, Method::rowcol));
        c.require(err <= 1e-10, "naive/rowcol divergence " + std::to_string(err) + " at size " +
                                    std::to_string(n));
    }
    for (int n : {8, 16}) {
        const Quat value{0.6, -0.4, 0.9, 0.2};
        QImage img = make_qimage(n, n);
        for (Quat& q : img.pix) q = value;
        const QImage F = dqft_forward(img, Method::rowcol);
        c.require(test::max_abs_diff(F.at(0, 0), value * double(n * n)) <= 1e-10,
                  "bin (0,0) is not MN*c");
        double off_peak = 0.0;
        for (int v = 0; v < n; ++v)
            for (int u = 0; u < n; ++u)
                if (v || u) off_peak = std::max(off_peak, test::max_abs_diff(F.at(v, u),
                                                                             Quat{0, 0, 0, 0}));
        c.require(off_peak <= 1e-12, "constant image leaks " + std::to_string(off_peak));
    }
}

// --- 6: transform-scale budgets -------------------------------------------

void criterion_budgets() {
    Criterion c(6, "per-term multiplier ratios are 9/16 (naive) and 6/16 (rowcol)", 1.0);
    for (int m : {1, 4, 8}) {
        const OpBudget naive = dqft_op_budget(m, m, Method::naive);
        const OpBudget rowcol = dqft_op_budget(m, m, Method::rowcol);
        c.require(naive.per_kernel.mul == 9 && naive.per_baseline.mul == 16,
                  "naive per-term counts off");
        c.require(rowcol.per_kernel.mul == 6 && rowcol.per_baseline.mul == 16,
                  "rowcol per-term counts off");
        c.require(naive.scheme_total.mul * 16 == naive.baseline_total.mul * 9,
                  "naive totals do not honor 9/16");
        c.require(rowcol.scheme_total.mul * 16 == rowcol.baseline_total.mul * 6,
                  "rowcol totals do not honor 6/16");
    }
}

// --- 7: fixed-point error envelope ------------------------------------------

void criterion_fixed_point() {
    Criterion c(7, "sq fixed-point error within 8*2^-f; f=24 beats f=12", 30.0);
    const SweepSpec spec{8, 24, 4, 8, OverflowPolicy::saturate};
    const auto rows = error_sweep(KernelId::sq, spec, 10000, 0);
    double err12 = 0, err24 = 0;
    for (const SweepRow& row : rows) {
        const double bound = 8.0 * std::ldexp(1.0, -row.fraction_bits);
        c.require(row.max_abs_err <= bound,
                  "f=" + std::to_string(row.fraction_bits) + " error above 8*2^-f");
        c.require(row.overflows == 0, "unexpected saturation");
        if (row.fraction_bits == 12) err12 = row.max_abs_err;
        if (row.fraction_bits == 24) err24 = row.max_abs_err;
    }
    c.require(err24 < err12, "f=24 error not strictly below f=12 error");
}

} // namespace

int main() {
    criterion_operation_counts();
    criterion_oracle_equivalence();
    criterion_factored_reconstruction();
    criterion_netlist_fidelity();
    criterion_dqft_properties();
    criterion_budgets();
    criterion_fixed_point();

    if (g_failures) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
