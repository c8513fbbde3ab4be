#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "qmk/quaternion.hpp"
#include "qmk/scalar.hpp"

namespace qmk {

enum class KernelId { direct, sq, qt, sqt };

const char* kernel_name(KernelId id);
KernelId parse_kernel(const std::string& name); // throws std::invalid_argument

// ---------------------------------------------------------------------------
// Precomputed constant plans.
//
// Each one-sided kernel stores three constants; only these ever reach a
// multiplier, everything else in the pipeline is addition and wiring. The
// two-sided kernel stores the nine pairwise products, computed once when the
// plan is built.

template <ScalarRing S>
struct LeftPlan {
    S alpha; // a
    S d1;    // a + b
    S d2;    // a - b
};

template <ScalarRing S>
struct RightPlan {
    S gamma; // g
    S e1;    // g + d
    S e2;    // g - d
};

// k[3*i+j] = (gamma, e1, e2)[i] * (alpha, d1, d2)[j]
template <ScalarRing S>
struct TwoSidedPlan {
    std::array<S, 9> k;
};

template <ScalarRing S>
LeftPlan<S> precompute_left(const IQuaternion<S>& s) {
    return {s.alpha, s.alpha + s.beta, s.alpha - s.beta};
}

template <ScalarRing S>
RightPlan<S> precompute_right(const JQuaternion<S>& t) {
    return {t.gamma, t.gamma + t.delta, t.gamma - t.delta};
}

template <ScalarRing S>
TwoSidedPlan<S> precompute_two_sided(const LeftPlan<S>& lp, const RightPlan<S>& rp) {
    return {{rp.gamma * lp.alpha, rp.gamma * lp.d1, rp.gamma * lp.d2,
             rp.e1 * lp.alpha,    rp.e1 * lp.d1,    rp.e1 * lp.d2,
             rp.e2 * lp.alpha,    rp.e2 * lp.d1,    rp.e2 * lp.d2}};
}

template <ScalarRing S>
TwoSidedPlan<S> precompute_two_sided(const IQuaternion<S>& s, const JQuaternion<S>& t) {
    return precompute_two_sided(precompute_left(s), precompute_right(t));
}

// ---------------------------------------------------------------------------
// The three factorized kernels. Straight-line code, no branches; evaluation
// order is exactly as written, which also fixes the operation tallies:
// left/right do 6 multiplications and 6 additions, the two-sided kernel does
// 9 multiplications and 18 additions (6 two-input pre-adders plus four
// 4-term output sums).

// s*q for s = alpha + beta*i.
template <ScalarRing S>
Quaternion<S> left_mul(const LeftPlan<S>& plan, const Quaternion<S>& q) {
    const S a = q.q0 - q.q1;
    const S b = q.q2 - q.q3;

    const S m1 = plan.alpha * a;
    const S m2 = plan.d1 * q.q0;
    const S m3 = plan.d2 * q.q1;
    const S m4 = plan.alpha * b;
    const S m5 = plan.d1 * q.q2;
    const S m6 = plan.d2 * q.q3;

    return {m1 + m3, m2 - m1, m4 + m6, m5 - m4};
}

// q*t for t = gamma + delta*j. Same scheme as left_mul with the input pairing
// (q0,q1)/(q2,q3) replaced by (q0,q2)/(q1,q3).
template <ScalarRing S>
Quaternion<S> right_mul(const Quaternion<S>& q, const RightPlan<S>& plan) {
    const S a = q.q0 - q.q2;
    const S b = q.q1 - q.q3;

    const S m1 = plan.gamma * a;
    const S m2 = plan.e1 * q.q0;
    const S m3 = plan.e2 * q.q2;
    const S m4 = plan.gamma * b;
    const S m5 = plan.e1 * q.q1;
    const S m6 = plan.e2 * q.q3;

    return {m1 + m3, m4 + m6, m2 - m1, m5 - m4};
}

// s*q*t. The 4x4 map is the Kronecker product of the two one-sided 2x2
// blocks, so both 3-multiplication factorizations compose into one scheme
// with 9 multipliers. The double difference q0-q1-q2+q3 is chained off the
// q0-q1 adder so the pre-stage uses six two-input adders, matching the
// hardware layout build_graph() emits.
template <ScalarRing S>
Quaternion<S> two_sided_mul(const TwoSidedPlan<S>& plan, const Quaternion<S>& q) {
    const S p1 = q.q0 - q.q1;
    const S p2 = q.q2 - q.q3;
    const S p3 = q.q0 - q.q2;
    const S p4 = q.q1 - q.q3;
    const S c1 = p1 - q.q2;
    const S dd = c1 + q.q3;

    const S m0 = plan.k[0] * dd;
    const S m1 = plan.k[1] * p3;
    const S m2 = plan.k[2] * p4;
    const S m3 = plan.k[3] * p1;
    const S m4 = plan.k[4] * q.q0;
    const S m5 = plan.k[5] * q.q1;
    const S m6 = plan.k[6] * p2;
    const S m7 = plan.k[7] * q.q2;
    const S m8 = plan.k[8] * q.q3;

    const S z0 = ((m0 - m1) - m3) + m4;
    const S z1 = ((m3 - m0) - m2) + m5;
    const S z2 = ((m1 - m0) - m6) + m7;
    const S z3 = ((m0 + m2) + m6) + m8;

    return {z3, z2, z1, z0};
}

// ---------------------------------------------------------------------------
// Explicit factor matrices Y = perm . post . diag . pre . X and a generic
// evaluator. pre and post carry only {-1,0,1}; the diagonal holds the plan
// constants; perm is a bijection on the four outputs. The evaluator treats
// the sign matrices structurally (signed accumulation, never multiplication),
// so only the diagonal stage multiplies.

template <ScalarRing S>
struct FactorMatrices {
    std::vector<std::array<int, 4>> pre; // n x 4
    std::vector<S> diag;                 // n
    std::vector<std::vector<int>> post;  // 4 x n
    std::array<int, 4> out_perm;         // y[i] = z[out_perm[i]]
};

namespace detail {

template <ScalarRing S, class Row>
S signed_row_sum(const Row& row, const auto& values, std::size_t width) {
    bool have = false;
    S acc{};
    for (std::size_t j = 0; j < width; ++j) {
        const int sign = row[j];
        if (sign == 0) continue;
        if (sign != 1 && sign != -1)
            throw std::invalid_argument("factor matrix entry outside {-1,0,1}");
        if (!have) {
            acc = sign == 1 ? values[j] : -values[j];
            have = true;
        } else {
            acc = sign == 1 ? acc + values[j] : acc - values[j];
        }
    }
    if (!have) throw std::invalid_argument("factor matrix row is all zero");
    return acc;
}

} // namespace detail

template <ScalarRing S>
std::array<S, 4> apply_factored(const FactorMatrices<S>& fm, const std::array<S, 4>& x) {
    const std::size_t n = fm.pre.size();
    if (fm.diag.size() != n)
        throw std::invalid_argument("diagonal length does not match pre-addition rows");
    if (fm.post.size() != 4)
        throw std::invalid_argument("post-addition matrix must have 4 rows");
    for (const auto& row : fm.post)
        if (row.size() != n)
            throw std::invalid_argument("post-addition width does not match diagonal");

    std::vector<S> m;
    m.reserve(n);
    for (std::size_t r = 0; r < n; ++r)
        m.push_back(fm.diag[r] * detail::signed_row_sum<S>(fm.pre[r], x, 4));

    std::array<S, 4> z{};
    for (std::size_t r = 0; r < 4; ++r)
        z[r] = detail::signed_row_sum<S>(fm.post[r], m, n);

    std::array<bool, 4> seen{};
    std::array<S, 4> y{};
    for (std::size_t r = 0; r < 4; ++r) {
        const int src = fm.out_perm[r];
        if (src < 0 || src > 3 || seen[src])
            throw std::invalid_argument("output permutation is not a bijection");
        seen[src] = true;
        y[r] = z[src];
    }
    return y;
}

namespace detail {

inline const std::vector<std::vector<int>>& one_sided_post() {
    static const std::vector<std::vector<int>> rows = {
        {-1, 1, 0, 0, 0, 0},
        {1, 0, 1, 0, 0, 0},
        {0, 0, 0, -1, 1, 0},
        {0, 0, 0, 1, 0, 1},
    };
    return rows;
}

} // namespace detail

template <ScalarRing S>
FactorMatrices<S> factor_matrices(const LeftPlan<S>& p) {
    return {{{1, -1, 0, 0}, {1, 0, 0, 0}, {0, 1, 0, 0},
             {0, 0, 1, -1}, {0, 0, 1, 0}, {0, 0, 0, 1}},
            {p.alpha, p.d1, p.d2, p.alpha, p.d1, p.d2},
            detail::one_sided_post(),
            {1, 0, 3, 2}};
}

template <ScalarRing S>
FactorMatrices<S> factor_matrices(const RightPlan<S>& p) {
    return {{{1, 0, -1, 0}, {1, 0, 0, 0}, {0, 0, 1, 0},
             {0, 1, 0, -1}, {0, 1, 0, 0}, {0, 0, 0, 1}},
            {p.gamma, p.e1, p.e2, p.gamma, p.e1, p.e2},
            detail::one_sided_post(),
            {1, 3, 0, 2}};
}

template <ScalarRing S>
FactorMatrices<S> factor_matrices(const TwoSidedPlan<S>& p) {
    FactorMatrices<S> fm;
    fm.pre = {{1, -1, -1, 1}, {1, 0, -1, 0}, {0, 1, 0, -1},
              {1, -1, 0, 0},  {1, 0, 0, 0},  {0, 1, 0, 0},
              {0, 0, 1, -1},  {0, 0, 1, 0},  {0, 0, 0, 1}};
    fm.diag.assign(p.k.begin(), p.k.end());
    fm.post = {{1, -1, 0, -1, 1, 0, 0, 0, 0},
               {-1, 0, -1, 1, 0, 1, 0, 0, 0},
               {-1, 1, 0, 0, 0, 0, -1, 1, 0},
               {1, 0, 1, 0, 0, 0, 1, 0, 1}};
    fm.out_perm = {3, 2, 1, 0};
    return fm;
}

// Direct 4x4 scheme as a (degenerate) factorization: the pre stage only
// routes inputs, the 16 matrix entries sit on the diagonal, signs live in
// the post stage.
template <ScalarRing S>
FactorMatrices<S> factor_matrices(const Quaternion<S>& p) {
    FactorMatrices<S> fm;
    const std::array<std::array<S, 4>, 4> pattern = {{
        {p.q0, p.q1, p.q2, p.q3},
        {p.q1, p.q0, p.q3, p.q2},
        {p.q2, p.q3, p.q0, p.q1},
        {p.q3, p.q2, p.q1, p.q0},
    }};
    const std::array<std::array<int, 4>, 4> signs = {{
        {1, -1, -1, -1},
        {1, 1, -1, 1},
        {1, 1, 1, -1},
        {1, -1, 1, 1},
    }};
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            std::array<int, 4> sel{};
            sel[j] = 1;
            fm.pre.push_back(sel);
            fm.diag.push_back(pattern[i][j]);
        }
    }
    for (int i = 0; i < 4; ++i) {
        std::vector<int> row(16, 0);
        for (int j = 0; j < 4; ++j) row[4 * i + j] = signs[i][j];
        fm.post.push_back(std::move(row));
    }
    fm.out_perm = {0, 1, 2, 3};
    return fm;
}

} // namespace qmk
