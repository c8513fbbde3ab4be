#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qmk/counting.hpp"
#include "qmk/kernels.hpp"
#include "qmk/rational.hpp"
#include "test_util.hpp"

using namespace qmk;
using test::rat;

using QR = Quaternion<Rational>;
using IR = IQuaternion<Rational>;
using JR = JQuaternion<Rational>;

TEST_CASE("plan precomputation") {
    const auto p0 = precompute_left(IR{rat(1), rat(0)});
    CHECK(p0.alpha == rat(1));
    CHECK(p0.d1 == rat(1));
    CHECK(p0.d2 == rat(1));

    const auto p1 = precompute_left(IR{rat(0), rat(1)});
    CHECK(p1.d1 == rat(1));
    CHECK(p1.d2 == rat(-1));

    const auto p2 = precompute_left(IR{rat(2), rat(3)});
    CHECK(p2.alpha == rat(2));
    CHECK(p2.d1 == rat(5));
    CHECK(p2.d2 == rat(-1));

    const auto r = precompute_right(JR{rat(2), rat(3)});
    CHECK(r.gamma == rat(2));
    CHECK(r.e1 == rat(5));
    CHECK(r.e2 == rat(-1));
}

TEST_CASE("plan constant identities") {
    std::mt19937_64 rng(3);
    for (int n = 0; n < 100; ++n) {
        const Rational a = test::rand_dyadic(rng), b = test::rand_dyadic(rng);
        const auto plan = precompute_left(IR{a, b});
        CHECK(plan.d1 - plan.d2 == rat(2) * b);
        CHECK(plan.d1 + plan.d2 == rat(2) * a);
    }
}

TEST_CASE("two-sided plan holds the nine generator products") {
    const auto lp = precompute_left(IR{rat(2), rat(3)});
    const auto rp = precompute_right(JR{rat(2), rat(3)});
    const auto plan = precompute_two_sided(lp, rp);
    const Rational srow[3] = {rat(2), rat(5), rat(-1)};
    const Rational trow[3] = {rat(2), rat(5), rat(-1)};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(plan.k[3 * i + j] == trow[i] * srow[j]);

    // gamma-identity: every block repeats (alpha, d1, d2)
    const auto pid = precompute_two_sided(IR{rat(2), rat(3)}, JR{rat(1), rat(0)});
    for (int i = 0; i < 3; ++i) {
        CHECK(pid.k[3 * i + 0] == rat(2));
        CHECK(pid.k[3 * i + 1] == rat(5));
        CHECK(pid.k[3 * i + 2] == rat(-1));
    }

    // both identities: all nine constants are 1
    const auto pone = precompute_two_sided(IR{rat(1), rat(0)}, JR{rat(1), rat(0)});
    for (const Rational& k : pone.k) CHECK(k == rat(1));
}

TEST_CASE("left kernel worked instances") {
    const Quaternion<double> q{0.5, -2.0, 7.0, 1.25};
    const auto id_plan = precompute_left(IQuaternion<double>{1.0, 0.0});
    CHECK(left_mul(id_plan, q) == q);

    const auto i_plan = precompute_left(IR{rat(0), rat(1)});
    CHECK(left_mul(i_plan, QR{rat(1), rat(0), rat(0), rat(0)}) ==
          QR{rat(0), rat(1), rat(0), rat(0)});

    // oracle first: s=(2,3) on (1,2,3,4)
    const IR s{rat(2), rat(3)};
    const QR q2{rat(1), rat(2), rat(3), rat(4)};
    const QR want = mul_direct(embed_i(s), q2);
    CHECK(want == QR{rat(-4), rat(7), rat(-6), rat(17)});
    CHECK(left_mul(precompute_left(s), q2) == want);
}

TEST_CASE("right kernel worked instances") {
    std::mt19937_64 rng(5);
    const QR q = test::rand_rational_quat(rng);
    CHECK(right_mul(q, precompute_right(JR{rat(1), rat(0)})) == q);

    // j*j = -1
    CHECK(right_mul(QR{rat(0), rat(0), rat(1), rat(0)}, precompute_right(JR{rat(0), rat(1)})) ==
          QR{rat(-1), rat(0), rat(0), rat(0)});

    const JR t{rat(2), rat(3)};
    const QR q2{rat(1), rat(2), rat(3), rat(4)};
    const QR want = mul_direct(q2, embed_j(t));
    CHECK(want == QR{rat(-7), rat(-8), rat(9), rat(14)});
    CHECK(right_mul(q2, precompute_right(t)) == want);
}

TEST_CASE("two-sided kernel worked instances") {
    std::mt19937_64 rng(6);
    const QR q = test::rand_rational_quat(rng);
    const auto id2 = precompute_two_sided(IR{rat(1), rat(0)}, JR{rat(1), rat(0)});
    CHECK(two_sided_mul(id2, q) == q);

    // i * 1 * j = k
    const auto pij = precompute_two_sided(IR{rat(0), rat(1)}, JR{rat(0), rat(1)});
    CHECK(two_sided_mul(pij, QR{rat(1), rat(0), rat(0), rat(0)}) ==
          QR{rat(0), rat(0), rat(0), rat(1)});

    const IR s{rat(2), rat(3)};
    const JR t{rat(2), rat(3)};
    const QR q2{rat(1), rat(2), rat(3), rat(4)};
    const QR want = mul_direct(mul_direct(embed_i(s), q2), embed_j(t));
    CHECK(want == QR{rat(10), rat(-37), rat(-24), rat(55)});
    CHECK(two_sided_mul(precompute_two_sided(s, t), q2) == want);
}

TEST_CASE("kernels match the direct-product oracle exactly over rationals") {
    std::mt19937_64 rng(17);
    for (int n = 0; n < 1000; ++n) {
        const IR s{test::rand_dyadic(rng), test::rand_dyadic(rng)};
        const JR t{test::rand_dyadic(rng), test::rand_dyadic(rng)};
        const QR q = test::rand_rational_quat(rng);

        const QR sq = left_mul(precompute_left(s), q);
        const QR qt = right_mul(q, precompute_right(t));
        const QR sqt = two_sided_mul(precompute_two_sided(s, t), q);

        CHECK(sq == mul_direct(embed_i(s), q));
        CHECK(qt == mul_direct(q, embed_j(t)));
        CHECK(sqt == mul_direct(mul_direct(embed_i(s), q), embed_j(t)));
        // composition: sqt == (sq) * t
        CHECK(sqt == right_mul(sq, precompute_right(t)));
        // norm multiplicativity through the left kernel
        CHECK(norm_sq(sq) == (s.alpha * s.alpha + s.beta * s.beta) * norm_sq(q));
    }
}

TEST_CASE("kernels match the oracle within 1e-13 over binary64") {
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    double worst = 0.0;
    for (int n = 0; n < 2000; ++n) {
        const IQuaternion<double> s{unit(rng), unit(rng)};
        const JQuaternion<double> t{unit(rng), unit(rng)};
        const Quaternion<double> q = test::rand_double_quat(rng);

        worst = std::max(worst, test::max_abs_diff(left_mul(precompute_left(s), q),
                                                   mul_direct(embed_i(s), q)));
        worst = std::max(worst, test::max_abs_diff(right_mul(q, precompute_right(t)),
                                                   mul_direct(q, embed_j(t))));
        worst = std::max(worst,
                         test::max_abs_diff(two_sided_mul(precompute_two_sided(s, t), q),
                                            mul_direct(mul_direct(embed_i(s), q), embed_j(t))));
    }
    CHECK(worst <= 1e-13);
}

TEST_CASE("degenerate constants produce zero without special-casing") {
    const auto plan = precompute_left(IR{rat(0), rat(0)});
    const QR q{rat(1), rat(2), rat(3), rat(4)};
    CHECK(left_mul(plan, q) == QR{rat(0), rat(0), rat(0), rat(0)});

    const auto plan2 = precompute_two_sided(IR{rat(0), rat(0)}, JR{rat(2), rat(3)});
    CHECK(two_sided_mul(plan2, q) == QR{rat(0), rat(0), rat(0), rat(0)});
}

TEST_CASE("kernel evaluation tallies") {
    OpTally tally;
    const CountScalar v{tally};
    const CountScalar c = CountScalar::constant();
    const Quaternion<CountScalar> q{v, v, v, v};

    SUBCASE("left: 6 multiplications, 6 additions") {
        left_mul(LeftPlan<CountScalar>{c, c, c}, q);
        CHECK(tally == OpTally{6, 6, 0});
    }
    SUBCASE("right: 6 multiplications, 6 additions") {
        right_mul(q, RightPlan<CountScalar>{c, c, c});
        CHECK(tally == OpTally{6, 6, 0});
    }
    SUBCASE("two-sided: 9 multiplications, 18 two-input additions") {
        two_sided_mul(TwoSidedPlan<CountScalar>{{c, c, c, c, c, c, c, c, c}}, q);
        CHECK(tally == OpTally{9, 18, 0});
    }
}

TEST_CASE("plan precomputation does not multiply, except the nine sqt products") {
    OpTally tally;
    const CountScalar v{tally};

    precompute_left(IQuaternion<CountScalar>{v, v});
    CHECK(tally.mul == 0);
    CHECK(tally.add == 2);

    tally = {};
    precompute_right(JQuaternion<CountScalar>{v, v});
    CHECK(tally.mul == 0);
    CHECK(tally.add == 2);

    tally = {};
    precompute_two_sided(IQuaternion<CountScalar>{v, v}, JQuaternion<CountScalar>{v, v});
    CHECK(tally.mul == 9);
    CHECK(tally.add == 4);
}

TEST_CASE("apply_factored: identity and zero factorizations") {
    FactorMatrices<Rational> id;
    id.pre = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
    id.diag = {rat(1), rat(1), rat(1), rat(1)};
    id.post = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
    id.out_perm = {0, 1, 2, 3};

    const std::array<Rational, 4> x = {rat(1), rat(-2), rat(3, 2), rat(7)};
    CHECK(apply_factored(id, x) == x);

    id.diag = {rat(0), rat(0), rat(0), rat(0)};
    const auto zero = apply_factored(id, x);
    for (const Rational& v : zero) CHECK(v == rat(0));
}

TEST_CASE("apply_factored reproduces the left kernel") {
    const IR s{rat(2), rat(3)};
    const auto fm = factor_matrices(precompute_left(s));
    const std::array<Rational, 4> x = {rat(1), rat(2), rat(3), rat(4)};
    const auto y = apply_factored(fm, x);
    CHECK(y == std::array<Rational, 4>{rat(-4), rat(7), rat(-6), rat(17)});
}

TEST_CASE("apply_factored matches every kernel on random input") {
    std::mt19937_64 rng(23);
    for (int n = 0; n < 300; ++n) {
        const IR s{test::rand_dyadic(rng), test::rand_dyadic(rng)};
        const JR t{test::rand_dyadic(rng), test::rand_dyadic(rng)};
        const QR q = test::rand_rational_quat(rng);
        const std::array<Rational, 4> x = {q.q0, q.q1, q.q2, q.q3};

        const auto check = [&](const auto& fm, const QR& want) {
            CHECK(apply_factored(fm, x) == std::array<Rational, 4>{want.q0, want.q1, want.q2,
                                                                   want.q3});
        };
        check(factor_matrices(precompute_left(s)), mul_direct(embed_i(s), q));
        check(factor_matrices(precompute_right(t)), mul_direct(q, embed_j(t)));
        check(factor_matrices(precompute_two_sided(s, t)),
              mul_direct(mul_direct(embed_i(s), q), embed_j(t)));
        const QR p = test::rand_rational_quat(rng);
        check(factor_matrices(p), mul_direct(p, q));
    }
}

TEST_CASE("apply_factored rejects shape mismatches") {
    FactorMatrices<Rational> fm = factor_matrices(precompute_left(IR{rat(1), rat(1)}));
    const std::array<Rational, 4> x = {rat(1), rat(1), rat(1), rat(1)};

    auto bad_diag = fm;
    bad_diag.diag.pop_back();
    CHECK_THROWS_AS(apply_factored(bad_diag, x), std::invalid_argument);

    auto bad_post = fm;
    bad_post.post[1].push_back(1);
    CHECK_THROWS_AS(apply_factored(bad_post, x), std::invalid_argument);

    auto bad_perm = fm;
    bad_perm.out_perm = {0, 0, 1, 2};
    CHECK_THROWS_AS(apply_factored(bad_perm, x), std::invalid_argument);
}
