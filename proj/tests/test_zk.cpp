#include <gtest/gtest.h>

#include "generators.hpp"
#include "unitdef/zk_witness.hpp"

using namespace unitdef;
using namespace unitdef::testing;

namespace {

using mat2 = std::array<bigint, 4>;

mat2 mul_mod(mat2 const & a, mat2 const & b, bigint const & m)
{
    return {floor_mod(a[0] * b[0] + a[1] * b[2], m), floor_mod(a[0] * b[1] + a[1] * b[3], m),
            floor_mod(a[2] * b[0] + a[3] * b[2], m), floor_mod(a[2] * b[1] + a[3] * b[3], m)};
}

/* multiplication by 2 + sqrt 5 on (a, b) = a + b sqrt 5, raised to k mod m */
bool eta_power_is_one(bigint k, bigint const & m)
{
    mat2 acc{1, 0, 0, 1}, base{2, 5, 1, 2};
    while (k > 0) {
        if (k % 2 == 1) acc = mul_mod(acc, base, m);
        base = mul_mod(base, base, m);
        k /= 2;
    }
    return acc == mat2{floor_mod(1, m), 0, 0, floor_mod(1, m)};
}

unit_group z5_units() { return unit_group_of(make_quadratic_order(5, false)); }

}   // namespace

TEST(Zk, DeltaExponentOracle)
{
    auto g = z5_units();
    for (long w : {2, 3, -2, -3}) {
        bigint m = 5 * d_poly(bigint(w));
        bigint k = zk_delta_exponent(g, w, 5);
        ASSERT_GT(k, 0);
        EXPECT_TRUE(eta_power_is_one(k, m)) << w;
        auto f = trial_factor(k);
        ASSERT_TRUE(f.complete());
        for (auto const & [q, e] : f.primes) EXPECT_FALSE(eta_power_is_one(k / q, m)) << w << " q = " << q;
    }
    EXPECT_EQ(zk_delta_exponent(g, 2, 5), bigint("1476225000"));
    for (long w : {0, 1, -1}) EXPECT_EQ(zk_delta_exponent(g, w, 5), 0);
}

TEST(Zk, SquareDivisibilityCofactor)
{
    auto x_minus_1_sq = int_polynomial({1, -2, 1});
    for (long m = -6; m <= 6; m++)
        for (long w = -6; w <= 6; w++) {
            auto c = square_divisibility_cofactor(m, w);
            EXPECT_EQ(c.has_value(), m == w) << m << " " << w;
            if (!c) continue;
            long s = std::max(0L, -m);
            std::vector<bigint> p(static_cast<std::size_t>(std::max(m + s, s + 1) + 1), 0);
            p[static_cast<std::size_t>(m + s)] += 1;
            p[static_cast<std::size_t>(s)] -= 1;
            p[static_cast<std::size_t>(s + 1)] -= w;
            p[static_cast<std::size_t>(s)] += w;
            EXPECT_EQ(x_minus_1_sq * int_polynomial(*c), int_polynomial(p)) << m;
        }
}

TEST(Zk, IntegerWitnessesVerify)
{
    auto q = make_rational_order();
    for (long w = -3; w <= 3; w++) {
        auto b = zk_integer_witness(w, q, 5);
        EXPECT_TRUE(b.ok) << w << " " << b.note;
        EXPECT_EQ(b.system.value, truth::holds) << w;
        EXPECT_EQ(b.degenerate, w == 0 || w == 1 || w == -1);
        EXPECT_TRUE(verify_zk_bundle(b)) << w;
        EXPECT_EQ(b.per_eps.size(), 20u);
        for (auto const & e : b.per_eps) EXPECT_TRUE(e.ok);
        EXPECT_EQ(b.eps2, word_pow(b.units_L, b.eps1, w));
    }
}

TEST(Zk, ExponentOverride)
{
    auto q = make_rational_order();
    auto g = z5_units();
    bigint k = zk_delta_exponent(g, 2, 5);
    auto b = zk_integer_witness(2, q, 5, 3 * k);
    EXPECT_TRUE(b.ok);
    /* eps_1 = delta_1^2, so half the exponent already suffices */
    EXPECT_TRUE(zk_integer_witness(2, q, 5, k / 2).ok);
    auto bad = zk_integer_witness(2, q, 5, k / 3);
    EXPECT_FALSE(bad.ok);
    EXPECT_EQ(bad.system.value, truth::fails);
    ASSERT_TRUE(bad.system.failing);
    EXPECT_EQ(*bad.system.failing, "mod32");
}

TEST(Zk, WrongSecondUnitIsRefuted)
{
    auto g = z5_units();
    bigint k = zk_delta_exponent(g, 2, 5);
    auto d1 = word_pow(g, word_generator(g, 0), k);
    auto good = check_system_S(g, 2, 5, d1, word_pow(g, d1, 2));
    EXPECT_EQ(good.value, truth::holds);
    auto bad = check_system_S(g, 2, 5, d1, word_pow(g, d1, 3));
    EXPECT_EQ(bad.value, truth::fails);
    ASSERT_TRUE(bad.failing);
    EXPECT_EQ(*bad.failing, "w");
}

TEST(Zk, TamperedBundleFailsVerification)
{
    auto b = zk_integer_witness(3, make_rational_order(), 5);
    ASSERT_TRUE(verify_zk_bundle(b));
    auto t = b;
    t.delta2 = word_pow(t.units_L, t.delta1, 2);
    t.eps2 = word_pow(t.units_L, t.delta2, 2);
    EXPECT_FALSE(verify_zk_bundle(t));
}

TEST(Zk, ExplicitSystemAtDegeneratePoint)
{
    auto q = make_rational_order();
    auto one = ring_element::integer(q, 1), zero = ring_element::integer(q, 0);
    system_s_values v{zero, one, one, zero, zero, one, one, zero, zero};
    EXPECT_EQ(check_system_S(q, 5, v).value, truth::holds);
    v.w = one;
    EXPECT_EQ(check_system_S(q, 5, v).value, truth::holds);
    /* delta_1 = 2 + sqrt 5 is not 1 mod 5 D(2) */
    system_s_values u{ring_element::integer(q, 2), ring_element::integer(q, 2), one, one, zero,
                      ring_element::integer(q, 9), one, ring_element::integer(q, 4), zero};
    auto r = check_system_S(q, 5, u);
    EXPECT_EQ(r.value, truth::fails);
    EXPECT_TRUE(r.failing);
}

TEST(Zk, ImaginaryBaseField)
{
    auto f = make_quadratic_order(-1, true);
    auto b = zk_integer_witness(2, f, 5);
    EXPECT_TRUE(b.ok);
    EXPECT_FALSE(b.note.empty());
    EXPECT_EQ(system_S_order(f, 5)->degree(), 4u);
    EXPECT_EQ(system_S_order(make_rational_order(), 5)->degree(), 2u);
}
