#include <gtest/gtest.h>

#include "generators.hpp"
#include "unitdef/number_ring.hpp"

using namespace unitdef;
using namespace unitdef::testing;

namespace {

std::vector<order_ptr> sample_orders()
{
    auto gauss = make_quadratic_order(-1, true);
    return {make_rational_order(),
            gauss,
            make_quadratic_order(-3, true),
            make_quadratic_order(2, true),
            make_quadratic_order(5, true),
            make_quadratic_order(5, false),
            make_quadratic_order(-7, true),
            make_compositum_order(gauss, 2),
            make_compositum_order(make_quadratic_order(2, true), 3)};
}

}   // namespace

TEST(NumberRing, ConstructorsValidate)
{
    for (auto const & o : sample_orders()) EXPECT_NO_THROW(o->validate()) << o->tag();
    EXPECT_THROW(make_quadratic_order(4, true), std::invalid_argument);
    EXPECT_THROW(make_quadratic_order(1, true), std::invalid_argument);
    EXPECT_THROW(make_compositum_order(make_quadratic_order(2, true), 8), std::invalid_argument);
    EXPECT_EQ(make_quadratic_order(5, true)->names()[1], "w");
    EXPECT_EQ(make_quadratic_order(-1, true)->names()[1], "i");
    EXPECT_EQ(make_quadratic_order(5, false)->names()[1], "sqrt5");
}

TEST(NumberRing, RingAxiomsOnRandomElements)
{
    rng_t rng(21);
    for (auto const & o : sample_orders())
        for (int k = 0; k < 150; k++) {
            auto a = random_element(o, rng, 6), b = random_element(o, rng, 6), c = random_element(o, rng, 6);
            EXPECT_EQ(a * b, b * a);
            EXPECT_EQ((a * b) * c, a * (b * c));
            EXPECT_EQ(a * (b + c), a * b + a * c);
            EXPECT_EQ(a - a, ring_element::integer(o, 0));
            EXPECT_EQ(a * ring_element::integer(o, 1), a);
            EXPECT_EQ(a.pow(3), a * a * a);
        }
}

TEST(NumberRing, NormIsMultiplicativeAndMatchesDeterminant)
{
    rng_t rng(22);
    for (auto const & o : sample_orders())
        for (int k = 0; k < 150; k++) {
            auto a = random_element(o, rng, 6), b = random_element(o, rng, 6);
            EXPECT_EQ(norm_elem(a * b), norm_elem(a) * norm_elem(b));
            EXPECT_EQ(norm_elem(a), determinant(a.multiplication_matrix()));
            EXPECT_EQ(trace_elem(a), trace(a.multiplication_matrix()));
        }
}

TEST(NumberRing, QuadraticNormFormula)
{
    auto z5 = make_quadratic_order(5, false);
    rng_t rng(23);
    for (int k = 0; k < 200; k++) {
        long a = uniform(rng, -30, 30), b = uniform(rng, -30, 30);
        EXPECT_EQ(norm_elem(quadratic_element(z5, a, b)), bigint(a * a - 5 * b * b));
    }
    auto o5 = make_quadratic_order(5, true);
    auto w = ring_element::basis(o5, 1);
    EXPECT_EQ(w * w, w + ring_element::integer(o5, 1));
    EXPECT_EQ(norm_elem(w), -1);
}

TEST(NumberRing, AutomorphismsAreRingMaps)
{
    rng_t rng(24);
    for (auto const & o : sample_orders())
        for (auto const & s : o->automorphisms())
            for (int k = 0; k < 40; k++) {
                auto a = random_element(o, rng, 5), b = random_element(o, rng, 5);
                EXPECT_EQ((a * b).apply(s), a.apply(s) * b.apply(s)) << o->tag() << " " << s.name;
                EXPECT_EQ((a + b).apply(s), a.apply(s) + b.apply(s));
            }
}

TEST(NumberRing, InverseOfUnits)
{
    auto o = make_quadratic_order(2, true);
    auto u = quadratic_element(o, 1, 1);
    auto inv = u.inverse();
    ASSERT_TRUE(inv);
    EXPECT_EQ(*inv, quadratic_element(o, -1, 1));
    EXPECT_FALSE(quadratic_element(o, 2, 0).inverse());
}

TEST(NumberRing, CompositumLiftAndRelativeNorm)
{
    auto gauss = make_quadratic_order(-1, true);
    auto l = make_compositum_order(gauss, 2);
    rng_t rng(25);
    for (int k = 0; k < 100; k++) {
        auto x = random_element(gauss, rng, 6);
        EXPECT_EQ(restrict_to_base(lift_to(l, x)), x);
        auto y = random_element(l, rng, 4);
        auto n = relative_norm(y);
        EXPECT_NO_THROW(restrict_to_base(n));
        EXPECT_EQ(norm_elem(restrict_to_base(n)), norm_elem(y));
    }
    EXPECT_THROW(restrict_to_base(ring_element::basis(l, 2)), std::invalid_argument);
}

TEST(NumberRing, SimpleExtension)
{
    auto z = make_rational_order();
    auto e = make_simple_extension(ring_element::integer(z, 3), ring_element::integer(z, 1));
    auto rho = ring_element::basis(e, 1);
    auto zero = rho * rho + bigint(3) * rho + ring_element::integer(e, 1);
    EXPECT_TRUE(zero.is_zero());
    EXPECT_EQ(restrict_to_base(relative_norm(rho)), ring_element::integer(z, 1));
}

TEST(NumberRing, PrincipalIdealIndexIsNorm)
{
    rng_t rng(26);
    for (auto const & o : sample_orders())
        for (int k = 0; k < 60; k++) {
            auto x = random_nonzero(o, rng, 5);
            auto a = principal_ideal(x);
            EXPECT_EQ(a.index(), abs(norm_elem(x))) << o->tag();
            EXPECT_TRUE(a.contains(x));
            EXPECT_TRUE(a.contains(x * random_element(o, rng, 5)));
            auto y = random_element(o, rng, 20);
            EXPECT_TRUE(a.contains(y - a.reduce(y)));
            EXPECT_EQ(a.reduce(y), a.reduce(a.reduce(y)));
        }
    EXPECT_TRUE(principal_ideal(ring_element::integer(make_rational_order(), 0)).is_zero());
}

TEST(NumberRing, IdealOperations)
{
    rng_t rng(27);
    for (auto const & o : sample_orders()) {
        if (o->degree() > 2) continue;
        for (int k = 0; k < 60; k++) {
            auto x = random_nonzero(o, rng, 4), y = random_nonzero(o, rng, 4);
            auto a = principal_ideal(x), b = principal_ideal(y);
            auto s = ideal_sum(a, b), p = ideal_product(a, b), i = ideal_intersection(a, b);
            EXPECT_EQ(p, principal_ideal(x * y));
            EXPECT_TRUE(s.contains(x) && s.contains(y));
            EXPECT_TRUE(i.contains(x * y));
            /* index multiplicativity for the product and the second isomorphism theorem */
            EXPECT_EQ(p.index(), a.index() * b.index());
            EXPECT_EQ(s.index() * i.index(), a.index() * b.index());
            EXPECT_EQ(ideal_power(a, 2), principal_ideal(x * x));
            EXPECT_EQ(ideal_scale(a, 3), principal_ideal(bigint(3) * x));
            bigint r = ideal_rational_generator(a);
            EXPECT_TRUE(a.contains(ring_element::integer(o, r)));
            for (bigint m = 1; m < r; m++) EXPECT_FALSE(a.contains(ring_element::integer(o, m)));
        }
    }
}

TEST(NumberRing, PPart)
{
    auto o = make_quadratic_order(-1, true);
    auto a = principal_ideal(ring_element(o, {bigint(6), bigint(0)}));
    EXPECT_EQ(p_part(a, 2), principal_ideal(ring_element::integer(o, 2)));
    EXPECT_EQ(p_part(a, 3), principal_ideal(ring_element::integer(o, 3)));
    EXPECT_TRUE(p_part(a, 5).is_unit());
}

TEST(NumberRing, ResidueArithmetic)
{
    rng_t rng(28);
    auto o = make_quadratic_order(2, true);
    for (int k = 0; k < 100; k++) {
        auto m = principal_ideal(random_nonzero(o, rng, 4));
        if (m.is_unit()) continue;
        auto x = random_element(o, rng, 6);
        long e = uniform(rng, 0, 12);
        EXPECT_TRUE(congruent_mod_ideal(power_mod(x, e, m), x.pow(static_cast<unsigned long>(e)), m));
        auto inv = inverse_mod(x, m);
        EXPECT_EQ(inv.has_value(), invertible_mod(x, m));
        if (inv) {
            EXPECT_TRUE(congruent_mod_ideal(x * *inv, ring_element::integer(o, 1), m));
            bigint ord = multiplicative_order_mod(x, m);
            EXPECT_TRUE(congruent_mod_ideal(power_mod(x, ord, m), ring_element::integer(o, 1), m));
            /* brute-force minimality */
            auto acc = m.reduce(x);
            for (bigint j = 1; j < ord; j++) {
                EXPECT_FALSE(congruent_mod_ideal(acc, ring_element::integer(o, 1), m));
                acc = m.reduce(acc * x);
            }
        } else {
            EXPECT_THROW(multiplicative_order_mod(x, m), not_invertible);
        }
        if (m.index() < 200) EXPECT_EQ(enumerate_residues(m).size(), m.index());
    }
}

TEST(NumberRing, ElementPolynomials)
{
    auto o = make_quadratic_order(-1, true);
    auto i = ring_element::basis(o, 1);
    auto one = ring_element::integer(o, 1);
    element_polynomial f({one, ring_element::integer(o, 0), one});
    EXPECT_TRUE(f(i).is_zero());
    auto g = affine_compose(f, ring_element::integer(o, 2), i);
    EXPECT_EQ(g.compose(element_polynomial({i, ring_element::integer(o, 2)})),
              element_polynomial::constant(ring_element::integer(o, 4)) * f);
}
