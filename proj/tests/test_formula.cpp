#include <gtest/gtest.h>

#include "generators.hpp"
#include "unitdef/builtin_formulas.hpp"
#include "unitdef/formula.hpp"

using namespace unitdef;
using namespace unitdef::testing;

namespace {

std::vector<std::string> const var_names{"x", "y", "e", "d"};

term random_term(rng_t & rng, int depth)
{
    term t;
    long pick = depth <= 0 ? uniform(rng, 0, 1) : uniform(rng, 0, 6);
    switch (pick) {
    case 0:
        t.kind = term::op::literal;
        t.value = uniform(rng, -9, 9);
        break;
    case 1:
        t.kind = term::op::variable;
        t.name = var_names[uniform(rng, 0, 3)];
        break;
    case 2: t.kind = term::op::add; break;
    case 3: t.kind = term::op::sub; break;
    case 4: t.kind = term::op::mul; break;
    case 5:
        t.kind = term::op::pow;
        t.exponent = uniform(rng, 0, 3);
        break;
    default: t.kind = term::op::neg; break;
    }
    if (pick >= 2 && pick <= 4) {
        t.args.push_back(random_term(rng, depth - 1));
        t.args.push_back(random_term(rng, depth - 1));
    } else if (pick >= 5) {
        term a = random_term(rng, depth - 1);
        /* the parser folds negated literals */
        if (pick == 6 && a.kind == term::op::literal) a = term{term::op::variable, 0, "y", 0, {}, {}};
        t.args.push_back(a);
    }
    return t;
}

formula random_formula(rng_t & rng, int depth)
{
    formula f;
    long pick = depth <= 0 ? uniform(rng, 0, 3) : uniform(rng, 0, 6);
    switch (pick) {
    case 0: f.kind = formula::op::eq; f.terms = {random_term(rng, 2), random_term(rng, 2)}; break;
    case 1: f.kind = formula::op::ne; f.terms = {random_term(rng, 2), random_term(rng, 2)}; break;
    case 2: f.kind = formula::op::cong; f.terms = {random_term(rng, 2), random_term(rng, 2), random_term(rng, 1)}; break;
    case 3: f.kind = formula::op::is_unit; f.terms = {random_term(rng, 2)}; break;
    case 4: f.kind = formula::op::negation; f.args = {random_formula(rng, depth - 1)}; break;
    default: {
        f.kind = pick == 5 ? formula::op::conj : formula::op::disj;
        long n = uniform(rng, 2, 3);
        for (long i = 0; i < n; i++) {
            formula a = random_formula(rng, depth - 1);
            /* same-kind children flatten on reparse */
            if (a.kind == f.kind) {
                formula wrap;
                wrap.kind = formula::op::negation;
                wrap.args = {a};
                a = wrap;
            }
            f.args.push_back(a);
        }
    }
    }
    return f;
}

formula_ast random_ast(rng_t & rng)
{
    formula_ast f;
    std::set<std::string> bound;
    long nq = uniform(rng, 0, 3);
    for (long i = 0; i < nq; i++) {
        quantifier q;
        q.universal = uniform(rng, 0, 1);
        q.var = var_names[i];
        q.sort = uniform(rng, 0, 1) ? sort_kind::unit : sort_kind::elem;
        if (uniform(rng, 0, 1)) q.bound = uniform(rng, 0, 9);
        bound.insert(q.var);
        f.prefix.push_back(q);
    }
    f.body = random_formula(rng, 3);
    std::function<void(term const &)> tv = [&](term const & t) {
        if (t.kind == term::op::variable && !bound.count(t.name)) f.free_vars.insert(t.name);
        for (auto const & a : t.args) tv(a);
    };
    std::function<void(formula const &)> fv = [&](formula const & g) {
        for (auto const & t : g.terms) tv(t);
        for (auto const & a : g.args) fv(a);
    };
    fv(f.body);
    return f;
}

parse_error::kind error_kind(std::string const & src, std::optional<std::set<std::string>> free = std::nullopt)
{
    try {
        parse(src, free);
    } catch (parse_error const & e) {
        return e.category;
    }
    ADD_FAILURE() << "no parse error for: " << src;
    return parse_error::kind::syntax;
}

eval_env env_for(order_ptr const & o, unsigned long ub, unsigned long eb)
{
    return {o, unit_group_of(o), ub, eb, {}};
}

}   // namespace

TEST(Formula, ParsesBuiltins)
{
    for (auto const & n : builtin_names()) {
        auto b = builtin_by_name(n, 5);
        auto f = b.ast();
        EXPECT_EQ(f.free_vars, b.free_vars) << n;
        EXPECT_EQ(parse(print(f), b.free_vars), f) << n;
    }
    EXPECT_THROW(builtin_by_name("nope"), std::invalid_argument);
}

TEST(Formula, SurfaceSyntaxDetails)
{
    auto f = parse("forall x:Elem(2). exists u:Unit. -x^2 = u mod 3  # trailing comment");
    ASSERT_EQ(f.prefix.size(), 2u);
    EXPECT_EQ(*f.prefix[0].bound, 2u);
    EXPECT_FALSE(f.prefix[1].bound);
    EXPECT_EQ(f.body.kind, formula::op::cong);
    EXPECT_EQ(f.body.terms[0].kind, term::op::neg);
    EXPECT_EQ(f.body.terms[0].args[0].kind, term::op::pow);
    EXPECT_EQ(print(f), "forall x:Elem(2). exists u:Unit. -x^2 == u mod 3");
    auto lit = parse_term("-3");
    EXPECT_EQ(lit.kind, term::op::literal);
    EXPECT_EQ(lit.value, -3);
    EXPECT_EQ(print(parse_term("(a - b) - (c - d)")), "a - b - (c - d)");
    EXPECT_EQ(print(parse_term("a*(b*c)")), "a*(b*c)");
    EXPECT_EQ(print(parse_term("(-3)^2")), "(-3)^2");
    auto nested = parse("(x == 1 or x == 2) and not (x == 3 and y == 4)");
    EXPECT_EQ(print(nested), "(x == 1 or x == 2) and not (x == 3 and y == 4)");
    EXPECT_EQ(print(parse("(x + 1)*y == 0")), "(x + 1)*y == 0");
}

TEST(Formula, Errors)
{
    try {
        parse("forall x:Elem.");
        FAIL();
    } catch (parse_error const & e) {
        EXPECT_EQ(e.category, parse_error::kind::syntax);
        EXPECT_EQ(e.pos.line, 1);
        EXPECT_EQ(e.pos.column, 15);
    }
    EXPECT_EQ(error_kind("x == $"), parse_error::kind::syntax);
    EXPECT_EQ(error_kind("x =="), parse_error::kind::syntax);
    EXPECT_EQ(error_kind("forall x:Thing. x == 1"), parse_error::kind::syntax);
    EXPECT_EQ(error_kind("x == y", std::set<std::string>{"x"}), parse_error::kind::unbound_variable);
    EXPECT_EQ(error_kind("forall x:Elem. forall x:Unit. x == 1"), parse_error::kind::sort);
    EXPECT_EQ(error_kind("forall x:Elem. x == 1", std::set<std::string>{"x"}), parse_error::kind::sort);
    try {
        parse("x == 1 and\n  y ==");
        FAIL();
    } catch (parse_error const & e) {
        EXPECT_EQ(e.pos.line, 2);
    }
}

TEST(Formula, RandomRoundTrip)
{
    rng_t rng(61);
    for (int k = 0; k < 1500; k++) {
        auto f = random_ast(rng);
        std::string s = print(f);
        formula_ast g;
        ASSERT_NO_THROW(g = parse(s)) << s;
        EXPECT_EQ(g, f) << s;
        EXPECT_EQ(print(g), s);
    }
}

TEST(Formula, TermEvaluation)
{
    rng_t rng(62);
    auto o = make_quadratic_order(2, true);
    for (int k = 0; k < 300; k++) {
        auto x = random_element(o, rng, 5), y = random_element(o, rng, 5);
        std::map<std::string, ring_element> a{{"x", x}, {"y", y}};
        EXPECT_EQ(eval_term(parse_term("(x + y)^2 - x*x - 2*x*y"), o, a), y * y);
        EXPECT_EQ(eval_term(parse_term("-x - -3"), o, a), ring_element::integer(o, 3) - x);
        EXPECT_EQ(eval_body(parse("unit(x)").body, o, a), abs(norm_elem(x)) == 1);
        EXPECT_TRUE(eval_body(parse("x*y == 0 mod x").body, o, a));
    }
    EXPECT_THROW(eval_term(parse_term("z"), o, {}), std::invalid_argument);
}

TEST(Formula, EvaluatorMatchesExactRk)
{
    auto o = make_quadratic_order(-1, true);
    auto r = rk_exact_finite_units(o);
    auto f = rk_member().ast();
    auto env = env_for(o, 1, 1);
    for (long a = -5; a <= 5; a++)
        for (long b = -5; b <= 5; b++) {
            ring_element x(o, {bigint(a), bigint(b)});
            env.assignment = {{"x", x}};
            auto res = eval_bounded(f, env);
            EXPECT_EQ(res.value, r.contains(x) ? truth::holds : truth::fails) << x.to_string();
            if (res.value == truth::fails) {
                ASSERT_TRUE(res.counterexample.count("e"));
            }
        }
}

TEST(Formula, InverseEncodingAgreesInTwoValuedReading)
{
    auto o = make_quadratic_order(-1, true);
    auto r = rk_exact_finite_units(o);
    auto f = rk_member_inverse_encoding().ast();
    auto env = env_for(o, 1, 1);
    for (long a = -5; a <= 5; a++)
        for (long b = -5; b <= 5; b++) {
            ring_element x(o, {bigint(a), bigint(b)});
            env.assignment = {{"x", x}};
            auto res = eval_bounded(f, env);
            EXPECT_NE(res.value, truth::holds);
            EXPECT_EQ(bounded_member(res), r.contains(x)) << x.to_string();
        }
}

TEST(Formula, ExistentialMonotoneInBound)
{
    auto o = make_quadratic_order(2, true);
    auto g = unit_group_of(o);
    rng_t rng(63);
    for (int k = 0; k < 40; k++) {
        auto e = evaluate(g, random_word(g, rng, 2));
        auto x = ring_element::integer(o, uniform(rng, -3, 3));
        bool seen = false;
        for (unsigned long b = 0; b <= 8; b++) {
            auto f = parse("exists d:Unit(" + std::to_string(b) + "). d - 1 == (e - 1)*x mod (e - 1)^2");
            eval_env env = env_for(o, 1, 1);
            env.assignment = {{"e", e}, {"x", x}};
            auto res = eval_bounded(f, env);
            EXPECT_NE(res.value, truth::fails);
            if (seen) EXPECT_EQ(res.value, truth::holds);
            if (res.value == truth::holds) {
                seen = true;
                auto a = env.assignment;
                a["d"] = res.witness.at("d");
                EXPECT_TRUE(eval_body(f.body, o, a));
            }
        }
    }
}

TEST(Formula, BoundedPositiveSeparatesCandidates)
{
    auto o = make_quadratic_order(2, true);
    /* the smallest unit with no witness for sqrt2 is -u^2, so start at exponent bound 2 */
    for (unsigned long b = 2; b <= 4; b++) {
        auto f = parse("forall e:Unit(" + std::to_string(b) + "). exists d:Unit(" + std::to_string(2 * b) +
                       "). d - 1 == (e - 1)*x mod (e - 1)^2");
        eval_env env = env_for(o, 1, 1);
        env.assignment = {{"x", ring_element::integer(o, 2)}};
        auto member = eval_bounded(f, env);
        EXPECT_EQ(member.value, truth::unknown);
        EXPECT_TRUE(member.bounded_positive);
        env.assignment = {{"x", ring_element::basis(o, 1)}};
        auto other = eval_bounded(f, env);
        EXPECT_EQ(other.value, truth::unknown);
        EXPECT_FALSE(other.bounded_positive);
    }
}

TEST(Formula, Tautologies)
{
    auto z = make_rational_order();
    auto gauss = make_quadratic_order(-1, true);
    auto t1 = eval_bounded(parse("forall u:Unit. u^4 == 1"), env_for(gauss, 1, 1));
    EXPECT_EQ(t1.value, truth::holds);
    auto t2 = eval_bounded(parse("forall x:Elem(3). x == x or x != x"), env_for(z, 1, 1));
    EXPECT_EQ(t2.value, truth::unknown);
    EXPECT_TRUE(t2.bounded_positive);
    auto t3 = eval_bounded(parse("exists x:Elem(1). x*x == 1 and x != 1"), env_for(z, 1, 1));
    ASSERT_EQ(t3.value, truth::holds);
    EXPECT_EQ(t3.witness.at("x"), ring_element::integer(z, -1));
    auto t4 = eval_bounded(parse("exists u:Unit. u == 2"), env_for(gauss, 1, 1));
    EXPECT_EQ(t4.value, truth::fails);
    auto t5 = eval_bounded(parse("forall x:Elem(2). x == 0"), env_for(z, 1, 1));
    EXPECT_EQ(t5.value, truth::fails);
    EXPECT_TRUE(t5.counterexample.count("x"));
}

TEST(Formula, ZkWitnessReplayAtZero)
{
    auto o = make_quadratic_order(5, false);
    auto f = zk(5).ast();
    eval_env env = env_for(o, 2, 1);
    env.assignment = {{"w", ring_element::integer(o, 0)}, {"r", ring_element::basis(o, 1)}};
    std::map<std::string, term> wit;
    for (auto const & n : {"mu", "nu1", "nu2", "tau1", "tau2", "s1", "s2", "u1", "u2"}) wit[n] = parse_term("1");
    for (auto const & n : {"mu1", "mu2", "sigma1", "sigma2"}) wit[n] = parse_term("e");
    for (auto const & n : {"t1", "t2", "v1", "v2"}) wit[n] = parse_term("0");
    auto res = check_witness(f, env, wit);
    EXPECT_EQ(res.value, truth::unknown);
    EXPECT_TRUE(res.bounded_positive);
    /* a wrong witness is refuted at some e */
    wit["mu1"] = parse_term("1");
    auto bad = check_witness(f, env, wit);
    EXPECT_EQ(bad.value, truth::fails);
    EXPECT_TRUE(bad.counterexample.count("e"));
}

TEST(Formula, SystemSAtTrivialPoint)
{
    auto o = make_quadratic_order(5, false);
    auto f = system_S(5).ast();
    auto one = ring_element::integer(o, 1), zero = ring_element::integer(o, 0);
    std::map<std::string, ring_element> a{{"w", zero}, {"r", ring_element::basis(o, 1)}};
    for (auto const & n : {"s1", "s2", "u1", "u2"}) a[n] = one;
    for (auto const & n : {"t1", "t2", "v1", "v2"}) a[n] = zero;
    EXPECT_TRUE(eval_body(f.body, o, a));
    a["r"] = -ring_element::basis(o, 1);
    EXPECT_TRUE(eval_body(f.body, o, a));
    a["r"] = one;
    EXPECT_FALSE(eval_body(f.body, o, a));
}

TEST(Formula, DPoly)
{
    EXPECT_EQ(d_poly(bigint(2)), bigint("5314410000"));
    EXPECT_EQ(d_poly(bigint(0)), 0);
    EXPECT_EQ(d_poly(bigint(-1)), 0);
    auto z = make_rational_order();
    for (long w = -4; w <= 4; w++) EXPECT_EQ(d_poly(ring_element::integer(z, w)), ring_element::integer(z, d_poly(bigint(w))));
}
