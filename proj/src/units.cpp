#include "unitdef/units.hpp"

namespace unitdef {

std::string to_string(completeness c)
{
    switch (c) {
    case completeness::proven: return "proven";
    case completeness::generated: return "generated";
    case completeness::declared: return "declared";
    }
    return "?";
}

void unit_group::validate() const
{
    auto one = ring_element::integer(ctx, 1);
    if (torsion_order == 0) throw std::logic_error("unit group: torsion order zero");
    ring_element z = one;
    for (unsigned long k = 1; k <= torsion_order; k++) {
        z = z * torsion;
        if (z == one && k < torsion_order) throw std::logic_error("unit group: torsion order is not minimal");
    }
    if (!(z == one)) throw std::logic_error("unit group: zeta^order != 1");
    for (auto const & u : free) {
        bigint n = norm_elem(u);
        if (n != 1 && n != -1) throw std::logic_error("unit group: generator " + u.to_string() + " is not a unit");
    }
}

unit_word word_identity(unit_group const & g) { return {0, std::vector<bigint>(g.rank())}; }

unit_word word_generator(unit_group const & g, std::size_t i)
{
    auto w = word_identity(g);
    w.exps.at(i) = 1;
    return w;
}

unit_word word_torsion(unit_group const & g, bigint const & e)
{
    auto w = word_identity(g);
    w.torsion_exp = floor_mod(e, static_cast<unsigned long>(g.torsion_order));
    return w;
}

unit_word word_normalize(unit_group const & g, unit_word a)
{
    a.torsion_exp = floor_mod(a.torsion_exp, static_cast<unsigned long>(g.torsion_order));
    return a;
}

unit_word word_mul(unit_group const & g, unit_word const & a, unit_word const & b)
{
    unit_word r = a;
    r.torsion_exp += b.torsion_exp;
    for (std::size_t i = 0; i < r.exps.size(); i++) r.exps[i] += b.exps[i];
    return word_normalize(g, std::move(r));
}

unit_word word_inverse(unit_group const & g, unit_word const & a)
{
    unit_word r = a;
    r.torsion_exp = -r.torsion_exp;
    for (auto & e : r.exps) e = -e;
    return word_normalize(g, std::move(r));
}

unit_word word_pow(unit_group const & g, unit_word const & a, bigint const & k)
{
    unit_word r = a;
    r.torsion_exp *= k;
    for (auto & e : r.exps) e *= k;
    return word_normalize(g, std::move(r));
}

std::string word_to_string(unit_word const & w)
{
    std::string s = "z^" + w.torsion_exp.get_str();
    for (std::size_t i = 0; i < w.exps.size(); i++) s += " u" + std::to_string(i + 1) + "^" + w.exps[i].get_str();
    return s;
}

namespace {

ring_element exact_power(ring_element const & u, bigint const & e, unsigned long cap)
{
    if (abs(e) > cap) throw cap_exceeded("evaluate: exponent " + e.get_str() + " above cap");
    long k = e.get_si();
    if (k >= 0) return u.pow(static_cast<unsigned long>(k));
    auto inv = u.inverse();
    if (!inv) throw std::logic_error("evaluate: generator is not invertible");
    return inv->pow(static_cast<unsigned long>(-k));
}

}   // namespace

ring_element evaluate(unit_group const & g, unit_word const & w, unsigned long exponent_cap)
{
    bigint t = floor_mod(w.torsion_exp, static_cast<unsigned long>(g.torsion_order));
    ring_element r = g.torsion.pow(t.get_ui());
    for (std::size_t i = 0; i < g.rank(); i++)
        if (w.exps[i] != 0) r = r * exact_power(g.free[i], w.exps[i], exponent_cap);
    return r;
}

ring_element unit_residue(unit_group const & g, unit_word const & w, ideal_lattice const & m)
{
    if (m.is_zero()) return evaluate(g, w);
    bigint t = floor_mod(w.torsion_exp, static_cast<unsigned long>(g.torsion_order));
    ring_element r = power_mod(g.torsion, t, m);
    for (std::size_t i = 0; i < g.rank(); i++)
        if (w.exps[i] != 0) r = m.reduce(r * power_mod(g.free[i], w.exps[i], m));
    return r;
}

ring_element fundamental_unit(order_ptr const & ctx, std::uint64_t step_cap)
{
    if (ctx->type != order_context::kind::quadratic || ctx->radicand < 0)
        throw std::invalid_argument("fundamental_unit: order is not real quadratic");
    bigint const d = ctx->radicand;
    bigint a0;
    mpz_sqrt(a0.get_mpz_t(), d.get_mpz_t());
    /* continued fraction of sqrt d; convergents p/q */
    bigint m = 0, den = 1, a = a0;
    bigint p_prev = 1, p = a0, q_prev = 0, q = 1;
    std::uint64_t steps = 0;
    while (p * p - d * q * q != 1 && p * p - d * q * q != -1) {
        if (++steps > step_cap) throw cap_exceeded("fundamental_unit: continued fraction cap exceeded");
        m = den * a - m;
        den = (d - m * m) / den;
        a = (a0 + m) / den;
        bigint pn = a * p + p_prev;
        bigint qn = a * q + q_prev;
        p_prev = p;
        q_prev = q;
        p = pn;
        q = qn;
    }
    ring_element e0 = quadratic_element(ctx, p, q);
    if (!(ctx->maximal && floor_mod(d, 4) == 1)) return e0;
    /* the unit index [O_K^x : Z[sqrt d]^x] divides 3: look for eta = (t + y sqrt d)/2 with eta^3 = e0 */
    bigint n = p * p - d * q * q;
    bigint tr = 2 * p;
    bigint t;
    mpz_root(t.get_mpz_t(), tr.get_mpz_t(), 3);
    for (bigint cand = t - 2; cand <= t + 2; cand++) {
        if (cand <= 0 || cand * cand * cand - 3 * n * cand != tr) continue;
        bigint y2 = cand * cand - 4 * n;
        if (y2 % d != 0) continue;
        y2 /= d;
        if (!mpz_perfect_square_p(y2.get_mpz_t())) continue;
        bigint y;
        mpz_sqrt(y.get_mpz_t(), y2.get_mpz_t());
        if (floor_mod(cand - y, 2) != 0) continue;
        /* (t + y sqrt d)/2 = (t - y)/2 + y w */
        ring_element eta(ctx, {(cand - y) / 2, y});
        if (eta.pow(3) == e0) return eta;
    }
    return e0;
}

namespace {

/* Roots of unity in an imaginary quadratic order: brute force over a
 * small box, which contains all of them (|coords| <= 1 suffices). */
std::pair<ring_element, unsigned long> imaginary_torsion(order_ptr const & ctx)
{
    auto one = ring_element::integer(ctx, 1);
    ring_element best = -one;
    unsigned long best_order = 2;
    for (int a : {0, 1, -1})
        for (int b : {1, -1, 0}) {
            ring_element z(ctx, {a, b});
            if (norm_elem(z) != 1) continue;
            ring_element acc = z;
            for (unsigned long k = 1; k <= 6; k++) {
                if (acc == one) {
                    if (k > best_order) {
                        best = z;
                        best_order = k;
                    }
                    break;
                }
                acc = acc * z;
            }
        }
    return {best, best_order};
}

}   // namespace

unit_group unit_group_of(order_ptr const & ctx)
{
    unit_group g;
    g.ctx = ctx;
    g.status = completeness::proven;
    auto one = ring_element::integer(ctx, 1);
    if (ctx->type == order_context::kind::rational) {
        g.torsion = -one;
        g.torsion_order = 2;
        g.note = "units of Z";
    } else if (ctx->type == order_context::kind::quadratic && ctx->radicand < 0) {
        auto [z, k] = imaginary_torsion(ctx);
        g.torsion = z;
        g.torsion_order = k;
        g.note = "finite unit group of an imaginary quadratic order";
    } else if (ctx->type == order_context::kind::quadratic) {
        g.torsion = -one;
        g.torsion_order = 2;
        g.free.push_back(fundamental_unit(ctx));
        g.note = "+-1 times powers of the fundamental unit";
    } else {
        throw std::invalid_argument("unit_group_of: unit groups of " + ctx->tag() + " must be declared");
    }
    g.validate();
    return g;
}

unit_group declared_unit_group(order_ptr const & ctx, ring_element zeta, unsigned long zeta_order,
                               std::vector<ring_element> gens, std::string note)
{
    unit_group g{ctx, std::move(zeta), zeta_order, std::move(gens), completeness::declared, std::move(note)};
    g.validate();
    return g;
}

unit_group generated_subgroup(order_ptr const & ctx, ring_element zeta, unsigned long zeta_order,
                              std::vector<ring_element> gens, std::string note)
{
    unit_group g{ctx, std::move(zeta), zeta_order, std::move(gens), completeness::generated, std::move(note)};
    g.validate();
    return g;
}

unit_enumeration enumerate_units(unit_group const & g, unsigned long exponent_bound)
{
    unit_enumeration out;
    out.bound = exponent_bound;
    out.exhaustive = g.finite_and_exact();
    std::size_t r = g.rank();
    long b = static_cast<long>(exponent_bound);
    std::vector<long> e(r, -b);
    for (unsigned long t = 0; t < g.torsion_order; t++) {
        std::fill(e.begin(), e.end(), -b);
        bool more = true;
        while (more) {
            unit_word w;
            w.torsion_exp = t;
            for (long x : e) w.exps.emplace_back(x);
            out.words.push_back(std::move(w));
            /* odometer step, last coordinate fastest */
            more = false;
            for (std::size_t i = r; i-- > 0;) {
                if (e[i] < b) {
                    e[i]++;
                    for (std::size_t j = i + 1; j < r; j++) e[j] = -b;
                    more = true;
                    break;
                }
            }
        }
    }
    return out;
}

congruence_subgroup_result congruence_subgroup(unit_group const & g, bigint const & n, ideal_lattice const & a,
                                               std::uint64_t iteration_cap)
{
    if (n <= 0) throw std::invalid_argument("congruence_subgroup: n must be positive");
    auto ctx = g.ctx;
    auto one = ring_element::integer(ctx, 1);
    auto is_one_mod = [&](ring_element const & x) { return congruent_mod_ideal(x, one, a); };

    congruence_subgroup_result res;
    /* torsion part of the kernel: <zeta^j0> */
    unsigned long j0 = 1;
    while (!is_one_mod(unit_residue(g, word_torsion(g, j0), a))) j0++;
    std::vector<unit_word> kernel;
    kernel.push_back(word_torsion(g, j0));

    if (g.rank() == 1) {
        /* least k >= 1 with g^k = zeta^i mod a, giving zeta^-i g^k in the kernel */
        ring_element base = a.reduce(g.free[0]);
        ring_element acc = base;
        std::vector<ring_element> zpow;
        for (unsigned long i = 0; i < g.torsion_order; i++) zpow.push_back(unit_residue(g, word_torsion(g, i), a));
        for (std::uint64_t k = 1;; k++) {
            if (k > iteration_cap) throw cap_exceeded("congruence_subgroup: iteration cap exceeded");
            bool found = false;
            for (unsigned long i = 0; i < g.torsion_order; i++)
                if (congruent_mod_ideal(acc, zpow[i], a)) {
                    unit_word w = word_pow(g, word_generator(g, 0), static_cast<unsigned long>(k));
                    w = word_mul(g, w, word_torsion(g, -bigint(static_cast<unsigned long>(i))));
                    kernel.push_back(w);
                    found = true;
                    break;
                }
            if (found) break;
            acc = a.reduce(acc * base);
        }
    } else {
        /* finite-index subgroup: each free generator to its own order mod a */
        res.exact = g.rank() == 0;
        for (std::size_t i = 0; i < g.rank(); i++) {
            bigint k = multiplicative_order_mod(g.free[i], a, iteration_cap);
            kernel.push_back(word_pow(g, word_generator(g, i), k));
        }
    }

    res.root_words = kernel;
    for (auto const & w : kernel) res.generator_words.push_back(word_pow(g, w, n));
    ring_element zeta = evaluate(g, res.generator_words[0]);
    unsigned long zord = 1;
    for (ring_element z = zeta; !(z == one); z = z * zeta) zord++;
    std::vector<ring_element> gens;
    for (std::size_t i = 1; i < res.generator_words.size(); i++) gens.push_back(evaluate(g, res.generator_words[i]));
    res.group = generated_subgroup(ctx, zeta, zord, std::move(gens),
                                   "{u^" + n.get_str() + " : u = 1 mod a}" + (res.exact ? "" : " (finite-index subgroup)"));
    if (g.status == completeness::declared) res.group.status = completeness::declared;
    return res;
}

}   // namespace unitdef
