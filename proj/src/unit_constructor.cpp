#include "unitdef/unit_constructor.hpp"

#include <deque>
#include <map>

namespace unitdef {

namespace {

ring_element sign_normalized(ring_element x)
{
    for (auto const & c : x.coords()) {
        if (c == 0) continue;
        if (c < 0) x = -x;
        break;
    }
    return x;
}

/* Lattice points c * H of I with |c_i| <= h, by increasing height. */
template <typename Visit>
bool scan_ideal(ideal_lattice const & I, long max_height, Visit visit)
{
    auto const & H = I.basis();
    std::size_t k = H.rows();
    for (long h = 1; h <= max_height; h++) {
        std::vector<long> c(k, -h);
        for (;;) {
            long mx = 0;
            for (long v : c) mx = std::max(mx, std::labs(v));
            if (mx == h) {
                std::vector<bigint> cc(c.begin(), c.end());
                if (visit(ring_element(I.context(), row_times(cc, H)))) return true;
            }
            std::size_t i = k;
            while (i > 0 && c[i - 1] == h) c[--i] = -h;
            if (i == 0) break;
            c[i - 1]++;
        }
    }
    return false;
}

struct principal_choice {
    ring_element mu;
    std::string how;
};

principal_choice principalize(ideal_lattice const & I, ring_element const & beta)
{
    bigint idx = I.index();
    std::optional<ring_element> mu;
    scan_ideal(I, 4, [&](ring_element const & x) {
        if (abs(norm_elem(x)) != idx) return false;
        mu = sign_normalized(x);
        return true;
    });
    if (mu) return {*mu, "generator of I"};
    ring_element n = ring_element::integer(I.context(), idx);
    if (invertible_mod(beta, principal_ideal(n))) return {n, "N(I)"};
    std::optional<ring_element> best;
    bigint best_index;
    scan_ideal(I, 4, [&](ring_element const & x) {
        bigint nx = abs(norm_elem(x));
        if (nx == 0 || (best && nx >= best_index)) return false;
        if (!invertible_mod(beta, principal_ideal(x))) return false;
        best = sign_normalized(x);
        best_index = nx;
        return false;
    });
    if (!best) throw std::domain_error("construct_unit: no principal multiple of I coprime to beta found");
    return {*best, "element of I coprime to beta"};
}

}   // namespace

unit_construction construct_unit(order_ptr const & ctx, ideal_lattice const & ideal, ring_element const & beta,
                                 std::uint64_t residue_cap)
{
    if (ideal.is_zero() || ideal.is_unit()) throw std::invalid_argument("construct_unit: I must be proper and nonzero");
    if (!invertible_mod(beta, ideal)) throw std::invalid_argument("beta not coprime to I");
    unit_group grp = unit_group_of(ctx);
    unit_construction c;
    c.base = ctx;
    c.original_ideal = ideal;
    c.beta = beta;
    auto pc = principalize(ideal, beta);
    c.mu = pc.mu;
    c.principalization = pc.how;
    ideal_lattice mu_o = principal_ideal(c.mu);
    if (mu_o.index() > residue_cap) throw cap_exceeded("quotient too large");

    /* image of the unit group in (O/mu)^x, each residue tagged with a word */
    std::map<std::vector<bigint>, unit_word> image;
    std::deque<std::pair<ring_element, unit_word>> queue;
    std::vector<unit_word> steps{word_torsion(grp, 1)};
    for (std::size_t i = 0; i < grp.rank(); i++) {
        steps.push_back(word_generator(grp, i));
        steps.push_back(word_inverse(grp, word_generator(grp, i)));
    }
    ring_element one = mu_o.reduce(ring_element::integer(ctx, 1));
    image.emplace(one.coords(), word_identity(grp));
    queue.emplace_back(one, word_identity(grp));
    while (!queue.empty()) {
        auto [r, w] = queue.front();
        queue.pop_front();
        for (auto const & s : steps) {
            ring_element nr = mu_o.reduce(r * unit_residue(grp, s, mu_o));
            if (image.count(nr.coords())) continue;
            unit_word nw = word_mul(grp, w, s);
            image.emplace(nr.coords(), nw);
            queue.emplace_back(nr, nw);
        }
    }

    ring_element bp = mu_o.reduce(beta);
    ring_element acc = bp;
    for (std::uint64_t k = 1;; k++) {
        if (k > residue_cap) throw cap_exceeded("construct_unit: coset order search exceeded cap");
        if (image.count(acc.coords())) {
            c.d = k;
            break;
        }
        acc = mu_o.reduce(acc * bp);
    }
    ring_element neg_beta = -beta;
    ring_element nb_d = neg_beta.pow(c.d);
    c.u_word = image.at(mu_o.reduce(nb_d).coords());
    c.u = evaluate(grp, c.u_word);

    /* a mu (-beta)^(d-1) + mu^d b = u - (-beta)^d */
    ring_element r = c.u - nb_d;
    auto r_mu = solve_left(c.mu.multiplication_matrix(), r.coords());
    if (!r_mu) throw std::logic_error("construct_unit: u != (-beta)^d mod mu");
    ring_element rp(ctx, std::move(*r_mu));
    if (c.d == 1) {
        c.a = ring_element::integer(ctx, 0);
        c.b = rp;
    } else {
        ring_element cst = neg_beta.pow(c.d - 1);
        ring_element mu_pow = c.mu.pow(c.d - 1);
        ideal_lattice mod = principal_ideal(mu_pow);
        auto inv = inverse_mod(cst, mod);
        if (!inv) throw std::logic_error("construct_unit: (-beta)^(d-1) not invertible mod mu^(d-1)");
        c.a = mod.reduce(rp * *inv);
        auto bq = solve_left(mu_pow.multiplication_matrix(), (rp - c.a * cst).coords());
        if (!bq) throw std::logic_error("construct_unit: b is not integral");
        c.b = ring_element(ctx, std::move(*bq));
    }

    ring_element zero = ring_element::integer(ctx, 0);
    std::vector<ring_element> fc(c.d + 1, zero);
    fc[c.d] = ring_element::integer(ctx, 1);
    fc[c.d - 1] = fc[c.d - 1] + c.a;
    fc[0] = fc[0] + c.b;
    c.f = element_polynomial(fc);
    c.g = affine_compose(c.f, c.mu, c.beta);

    if (c.d == 1) {
        materialized_root m;
        ring_element rho = -(c.a + c.b);
        m.delta = c.mu * rho + c.beta;
        m.norm = m.delta;
        m.congruent = congruent_mod_ideal(m.delta, c.beta, mu_o);
        m.root_of_g = c.g(m.delta).is_zero();
        c.root = m;
    } else if (c.d == 2) {
        materialized_root m;
        m.extension = make_simple_extension(c.a, c.b);
        ring_element rho = ring_element::basis(m.extension, m.extension->base_rank);
        ring_element mu_l = lift_to(m.extension, c.mu);
        m.delta = mu_l * rho + lift_to(m.extension, c.beta);
        m.norm = restrict_to_base(relative_norm(m.delta));
        m.congruent = congruent_mod_ideal(m.delta, lift_to(m.extension, c.beta), principal_ideal(mu_l));
        std::vector<ring_element> gl;
        for (auto const & x : c.g.coefficients()) gl.push_back(lift_to(m.extension, x));
        m.root_of_g = element_polynomial(gl)(m.delta).is_zero();
        c.root = m;
    }
    auto chk = check_construction(c);
    if (!chk.ok) throw std::logic_error("construct_unit: certificate failed: " + chk.failures.front());
    return c;
}

construction_check check_construction(unit_construction const & c)
{
    construction_check r;
    auto fail = [&](std::string s) {
        r.ok = false;
        r.failures.push_back(std::move(s));
    };
    auto ctx = c.base;
    auto one = ring_element::integer(ctx, 1);
    if (c.g.degree() != static_cast<long>(c.d) || !(c.g.leading() == one)) fail("g is not monic of degree d");
    if (c.f.degree() != static_cast<long>(c.d) || !(c.f.leading() == one)) fail("f is not monic of degree d");
    for (long k = 1; k + 1 < static_cast<long>(c.d); k++)
        if (!c.f[static_cast<std::size_t>(k)].is_zero()) fail("f has a stray coefficient");
    if (c.d >= 2 && (!(c.f[c.d - 1] == c.a) || !(c.f[0] == c.b))) fail("f does not read X^d + a X^(d-1) + b");
    ring_element g0 = c.g.coefficients().empty() ? ring_element::integer(ctx, 0) : c.g[0];
    if (!(g0 == c.u)) fail("g(0) != u");
    bigint nu = norm_elem(c.u);
    if (nu != 1 && nu != -1) fail("u is not a unit");
    element_polynomial lin(std::vector<ring_element>{c.beta, c.mu});
    if (!(c.g.compose(lin) == c.mu.pow(c.d) * c.f)) fail("g(mu X + beta) != mu^d f(X)");
    if (!c.original_ideal.contains(c.mu)) fail("mu is not in I");
    if (c.root) {
        ring_element expect = (c.d % 2 == 0) ? g0 : -g0;
        if (!(c.root->norm == expect)) fail("N(delta) != (-1)^d g(0)");
        if (!c.root->congruent) fail("delta != beta mod mu");
        if (!c.root->root_of_g) fail("delta is not a root of g");
    }
    return r;
}

}   // namespace unitdef
