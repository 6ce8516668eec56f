#include "unitdef/unit_equations.hpp"

#include <map>

namespace unitdef {

namespace {

bool is_torsion_word(unit_word const & w)
{
    for (auto const & e : w.exps)
        if (e != 0) return false;
    return true;
}

}   // namespace

triple_solution_set solve_unit_triple(unit_group const & g, unsigned long exponent_bound)
{
    triple_solution_set out;
    out.bound = exponent_bound;
    auto words = enumerate_units(g, exponent_bound).words;
    auto one = ring_element::integer(g.ctx, 1);
    std::vector<ring_element> vals;
    std::map<std::vector<bigint>, std::size_t> where;
    for (std::size_t i = 0; i < words.size(); i++) {
        vals.push_back(evaluate(g, words[i]));
        where.emplace(vals.back().coords(), i);
    }
    for (std::size_t i = 0; i < words.size(); i++) {
        if (vals[i] == one) continue;
        for (std::size_t j = 0; j < words.size(); j++) {
            if (vals[j] == one) continue;
            ring_element x3 = one - vals[i] - vals[j];
            if (x3 == one) continue;
            auto it = where.find(x3.coords());
            if (it == where.end()) continue;
            out.triples.push_back({{words[i], words[j], words[it->second]}, {vals[i], vals[j], x3}});
        }
    }
    return out;
}

divisibility_result epsilon_divisibility(unit_group const & g, unit_word const & eps, long a, long b)
{
    if (a == 0 || b == 0) throw std::invalid_argument("epsilon_divisibility: exponents must be nonzero");
    if (is_torsion_word(eps)) throw std::invalid_argument("epsilon_divisibility: eps is a root of unity");
    auto one = ring_element::integer(g.ctx, 1);
    ring_element ea = evaluate(g, word_pow(g, eps, a)) - one;
    ring_element eb = evaluate(g, word_pow(g, eps, b)) - one;
    divisibility_result r;
    r.gcd_exponent = gcd(bigint(a), bigint(b));
    ring_element ed = evaluate(g, word_pow(g, eps, r.gcd_exponent)) - one;
    auto q = solve_left(eb.multiplication_matrix(), ea.coords());
    r.divides = q.has_value();
    r.gcd_ideal_matches = ideal_from_generators(g.ctx, {ea, eb}) == principal_ideal(ed);
    if (r.divides) {
        auto u = solve_left(ed.multiplication_matrix(), eb.coords());
        if (!u) throw std::logic_error("epsilon_divisibility: eps^gcd - 1 does not divide eps^b - 1");
        r.quotient_norm = norm_elem(ring_element(g.ctx, std::move(*u)));
    }
    return r;
}

find_n_result find_N(unit_group const & g, std::size_t index, unsigned long exponent_bound)
{
    if (index >= g.rank()) throw std::invalid_argument("find_N: no such free generator");
    find_n_result r;
    r.bound = exponent_bound;
    auto sols = solve_unit_triple(g, exponent_bound);
    for (auto const & t : sols.triples) {
        unit_word const & w = t.words[0];
        if (w.torsion_exp != 0) continue;
        bool pure = true;
        for (std::size_t i = 0; i < w.exps.size(); i++)
            if (i != index && w.exps[i] != 0) pure = false;
        if (!pure || w.exps[index] == 0) continue;
        r.s_found.insert(w.exps[index].get_si());
    }
    r.n = 0;
    if (!r.s_found.empty() && *r.s_found.rbegin() > 0) r.n = *r.s_found.rbegin();
    return r;
}

namespace {

std::vector<bigint> coordinates_mod_p(int_matrix const & basis, ring_element const & v, bigint const & p)
{
    auto c = solve_left(basis, v.coords());
    if (!c) throw std::logic_error("obstruction: element outside p^j a");
    for (auto & x : *c) x = floor_mod(x, p);
    return *c;
}

int_matrix with_row(int_matrix m, std::vector<bigint> const & r)
{
    m.append_row(r);
    return m;
}

}   // namespace

obstruction_certificate obstruction_witness(unit_group const & g, bigint const & p, unsigned long j,
                                            unit_word const & eps)
{
    if (g.status == completeness::declared)
        throw std::invalid_argument("obstruction_witness: generators incomplete (declared unit group)");
    if (j == 0) throw std::invalid_argument("obstruction_witness: j must be positive");
    auto ctx = g.ctx;
    std::size_t n = ctx->degree();
    auto one = ring_element::integer(ctx, 1);
    obstruction_certificate c;
    c.p = p;
    c.j = j;
    c.eps = eps;
    c.eps_value = evaluate(g, eps);
    if (c.eps_value == one) throw hypothesis_violated("obstruction_witness: eps = 1");
    bigint pj = ipow(p, j);
    ideal_lattice unit = ideal_lattice::unit(ctx);
    if (!congruent_mod_ideal(c.eps_value, one, ideal_scale(unit, pj * p)))
        throw hypothesis_violated("obstruction_witness: eps != 1 mod p^(j+1)");

    ring_element t = c.eps_value - one;
    c.a = p_part(principal_ideal(t), p);
    c.pj_a = ideal_scale(c.a, pj);
    ideal_lattice pj1_a = ideal_scale(c.a, pj * p);
    int_matrix const & basis = c.pj_a.basis();

    auto kernel = congruence_subgroup(g, 1, c.pj_a);
    c.lambda = int_matrix(0, n);
    for (auto const & w : kernel.root_words) {
        if (w == word_identity(g)) continue;
        c.w_generators.push_back(w);
        ring_element r = unit_residue(g, w, pj1_a) - one;
        c.lambda.append_row(coordinates_mod_p(basis, r, p));
    }
    c.image_rank = rank_mod_p(c.lambda, p);
    c.dim_v = n;

    c.iso = int_matrix(0, n);
    for (std::size_t k = 0; k < n; k++)
        c.iso.append_row(coordinates_mod_p(basis, pj * (t * ring_element::basis(ctx, k)), p));
    if (rank_mod_p(c.iso, p) != n) throw std::logic_error("obstruction_witness: x -> (eps-1) p^j x not bijective");

    std::optional<std::vector<bigint>> v;
    for (std::size_t k = 0; k < n && !v; k++) {
        std::vector<bigint> e(n);
        e[k] = 1;
        if (rank_mod_p(with_row(c.lambda, e), p) > c.image_rank) v = e;
    }
    if (!v) throw std::logic_error("obstruction_witness: lambda is surjective");
    auto xs = solve_left_mod_p(c.iso, *v, p);
    if (!xs) throw std::logic_error("obstruction_witness: no preimage for the chosen vector");
    c.x = ring_element(ctx, *xs);
    c.witness_vector = coordinates_mod_p(basis, pj * (t * c.x), p);
    for (unsigned long m = 1; m < p; m++) {
        std::vector<bigint> s = c.witness_vector;
        for (auto & z : s) z = floor_mod(z * m, p);
        c.scaled_ranks.push_back(rank_mod_p(with_row(c.lambda, s), p));
    }
    return c;
}

bool verify_obstruction(obstruction_certificate const & c)
{
    bigint const & p = c.p;
    if (rank_mod_p(c.lambda, p) != c.image_rank) return false;
    if (c.image_rank >= c.dim_v) return false;
    if (rank_mod_p(c.iso, p) != c.dim_v) return false;
    auto wv = row_times(c.x.coords(), c.iso);
    for (std::size_t i = 0; i < wv.size(); i++)
        if (floor_mod(wv[i] - c.witness_vector[i], p) != 0) return false;
    if (c.scaled_ranks.size() + 1 != p) return false;
    for (unsigned long m = 1; m < p; m++) {
        std::vector<bigint> s = c.witness_vector;
        for (auto & z : s) z = floor_mod(z * m, p);
        if (rank_mod_p(with_row(c.lambda, s), p) <= c.image_rank) return false;
        if (c.scaled_ranks[m - 1] <= c.image_rank) return false;
    }
    return true;
}

}   // namespace unitdef
