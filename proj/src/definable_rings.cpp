#include "unitdef/definable_rings.hpp"

#include <algorithm>

namespace unitdef {

congruence_class congruence_class::empty(order_ptr const & ctx)
{
    congruence_class c;
    c.ctx_ = ctx;
    return c;
}

congruence_class congruence_class::make(ring_element const & residue, ideal_lattice const & modulus)
{
    congruence_class c;
    c.ctx_ = residue.context();
    c.empty_ = false;
    c.modulus_ = modulus;
    c.residue_ = modulus.reduce(residue);
    return c;
}

congruence_class congruence_class::whole(order_ptr const & ctx)
{
    return make(ring_element::integer(ctx, 0), ideal_lattice::unit(ctx));
}

ring_element const & congruence_class::residue() const
{
    if (empty_) throw std::invalid_argument("empty class has no residue");
    return residue_;
}

ideal_lattice const & congruence_class::modulus() const
{
    if (empty_) throw std::invalid_argument("empty class has no modulus");
    return modulus_;
}

bool congruence_class::contains(ring_element const & x) const
{
    return !empty_ && congruent_mod_ideal(x, residue_, modulus_);
}

std::string congruence_class::to_string() const
{
    if (empty_) return "empty";
    std::string gens;
    if (modulus_.is_zero()) {
        gens = "0";
    } else {
        for (auto const & g : modulus_.generators()) gens += (gens.empty() ? "" : ", ") + g.to_string();
    }
    return residue_.to_string() + " + <" + gens + ">";
}

bool operator==(congruence_class const & a, congruence_class const & b)
{
    if (a.empty_ || b.empty_) return a.empty_ == b.empty_ && a.ctx_ == b.ctx_;
    return a.modulus_ == b.modulus_ && a.residue_ == b.residue_;
}

congruence_class intersect(congruence_class const & a, congruence_class const & b)
{
    auto ctx = a.context();
    if (a.is_empty() || b.is_empty()) return congruence_class::empty(ctx);
    if (a.modulus().is_zero())
        return b.contains(a.residue()) ? a : congruence_class::empty(ctx);
    if (b.modulus().is_zero())
        return a.contains(b.residue()) ? b : congruence_class::empty(ctx);
    /* x = r1 + y with y in m1 and y = r2 - r1 mod m2 */
    int_matrix const & m1 = a.modulus().basis();
    int_matrix stacked = m1.stacked(b.modulus().basis());
    ring_element diff = b.residue() - a.residue();
    auto sol = solve_left(stacked, diff.coords());
    if (!sol) return congruence_class::empty(ctx);
    std::vector<bigint> c1(sol->begin(), sol->begin() + static_cast<long>(m1.rows()));
    ring_element y(ctx, row_times(c1, m1));
    return congruence_class::make(a.residue() + y, ideal_intersection(a.modulus(), b.modulus()));
}

namespace {

/* q with t q = v, if t divides v in the order */
std::optional<ring_element> exact_quotient(ring_element const & v, ring_element const & t)
{
    auto sol = solve_left(t.multiplication_matrix(), v.coords());
    if (!sol) return std::nullopt;
    return ring_element(v.context(), std::move(*sol));
}

}   // namespace

congruence_class s_set(ring_element const & eps, ring_element const & delta)
{
    auto ctx = eps.context();
    auto one = ring_element::integer(ctx, 1);
    if (eps == one) return delta == one ? congruence_class::whole(ctx) : congruence_class::empty(ctx);
    ring_element t = eps - one;
    auto q = exact_quotient(delta - one, t);
    if (!q) return congruence_class::empty(ctx);
    /* t x = t q mod t^2  iff  x = q mod t */
    return congruence_class::make(*q, principal_ideal(t));
}

bool s_condition(ring_element const & eps, ring_element const & delta, ring_element const & x)
{
    auto one = ring_element::integer(eps.context(), 1);
    ring_element t = eps - one;
    return congruent_mod_ideal(delta - one, t * x, principal_ideal(t * t));
}

bool subring_description::contains(ring_element const & x) const { return in_row_lattice(basis, x.coords()); }

subring_description make_subring(order_ptr const & ctx, int_matrix basis, std::vector<std::string> trace)
{
    subring_description r{ctx, hnf(basis), std::move(trace)};
    if (!r.contains(ring_element::integer(ctx, 1))) throw std::logic_error("subring lattice misses 1");
    for (std::size_t i = 0; i < r.basis.rows(); i++)
        for (std::size_t j = 0; j < r.basis.rows(); j++) {
            ring_element p = ring_element(ctx, r.basis.row_vector(i)) * ring_element(ctx, r.basis.row_vector(j));
            if (!r.contains(p)) throw std::logic_error("lattice is not closed under multiplication");
        }
    return r;
}

namespace {

void dedupe(std::vector<congruence_class> & v)
{
    std::vector<congruence_class> out;
    for (auto & c : v) {
        if (c.is_empty()) continue;
        if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
    }
    v = std::move(out);
}

}   // namespace

subring_description rk_exact_finite_units(order_ptr const & ctx)
{
    unit_group g = unit_group_of(ctx);
    if (!g.finite_and_exact()) throw std::invalid_argument("rk_exact_finite_units: unit group is not finite");
    auto units = enumerate_units(g, 0);
    std::vector<std::string> trace;

    std::vector<congruence_class> acc{congruence_class::whole(ctx)};
    for (auto const & ew : units.words) {
        ring_element eps = evaluate(g, ew);
        std::vector<congruence_class> un;
        for (auto const & dw : units.words) un.push_back(s_set(eps, evaluate(g, dw)));
        dedupe(un);
        std::string line = "eps = " + eps.to_string() + ":";
        for (auto const & c : un) line += " [" + c.to_string() + "]";
        trace.push_back(line);
        std::vector<congruence_class> next;
        for (auto const & a : acc)
            for (auto const & b : un) next.push_back(intersect(a, b));
        dedupe(next);
        acc = std::move(next);
    }
    if (acc.empty()) throw std::logic_error("rk_exact_finite_units: empty intersection");

    /* the union of the remaining classes is a lattice: find it and check it */
    ideal_lattice meet = acc[0].modulus();
    for (auto const & c : acc) meet = ideal_intersection(meet, c.modulus());
    auto residues = enumerate_residues(meet);
    int_matrix span = meet.basis();
    std::vector<bool> member;
    for (auto const & r : residues) {
        bool in = std::any_of(acc.begin(), acc.end(), [&](congruence_class const & c) { return c.contains(r); });
        member.push_back(in);
        if (in) span.append_row(r.coords());
    }
    span = hnf(span);
    for (std::size_t i = 0; i < residues.size(); i++)
        if (in_row_lattice(span, residues[i].coords()) != member[i])
            throw std::logic_error("rk_exact_finite_units: union of classes is not a lattice");
    trace.push_back("union of " + std::to_string(acc.size()) + " classes modulo an ideal of index " +
                    meet.index().get_str());
    return make_subring(ctx, span, std::move(trace));
}

std::string to_string(truth t)
{
    switch (t) {
    case truth::holds: return "TRUE";
    case truth::fails: return "FALSE";
    case truth::unknown: return "UNKNOWN";
    }
    return "?";
}

rank_one_decision decide_rank_one(unit_group const & g, unit_word const & eps_word, ring_element const & x)
{
    if (g.rank() > 1) throw std::invalid_argument("decide_rank_one: group rank above one");
    auto ctx = g.ctx;
    auto one = ring_element::integer(ctx, 1);
    ring_element eps = evaluate(g, eps_word);
    rank_one_decision d;
    if (eps == one) {
        /* the condition reads delta = 1 */
        d.h1_torsion = word_identity(g);
        d.delta = word_identity(g);
        d.image = int_matrix(0, ctx->degree());
        return d;
    }
    ring_element t = eps - one;
    ideal_lattice T = principal_ideal(t);
    ideal_lattice T2 = principal_ideal(t * t);
    auto kernel = congruence_subgroup(g, 1, T);
    d.h1_torsion = kernel.root_words[0];
    if (g.rank() == 1) d.h1_free = kernel.root_words[1];

    auto phi = [&](unit_word const & w) {
        ring_element r = unit_residue(g, w, T2) - one;
        auto q = exact_quotient(r, t);
        if (!q) throw std::logic_error("decide_rank_one: kernel element not = 1 mod (eps - 1)");
        return T.reduce(*q);
    };
    d.z = phi(d.h1_torsion);
    d.y = d.h1_free ? phi(*d.h1_free) : ring_element::integer(ctx, 0);

    int_matrix gens(0, ctx->degree());
    gens.append_row(d.z.coords());
    gens.append_row(d.y.coords());
    int_matrix full = gens.stacked(T.basis());
    d.image = hnf(full);
    auto sol = solve_left(full, x.coords());
    if (!sol) return d;
    unit_word delta = word_pow(g, d.h1_torsion, (*sol)[0]);
    if (d.h1_free) delta = word_mul(g, delta, word_pow(g, *d.h1_free, (*sol)[1]));
    /* torsion exponent of the kernel generator reduces mod the torsion order */
    d.delta = word_normalize(g, delta);
    ring_element dr = unit_residue(g, *d.delta, T2);
    if (!congruent_mod_ideal(dr - one, t * x, T2)) throw std::logic_error("decide_rank_one: witness fails replay");
    return d;
}

namespace {

bool delta_works(unit_group const & g, ring_element const & t, ideal_lattice const & T2, ring_element const & x,
                 unit_word const & dw)
{
    auto one = ring_element::integer(g.ctx, 1);
    return congruent_mod_ideal(unit_residue(g, dw, T2) - one, t * x, T2);
}

}   // namespace

verdict rk_probe(ring_element const & x, unit_group const & g, unsigned long eps_bound, unsigned long delta_bound)
{
    verdict v;
    v.eps_bound = eps_bound;
    v.delta_bound = delta_bound;
    auto one = ring_element::integer(g.ctx, 1);
    bool exact_group = g.status != completeness::declared;
    auto eps_words = enumerate_units(g, eps_bound).words;
    auto delta_words = enumerate_units(g, delta_bound).words;

    for (auto const & ew : eps_words) {
        ring_element eps = unit_residue(g, ew, ideal_lattice::zero(g.ctx));
        ring_element t = eps - one;
        ideal_lattice T2 = principal_ideal(t * t);
        std::optional<unit_word> found;
        for (auto const & dw : delta_words)
            if (delta_works(g, t, T2, x, dw)) {
                found = dw;
                break;
            }
        if (found) {
            v.witnesses.push_back({ew, *found});
            continue;
        }
        if (g.finite_and_exact()) {
            v.value = truth::fails;
            v.refuting_eps = ew;
            v.reason = "exhaustive search over the finite group found no delta";
            return v;
        }
        if (exact_group && g.rank() == 1) {
            auto dec = decide_rank_one(g, ew, x);
            if (dec.delta) {
                v.witnesses.push_back({ew, *dec.delta});
                continue;
            }
            v.value = truth::fails;
            v.refuting_eps = ew;
            v.reason = "x is not in the image of delta -> (delta - 1)/(eps - 1) on {delta = 1 mod (eps - 1)}";
            return v;
        }
        v.value = truth::unknown;
        v.refuting_eps = ew;
        v.reason = "no delta within the bound; group rank or completeness prevents a certificate";
        return v;
    }
    if (g.finite_and_exact()) {
        v.value = truth::holds;
        v.reason = "every unit has a witness";
    } else {
        v.value = truth::unknown;
        v.bounded_positive = true;
        v.reason = "every probed eps has a witness; the group is infinite";
    }
    return v;
}

combined_witness combine_witnesses(ring_element const & eps,
                                   std::vector<std::pair<ring_element, ring_element>> const & pairs)
{
    if (pairs.empty()) throw std::invalid_argument("combine_witnesses: no pairs");
    auto ctx = eps.context();
    ring_element delta = ring_element::integer(ctx, 1);
    ring_element x = ring_element::integer(ctx, 0);
    for (auto const & [xi, di] : pairs) {
        if (!s_condition(eps, di, xi))
            throw hypothesis_violated("combine_witnesses: (" + xi.to_string() + ", " + di.to_string() +
                                      ") violates the congruence");
        delta = delta * di;
        x = x + xi;
    }
    if (!s_condition(eps, delta, x)) throw std::logic_error("combine_witnesses: product congruence failed");
    return {delta, x};
}

norm_descent norm_descend(ring_element const & eps, ring_element const & x, ring_element const & delta)
{
    auto ext = delta.context();
    auto base = eps.context();
    if (ext->base != base) throw std::invalid_argument("norm_descend: delta is not in an extension of the base");
    ring_element eps_l = lift_to(ext, eps);
    ring_element x_l = lift_to(ext, x);
    if (!s_condition(eps_l, delta, x_l))
        throw hypothesis_violated("norm_descend: delta - 1 != (eps - 1) x mod (eps - 1)^2 in the extension");
    auto one = ring_element::integer(base, 1);
    norm_descent r;
    r.norm = restrict_to_base(relative_norm(delta));
    r.lhs = bigint(2) * ((eps - one) * x);
    r.rhs = r.norm - one;
    r.holds = congruent_mod_ideal(r.lhs, r.rhs, principal_ideal((eps - one) * (eps - one)));
    return r;
}

tilde_result tilde_probe(ring_element const & x, subring_description const & r, unsigned long height_bound)
{
    tilde_result res;
    auto ctx = x.context();
    auto try_y = [&](ring_element const & y) {
        if (y.is_zero()) return false;
        ring_element z = x * y;
        if (!r.contains(z)) return false;
        res.value = truth::holds;
        res.y = y;
        res.z = z;
        return true;
    };
    /* rational denominators first, then the whole lattice box by height */
    for (unsigned long m = 1; m <= height_bound; m++)
        if (try_y(ring_element::integer(ctx, static_cast<long>(m)))) return res;
    std::size_t k = r.basis.rows();
    long hb = static_cast<long>(height_bound);
    for (long h = 1; h <= hb; h++) {
        std::vector<long> c(k, -h);
        for (;;) {
            long mx = 0;
            for (long v : c) mx = std::max(mx, std::labs(v));
            if (mx == h) {
                std::vector<bigint> cc(c.begin(), c.end());
                if (try_y(ring_element(ctx, row_times(cc, r.basis)))) return res;
            }
            std::size_t i = k;
            while (i > 0 && c[i - 1] == h) c[--i] = -h;
            if (i == 0) break;
            c[i - 1]++;
        }
    }
    return res;
}

ring_element conjugate_ratio(ring_element const & u)
{
    auto inv = conjugate(u).inverse();
    if (!inv) throw std::invalid_argument("conjugate_ratio: not a unit");
    return u * *inv;
}

}   // namespace unitdef
