#ifndef UNITDEF_UNIT_EQUATIONS_HPP
#define UNITDEF_UNIT_EQUATIONS_HPP

#include <array>
#include <set>
#include <vector>

#include "unitdef/definable_rings.hpp"
#include "unitdef/units.hpp"

namespace unitdef {

struct unit_triple {
    std::array<unit_word, 3> words;
    std::array<ring_element, 3> values;
};

struct triple_solution_set {
    std::vector<unit_triple> triples;
    unsigned long bound = 0;
    /* always bounded: solutions outside the exponent box are not searched */
    std::string exhaustiveness = "bounded";
};

/* x1 + x2 + x3 = 1 with x_i != 1, all exponent vectors within the bound. */
triple_solution_set solve_unit_triple(unit_group const & g, unsigned long exponent_bound);

struct divisibility_result {
    bool divides = false;
    bigint gcd_exponent;
    /* ideal(eps^a - 1, eps^b - 1) == (eps^gcd - 1) */
    bool gcd_ideal_matches = false;
    /* when dividing: N((eps^b - 1)/(eps^gcd - 1)) */
    std::optional<bigint> quotient_norm;
};
/* eps must have infinite order; a, b nonzero. */
divisibility_result epsilon_divisibility(unit_group const & g, unit_word const & eps, long a, long b);

struct find_n_result {
    bigint n;                   /* max(0, sup S_found); a lower bound for the true N */
    std::set<long> s_found;
    unsigned long bound = 0;
};
/* u = generator `index` of g. */
find_n_result find_N(unit_group const & g, std::size_t index, unsigned long exponent_bound);

struct obstruction_certificate {
    bigint p;
    unsigned long j = 0;
    unit_word eps;
    ring_element eps_value;
    ideal_lattice a;                /* p-part of (eps - 1) */
    ideal_lattice pj_a;             /* p^j a: V = p^j a / p^(j+1) a with coordinates in its HNF basis */
    std::vector<unit_word> w_generators;
    int_matrix lambda;              /* rows: coordinates of lambda(w) in V over F_p */
    std::size_t image_rank = 0;
    std::size_t dim_v = 0;
    int_matrix iso;                 /* rows: coordinates of (eps - 1) p^j e_k in V */
    ring_element x;
    std::vector<bigint> witness_vector;     /* coordinates of (eps - 1) p^j x */
    std::vector<std::size_t> scaled_ranks;  /* rank of [lambda; n v] for n = 1 .. p-1 */
};

/* Throws hypothesis_violated when eps != 1 mod p^(j+1) or eps == 1, and
 * std::invalid_argument for declared unit groups. */
obstruction_certificate obstruction_witness(unit_group const & g, bigint const & p, unsigned long j,
                                            unit_word const & eps);
/* Re-derives every rank and membership claim from the stored matrices. */
bool verify_obstruction(obstruction_certificate const & c);

}   // namespace unitdef

#endif  /* UNITDEF_UNIT_EQUATIONS_HPP */
