#ifndef UNITDEF_UNITS_HPP
#define UNITDEF_UNITS_HPP

#include <string>
#include <vector>

#include "unitdef/number_ring.hpp"

namespace unitdef {

/* proven: the full unit group of the order.
 * generated: exactly the subgroup spanned by the listed generators.
 * declared: caller-supplied generators claimed to span the full group. */
enum class completeness { proven, generated, declared };
std::string to_string(completeness c);

struct unit_group {
    order_ptr ctx;
    ring_element torsion;           /* zeta */
    unsigned long torsion_order = 1;
    std::vector<ring_element> free; /* u_1 .. u_r */
    completeness status = completeness::declared;
    std::string note;

    std::size_t rank() const { return free.size(); }
    /* enumeration over this group is the whole group */
    bool finite_and_exact() const { return rank() == 0 && status != completeness::declared; }
    /* throws std::logic_error if a generator is not a unit or zeta has the wrong order */
    void validate() const;
};

/* zeta^e0 * u_1^e1 * ... * u_r^er */
struct unit_word {
    bigint torsion_exp = 0;
    std::vector<bigint> exps;

    friend bool operator==(unit_word const &, unit_word const &) = default;
};

unit_word word_identity(unit_group const & g);
unit_word word_generator(unit_group const & g, std::size_t i);
unit_word word_torsion(unit_group const & g, bigint const & e);
unit_word word_mul(unit_group const & g, unit_word const & a, unit_word const & b);
unit_word word_inverse(unit_group const & g, unit_word const & a);
unit_word word_pow(unit_group const & g, unit_word const & a, bigint const & k);
unit_word word_normalize(unit_group const & g, unit_word a);
std::string word_to_string(unit_word const & w);

/* exact evaluation; throws cap_exceeded when an exponent exceeds the cap */
ring_element evaluate(unit_group const & g, unit_word const & w, unsigned long exponent_cap = 20000);
/* residue of the word modulo m by square-and-multiply */
ring_element unit_residue(unit_group const & g, unit_word const & w, ideal_lattice const & m);

/* Real quadratic orders: the unit > 1 generating the free part. */
ring_element fundamental_unit(order_ptr const & ctx, std::uint64_t step_cap = 1000000);

/* Full unit group of Z or a quadratic order. */
unit_group unit_group_of(order_ptr const & ctx);
unit_group declared_unit_group(order_ptr const & ctx, ring_element zeta, unsigned long zeta_order,
                               std::vector<ring_element> gens, std::string note);
/* The subgroup generated by the given units (no torsion beyond zeta). */
unit_group generated_subgroup(order_ptr const & ctx, ring_element zeta, unsigned long zeta_order,
                              std::vector<ring_element> gens, std::string note);

struct unit_enumeration {
    std::vector<unit_word> words;
    bool exhaustive = false;
    unsigned long bound = 0;
};
/* torsion x free exponents with |e_i| <= bound, in lexicographic order */
unit_enumeration enumerate_units(unit_group const & g, unsigned long exponent_bound);

/* {u^n : u in g, u = 1 mod a} */
struct congruence_subgroup_result {
    unit_group group;
    /* root_words[i]: word in the parent whose n-th power is generator i
     * (index 0 is the torsion generator, then the free generators) */
    std::vector<unit_word> root_words;
    std::vector<unit_word> generator_words;
    bool exact = true;   /* false: finite-index subgroup only (rank >= 2) */
};
congruence_subgroup_result congruence_subgroup(unit_group const & g, bigint const & n, ideal_lattice const & a,
                                               std::uint64_t iteration_cap = 10000000);

}   // namespace unitdef

#endif  /* UNITDEF_UNITS_HPP */
