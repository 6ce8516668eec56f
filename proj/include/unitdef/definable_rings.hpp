#ifndef UNITDEF_DEFINABLE_RINGS_HPP
#define UNITDEF_DEFINABLE_RINGS_HPP

#include <optional>
#include <string>
#include <vector>

#include "unitdef/number_ring.hpp"
#include "unitdef/units.hpp"

namespace unitdef {

/* Empty, or residue + modulus with the residue canonically reduced. */
class congruence_class {
    order_ptr ctx_;
    bool empty_ = true;
    ring_element residue_;
    ideal_lattice modulus_;

  public:
    congruence_class() = default;
    static congruence_class empty(order_ptr const & ctx);
    static congruence_class make(ring_element const & residue, ideal_lattice const & modulus);
    static congruence_class whole(order_ptr const & ctx);

    order_ptr const & context() const { return ctx_; }
    bool is_empty() const { return empty_; }
    ring_element const & residue() const;
    ideal_lattice const & modulus() const;
    bool contains(ring_element const & x) const;
    std::string to_string() const;

    friend bool operator==(congruence_class const & a, congruence_class const & b);
};

congruence_class intersect(congruence_class const & a, congruence_class const & b);

/* {x : delta - 1 = (eps - 1) x mod (eps - 1)^2} */
congruence_class s_set(ring_element const & eps, ring_element const & delta);
/* Does delta - 1 = (eps - 1) x mod (eps - 1)^2 hold? */
bool s_condition(ring_element const & eps, ring_element const & delta, ring_element const & x);

/* A sublattice of the order that is a subring. */
struct subring_description {
    order_ptr ctx;
    int_matrix basis;   /* HNF */
    std::vector<std::string> trace;

    bool contains(ring_element const & x) const;
};
/* Throws std::logic_error if the lattice misses 1 or is not multiplicatively closed. */
subring_description make_subring(order_ptr const & ctx, int_matrix basis, std::vector<std::string> trace = {});

/* R_K = intersection over eps of the union over delta of S_{eps,delta}, for finite unit groups. */
subring_description rk_exact_finite_units(order_ptr const & ctx);

enum class truth { holds, fails, unknown };
std::string to_string(truth t);

struct probe_witness {
    unit_word eps;
    unit_word delta;
};

struct verdict {
    truth value = truth::unknown;
    /* unknown with every probed case satisfied */
    bool bounded_positive = false;
    std::vector<probe_witness> witnesses;
    std::optional<unit_word> refuting_eps;
    std::string reason;
    unsigned long eps_bound = 0;
    unsigned long delta_bound = 0;
};

/* Decides, for one eps, whether some delta in the rank <= 1 group g meets the
 * S-condition.  Returns the witness word, or nullopt when none exists. */
struct rank_one_decision {
    std::optional<unit_word> delta;
    /* certificate data */
    unit_word h1_torsion;       /* generator of torsion part of {delta = 1 mod (eps-1)} */
    std::optional<unit_word> h1_free;
    ring_element y, z;          /* phi of the generators; phi(d) = (d-1)/(eps-1) mod (eps-1) */
    int_matrix image;           /* HNF of the image lattice of phi, lifted to O */
};
rank_one_decision decide_rank_one(unit_group const & g, unit_word const & eps, ring_element const & x);

verdict rk_probe(ring_element const & x, unit_group const & g, unsigned long eps_bound, unsigned long delta_bound);

struct combined_witness {
    ring_element delta;
    ring_element x;
};
/* Throws hypothesis_violated if some pair fails the S-condition. */
combined_witness combine_witnesses(ring_element const & eps,
                                   std::vector<std::pair<ring_element, ring_element>> const & pairs);

struct norm_descent {
    ring_element norm;          /* N_{L/K}(delta), in the base */
    ring_element lhs;           /* (eps - 1) [L:K] x */
    ring_element rhs;           /* N(delta) - 1 */
    bool holds = false;
};
/* eps, x in the base order; delta in an extension with a relative conjugation. */
norm_descent norm_descend(ring_element const & eps, ring_element const & x, ring_element const & delta);

struct tilde_result {
    truth value = truth::unknown;
    std::optional<ring_element> y, z;
};
tilde_result tilde_probe(ring_element const & x, subring_description const & r, unsigned long height_bound);

/* u / sigma(u) for a quadratic unit, and whether it is +-1. */
ring_element conjugate_ratio(ring_element const & u);

}   // namespace unitdef

#endif  /* UNITDEF_DEFINABLE_RINGS_HPP */
