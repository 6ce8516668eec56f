#ifndef UNITDEF_UNIT_CONSTRUCTOR_HPP
#define UNITDEF_UNIT_CONSTRUCTOR_HPP

#include <optional>
#include <string>

#include "unitdef/number_ring.hpp"
#include "unitdef/units.hpp"

namespace unitdef {

/* Root delta = mu rho + beta of g, with f(rho) = 0, realised in base[rho]. */
struct materialized_root {
    order_ptr extension;    /* null when d = 1 (delta lies in the base) */
    ring_element delta;
    ring_element norm;      /* relative norm of delta, in the base */
    bool congruent = false; /* delta = beta mod mu O_L */
    bool root_of_g = false;
};

struct unit_construction {
    order_ptr base;
    ideal_lattice original_ideal;
    ring_element mu;
    std::string principalization;   /* how mu was chosen */
    ring_element beta;
    unsigned long d = 0;
    unit_word u_word;
    ring_element u;
    ring_element a, b;
    element_polynomial f, g;
    std::optional<materialized_root> root;
};

/* Throws std::invalid_argument("beta not coprime to I") or cap_exceeded
 * ("quotient too large") above residue_cap. */
unit_construction construct_unit(order_ptr const & ctx, ideal_lattice const & ideal, ring_element const & beta,
                                 std::uint64_t residue_cap = 10000000);

struct construction_check {
    bool ok = true;
    std::vector<std::string> failures;
};
/* All certificates: monic g, g(0) = u a unit, g(mu X + beta) = mu^d f(X),
 * mu in I, and for materialised roots the norm and congruence claims. */
construction_check check_construction(unit_construction const & c);

}   // namespace unitdef

#endif  /* UNITDEF_UNIT_CONSTRUCTOR_HPP */
