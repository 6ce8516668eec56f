#ifndef UNITDEF_BUILTIN_FORMULAS_HPP
#define UNITDEF_BUILTIN_FORMULAS_HPP

#include <string>
#include <vector>

#include "unitdef/formula.hpp"

namespace unitdef {

struct builtin_formula {
    std::string name;
    std::string source;
    std::set<std::string> free_vars;
    std::string description;

    formula_ast ast() const { return parse(source, free_vars); }
};

/* rk_member: membership in R_K with units quantified directly.
 * rk_member_inverse_encoding: the same with unit-hood expressed as
 * "e*b == 1" over two universally quantified ring elements. */
builtin_formula rk_member();
builtin_formula rk_member_inverse_encoding();
/* The system for a fixed radicand d: free w, s1, s2, t1, t2, u1, u2, v1, v2
 * and r, which must be assigned a square root of d. */
builtin_formula system_S(long d = 5);
/* The Z_K formula; its body contains system_S(d). */
builtin_formula zk(long d = 5);

std::vector<std::string> builtin_names();
/* Throws std::invalid_argument for unknown names. */
builtin_formula builtin_by_name(std::string const & name, long d = 5);

/* 3^8 5^4 w^4 (w - 1)^4 (w^2 - 1)^4 */
ring_element d_poly(ring_element const & w);
bigint d_poly(bigint const & w);

}   // namespace unitdef

#endif  /* UNITDEF_BUILTIN_FORMULAS_HPP */
