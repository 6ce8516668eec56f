#ifndef UNITDEF_SERIALIZE_HPP
#define UNITDEF_SERIALIZE_HPP

#include <string>

#include <json.hpp>

#include "unitdef/definable_rings.hpp"
#include "unitdef/formula.hpp"
#include "unitdef/number_ring.hpp"
#include "unitdef/units.hpp"

namespace unitdef {

using json = nlohmann::json;

/* Integers are written as decimal strings so no precision is lost. */
json to_json(bigint const & a);
bigint bigint_from_json(json const & j);

json to_json(std::vector<bigint> const & v);
std::vector<bigint> vector_from_json(json const & j);
json to_json(int_matrix const & m);
int_matrix matrix_from_json(json const & j, std::size_t cols);

json to_json(ring_element const & x);
ring_element element_from_json(order_ptr const & ctx, json const & j);
json to_json(ideal_lattice const & a);
ideal_lattice ideal_from_json(order_ptr const & ctx, json const & j);
json to_json(unit_word const & w);
unit_word word_from_json(json const & j);
json to_json(congruence_class const & c);
json to_json(element_polynomial const & f);
element_polynomial polynomial_from_json(order_ptr const & ctx, json const & j);
json to_json(unit_group const & g);
json order_summary(order_ptr const & ctx);

/* "rational", "quadratic:<d>[:maximal|:nonmaximal]", "compositum:<base spec>:<d>".
 * Throws std::invalid_argument. */
order_ptr parse_order_spec(std::string const & spec);

/* "[c0,c1,...]" coordinates, or a term in the basis names and e0, e1, ... */
ring_element parse_element(order_ptr const & ctx, std::string const & text);

/* Sorted keys, two-space indent, trailing newline. */
std::string canonical_dump(json const & j);

json to_json(eval_result const & r);

}   // namespace unitdef

#endif  /* UNITDEF_SERIALIZE_HPP */
