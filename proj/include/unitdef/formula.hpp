#ifndef UNITDEF_FORMULA_HPP
#define UNITDEF_FORMULA_HPP

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "unitdef/definable_rings.hpp"
#include "unitdef/number_ring.hpp"
#include "unitdef/units.hpp"

namespace unitdef {

struct source_pos {
    int line = 1;
    int column = 1;
};

struct parse_error : std::runtime_error {
    enum class kind { syntax, unbound_variable, sort };
    kind category;
    source_pos pos;
    parse_error(kind k, source_pos p, std::string const & msg);
};

struct term {
    enum class op { literal, variable, add, sub, mul, pow, neg };
    op kind = op::literal;
    bigint value;               /* literal */
    std::string name;           /* variable */
    unsigned long exponent = 0; /* pow */
    std::vector<term> args;
    source_pos pos;

    friend bool operator==(term const & a, term const & b);
};

struct formula {
    enum class op { eq, ne, cong, is_unit, negation, conj, disj };
    op kind = op::eq;
    std::vector<term> terms;        /* eq/ne: 2, cong: 3 (lhs, rhs, modulus), is_unit: 1 */
    std::vector<formula> args;      /* negation: 1, conj/disj: >= 2 */

    friend bool operator==(formula const & a, formula const & b);
};

enum class sort_kind { unit, elem };

struct quantifier {
    bool universal = true;
    std::string var;
    sort_kind sort = sort_kind::elem;
    std::optional<unsigned long> bound;
    source_pos pos;

    friend bool operator==(quantifier const & a, quantifier const & b);
};

struct formula_ast {
    std::vector<quantifier> prefix;
    formula body;
    std::set<std::string> free_vars;

    friend bool operator==(formula_ast const & a, formula_ast const & b);
};

/* Parses the surface syntax.  When declared_free is given, any other free
 * variable is an unbound-variable error. */
formula_ast parse(std::string const & src, std::optional<std::set<std::string>> declared_free = std::nullopt);
std::string print(formula_ast const & f);
std::string print(term const & t);
std::string print(formula const & f);

struct eval_env {
    order_ptr ctx;
    unit_group units;
    unsigned long unit_bound = 1;
    unsigned long elem_bound = 1;
    std::map<std::string, ring_element> assignment;
};

struct eval_result {
    truth value = truth::unknown;
    /* unknown, but no probed case failed */
    bool bounded_positive = false;
    /* TRUE from an existential: the satisfying assignment (outermost first) */
    std::map<std::string, ring_element> witness;
    /* FALSE from a universal: the refuting assignment */
    std::map<std::string, ring_element> counterexample;
    std::uint64_t body_evaluations = 0;
};

eval_result eval_bounded(formula_ast const & f, eval_env const & env);
/* Truth of the quantifier-free body under a full assignment. */
bool eval_body(formula const & body, order_ptr const & ctx, std::map<std::string, ring_element> const & a);
ring_element eval_term(term const & t, order_ptr const & ctx, std::map<std::string, ring_element> const & a);

/* Replays existential witnesses given as terms over the enclosing universal
 * variables; universal quantifiers are swept over their bounded ranges. */
eval_result check_witness(formula_ast const & f, eval_env const & env, std::map<std::string, term> const & witness);
term parse_term(std::string const & src);

/* Two-valued reading of a bounded verdict: TRUE or UNKNOWN-positive count as members. */
bool bounded_member(eval_result const & r);

}   // namespace unitdef

#endif  /* UNITDEF_FORMULA_HPP */
