#ifndef UNITDEF_ZK_WITNESS_HPP
#define UNITDEF_ZK_WITNESS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "unitdef/builtin_formulas.hpp"
#include "unitdef/definable_rings.hpp"
#include "unitdef/units.hpp"

namespace unitdef {

struct named_check {
    std::string name;
    truth value = truth::unknown;
    std::string detail;
};

struct system_s_verdict {
    truth value = truth::unknown;
    std::optional<std::string> failing;     /* first equation that failed */
    std::vector<named_check> checks;
};

/* F[sqrt d]: Z[sqrt d] for F = Q, else the compositum. */
order_ptr system_S_order(order_ptr const & F, bigint const & d);

/* Variables in O_F. */
struct system_s_values {
    ring_element w, s1, s2, t1, t2, u1, u2, v1, v2;
};
/* Checks the four equation groups delta, square, mod32 and w with explicit elements. */
system_s_verdict check_system_S(order_ptr const & F, bigint const & d, system_s_values const & v);

/* Symbolic version over a rank-one real group of Z[sqrt d] (torsion -1):
 * delta_i are words, eps_i = delta_i^2, and congruences are decided in
 * finite quotients without expanding the units. */
system_s_verdict check_system_S(unit_group const & gl, bigint const & w, bigint const & d,
                                unit_word const & delta1, unit_word const & delta2);

/* Multiplicative order of the fundamental unit mod d D(w); 0 when D(w) = 0. */
bigint zk_delta_exponent(unit_group const & gl, bigint const & w, bigint const & d,
                         std::uint64_t order_cap = 10000000);

struct zk_eps_check {
    unit_word eps_word;
    ring_element eps;
    bigint c;                           /* positive generator of (eps - 1) meet Z */
    std::map<std::string, bigint> reduced;  /* variable -> value mod c; its unit is eps^value */
    std::vector<named_check> checks;
    bool ok = false;
};

struct zk_bundle {
    bigint w, d;
    order_ptr F;
    order_ptr L;                /* Z[sqrt d], where every check is carried out */
    unit_group units_L;
    bigint modulus;             /* d D(w) */
    bigint k;                   /* delta_1 = eta^k */
    bool degenerate = false;
    unit_word delta1, delta2, eps1, eps2;
    system_s_verdict system;
    order_ptr carrier;          /* ring the outer quantifier ranges over */
    unit_group carrier_units;
    std::vector<zk_eps_check> per_eps;
    bool ok = false;
    std::string note;
};

/* F = Q or imaginary quadratic; d > 1 non-square with d = 1 mod 4.  Sampled
 * eps are +-u^e for 1 <= e <= eps_bound in Z[sqrt 2].  With k given it
 * replaces the computed exponent (any multiple of it also works). */
zk_bundle zk_integer_witness(bigint const & w, order_ptr const & F, bigint const & d,
                             std::optional<bigint> k = std::nullopt, unsigned long eps_bound = 10,
                             std::uint64_t order_cap = 10000000);

/* Re-runs every check from the words stored in the bundle. */
bool verify_zk_bundle(zk_bundle const & b);

/* (X - 1)^2 divides X^m - 1 - w (X - 1) as a Laurent polynomial; returns the
 * cofactor of the polynomial multiplied by X^max(0,-m), if it exists. */
std::optional<std::vector<bigint>> square_divisibility_cofactor(bigint const & m, bigint const & w);

}   // namespace unitdef

#endif  /* UNITDEF_ZK_WITNESS_HPP */
