#ifndef UNITDEF_NUMBER_RING_HPP
#define UNITDEF_NUMBER_RING_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "unitdef/exact_core.hpp"

namespace unitdef {

/* Ring automorphism as an n x n matrix; column j holds sigma(e_j). */
struct automorphism {
    std::string name;
    int_matrix matrix;
};

class order_context;
using order_ptr = std::shared_ptr<order_context const>;

/* An order given by a Z-basis and structure constants
 * e_i e_j = sum_k T[i][j][k] e_k, with e_0 = 1.
 */
class order_context {
  public:
    enum class kind { rational, quadratic, compositum, extension };

    order_context(std::vector<std::string> names, std::vector<bigint> table,
                  std::vector<automorphism> autos, std::string tag);

    std::size_t degree() const { return names_.size(); }
    std::vector<std::string> const & names() const { return names_; }
    bigint const & structure(std::size_t i, std::size_t j, std::size_t k) const
    {
        std::size_t n = degree();
        return table_[(i * n + j) * n + k];
    }
    std::vector<bigint> const & table() const { return table_; }
    std::vector<automorphism> const & automorphisms() const { return autos_; }
    std::string const & tag() const { return tag_; }

    kind type = kind::rational;
    /* quadratic: the radicand; compositum/extension: the adjoined radicand (0 if none) */
    bigint radicand = 0;
    bool maximal = false;
    /* basis vectors [0, base_rank) span a base subring (compositum, extension) */
    std::size_t base_rank = 0;
    /* index into automorphisms() of the conjugation fixing the base */
    std::optional<std::size_t> relative_conjugation;
    order_ptr base;

    /* Throws std::logic_error naming the first failing axiom. */
    void validate() const;

  private:
    std::vector<std::string> names_;
    std::vector<bigint> table_;
    std::vector<automorphism> autos_;
    std::string tag_;
};

order_ptr make_rational_order();
/* maximal: basis {1, w} with w = (1+sqrt d)/2 when d = 1 mod 4, else sqrt d.
 * non-maximal: Z[sqrt d].  d must be a nonzero non-square other than 1. */
order_ptr make_quadratic_order(bigint const & d, bool maximal);
/* base[sqrt d] with basis {b_i} followed by {b_i sqrt d}. */
order_ptr make_compositum_order(order_ptr const & base, bigint const & d);

class ring_element {
    order_ptr ctx_;
    std::vector<bigint> c_;

  public:
    ring_element() = default;
    ring_element(order_ptr ctx, std::vector<bigint> coords);
    static ring_element integer(order_ptr const & ctx, bigint const & m);
    static ring_element basis(order_ptr const & ctx, std::size_t i);

    order_ptr const & context() const { return ctx_; }
    std::vector<bigint> const & coords() const { return c_; }
    bigint const & operator[](std::size_t i) const { return c_[i]; }
    bool is_zero() const;
    bool is_integer(bigint const & m) const;
    bool is_one() const { return is_integer(1); }

    friend ring_element operator+(ring_element const & a, ring_element const & b);
    friend ring_element operator-(ring_element const & a, ring_element const & b);
    friend ring_element operator-(ring_element const & a);
    friend ring_element operator*(ring_element const & a, ring_element const & b);
    friend ring_element operator*(bigint const & s, ring_element const & a);
    friend bool operator==(ring_element const & a, ring_element const & b);

    /* rows: coordinates of e_i * x; row-vector y maps to y * x */
    int_matrix multiplication_matrix() const;
    ring_element apply(automorphism const & s) const;
    ring_element pow(unsigned long e) const;
    /* inverse in the order, if x is a unit */
    std::optional<ring_element> inverse() const;

    std::string to_string() const;
};

/* a + b sqrt(d) in a quadratic order (b must keep the result integral). */
ring_element quadratic_element(order_ptr const & ctx, bigint const & a, bigint const & b);
/* Rational coordinates (a, b) with x = a + b sqrt d, scaled by 2 to stay integral. */
std::pair<bigint, bigint> quadratic_coords_times_two(ring_element const & x);

/* Base element viewed inside a compositum or extension. */
ring_element lift_to(order_ptr const & ext, ring_element const & x);
/* Inverse of lift_to; throws if x is not in the base block. */
ring_element restrict_to_base(ring_element const & x);

/* base[rho] with rho^2 + a rho + b = 0; basis {b_i} then {b_i rho}.
 * The conjugation rho -> -a - rho is declared as relative conjugation. */
order_ptr make_simple_extension(ring_element const & a, ring_element const & b);

bigint norm_elem(ring_element const & x);
bigint trace_elem(ring_element const & x);
/* x * sigma(x) for the declared relative conjugation. */
ring_element relative_norm(ring_element const & x);
ring_element conjugate(ring_element const & x);

/* Finite-index ideal in HNF, or the zero ideal. */
class ideal_lattice {
    order_ptr ctx_;
    std::optional<int_matrix> h_;

  public:
    ideal_lattice() = default;
    ideal_lattice(order_ptr ctx, std::optional<int_matrix> basis);
    static ideal_lattice zero(order_ptr const & ctx) { return {ctx, std::nullopt}; }
    static ideal_lattice unit(order_ptr const & ctx);

    order_ptr const & context() const { return ctx_; }
    bool is_zero() const { return !h_.has_value(); }
    bool is_unit() const;
    int_matrix const & basis() const;
    /* |O / I|; throws for the zero ideal */
    bigint index() const;

    bool contains(ring_element const & x) const;
    /* canonical coset representative; identity for the zero ideal */
    ring_element reduce(ring_element const & x) const;
    std::vector<ring_element> generators() const;

    friend bool operator==(ideal_lattice const & a, ideal_lattice const & b);
};

ideal_lattice ideal_from_generators(order_ptr const & ctx, std::vector<ring_element> const & gens);
ideal_lattice principal_ideal(ring_element const & x);
ideal_lattice ideal_sum(ideal_lattice const & a, ideal_lattice const & b);
ideal_lattice ideal_product(ideal_lattice const & a, ideal_lattice const & b);
ideal_lattice ideal_intersection(ideal_lattice const & a, ideal_lattice const & b);
ideal_lattice ideal_power(ideal_lattice const & a, unsigned e);
ideal_lattice ideal_scale(ideal_lattice const & a, bigint const & m);
/* Positive generator of I intersected with Z (0 for the zero ideal). */
bigint ideal_rational_generator(ideal_lattice const & a);
/* (I + p^e O) for the least e at which the sum stabilises: the p-part of I. */
ideal_lattice p_part(ideal_lattice const & a, bigint const & p);

bool congruent_mod_ideal(ring_element const & x, ring_element const & y, ideal_lattice const & m);

/* Arithmetic in O / m. */
ring_element power_mod(ring_element const & x, bigint const & e, ideal_lattice const & m);
std::optional<ring_element> inverse_mod(ring_element const & x, ideal_lattice const & m);
bool invertible_mod(ring_element const & x, ideal_lattice const & m);
/* Multiplicative order of x in (O/m)^x; throws not_invertible or cap_exceeded. */
bigint multiplicative_order_mod(ring_element const & x, ideal_lattice const & m,
                                std::uint64_t iteration_cap = 10000000);
/* All canonical residues; throws cap_exceeded above cap elements. */
std::vector<ring_element> enumerate_residues(ideal_lattice const & m, std::uint64_t cap = 10000000);

template <>
struct ring_traits<ring_element> {
    static ring_element zero_like(ring_element const & x) { return ring_element::integer(x.context(), 0); }
    static ring_element one_like(ring_element const & x) { return ring_element::integer(x.context(), 1); }
    static bool is_zero(ring_element const & a) { return a.is_zero(); }
};
using element_polynomial = polynomial<ring_element>;

}   // namespace unitdef

#endif  /* UNITDEF_NUMBER_RING_HPP */
