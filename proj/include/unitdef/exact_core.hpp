#ifndef UNITDEF_EXACT_CORE_HPP
#define UNITDEF_EXACT_CORE_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace unitdef {

using bigint = mpz_class;

/* Errors shared by every module. */
struct cap_exceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct not_invertible : std::domain_error {
    using std::domain_error::domain_error;
};
struct hypothesis_violated : std::domain_error {
    using std::domain_error::domain_error;
};

bigint floor_div(bigint const & a, bigint const & b);
bigint floor_mod(bigint const & a, bigint const & b);
bigint gcd(bigint const & a, bigint const & b);
bigint lcm(bigint const & a, bigint const & b);
bigint ipow(bigint const & base, unsigned long e);
std::string to_string(bigint const & a);
bigint parse_bigint(std::string const & s);

/* Dense row-major integer matrix. */
class int_matrix {
    std::size_t nrows = 0;
    std::size_t ncols = 0;
    std::vector<bigint> entries;

  public:
    int_matrix() = default;
    int_matrix(std::size_t rows, std::size_t cols)
        : nrows(rows)
        , ncols(cols)
        , entries(rows * cols)
    {}
    static int_matrix identity(std::size_t n);
    static int_matrix from_rows(std::vector<std::vector<bigint>> const & rows,
                                std::size_t cols_if_empty = 0);

    std::size_t rows() const { return nrows; }
    std::size_t cols() const { return ncols; }

    bigint & operator()(std::size_t i, std::size_t j) { return entries[i * ncols + j]; }
    bigint const & operator()(std::size_t i, std::size_t j) const { return entries[i * ncols + j]; }

    std::span<bigint> row(std::size_t i) { return {entries.data() + i * ncols, ncols}; }
    std::span<bigint const> row(std::size_t i) const { return {entries.data() + i * ncols, ncols}; }
    std::vector<bigint> row_vector(std::size_t i) const;

    void append_row(std::span<bigint const> r);
    /* rows of *this followed by rows of other (same column count) */
    int_matrix stacked(int_matrix const & other) const;

    int_matrix transpose() const;
    bool is_zero() const;

    friend int_matrix operator*(int_matrix const & a, int_matrix const & b);
    friend bool operator==(int_matrix const & a, int_matrix const & b) = default;
};

std::vector<bigint> row_times(std::span<bigint const> v, int_matrix const & m);

/* Row-style Hermite normal form of the row lattice of m.  The result has
 * one row per rank, pivot columns strictly increasing, positive pivots,
 * and every entry above a pivot reduced into [0, pivot).  Zero rows are
 * dropped, so the zero matrix maps to a 0 x cols matrix.
 */
int_matrix hnf(int_matrix const & m);

struct hnf_with_transform_result {
    int_matrix basis;       /* rank x cols, as returned by hnf() */
    int_matrix transform;   /* rows x rows unimodular; transform * m = [basis; 0] */
    std::size_t rank = 0;
};
hnf_with_transform_result hnf_with_transform(int_matrix const & m);

/* Pivot column of each row of an echelon basis. */
std::vector<std::size_t> pivot_columns(int_matrix const & echelon);

/* Canonical representative of v modulo the row lattice of an HNF basis. */
std::vector<bigint> reduce_mod_hnf(int_matrix const & h, std::vector<bigint> v);
bool in_row_lattice(int_matrix const & h, std::vector<bigint> const & v);

/* Integer coefficients c with c * m = v, if any. */
std::optional<std::vector<bigint>> solve_left(int_matrix const & m, std::span<bigint const> v);

/* HNF basis of the intersection of two row lattices with equal column count. */
int_matrix lattice_intersection(int_matrix const & a, int_matrix const & b);

bigint determinant(int_matrix const & m);
bigint trace(int_matrix const & m);

/* Rank of m over F_p. */
std::size_t rank_mod_p(int_matrix const & m, bigint const & p);
/* A solution c of c * m = v over F_p, entries in [0, p). */
std::optional<std::vector<bigint>> solve_left_mod_p(int_matrix const & m, std::span<bigint const> v,
                                                    bigint const & p);

struct factorization {
    std::vector<std::pair<bigint, unsigned>> primes;
    bigint cofactor = 1;    /* > 1 iff trial division stopped early */
    bool complete() const { return cofactor == 1; }
};
factorization trial_factor(bigint n, std::uint64_t bound = 1000000);
bool is_probable_prime(bigint const & n);
std::vector<bigint> divisors(factorization const & f);

/* Dense polynomial over a commutative ring R, ascending coefficients.
 * R needs +, -, * and a way to make a zero (zero_like) from any value.
 */
template <typename R>
struct ring_traits {
    static R zero_like(R const &) { return R(0); }
    static R one_like(R const &) { return R(1); }
    static bool is_zero(R const & a) { return a == 0; }
};

template <typename R>
class polynomial {
    std::vector<R> coeffs;

    void trim()
    {
        while (!coeffs.empty() && ring_traits<R>::is_zero(coeffs.back()))
            coeffs.pop_back();
    }

  public:
    polynomial() = default;
    explicit polynomial(std::vector<R> c)
        : coeffs(std::move(c))
    {
        trim();
    }
    static polynomial constant(R c) { return polynomial(std::vector<R>{std::move(c)}); }
    /* X - a */
    static polynomial linear_root(R const & a)
    {
        return polynomial({-a, ring_traits<R>::one_like(a)});
    }

    bool is_zero() const { return coeffs.empty(); }
    long degree() const { return static_cast<long>(coeffs.size()) - 1; }
    std::vector<R> const & coefficients() const { return coeffs; }
    R const & operator[](std::size_t i) const { return coeffs[i]; }
    R const & leading() const { return coeffs.back(); }

    friend polynomial operator+(polynomial const & a, polynomial const & b)
    {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        std::vector<R> c;
        std::size_t n = std::max(a.coeffs.size(), b.coeffs.size());
        R zero = ring_traits<R>::zero_like(a.coeffs[0]);
        for (std::size_t i = 0; i < n; i++) {
            R x = i < a.coeffs.size() ? a.coeffs[i] : zero;
            if (i < b.coeffs.size()) x = x + b.coeffs[i];
            c.push_back(std::move(x));
        }
        return polynomial(std::move(c));
    }
    friend polynomial operator-(polynomial const & a)
    {
        std::vector<R> c;
        for (auto const & x : a.coeffs) c.push_back(-x);
        return polynomial(std::move(c));
    }
    friend polynomial operator-(polynomial const & a, polynomial const & b) { return a + (-b); }
    friend polynomial operator*(polynomial const & a, polynomial const & b)
    {
        if (a.is_zero() || b.is_zero()) return {};
        R zero = ring_traits<R>::zero_like(a.coeffs[0]);
        std::vector<R> c(a.coeffs.size() + b.coeffs.size() - 1, zero);
        for (std::size_t i = 0; i < a.coeffs.size(); i++)
            for (std::size_t j = 0; j < b.coeffs.size(); j++)
                c[i + j] = c[i + j] + a.coeffs[i] * b.coeffs[j];
        return polynomial(std::move(c));
    }
    friend polynomial operator*(R const & s, polynomial const & a)
    {
        std::vector<R> c;
        for (auto const & x : a.coeffs) c.push_back(s * x);
        return polynomial(std::move(c));
    }
    friend bool operator==(polynomial const & a, polynomial const & b) { return a.coeffs == b.coeffs; }

    R operator()(R const & x) const
    {
        if (coeffs.empty()) return ring_traits<R>::zero_like(x);
        R acc = coeffs.back();
        for (std::size_t i = coeffs.size() - 1; i-- > 0;)
            acc = acc * x + coeffs[i];
        return acc;
    }

    /* f(p(X)) */
    polynomial compose(polynomial const & p) const
    {
        polynomial acc;
        for (std::size_t i = coeffs.size(); i-- > 0;)
            acc = acc * p + constant(coeffs[i]);
        return acc;
    }

    polynomial pow(unsigned e) const
    {
        if (coeffs.empty()) {
            if (e == 0) throw std::invalid_argument("polynomial::pow: 0^0");
            return {};
        }
        polynomial acc = constant(ring_traits<R>::one_like(coeffs[0]));
        for (unsigned i = 0; i < e; i++) acc = acc * *this;
        return acc;
    }
};

using int_polynomial = polynomial<bigint>;

/* g(X) := mu^d f((X - beta)/mu) for monic f of degree d, computed as
 * sum_k f_k mu^(d-k) (X - beta)^k so that no division occurs.  g is monic
 * and g(mu X + beta) = mu^d f(X).
 */
template <typename R>
polynomial<R> affine_compose(polynomial<R> const & f, R const & mu, R const & beta)
{
    if (f.is_zero()) throw std::invalid_argument("affine_compose: zero polynomial");
    if (!(f.leading() == ring_traits<R>::one_like(mu)))
        throw std::invalid_argument("affine_compose: f must be monic");
    long d = f.degree();
    auto shift = polynomial<R>::linear_root(beta);
    polynomial<R> g;
    R mu_power = ring_traits<R>::one_like(mu);
    /* walk k from d down to 0 so mu_power = mu^(d-k) */
    for (long k = d; k >= 0; k--) {
        g = g + (f[static_cast<std::size_t>(k)] * mu_power) * shift.pow(static_cast<unsigned>(k));
        mu_power = mu_power * mu;
    }
    return g;
}

/* Order computations in an abstract finite group given by a power
 * function.  exponent_multiple must be a multiple of the group exponent.
 */
struct order_oracle {
    std::function<bool(bigint const &)> power_is_one;   /* g^k == 1 ? */
};
bigint order_from_exponent(order_oracle const & g, bigint exponent_multiple,
                           factorization const & exponent_factors);

/* Multiplicative order of g modulo n (plain integers). */
bigint multiplicative_order_mod(bigint const & g, bigint const & n,
                                std::uint64_t iteration_cap = 10000000);

}   // namespace unitdef

#endif  /* UNITDEF_EXACT_CORE_HPP */
