#include "unitdef/exact_core.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

namespace unitdef {

bigint floor_div(bigint const & a, bigint const & b)
{
    bigint q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

bigint floor_mod(bigint const & a, bigint const & b)
{
    bigint r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (r < 0) r += abs(b);
    return r;
}

bigint gcd(bigint const & a, bigint const & b)
{
    bigint g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

bigint lcm(bigint const & a, bigint const & b)
{
    bigint l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

bigint ipow(bigint const & base, unsigned long e)
{
    bigint r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

std::string to_string(bigint const & a) { return a.get_str(); }

bigint parse_bigint(std::string const & s)
{
    bigint r;
    if (s.empty() || r.set_str(s, 10) != 0)
        throw std::invalid_argument("not an integer: '" + s + "'");
    return r;
}

int_matrix int_matrix::identity(std::size_t n)
{
    int_matrix m(n, n);
    for (std::size_t i = 0; i < n; i++) m(i, i) = 1;
    return m;
}

int_matrix int_matrix::from_rows(std::vector<std::vector<bigint>> const & rows, std::size_t cols_if_empty)
{
    std::size_t c = rows.empty() ? cols_if_empty : rows[0].size();
    int_matrix m(0, c);
    for (auto const & r : rows) m.append_row(r);
    return m;
}

std::vector<bigint> int_matrix::row_vector(std::size_t i) const
{
    auto r = row(i);
    return {r.begin(), r.end()};
}

void int_matrix::append_row(std::span<bigint const> r)
{
    if (r.size() != ncols) throw std::invalid_argument("append_row: width mismatch");
    entries.insert(entries.end(), r.begin(), r.end());
    nrows++;
}

int_matrix int_matrix::stacked(int_matrix const & other) const
{
    if (other.ncols != ncols) throw std::invalid_argument("stacked: width mismatch");
    int_matrix m = *this;
    m.entries.insert(m.entries.end(), other.entries.begin(), other.entries.end());
    m.nrows += other.nrows;
    return m;
}

int_matrix int_matrix::transpose() const
{
    int_matrix t(ncols, nrows);
    for (std::size_t i = 0; i < nrows; i++)
        for (std::size_t j = 0; j < ncols; j++)
            t(j, i) = (*this)(i, j);
    return t;
}

bool int_matrix::is_zero() const
{
    return std::all_of(entries.begin(), entries.end(), [](bigint const & x) { return x == 0; });
}

int_matrix operator*(int_matrix const & a, int_matrix const & b)
{
    if (a.ncols != b.nrows) throw std::invalid_argument("matrix product: shape mismatch");
    int_matrix c(a.nrows, b.ncols);
    for (std::size_t i = 0; i < a.nrows; i++)
        for (std::size_t k = 0; k < a.ncols; k++) {
            if (a(i, k) == 0) continue;
            for (std::size_t j = 0; j < b.ncols; j++)
                c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

std::vector<bigint> row_times(std::span<bigint const> v, int_matrix const & m)
{
    if (v.size() != m.rows()) throw std::invalid_argument("row_times: shape mismatch");
    std::vector<bigint> r(m.cols());
    for (std::size_t i = 0; i < m.rows(); i++) {
        if (v[i] == 0) continue;
        for (std::size_t j = 0; j < m.cols(); j++)
            r[j] += v[i] * m(i, j);
    }
    return r;
}

namespace {

/* Echelon reduction driven by the first `key` columns of a.  All row
 * operations act on full rows, so extra columns carry a transform.
 * Returns the rank.
 */
std::size_t echelonize(int_matrix & a, std::size_t key)
{
    std::size_t const m = a.rows();
    std::size_t const w = a.cols();
    auto sub_multiple = [&](std::size_t dst, std::size_t src, bigint const & q) {
        if (q == 0) return;
        for (std::size_t j = 0; j < w; j++) a(dst, j) -= q * a(src, j);
    };
    auto swap_rows = [&](std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t c = 0; c < w; c++) std::swap(a(i, c), a(j, c));
    };

    std::size_t r = 0;
    for (std::size_t c = 0; c < key && r < m; c++) {
        for (;;) {
            /* smallest nonzero |a(i,c)| for i >= r */
            std::size_t best = m;
            for (std::size_t i = r; i < m; i++) {
                if (a(i, c) == 0) continue;
                if (best == m || abs(a(i, c)) < abs(a(best, c))) best = i;
            }
            if (best == m) break;
            swap_rows(r, best);
            bool others = false;
            for (std::size_t i = r + 1; i < m; i++) {
                if (a(i, c) == 0) continue;
                bigint q;
                mpz_tdiv_q(q.get_mpz_t(), a(i, c).get_mpz_t(), a(r, c).get_mpz_t());
                sub_multiple(i, r, q);
                if (a(i, c) != 0) others = true;
            }
            if (!others) break;
        }
        if (a(r, c) == 0) continue;
        if (a(r, c) < 0)
            for (std::size_t j = 0; j < w; j++) a(r, j) = -a(r, j);
        for (std::size_t k = 0; k < r; k++)
            sub_multiple(k, r, floor_div(a(k, c), a(r, c)));
        r++;
    }
    return r;
}

}   // namespace

int_matrix hnf(int_matrix const & m)
{
    int_matrix a = m;
    std::size_t rank = echelonize(a, a.cols());
    int_matrix h(0, m.cols());
    for (std::size_t i = 0; i < rank; i++) h.append_row(a.row(i));
    return h;
}

hnf_with_transform_result hnf_with_transform(int_matrix const & m)
{
    std::size_t const rows = m.rows();
    std::size_t const cols = m.cols();
    int_matrix a(rows, cols + rows);
    for (std::size_t i = 0; i < rows; i++) {
        for (std::size_t j = 0; j < cols; j++) a(i, j) = m(i, j);
        a(i, cols + i) = 1;
    }
    hnf_with_transform_result res;
    res.rank = echelonize(a, cols);
    res.basis = int_matrix(0, cols);
    res.transform = int_matrix(rows, rows);
    for (std::size_t i = 0; i < rows; i++) {
        if (i < res.rank) {
            std::vector<bigint> r(a.row(i).begin(), a.row(i).begin() + static_cast<long>(cols));
            res.basis.append_row(r);
        }
        for (std::size_t j = 0; j < rows; j++) res.transform(i, j) = a(i, cols + j);
    }
    return res;
}

std::vector<std::size_t> pivot_columns(int_matrix const & echelon)
{
    std::vector<std::size_t> piv;
    for (std::size_t i = 0; i < echelon.rows(); i++) {
        std::size_t j = 0;
        while (j < echelon.cols() && echelon(i, j) == 0) j++;
        if (j == echelon.cols()) throw std::invalid_argument("pivot_columns: zero row in echelon basis");
        piv.push_back(j);
    }
    return piv;
}

std::vector<bigint> reduce_mod_hnf(int_matrix const & h, std::vector<bigint> v)
{
    if (v.size() != h.cols()) throw std::invalid_argument("reduce_mod_hnf: width mismatch");
    auto piv = pivot_columns(h);
    for (std::size_t k = 0; k < h.rows(); k++) {
        bigint q = floor_div(v[piv[k]], h(k, piv[k]));
        if (q == 0) continue;
        for (std::size_t j = piv[k]; j < h.cols(); j++) v[j] -= q * h(k, j);
    }
    return v;
}

bool in_row_lattice(int_matrix const & h, std::vector<bigint> const & v)
{
    auto r = reduce_mod_hnf(h, v);
    return std::all_of(r.begin(), r.end(), [](bigint const & x) { return x == 0; });
}

std::optional<std::vector<bigint>> solve_left(int_matrix const & m, std::span<bigint const> v)
{
    if (v.size() != m.cols()) throw std::invalid_argument("solve_left: width mismatch");
    auto t = hnf_with_transform(m);
    std::vector<bigint> rem(v.begin(), v.end());
    std::vector<bigint> coeff(t.rank);
    if (t.rank) {
        auto piv = pivot_columns(t.basis);
        for (std::size_t k = 0; k < t.rank; k++) {
            bigint const & p = t.basis(k, piv[k]);
            if (rem[piv[k]] % p != 0) return std::nullopt;
            bigint q = rem[piv[k]] / p;
            coeff[k] = q;
            if (q == 0) continue;
            for (std::size_t j = piv[k]; j < m.cols(); j++) rem[j] -= q * t.basis(k, j);
        }
    }
    for (auto const & x : rem)
        if (x != 0) return std::nullopt;
    /* v = coeff * basis = coeff * transform[0..rank) * m */
    std::vector<bigint> lam(m.rows());
    for (std::size_t k = 0; k < t.rank; k++) {
        if (coeff[k] == 0) continue;
        for (std::size_t j = 0; j < m.rows(); j++) lam[j] += coeff[k] * t.transform(k, j);
    }
    return lam;
}

int_matrix lattice_intersection(int_matrix const & a, int_matrix const & b)
{
    std::size_t const n = a.cols();
    if (b.cols() != n) throw std::invalid_argument("lattice_intersection: width mismatch");
    /* rows (x | x) for x in a, (y | 0) for y in b; the echelon rows whose
     * first half vanishes span {(0 | x) : x in a and b} */
    int_matrix blk(0, 2 * n);
    std::vector<bigint> r(2 * n);
    for (std::size_t i = 0; i < a.rows(); i++) {
        for (std::size_t j = 0; j < n; j++) r[j] = r[n + j] = a(i, j);
        blk.append_row(r);
    }
    for (std::size_t i = 0; i < b.rows(); i++) {
        for (std::size_t j = 0; j < n; j++) {
            r[j] = b(i, j);
            r[n + j] = 0;
        }
        blk.append_row(r);
    }
    auto h = hnf(blk);
    int_matrix out(0, n);
    for (std::size_t i = 0; i < h.rows(); i++) {
        bool low = true;
        for (std::size_t j = 0; j < n; j++)
            if (h(i, j) != 0) low = false;
        if (!low) continue;
        std::vector<bigint> x(h.row(i).begin() + static_cast<long>(n), h.row(i).end());
        out.append_row(x);
    }
    return hnf(out);
}

bigint determinant(int_matrix const & m)
{
    std::size_t const n = m.rows();
    if (m.cols() != n) throw std::invalid_argument("determinant: not square");
    if (n == 0) return 1;
    /* Bareiss fraction-free elimination */
    int_matrix a = m;
    bigint prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; k++) {
        if (a(k, k) == 0) {
            std::size_t s = k + 1;
            while (s < n && a(s, k) == 0) s++;
            if (s == n) return 0;
            for (std::size_t j = 0; j < n; j++) std::swap(a(k, j), a(s, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; i++)
            for (std::size_t j = k + 1; j < n; j++) {
                bigint t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                mpz_divexact(a(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

bigint trace(int_matrix const & m)
{
    bigint t = 0;
    for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); i++) t += m(i, i);
    return t;
}

namespace {

bigint inverse_mod_p(bigint const & a, bigint const & p)
{
    bigint r;
    if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t()))
        throw not_invertible("inverse_mod_p: not invertible");
    return r;
}

/* Row echelon form over F_p, with a transform tracking row combinations. */
struct mod_p_echelon {
    int_matrix rows;                /* reduced rows, first `rank` nonzero */
    int_matrix transform;
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;
};

mod_p_echelon echelon_mod_p(int_matrix const & m, bigint const & p)
{
    std::size_t const r = m.rows(), c = m.cols();
    mod_p_echelon e{int_matrix(r, c), int_matrix::identity(r), 0, {}};
    for (std::size_t i = 0; i < r; i++)
        for (std::size_t j = 0; j < c; j++) e.rows(i, j) = floor_mod(m(i, j), p);
    for (std::size_t col = 0; col < c && e.rank < r; col++) {
        std::size_t s = e.rank;
        while (s < r && e.rows(s, col) == 0) s++;
        if (s == r) continue;
        for (std::size_t j = 0; j < c; j++) std::swap(e.rows(s, j), e.rows(e.rank, j));
        for (std::size_t j = 0; j < r; j++) std::swap(e.transform(s, j), e.transform(e.rank, j));
        bigint inv = inverse_mod_p(e.rows(e.rank, col), p);
        for (std::size_t j = 0; j < c; j++) e.rows(e.rank, j) = floor_mod(e.rows(e.rank, j) * inv, p);
        for (std::size_t j = 0; j < r; j++) e.transform(e.rank, j) = floor_mod(e.transform(e.rank, j) * inv, p);
        for (std::size_t i = 0; i < r; i++) {
            if (i == e.rank || e.rows(i, col) == 0) continue;
            bigint f = e.rows(i, col);
            for (std::size_t j = 0; j < c; j++) e.rows(i, j) = floor_mod(e.rows(i, j) - f * e.rows(e.rank, j), p);
            for (std::size_t j = 0; j < r; j++)
                e.transform(i, j) = floor_mod(e.transform(i, j) - f * e.transform(e.rank, j), p);
        }
        e.pivots.push_back(col);
        e.rank++;
    }
    return e;
}

}   // namespace

std::size_t rank_mod_p(int_matrix const & m, bigint const & p) { return echelon_mod_p(m, p).rank; }

std::optional<std::vector<bigint>> solve_left_mod_p(int_matrix const & m, std::span<bigint const> v,
                                                    bigint const & p)
{
    if (v.size() != m.cols()) throw std::invalid_argument("solve_left_mod_p: width mismatch");
    auto e = echelon_mod_p(m, p);
    std::vector<bigint> rem(v.size());
    for (std::size_t j = 0; j < v.size(); j++) rem[j] = floor_mod(v[j], p);
    std::vector<bigint> coeff(m.rows());
    for (std::size_t k = 0; k < e.rank; k++) {
        bigint f = rem[e.pivots[k]];
        if (f == 0) continue;
        for (std::size_t j = 0; j < v.size(); j++) rem[j] = floor_mod(rem[j] - f * e.rows(k, j), p);
        for (std::size_t j = 0; j < m.rows(); j++) coeff[j] = floor_mod(coeff[j] + f * e.transform(k, j), p);
    }
    for (auto const & x : rem)
        if (x != 0) return std::nullopt;
    return coeff;
}

bool is_probable_prime(bigint const & n) { return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0; }

factorization trial_factor(bigint n, std::uint64_t bound)
{
    factorization f;
    if (n < 0) n = -n;
    if (n == 0) throw std::invalid_argument("trial_factor: zero");
    for (std::uint64_t p = 2; p <= bound; p += (p == 2 ? 1 : 2)) {
        bigint bp = static_cast<unsigned long>(p);
        if (bp * bp > n) break;
        unsigned e = 0;
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            n /= bp;
            e++;
        }
        if (e) f.primes.emplace_back(bp, e);
    }
    if (n > 1) {
        /* a cofactor below bound^2, or one that passes a primality test, is prime */
        bigint b = static_cast<unsigned long>(bound);
        if (n <= b * b || is_probable_prime(n)) {
            f.primes.emplace_back(n, 1);
            n = 1;
        }
    }
    f.cofactor = n;
    std::sort(f.primes.begin(), f.primes.end());
    /* a prime cofactor can collide with nothing found by trial division */
    return f;
}

std::vector<bigint> divisors(factorization const & f)
{
    if (!f.complete()) throw std::invalid_argument("divisors: incomplete factorization");
    std::vector<bigint> d{1};
    for (auto const & [p, e] : f.primes) {
        std::size_t s = d.size();
        bigint pk = 1;
        for (unsigned k = 1; k <= e; k++) {
            pk *= p;
            for (std::size_t i = 0; i < s; i++) d.push_back(d[i] * pk);
        }
    }
    std::sort(d.begin(), d.end());
    return d;
}

bigint order_from_exponent(order_oracle const & g, bigint exponent_multiple, factorization const & exponent_factors)
{
    if (!exponent_factors.complete()) throw std::invalid_argument("order_from_exponent: incomplete factorization");
    if (!g.power_is_one(exponent_multiple))
        throw std::logic_error("order_from_exponent: supplied multiple is not an exponent");
    bigint order = exponent_multiple;
    for (auto const & [q, e] : exponent_factors.primes) {
        for (unsigned k = 0; k < e; k++) {
            if (order % q != 0) break;
            bigint cand = order / q;
            if (!g.power_is_one(cand)) break;
            order = cand;
        }
    }
    return order;
}

bigint multiplicative_order_mod(bigint const & g, bigint const & n, std::uint64_t iteration_cap)
{
    if (n <= 0) throw std::invalid_argument("multiplicative_order_mod: modulus must be positive");
    if (n == 1) return 1;
    if (gcd(g, n) != 1) throw not_invertible("multiplicative_order_mod: not invertible");
    auto fn = trial_factor(n);
    if (fn.complete()) {
        /* Carmichael-style multiple: prod p^(e-1) (p - 1) */
        bigint lam = 1;
        factorization ef;
        std::set<bigint> seen;
        for (auto const & [p, e] : fn.primes) {
            bigint part = ipow(p, e - 1) * (p - 1);
            lam = lcm(lam, part);
        }
        ef = trial_factor(lam);
        if (ef.complete()) {
            bigint base = floor_mod(g, n);
            order_oracle o{[&](bigint const & k) {
                bigint r;
                mpz_powm(r.get_mpz_t(), base.get_mpz_t(), k.get_mpz_t(), n.get_mpz_t());
                return r == 1;
            }};
            return order_from_exponent(o, lam, ef);
        }
    }
    bigint x = floor_mod(g, n);
    bigint acc = x;
    for (std::uint64_t k = 1; k <= iteration_cap; k++) {
        if (acc == 1) return static_cast<unsigned long>(k);
        acc = acc * x % n;
    }
    throw cap_exceeded("multiplicative_order_mod: iteration cap exceeded");
}

}   // namespace unitdef
