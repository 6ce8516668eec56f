#ifndef UNITDEF_TESTS_GENERATORS_HPP
#define UNITDEF_TESTS_GENERATORS_HPP

#include <ostream>
#include <random>
#include <vector>

#include "unitdef/number_ring.hpp"
#include "unitdef/units.hpp"

namespace unitdef {

/* readable gtest failure output */
inline void PrintTo(ring_element const & x, std::ostream * os) { *os << x.to_string(); }
inline void PrintTo(unit_word const & w, std::ostream * os) { *os << word_to_string(w); }
inline void PrintTo(int_matrix const & m, std::ostream * os)
{
    *os << "[";
    for (std::size_t i = 0; i < m.rows(); i++) {
        *os << (i ? "; " : "");
        for (std::size_t j = 0; j < m.cols(); j++) *os << (j ? " " : "") << m(i, j).get_str();
    }
    *os << "]";
}

}   // namespace unitdef

namespace unitdef::testing {

using rng_t = std::mt19937_64;

inline long uniform(rng_t & rng, long lo, long hi)
{
    return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline ring_element random_element(order_ptr const & ctx, rng_t & rng, long h)
{
    std::vector<bigint> c(ctx->degree());
    for (auto & x : c) x = uniform(rng, -h, h);
    return ring_element(ctx, std::move(c));
}

inline ring_element random_nonzero(order_ptr const & ctx, rng_t & rng, long h)
{
    for (;;) {
        auto x = random_element(ctx, rng, h);
        if (!x.is_zero()) return x;
    }
}

inline int_matrix random_matrix(rng_t & rng, std::size_t r, std::size_t c, long h)
{
    int_matrix m(r, c);
    for (std::size_t i = 0; i < r; i++)
        for (std::size_t j = 0; j < c; j++) m(i, j) = uniform(rng, -h, h);
    return m;
}

inline unit_word random_word(unit_group const & g, rng_t & rng, long bound)
{
    unit_word w = word_identity(g);
    w.torsion_exp = uniform(rng, 0, static_cast<long>(g.torsion_order) - 1);
    for (auto & e : w.exps) e = uniform(rng, -bound, bound);
    return w;
}

/* the three rings the lemma suites sweep */
inline std::vector<order_ptr> lemma_rings()
{
    return {make_quadratic_order(-1, true), make_quadratic_order(2, true), make_quadratic_order(5, false)};
}

}   // namespace unitdef::testing

#endif
