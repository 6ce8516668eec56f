#ifndef UNITDEF_TESTS_LEMMA_PROPERTIES_HPP
#define UNITDEF_TESTS_LEMMA_PROPERTIES_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace unitdef::testing {

struct suite_result {
    std::string name;
    std::size_t instances = 0;
    std::size_t violations = 0;
    std::string first_violation;
};

/* product of delta_i - 1 against (eps - 1) sum x_i */
suite_result property_product_sum(std::uint64_t seed, std::size_t per_ring);
/* (eps - 1) [L:K] x = N(delta) - 1 in quadratic extensions L = K[sqrt m] */
suite_result property_norm(std::uint64_t seed, std::size_t per_ring);
/* b | a implies eps^b - 1 | eps^a - 1, and the quotient by eps^gcd - 1 is a unit */
suite_result property_unit_gcd(std::uint64_t seed, std::size_t per_ring);
/* n x with x in R_K keeps a witness in M = {u^n : u = 1 mod a} */
suite_result property_congruence_subgroup(std::uint64_t seed, std::size_t per_ring);
/* u = 1 mod d in a CM order gives u / conj(u) = +-1 */
suite_result property_conjugate_ratio(std::uint64_t seed, std::size_t per_ring);

std::vector<suite_result> all_lemma_suites(std::uint64_t seed, std::size_t per_ring);

}   // namespace unitdef::testing

#endif
