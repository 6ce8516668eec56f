#include <gtest/gtest.h>

#include "lemma_properties.hpp"

using namespace unitdef::testing;

namespace {

void expect_clean(suite_result const & r, std::size_t min_instances)
{
    EXPECT_GE(r.instances, min_instances) << r.name;
    EXPECT_EQ(r.violations, 0u) << r.name << ": " << r.first_violation;
}

}   // namespace

TEST(Lemmas, SumForm) { expect_clean(property_product_sum(101, 350), 1000); }
TEST(Lemmas, NormDescent) { expect_clean(property_norm(102, 350), 1000); }
TEST(Lemmas, EpsilonDivisibility) { expect_clean(property_unit_gcd(103, 350), 1000); }
TEST(Lemmas, SmallerSubgroup) { expect_clean(property_congruence_subgroup(104, 350), 1000); }
TEST(Lemmas, ConjugateRatio) { expect_clean(property_conjugate_ratio(105, 350), 1000); }
