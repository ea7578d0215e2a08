#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sigmalab/group.hpp"

using namespace sigmalab;
using group::GroupParams;

namespace {

// independent oracle: repeated multiplication
std::uint64_t naive_pow(std::uint64_t base, std::uint64_t exp,
                        std::uint64_t m) {
    std::uint64_t acc = 1;
    for (std::uint64_t i = 0; i < exp; ++i) acc = acc * base % m;
    return acc;
}

// independent oracle: scan for the inverse
std::uint64_t naive_inv(std::uint64_t a, std::uint64_t m) {
    for (std::uint64_t b = 1; b < m; ++b) {
        if (a * b % m == 1) return b;
    }
    return 0;
}

const GroupParams kSmall{23, 11, 2};
const GroupParams kLarger{47, 23, 2};

}  // namespace

TEST_CASE("pow_mod matches the repeated-multiplication oracle") {
    CHECK(group::pow_mod(kSmall, 2, 11) == 1);  // g has order 11
    CHECK(group::pow_mod(kSmall, 2, 11) == naive_pow(2, 11, 23));
    CHECK(group::pow_mod(kSmall, 2, 0) == 1);
    CHECK(group::pow_mod(kSmall, 2, 5) == 9);
    CHECK(group::pow_mod(kSmall, 2, 5) == naive_pow(2, 5, 23));
    for (std::uint64_t base = 1; base < 23; ++base) {
        for (std::uint64_t exp = 0; exp < 30; ++exp) {
            CHECK(group::pow_mod(kSmall, base, exp) == naive_pow(base, exp, 23));
        }
    }
}

TEST_CASE("pow_mod rejects non-unit bases") {
    CHECK_THROWS_AS(group::pow_mod(kSmall, 0, 3), std::domain_error);
    CHECK_THROWS_AS(group::pow_mod(kSmall, 23, 3), std::domain_error);
    const GroupParams composite{22, 11, 3};  // only pow_mod's gcd path
    CHECK_THROWS_AS(group::pow_mod(composite, 11, 2), std::domain_error);
}

TEST_CASE("inv_mod agrees with the scan oracle") {
    CHECK(group::inv_mod(8, 11) == 7);
    CHECK(group::inv_mod(1, 11) == 1);
    CHECK(group::inv_mod(2, 23) == 12);
    for (const std::uint64_t m : {11ull, 23ull, 47ull}) {
        for (std::uint64_t a = 1; a < m; ++a) {
            CHECK(group::inv_mod(a, m) == naive_inv(a, m));
            CHECK(a * group::inv_mod(a, m) % m == 1);
        }
    }
}

TEST_CASE("inv_mod rejects non-invertible values") {
    CHECK_THROWS_AS(group::inv_mod(0, 11), std::domain_error);
    CHECK_THROWS_AS(group::inv_mod(6, 12), std::domain_error);
}

TEST_CASE("validate_group accepts the lab parameter sets") {
    CHECK(group::validate_group(kSmall).ok());
    CHECK(group::validate_group(kLarger).ok());
}

TEST_CASE("validate_group lists each failed invariant") {
    SUBCASE("identity generator") {
        CHECK_FALSE(group::validate_group({23, 11, 1}).ok());
    }
    SUBCASE("composite order") {
        CHECK_FALSE(group::validate_group({23, 12, 2}).ok());
    }
    SUBCASE("q does not divide p-1") {
        CHECK_FALSE(group::validate_group({23, 7, 2}).ok());
    }
    SUBCASE("wrong generator order") {
        // 5 generates the full group of order 22
        CHECK_FALSE(group::validate_group({23, 11, 5}).ok());
    }
    SUBCASE("desk-scale bound") {
        CHECK_FALSE(group::validate_group({1 << 20, 11, 2}).ok());
    }
}

TEST_CASE("dlog round-trips with pow over the full exponent range") {
    CHECK(group::dlog_bruteforce(kSmall, 9) == 5);
    CHECK(group::dlog_bruteforce(kSmall, 1) == 0);
    CHECK(group::dlog_bruteforce(kSmall, 8) == 3);
    for (const GroupParams& params : {kSmall, kLarger}) {
        for (group::Scalar r = 0; r < params.q; ++r) {
            CHECK(group::dlog_bruteforce(
                      params, group::pow_mod(params, params.g, r)) == r);
        }
    }
}

TEST_CASE("dlog rejects values outside the subgroup") {
    CHECK_THROWS_AS(group::dlog_bruteforce(kSmall, 5), std::domain_error);
    CHECK_THROWS_AS(group::dlog_bruteforce(kSmall, 0), std::domain_error);
}

TEST_CASE("exponent homomorphism, exhaustively") {
    for (const GroupParams& params : {kSmall, kLarger}) {
        for (group::Scalar r1 = 0; r1 < params.q; ++r1) {
            for (group::Scalar r2 = 0; r2 < params.q; ++r2) {
                const auto lhs = group::mul_mod(
                    group::pow_mod(params, params.g, r1),
                    group::pow_mod(params, params.g, r2), params.p);
                const auto rhs = group::pow_mod(params, params.g,
                                                (r1 + r2) % params.q);
                CHECK(lhs == rhs);
            }
        }
    }
}

TEST_CASE("element construction validates subgroup membership") {
    CHECK(group::element(kSmall, 9).value == 9);
    CHECK_THROWS_AS(group::element(kSmall, 5), std::domain_error);
    CHECK_THROWS_AS(group::element(kSmall, 0), std::domain_error);
    CHECK_THROWS_AS(group::element(kSmall, 23), std::domain_error);
}

TEST_CASE("subgroup_elements lists g^0..g^(q-1)") {
    const auto elems = group::subgroup_elements(kSmall);
    REQUIRE(elems.size() == 11);
    CHECK(elems[0] == 1);
    CHECK(elems[1] == 2);
    CHECK(elems[5] == 9);
    for (const auto v : elems) CHECK(group::in_subgroup(kSmall, v));
}
