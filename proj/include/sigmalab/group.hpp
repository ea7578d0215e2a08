// Exact modular arithmetic for a prime-order subgroup of (Z/pZ)^*,
// plus the brute-force oracles (discrete log by scan) that the rest of
// the lab leans on. Everything here is deterministic and desk-scale:
// parameters are kept small enough that full enumeration of Z_q and
// Z_q^2 is always feasible.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace sigmalab::group {

/// Residue in Z_q (exponent field). Operations keep values reduced.
using Scalar = std::uint64_t;

// Desk-scale ceilings. q^2 enumerations (the transcript space) stay
// under ~10^6 items, so every check can be exact and fast.
inline constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 20;
inline constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 10;

/// Raised when a requested enumeration would exceed the desk-scale bounds.
struct ScaleError : std::runtime_error {
    explicit ScaleError(const std::string& what) : std::runtime_error(what) {}
};

/**
 * A prime-order cyclic subgroup <g> of the units mod p.
 *   p : prime modulus
 *   q : prime order of the subgroup, q | p-1
 *   g : generator, g^q = 1 and g != 1
 */
struct GroupParams {
    std::uint64_t p = 0;
    std::uint64_t q = 0;
    std::uint64_t g = 0;

    bool operator==(const GroupParams&) const = default;
};

/// A validated member of <g>. Construct with element(); construction
/// checks 1 <= value < p and value^q = 1 (mod p).
struct GroupElement {
    std::uint64_t value = 1;

    auto operator<=>(const GroupElement&) const = default;
};

struct ValidationReport {
    std::vector<std::string> failures;

    bool ok() const { return failures.empty(); }
};

bool is_prime(std::uint64_t n);  // deterministic trial division

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);

/**
 * base^exp mod p via square-and-multiply. `base` must be a unit mod p,
 * otherwise std::domain_error. The exponent is taken as-is (not reduced
 * mod q), so g^q = 1 is directly observable.
 */
std::uint64_t pow_mod(const GroupParams& params, std::uint64_t base,
                      std::uint64_t exp);

/// Modular inverse by extended Euclid; std::domain_error if gcd(a,m) != 1.
std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m);

/// Checks every GroupParams invariant; the report lists each failure.
ValidationReport validate_group(const GroupParams& params);

/// Throws std::invalid_argument with the failure list unless valid.
void require_valid(const GroupParams& params);

/// Membership test for <g>: 1 <= v < p and v^q = 1 (mod p).
bool in_subgroup(const GroupParams& params, std::uint64_t v);

/// Validating constructor for GroupElement.
GroupElement element(const GroupParams& params, std::uint64_t value);

/**
 * The unique r in Z_q with g^r = h, found by exhaustive scan.
 * std::domain_error if h is not in <g>.
 */
Scalar dlog_bruteforce(const GroupParams& params, std::uint64_t h);

/// All q subgroup members, listed as g^0, g^1, ..., g^(q-1).
std::vector<std::uint64_t> subgroup_elements(const GroupParams& params);

}  // namespace sigmalab::group
