#include "sigmalab/group.hpp"

#include <numeric>

namespace sigmalab::group {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return (a % m + b % m) % m;
}

std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return (a % m + m - b % m) % m;
}

std::uint64_t pow_mod(const GroupParams& params, std::uint64_t base,
                      std::uint64_t exp) {
    const std::uint64_t m = params.p;
    if (m < 2) throw std::domain_error("pow_mod: modulus must be >= 2");
    base %= m;
    if (base == 0 || std::gcd(base, m) != 1) {
        throw std::domain_error("pow_mod: base is not a unit mod p");
    }
    std::uint64_t result = 1;
    while (exp > 0) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m) {
    if (m < 2) throw std::domain_error("inv_mod: modulus must be >= 2");
    a %= m;
    // extended Euclid on (a, m); signed intermediates are safe at desk scale
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = static_cast<std::int64_t>(m);
    std::int64_t new_r = static_cast<std::int64_t>(a);
    while (new_r != 0) {
        const std::int64_t quot = r / new_r;
        std::int64_t tmp = t - quot * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - quot * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (r != 1) throw std::domain_error("inv_mod: value is not invertible");
    if (t < 0) t += static_cast<std::int64_t>(m);
    return static_cast<std::uint64_t>(t);
}

ValidationReport validate_group(const GroupParams& params) {
    ValidationReport report;
    if (params.p >= kMaxModulus) {
        report.failures.push_back("p exceeds the desk-scale bound 2^20");
    }
    if (params.q >= kMaxOrder) {
        report.failures.push_back("q exceeds the desk-scale bound 2^10");
    }
    if (!report.ok()) return report;  // keep the scans below cheap

    if (!is_prime(params.p)) report.failures.push_back("p is not prime");
    if (!is_prime(params.q)) report.failures.push_back("q is not prime");
    if (params.p > 1 && params.q > 0 && (params.p - 1) % params.q != 0) {
        report.failures.push_back("q does not divide p-1");
    }
    if (params.g <= 1 || params.g >= params.p) {
        report.failures.push_back(
            "generator is outside (1, p): the identity cannot generate");
        return report;
    }
    if (!report.ok()) return report;
    if (pow_mod(params, params.g, params.q) != 1) {
        report.failures.push_back("g^q != 1 (mod p): g has wrong order");
    }
    return report;
}

void require_valid(const GroupParams& params) {
    const ValidationReport report = validate_group(params);
    if (report.ok()) return;
    std::string msg = "invalid group parameters:";
    for (const auto& f : report.failures) msg += " " + f + ";";
    throw std::invalid_argument(msg);
}

bool in_subgroup(const GroupParams& params, std::uint64_t v) {
    if (v == 0 || v >= params.p) return false;
    if (std::gcd(v, params.p) != 1) return false;
    return pow_mod(params, v, params.q) == 1;
}

GroupElement element(const GroupParams& params, std::uint64_t value) {
    if (!in_subgroup(params, value)) {
        throw std::domain_error("element: value " + std::to_string(value) +
                                " is not in the order-" +
                                std::to_string(params.q) + " subgroup");
    }
    return GroupElement{value};
}

Scalar dlog_bruteforce(const GroupParams& params, std::uint64_t h) {
    std::uint64_t acc = 1;
    for (Scalar r = 0; r < params.q; ++r) {
        if (acc == h % params.p) return r;
        acc = mul_mod(acc, params.g, params.p);
    }
    throw std::domain_error("dlog_bruteforce: value is not in <g>");
}

std::vector<std::uint64_t> subgroup_elements(const GroupParams& params) {
    std::vector<std::uint64_t> elems;
    elems.reserve(params.q);
    std::uint64_t acc = 1;
    for (Scalar r = 0; r < params.q; ++r) {
        elems.push_back(acc);
        acc = mul_mod(acc, params.g, params.p);
    }
    return elems;
}

}  // namespace sigmalab::group
