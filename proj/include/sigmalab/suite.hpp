// Configuration, the full verification run, and report rendering.
//
// A config names one protocol instance (group, witness, second
// generator) plus the checks to run, an exactness threshold epsilon,
// and an optional deliberately-broken simulator. Reports come in a
// machine form (schema-stable JSON, decimal-string integers, byte
// deterministic for a fixed config and seed) and a human form.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "sigmalab/dist.hpp"
#include "sigmalab/sheaf.hpp"
#include "sigmalab/site.hpp"

namespace sigmalab::suite {

using dist::Rational;
using group::GroupParams;
using group::Scalar;

enum class CheckId {
    group_validation,
    completeness,
    tamper,
    hvzk,
    topology,
    coverings,
    presheaf,
    literal,
    distributional,
    torsor,
    local_triviality,
    global_sections,
};

/// Canonical execution order; config selections are reordered to it.
const std::vector<CheckId>& all_checks();
std::string check_name(CheckId id);
std::optional<CheckId> check_by_name(const std::string& name);

struct SuiteConfig {
    std::string protocol = "schnorr";
    GroupParams params;
    std::optional<std::uint64_t> h;  // chaum_pedersen only
    bool random_witness = false;
    Scalar witness = 0;
    std::optional<std::uint64_t> seed;
    Rational epsilon = 0;
    std::vector<CheckId> checks = all_checks();
    bool fault_constant_z = false;
};

struct ConfigError {
    std::string key;
    std::string message;
};

/// Parsed config or the full list of located errors (never both).
using ParseResult = std::variant<SuiteConfig, std::vector<ConfigError>>;

/// Strict JSON config parser: unknown keys are errors, integers may be
/// numbers or decimal strings, group parameters must validate, and a
/// random witness requires a seed.
ParseResult parse_config(const std::string& text);

enum class CheckStatus { pass, fail, info };

struct CheckRecord {
    CheckId id;
    CheckStatus status = CheckStatus::pass;
    nlohmann::ordered_json details;
};

struct SuiteReport {
    std::string protocol;
    GroupParams params;
    std::optional<std::uint64_t> h;
    Scalar witness = 0;
    std::optional<std::uint64_t> seed;
    Rational epsilon = 0;
    bool fault_constant_z = false;
    bool degenerate = false;  // empty check selection
    std::vector<CheckRecord> records;

    /// Pass iff every non-informational check passed.
    bool overall_pass() const;
};

/// Runs the selected checks in canonical order. Deterministic given the
/// config (including the seed).
SuiteReport run_suite(const SuiteConfig& config);

enum class ReportFormat { machine, human };

std::string emit_report(const SuiteReport& report, ReportFormat format);

/// Deterministic stream for explicit-seed sampling (witness choice and
/// the demo command). splitmix64 with rejection sampling.
class SeededSampler {
  public:
    explicit SeededSampler(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next();
    std::uint64_t below(std::uint64_t n);  // unbiased in [0, n)

  private:
    std::uint64_t state_;
};

}  // namespace sigmalab::suite
