// The transcript assignment F over the attacker site, and the checks
// that give the lab its verdicts.
//
// Sections are internal prover states (r, e); F(U) collects the states
// whose honest transcript agrees with U. Fibers are nested along
// erasure (finer views pin down more), and the restriction map along a
// morphism V -> U solves U's section for V's extra revealed components.
// The checks:
//   - functoriality of the restriction tables (identity + composition),
//   - the literal gluing census over the per-shape consistency sets the
//     protocol equations define (response equation only on mixed
//     shapes), which quantifies how far the literal gluing condition
//     fails on the commitment covers,
//   - the distributional gluing condition (simulator amalgamation
//     reproduces the real conditional exactly), the normative check,
//   - torsor structure of the nonce re-randomization action, fiberwise
//     and as site automorphisms,
//   - simulator-produced local trivializations,
//   - the global-section census with witness extraction.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "sigmalab/dist.hpp"
#include "sigmalab/site.hpp"

namespace sigmalab::sheaf {

using dist::BigInt;
using dist::Rational;
using dist::TranscriptLab;
using sigma::Scalar;
using sigma::SigmaProtocol;
using sigma::Statement;
using sigma::Transcript;
using site::CoveringFamily;
using site::Site;
using site::ViewId;
using view::ViewShape;
using view::ViewValues;

/// Internal prover state of one honest run.
struct Section {
    Scalar r = 0;
    Scalar e = 0;

    auto operator<=>(const Section&) const = default;
};

/**
 * Finite table of fibers and restriction maps over a site.
 * fiber(U) is sorted; restriction tables are materialized per morphism
 * so that checks can exercise (and tests can corrupt) them directly.
 */
class PresheafTable {
  public:
    PresheafTable(const Site& site, Scalar witness);

    const Site& table_site() const { return *site_; }
    Scalar witness() const { return witness_; }

    const std::vector<Section>& fiber(ViewId u) const { return fibers_.at(u); }
    std::size_t section_index(ViewId u, const Section& s) const;

    /// Index map of the restriction along the morphism v -> u
    /// (v refines u): position i of fiber(u) maps to entry [i] in
    /// fiber(v).
    const std::vector<std::uint32_t>& restriction(ViewId u, ViewId v) const;

    /// All (u, v) pairs carrying a restriction table (v refines u).
    const std::vector<std::pair<ViewId, ViewId>>& morphisms() const {
        return morphism_list_;
    }

    // Fault-injection hooks for tests.
    void corrupt_restriction(ViewId u, ViewId v, std::size_t index,
                             std::uint32_t forced_value);
    void clear_fiber(ViewId u);

  private:
    const Site* site_;
    Scalar witness_;
    std::vector<std::vector<Section>> fibers_;
    std::map<std::pair<ViewId, ViewId>, std::vector<std::uint32_t>> rho_;
    std::vector<std::pair<ViewId, ViewId>> morphism_list_;
};

/// Materializes F for the statement/witness pair over the site.
/// std::domain_error when the witness does not match the statement.
PresheafTable build_presheaf(const SigmaProtocol& proto, const Statement& stmt,
                             Scalar witness, const Site& site);

struct FunctorialityReport {
    std::size_t identity_checks = 0;
    std::size_t composition_checks = 0;
    struct Violation {
        ViewId u, v, w;           // composition u -> v -> w vs u -> w
        std::size_t section_index;
    };
    std::vector<ViewId> identity_violations;
    std::vector<Violation> composition_violations;

    bool passed() const {
        return identity_violations.empty() && composition_violations.empty();
    }
};

/// Identity and composition laws over every composable morphism pair.
FunctorialityReport check_functoriality(const PresheafTable& table);

struct NestingReport {
    std::size_t pairs_checked = 0;
    std::vector<std::pair<ViewId, ViewId>> violations;  // (u, v) with F(v) !<= F(u)

    bool passed() const { return violations.empty(); }
};

/// Fibers must be nested along erasure: v refines u => F(v) subset of F(u).
NestingReport check_fiber_nesting(const PresheafTable& table);

struct LitGluingRecord {
    std::size_t covering_index = 0;
    BigInt matching_total = 0;     // matching families over the covering
    BigInt non_gluable = 0;        // admit no glue
    std::uint64_t distinct_induced = 0;
    std::uint64_t gluable_unique = 0;  // admit exactly one glue
    std::uint64_t gluable_multi = 0;   // admit two or more glues
    std::uint64_t target_literal_sections = 0;
    std::uint64_t target_internal_sections = 0;
    bool compat_vacuous = true;
    bool sheaf_bijection = false;  // matching families ~ literal sections
};

struct LitGluingReport {
    bool degenerate_witness = false;  // x = 0: mixed-shape fibers underdetermined
    std::vector<LitGluingRecord> records;
};

/**
 * Gluing census over the per-shape literal consistency sets (the
 * commitment equation is dropped on mixed shapes, so nonces range
 * freely there). For each declared covering, counts matching families
 * and how many admit a unique glue. The commitment covers are expected
 * to fail the bijection massively; this report measures the failure
 * instead of asserting success.
 */
LitGluingReport check_sheaf_literal(const Site& site, Scalar witness);

struct DistGluingReport {
    std::vector<site::CoveringCheck> records;  // one per declared covering

    bool passed() const {
        for (const auto& r : records) {
            if (!r.pass) return false;
        }
        return !records.empty();
    }
    Rational max_distance() const {
        Rational m = 0;
        for (const auto& r : records) m = std::max(m, r.distance);
        return m;
    }
};

/// The normative gluing condition: every declared covering's simulator
/// amalgamation reproduces the real conditional at distance <= epsilon.
DistGluingReport check_sheaf_distributional(const Site& site,
                                            const TranscriptLab& lab,
                                            const Rational& epsilon = 0);

/// Nonce re-randomization: t.(r, e) = (r + t, e), inducing
/// (a, e, z) -> (a * commit(t), e, z + t) on transcripts and views.
struct RerandAction {
    const SigmaProtocol* proto = nullptr;

    Section on_state(const Section& s, Scalar t) const;
    Transcript on_transcript(const Transcript& tr, Scalar t) const;
    ViewValues on_view(const ViewValues& v, Scalar t) const;
};

struct TorsorReport {
    struct FiberRow {
        ViewId u;
        bool closed = false;       // action maps F(U) into itself
        bool free_ = false;        // t.s = s forces t = 0
        bool transitive = false;   // one orbit
        bool orbit_transitive = false;  // transitive within fixed e
    };
    struct BaseChangeRow {
        Scalar t = 0;
        bool object_bijection = false;
        bool morphisms_preserved = false;
        bool coverings_preserved = false;
        bool fibers_bijective = false;
    };
    std::vector<FiberRow> fiber_rows;  // commitment-hiding shapes only
    std::vector<BaseChangeRow> base_change_rows;
    bool composition_law = false;  // sigma_t o sigma_s = sigma_{t+s}
    bool identity_action = false;  // sigma_0 = id

    bool passed() const;
};

/**
 * Two-part torsor check. (A) Fiberwise, over the commitment-hiding
 * shapes: exact freeness/transitivity on fixed-challenge fibers, orbit
 * transitivity where the challenge stays free; fibers that the action
 * moves (response revealed) are reported as not closed and handed to
 * part B. (B) Base change: every sigma_t is a site automorphism
 * (objects, morphisms, declared coverings) inducing fiber bijections,
 * with sigma_t o sigma_s = sigma_{t+s} and sigma_0 = id.
 */
TorsorReport check_torsor(const PresheafTable& table);

struct TrivializationRow {
    std::size_t covering_index = 0;
    ViewId member = 0;
    bool found = false;
    Transcript witness_transcript;
    bool in_public_fiber = false;  // agrees with the member and verifies
};

struct TrivializationReport {
    std::vector<TrivializationRow> rows;

    bool passed() const {
        for (const auto& r : rows) {
            if (!r.found || !r.in_public_fiber) return false;
        }
        return !rows.empty();
    }
};

/// Simulator-produced sections over every member of every covering of a
/// commitment view, validated with public verification only.
TrivializationReport local_triviality_witness(const Site& site,
                                              const TranscriptLab& lab);

struct GlobalSectionReport {
    bool degenerate = false;  // no full views: nothing to extract from
    std::uint64_t candidate_count = 0;
    std::uint64_t section_count = 0;
    struct Row {
        Section root;  // the section's value over the empty view
        Scalar extracted = 0;
        bool matches_witness = false;
    };
    std::vector<Row> rows;

    bool all_extract_witness() const {
        for (const auto& r : rows) {
            if (!r.matches_witness) return false;
        }
        return true;
    }
};

/**
 * Enumerates the compatible global assignments of F. Each one is pinned
 * by its value over the empty view and corresponds to an honest run;
 * for each, two full views sharing a commitment are fed to the
 * extractor and the recovered witness is reported. The security
 * reading: any procedure producing such a section yields the witness.
 */
GlobalSectionReport global_section_analysis(const PresheafTable& table,
                                            const TranscriptLab& lab);

}  // namespace sigmalab::sheaf
