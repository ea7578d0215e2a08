// The finite site of attacker views for one protocol instance.
//
// Objects are the consistent views: partial transcripts that extend to
// at least one accepting transcript of the statement. Candidate views
// that admit no accepting extension are kept aside in a quarantine list
// (a fiber-less object would make the transcript assignment ill-typed).
// Morphisms are erasures, so the category is thin: between two objects
// there is at most one arrow, and "V -> U exists" is exactly
// view::refines(V, U).
//
// Covering families are declared explicitly and checked against the
// Grothendieck topology axioms on the generated system of sieves.

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sigmalab/dist.hpp"
#include "sigmalab/view.hpp"

namespace sigmalab::site {

using dist::Rational;
using dist::TranscriptLab;
using sigma::Scalar;
using sigma::SigmaProtocol;
using sigma::Statement;
using view::ViewShape;
using view::ViewValues;

using ViewId = std::size_t;

/// Site construction enumerates candidate views per shape (O(q^3) for
/// the full shape), so it runs under a tighter ceiling than the group
/// arithmetic itself.
inline constexpr std::uint64_t kMaxSiteOrder = 64;

enum class FamilyKind {
    identity,              // {U -> U}
    commitment_cover,      // {(a,e) -> a : all e} u {(a,z) -> a : all consistent z}
    challenge_refinement,  // {(a,e,z) -> (a,e) : accepting z}
    response_refinement,   // {(a,e,z) -> (a,z) : accepting e}
    full_cover,            // {(a,e,z) -> a : all accepting full views}
};

std::string family_kind_name(FamilyKind kind);

/// A declared covering family: erasure morphisms members[i] -> target.
struct CoveringFamily {
    ViewId target = 0;
    std::vector<ViewId> members;  // sorted, deduplicated
    FamilyKind kind = FamilyKind::identity;
};

/// An erasure morphism between concrete views.
struct Morphism {
    ViewValues source;
    ViewValues target;
};

/// The unique morphism forgetting the components outside target_shape.
Morphism erasure(const ViewValues& v, ViewShape target_shape);

class Site {
  public:
    /// Enumerates the consistent views of the given shapes (all eight by
    /// default) plus the quarantine list.
    Site(const SigmaProtocol& proto, Statement stmt,
         std::vector<ViewShape> shapes = view::all_shapes());

    const SigmaProtocol& protocol() const { return *proto_; }
    const Statement& statement() const { return stmt_; }

    const std::vector<ViewValues>& objects() const { return objects_; }
    const std::vector<ViewValues>& quarantined() const { return quarantined_; }

    std::optional<ViewId> find(const ViewValues& v) const;
    ViewId require(const ViewValues& v) const;

    /// Morphism test: objects_[v] -> objects_[u] exists.
    bool refines(ViewId v, ViewId u) const;

    /// All W with a morphism W -> u, including u itself. Sorted.
    const std::vector<ViewId>& down_set(ViewId u) const;

    const std::vector<CoveringFamily>& coverings() const { return coverings_; }
    const std::vector<std::size_t>& coverings_of(ViewId u) const;

    /// Objects of one shape, in canonical order.
    std::vector<ViewId> objects_of_shape(ViewShape shape) const;

    /// Nonce t with commit(t) == c, from the precomputed commitment map.
    Scalar commitment_log(const sigma::Commitment& c) const;

    void add_family(CoveringFamily family);

    /// Copy of this site with one covering family removed (declaration
    /// only; objects are untouched). For fault-injection experiments.
    Site with_family_removed(std::size_t covering_index) const;

  private:
    const SigmaProtocol* proto_;
    Statement stmt_;
    std::vector<ViewValues> objects_;
    std::vector<ViewValues> quarantined_;
    std::vector<std::vector<ViewId>> down_sets_;
    std::vector<CoveringFamily> coverings_;
    std::vector<std::vector<std::size_t>> coverings_by_object_;
    std::vector<std::pair<sigma::Commitment, Scalar>> commit_log_;

    void index_families();
    friend Site build_site(const SigmaProtocol&, const Statement&);
};

/// Enumerates every consistent view of every shape (and the quarantine
/// list) for the statement. ScaleError above kMaxSiteOrder.
Site build_site(const SigmaProtocol& proto, const Statement& stmt);

/// Sub-site over a subset of shapes, e.g. the single empty view.
Site build_site(const SigmaProtocol& proto, const Statement& stmt,
                std::vector<ViewShape> shapes);

/**
 * Declares the standard covering system:
 *   (i)   the identity family on every object;
 *   (ii)  for each commitment view a, the family
 *         {(a,e) -> a : all e} u {(a,z) -> a : all consistent z};
 *   (iii) for each (a,e) view, its accepting-z refinement
 *         {(a,e,z*) -> (a,e)};
 * plus the families base change and member refinement force on the
 * declaration: the mirrored refinements {(a,e*,z) -> (a,z)} and the
 * full-transcript covers {(a,e,z) -> a}. The axiom checker passes on
 * exactly this closure.
 */
void declare_standard_coverings(Site& site);

struct StabilityViolation {
    std::size_t covering_index;
    ViewId along;  // object whose morphism into the target breaks stability
};

struct TransitivityViolation {
    std::size_t covering_index;
};

struct TopologyReport {
    std::size_t objects_checked = 0;
    std::size_t families_checked = 0;
    std::vector<ViewId> identity_failures;  // objects with no maximal cover
    std::vector<StabilityViolation> stability_violations;
    std::vector<TransitivityViolation> transitivity_violations;

    bool passed() const {
        return identity_failures.empty() && stability_violations.empty() &&
               transitivity_violations.empty();
    }
};

/**
 * Checks the three topology axioms on the generated system of covering
 * sieves (a sieve covers U when it contains the sieve generated by some
 * declared family over U):
 *   (1) identity: every object carries its maximal sieve;
 *   (2) stability: the pullback of a declared family's sieve along any
 *       morphism contains a declared family of the source;
 *   (3) transitivity: refining every member of a declared family by its
 *       smallest declared cover yields a sieve that again covers.
 */
TopologyReport check_topology_axioms(const Site& site);

/**
 * True when removing the family leaves the generated topology
 * unchanged: some other declared family over the same object has a
 * sieve contained in the removed one, so every sieve it certified is
 * still certified.
 */
bool topology_neutral_without(const Site& site, std::size_t covering_index);

struct CoveringCheck {
    std::size_t covering_index = 0;
    Rational distance = 0;
    bool support_covered = false;  // every real outcome refines a member
    bool simulator_has_data = false;
    bool pass = false;
};

/**
 * Desk-scale covering validation: the family covers its target when
 * the member-wise amalgamation of simulator-generated local data
 * reproduces the real conditional distribution on the target at
 * statistical distance <= epsilon (default 0, exact).
 */
CoveringCheck validate_covering_by_simulation(const Site& site,
                                              std::size_t covering_index,
                                              const TranscriptLab& lab,
                                              const Rational& epsilon = 0);

/// Objects per shape and families per object, stable ordering.
std::string dump_site(const Site& site);

}  // namespace sigmalab::site
