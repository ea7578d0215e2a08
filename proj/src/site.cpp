#include "sigmalab/site.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace sigmalab::site {

namespace {

using sigma::Commitment;
using sigma::Transcript;

std::vector<ViewId> sorted_unique(std::vector<ViewId> ids) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
}

}  // namespace

std::string family_kind_name(FamilyKind kind) {
    switch (kind) {
        case FamilyKind::identity: return "identity";
        case FamilyKind::commitment_cover: return "commitment_cover";
        case FamilyKind::challenge_refinement: return "challenge_refinement";
        case FamilyKind::response_refinement: return "response_refinement";
        case FamilyKind::full_cover: return "full_cover";
    }
    return "unknown";
}

Morphism erasure(const ViewValues& v, ViewShape target_shape) {
    return Morphism{v, view::erase_to(v, target_shape)};
}

Site::Site(const SigmaProtocol& proto, Statement stmt,
           std::vector<ViewShape> shapes)
    : proto_(&proto), stmt_(std::move(stmt)) {
    const auto& params = proto.params();
    group::require_valid(params);
    if (params.q > kMaxSiteOrder) {
        throw group::ScaleError(
            "site construction enumerates O(q^3) candidate views; q must "
            "not exceed " +
            std::to_string(kMaxSiteOrder));
    }
    const Scalar q = params.q;

    // Commitment values range over the image of commit(), i.e. <g> for
    // Schnorr and the diagonal pairs (g^t, h^t) for Chaum-Pedersen.
    std::vector<Commitment> commitment_space;
    for (Scalar t = 0; t < q; ++t) {
        Commitment c = proto.commit(t);
        commit_log_.emplace_back(c, t);
        commitment_space.push_back(std::move(c));
    }
    std::sort(commit_log_.begin(), commit_log_.end());

    // The accepting transcripts over that commitment space are exactly
    // the simulator image; no witness is needed to enumerate them.
    std::set<Transcript> accepting;
    for (Scalar e = 0; e < q; ++e) {
        for (Scalar z = 0; z < q; ++z) {
            accepting.insert(proto.simulate(stmt_, e, z));
        }
    }

    for (const ViewShape shape : shapes) {
        std::set<ViewValues> consistent;
        for (const Transcript& t : accepting) {
            consistent.insert(view::project(t, shape));
        }
        // Candidate views are products of the per-component domains;
        // the inconsistent ones are quarantined, not objects.
        const std::size_t n_a = shape.has_a() ? commitment_space.size() : 1;
        const std::size_t n_e = shape.has_e() ? q : 1;
        const std::size_t n_z = shape.has_z() ? q : 1;
        for (std::size_t ia = 0; ia < n_a; ++ia) {
            for (std::size_t ie = 0; ie < n_e; ++ie) {
                for (std::size_t iz = 0; iz < n_z; ++iz) {
                    ViewValues v;
                    if (shape.has_a()) v.a = commitment_space[ia];
                    if (shape.has_e()) v.e = static_cast<Scalar>(ie);
                    if (shape.has_z()) v.z = static_cast<Scalar>(iz);
                    if (consistent.count(v)) {
                        objects_.push_back(std::move(v));
                    } else {
                        quarantined_.push_back(std::move(v));
                    }
                }
            }
        }
    }
    std::sort(objects_.begin(), objects_.end());
    std::sort(quarantined_.begin(), quarantined_.end());

    down_sets_.resize(objects_.size());
    for (ViewId u = 0; u < objects_.size(); ++u) {
        for (ViewId v = 0; v < objects_.size(); ++v) {
            if (view::refines(objects_[v], objects_[u])) {
                down_sets_[u].push_back(v);
            }
        }
    }
    coverings_by_object_.resize(objects_.size());
}

std::optional<ViewId> Site::find(const ViewValues& v) const {
    const auto it = std::lower_bound(objects_.begin(), objects_.end(), v);
    if (it != objects_.end() && *it == v) {
        return static_cast<ViewId>(it - objects_.begin());
    }
    return std::nullopt;
}

ViewId Site::require(const ViewValues& v) const {
    const auto id = find(v);
    if (!id) {
        throw std::domain_error("site: view " + v.label() +
                                " is not an object");
    }
    return *id;
}

bool Site::refines(ViewId v, ViewId u) const {
    return view::refines(objects_.at(v), objects_.at(u));
}

const std::vector<ViewId>& Site::down_set(ViewId u) const {
    return down_sets_.at(u);
}

const std::vector<std::size_t>& Site::coverings_of(ViewId u) const {
    return coverings_by_object_.at(u);
}

std::vector<ViewId> Site::objects_of_shape(ViewShape shape) const {
    std::vector<ViewId> out;
    for (ViewId i = 0; i < objects_.size(); ++i) {
        if (objects_[i].shape() == shape) out.push_back(i);
    }
    return out;
}

Scalar Site::commitment_log(const Commitment& c) const {
    const auto it = std::lower_bound(
        commit_log_.begin(), commit_log_.end(), c,
        [](const auto& entry, const Commitment& key) {
            return entry.first < key;
        });
    if (it == commit_log_.end() || it->first != c) {
        throw std::domain_error("site: commitment outside the commit image");
    }
    return it->second;
}

void Site::add_family(CoveringFamily family) {
    family.members = sorted_unique(std::move(family.members));
    for (const ViewId m : family.members) {
        if (!refines(m, family.target)) {
            throw std::invalid_argument(
                "covering family: member does not refine the target");
        }
    }
    coverings_by_object_.at(family.target).push_back(coverings_.size());
    coverings_.push_back(std::move(family));
}

Site Site::with_family_removed(std::size_t covering_index) const {
    Site copy = *this;
    copy.coverings_.erase(copy.coverings_.begin() +
                          static_cast<std::ptrdiff_t>(covering_index));
    copy.index_families();
    return copy;
}

void Site::index_families() {
    coverings_by_object_.assign(objects_.size(), {});
    for (std::size_t i = 0; i < coverings_.size(); ++i) {
        coverings_by_object_[coverings_[i].target].push_back(i);
    }
}

Site build_site(const SigmaProtocol& proto, const Statement& stmt) {
    return Site(proto, stmt);
}

Site build_site(const SigmaProtocol& proto, const Statement& stmt,
                std::vector<ViewShape> shapes) {
    return Site(proto, stmt, std::move(shapes));
}

void declare_standard_coverings(Site& site) {
    const auto& objects = site.objects();

    // (i) the identity family on every object
    for (ViewId u = 0; u < objects.size(); ++u) {
        site.add_family(CoveringFamily{u, {u}, FamilyKind::identity});
    }

    const auto extensions_with = [&](ViewId u, ViewShape shape) {
        std::vector<ViewId> out;
        for (const ViewId w : site.down_set(u)) {
            if (objects[w].shape() == shape) out.push_back(w);
        }
        return out;
    };

    constexpr ViewShape kShapeA{ViewShape::kA};
    constexpr ViewShape kShapeAE{ViewShape::kA | ViewShape::kE};
    constexpr ViewShape kShapeAZ{ViewShape::kA | ViewShape::kZ};
    constexpr ViewShape kShapeFull{ViewShape::kA | ViewShape::kE |
                                   ViewShape::kZ};

    for (ViewId u = 0; u < objects.size(); ++u) {
        const ViewShape shape = objects[u].shape();
        if (shape == kShapeA) {
            // (ii) the commitment cover {(a,e) -> a} u {(a,z) -> a}
            CoveringFamily cover{u, {}, FamilyKind::commitment_cover};
            for (const ViewId w : extensions_with(u, kShapeAE)) {
                cover.members.push_back(w);
            }
            for (const ViewId w : extensions_with(u, kShapeAZ)) {
                cover.members.push_back(w);
            }
            site.add_family(std::move(cover));
            // full-transcript cover, the composite the refinements force
            site.add_family(CoveringFamily{u, extensions_with(u, kShapeFull),
                                           FamilyKind::full_cover});
        } else if (shape == kShapeAE) {
            // (iii) the accepting-z refinement
            site.add_family(CoveringFamily{u, extensions_with(u, kShapeFull),
                                           FamilyKind::challenge_refinement});
        } else if (shape == kShapeAZ) {
            // mirrored refinement forced by base change
            site.add_family(CoveringFamily{u, extensions_with(u, kShapeFull),
                                           FamilyKind::response_refinement});
        }
    }
}

namespace {

// A sieve over U, represented as the sorted set of objects whose unique
// morphism into U factors through the family.
std::vector<ViewId> sieve_of(const Site& site, const CoveringFamily& f) {
    std::vector<ViewId> out;
    for (const ViewId m : f.members) {
        const auto& down = site.down_set(m);
        out.insert(out.end(), down.begin(), down.end());
    }
    return sorted_unique(std::move(out));
}

bool contains_all(const std::vector<ViewId>& big,
                  const std::vector<ViewId>& small) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

std::vector<ViewId> intersect(const std::vector<ViewId>& s1,
                              const std::vector<ViewId>& s2) {
    std::vector<ViewId> out;
    std::set_intersection(s1.begin(), s1.end(), s2.begin(), s2.end(),
                          std::back_inserter(out));
    return out;
}

bool member_of(const std::vector<ViewId>& sorted, ViewId v) {
    return std::binary_search(sorted.begin(), sorted.end(), v);
}

}  // namespace

TopologyReport check_topology_axioms(const Site& site) {
    TopologyReport report;
    const auto& families = site.coverings();
    report.objects_checked = site.objects().size();
    report.families_checked = families.size();

    std::vector<std::vector<ViewId>> sieves;
    sieves.reserve(families.size());
    for (const auto& f : families) sieves.push_back(sieve_of(site, f));

    // (1) identity: the maximal sieve over U must be generated, i.e.
    // some declared family's sieve contains id_U.
    for (ViewId u = 0; u < site.objects().size(); ++u) {
        bool ok = false;
        for (const std::size_t fi : site.coverings_of(u)) {
            if (member_of(sieves[fi], u)) {
                ok = true;
                break;
            }
        }
        if (!ok) report.identity_failures.push_back(u);
    }

    const auto covered_by_declared = [&](ViewId u,
                                         const std::vector<ViewId>& sieve) {
        for (const std::size_t fi : site.coverings_of(u)) {
            if (contains_all(sieve, sieves[fi])) return true;
        }
        return false;
    };

    // (2) stability: pull each declared sieve back along every morphism
    // V -> U. When the morphism itself lies in the sieve the pullback is
    // maximal; otherwise the pullback must still contain a declared
    // sieve over V.
    for (std::size_t fi = 0; fi < families.size(); ++fi) {
        const ViewId u = families[fi].target;
        for (const ViewId v : site.down_set(u)) {
            if (v == u) continue;
            if (member_of(sieves[fi], v)) continue;  // maximal pullback
            const std::vector<ViewId> pullback =
                intersect(site.down_set(v), sieves[fi]);
            if (pullback.empty() || !covered_by_declared(v, pullback)) {
                report.stability_violations.push_back({fi, v});
            }
        }
    }

    // (3) transitivity: refine each member by its smallest declared
    // covers; every resulting composite sieve must cover the target.
    // Composite sieves grow monotonically in the refinements, so the
    // minimal choices decide the axiom for all choices.
    for (std::size_t fi = 0; fi < families.size(); ++fi) {
        const ViewId u = families[fi].target;
        std::vector<std::vector<std::size_t>> member_minimals;
        bool refinable = false;
        for (const ViewId m : families[fi].members) {
            std::vector<std::size_t> minimals;
            for (const std::size_t gi : site.coverings_of(m)) {
                bool minimal = true;
                for (const std::size_t hi : site.coverings_of(m)) {
                    if (hi != gi && contains_all(sieves[gi], sieves[hi]) &&
                        sieves[hi] != sieves[gi]) {
                        minimal = false;
                        break;
                    }
                }
                if (minimal) minimals.push_back(gi);
            }
            if (minimals.empty()) {
                // no declared cover at all; treated as the maximal sieve
                minimals.push_back(SIZE_MAX);
            }
            if (minimals.size() > 1 || (minimals[0] != SIZE_MAX &&
                                        families[minimals[0]].kind !=
                                            FamilyKind::identity)) {
                refinable = true;
            }
            member_minimals.push_back(std::move(minimals));
        }
        if (!refinable) continue;  // composite equals the family's own sieve

        // Enumerate one choice per member. Each member usually has a
        // unique minimal cover; cap the combination count defensively.
        std::size_t combos = 1;
        for (const auto& ms : member_minimals) {
            combos *= ms.size();
            if (combos > 1024) break;
        }
        if (combos > 1024) combos = 1;  // fall back to first choices

        for (std::size_t pick = 0; pick < combos; ++pick) {
            std::vector<ViewId> composite;
            std::size_t rem = pick;
            for (std::size_t mi = 0; mi < families[fi].members.size(); ++mi) {
                const auto& ms = member_minimals[mi];
                const std::size_t gi = ms[rem % ms.size()];
                rem /= ms.size();
                const std::vector<ViewId>& part =
                    gi == SIZE_MAX ? site.down_set(families[fi].members[mi])
                                   : sieves[gi];
                composite.insert(composite.end(), part.begin(), part.end());
            }
            composite = sorted_unique(std::move(composite));
            if (composite == sieves[fi]) continue;
            if (!covered_by_declared(u, composite)) {
                report.transitivity_violations.push_back({fi});
                break;
            }
        }
    }
    return report;
}

bool topology_neutral_without(const Site& site, std::size_t covering_index) {
    const auto& removed = site.coverings().at(covering_index);
    const std::vector<ViewId> removed_sieve = sieve_of(site, removed);
    for (const std::size_t fi : site.coverings_of(removed.target)) {
        if (fi == covering_index) continue;
        if (contains_all(removed_sieve, sieve_of(site, site.coverings()[fi]))) {
            return true;
        }
    }
    return false;
}

CoveringCheck validate_covering_by_simulation(const Site& site,
                                              std::size_t covering_index,
                                              const TranscriptLab& lab,
                                              const Rational& epsilon) {
    const CoveringFamily& family = site.coverings().at(covering_index);
    const ViewValues& target = site.objects().at(family.target);

    CoveringCheck check;
    check.covering_index = covering_index;

    const dist::ExactDistribution real_cond =
        dist::condition_on_view(lab.real, target);

    check.support_covered = true;
    for (const auto& [t, m] : real_cond.mass) {
        bool hit = false;
        for (const ViewId mid : family.members) {
            if (view::agrees(t, site.objects()[mid])) {
                hit = true;
                break;
            }
        }
        if (!hit) {
            check.support_covered = false;
            break;
        }
    }

    // Amalgamation: simulator-generated local data per member, restricted
    // to the target and recombined with the members' simulated weights.
    Rational weight_sum = 0;
    std::map<sigma::Transcript, Rational> amalgam;
    for (const ViewId mid : family.members) {
        const Rational w = dist::view_mass(lab.simulated, site.objects()[mid]);
        if (w == 0) continue;
        weight_sum += w;
        const dist::ExactDistribution local =
            dist::condition_on_view(lab.simulated, site.objects()[mid]);
        for (const auto& [t, m] : local.mass) amalgam[t] += w * m;
    }
    check.simulator_has_data = weight_sum > 0;
    if (check.simulator_has_data) {
        dist::ExactDistribution glued;
        for (auto& [t, m] : amalgam) glued.mass[t] = m / weight_sum;
        check.distance = dist::statistical_distance(real_cond, glued);
    } else {
        check.distance = 1;
    }
    check.pass = check.support_covered && check.simulator_has_data &&
                 check.distance <= epsilon;
    return check;
}

std::string dump_site(const Site& site) {
    std::string out;
    out += "site protocol=" + site.protocol().name() + "\n";
    for (const ViewShape shape : view::all_shapes()) {
        const auto ids = site.objects_of_shape(shape);
        out += "shape " + shape.label() +
               " objects=" + std::to_string(ids.size()) + "\n";
        for (const ViewId id : ids) {
            out += "  " + site.objects()[id].label() + "\n";
        }
    }
    out += "quarantined=" + std::to_string(site.quarantined().size()) + "\n";
    for (const auto& v : site.quarantined()) {
        out += "  " + v.label() + "\n";
    }
    out += "coverings=" + std::to_string(site.coverings().size()) + "\n";
    for (const auto& f : site.coverings()) {
        out += "  " + family_kind_name(f.kind) + " target=" +
               site.objects()[f.target].label() +
               " members=" + std::to_string(f.members.size()) + " {";
        for (std::size_t i = 0; i < f.members.size(); ++i) {
            if (i) out += " ";
            out += site.objects()[f.members[i]].label();
        }
        out += "}\n";
    }
    return out;
}

}  // namespace sigmalab::site
