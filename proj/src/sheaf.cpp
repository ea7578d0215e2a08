#include "sigmalab/sheaf.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace sigmalab::sheaf {

namespace {

using group::add_mod;
using group::inv_mod;
using group::mul_mod;
using group::sub_mod;

// Canonical restriction: solve the target view's revealed constraints,
// keeping the source state's free components. Total on the source
// fiber and lands in the target fiber for every consistent target.
Section restrict_state(const Site& site, Scalar x, const Section& s,
                       const ViewValues& target) {
    const Scalar q = site.protocol().params().q;
    Scalar e = target.e ? *target.e : s.e;
    Scalar r;
    if (target.a) {
        r = site.commitment_log(*target.a);
        if (target.z && !target.e) {
            // e must satisfy r + e*x = z; solvable unless x = 0, in
            // which case consistency already forces z = r and e stays.
            if (x % q != 0) {
                e = mul_mod(sub_mod(*target.z, r, q), inv_mod(x % q, q), q);
            }
        }
    } else if (target.z) {
        r = sub_mod(*target.z, mul_mod(e, x, q), q);
    } else {
        r = s.r;
    }
    return Section{r, e};
}

}  // namespace

PresheafTable::PresheafTable(const Site& site, Scalar witness)
    : site_(&site), witness_(witness) {
    const auto& proto = site.protocol();
    const Scalar q = proto.params().q;
    fibers_.resize(site.objects().size());

    for (Scalar r = 0; r < q; ++r) {
        for (Scalar e = 0; e < q; ++e) {
            const Transcript t = proto.honest_transcript(witness_, r, e);
            for (const ViewShape shape : view::all_shapes()) {
                const auto u = site.find(view::project(t, shape));
                if (u) fibers_[*u].push_back(Section{r, e});
            }
        }
    }
    for (auto& fib : fibers_) {
        std::sort(fib.begin(), fib.end());
        fib.erase(std::unique(fib.begin(), fib.end()), fib.end());
    }

    for (ViewId u = 0; u < site.objects().size(); ++u) {
        for (const ViewId v : site.down_set(u)) {
            std::vector<std::uint32_t> table;
            table.reserve(fibers_[u].size());
            for (const Section& s : fibers_[u]) {
                const Section out =
                    restrict_state(site, witness_, s, site.objects()[v]);
                table.push_back(
                    static_cast<std::uint32_t>(section_index(v, out)));
            }
            rho_.emplace(std::pair{u, v}, std::move(table));
            morphism_list_.emplace_back(u, v);
        }
    }
}

std::size_t PresheafTable::section_index(ViewId u, const Section& s) const {
    const auto& fib = fibers_.at(u);
    const auto it = std::lower_bound(fib.begin(), fib.end(), s);
    if (it == fib.end() || *it != s) {
        throw std::logic_error("presheaf: restriction left the fiber");
    }
    return static_cast<std::size_t>(it - fib.begin());
}

const std::vector<std::uint32_t>& PresheafTable::restriction(ViewId u,
                                                             ViewId v) const {
    const auto it = rho_.find({u, v});
    if (it == rho_.end()) {
        throw std::domain_error("presheaf: no restriction table for pair");
    }
    return it->second;
}

void PresheafTable::corrupt_restriction(ViewId u, ViewId v, std::size_t index,
                                        std::uint32_t forced_value) {
    rho_.at({u, v}).at(index) = forced_value;
}

void PresheafTable::clear_fiber(ViewId u) {
    fibers_.at(u).clear();
    for (auto it = rho_.begin(); it != rho_.end();) {
        if (it->first.first == u || it->first.second == u) {
            it = rho_.erase(it);
        } else {
            ++it;
        }
    }
    morphism_list_.erase(
        std::remove_if(morphism_list_.begin(), morphism_list_.end(),
                       [u](const auto& p) {
                           return p.first == u || p.second == u;
                       }),
        morphism_list_.end());
}

PresheafTable build_presheaf(const SigmaProtocol& proto, const Statement& stmt,
                             Scalar witness, const Site& site) {
    if (proto.statement_for(witness) != stmt || site.statement() != stmt) {
        throw std::domain_error(
            "build_presheaf: witness does not match the statement");
    }
    return PresheafTable(site, witness);
}

FunctorialityReport check_functoriality(const PresheafTable& table) {
    FunctorialityReport report;
    const Site& site = table.table_site();
    constexpr std::size_t kMaxListed = 8;

    for (ViewId u = 0; u < site.objects().size(); ++u) {
        if (table.fiber(u).empty()) continue;
        ++report.identity_checks;
        const auto& id_map = table.restriction(u, u);
        for (std::size_t i = 0; i < id_map.size(); ++i) {
            if (id_map[i] != i) {
                report.identity_violations.push_back(u);
                break;
            }
        }
    }

    for (ViewId u = 0; u < site.objects().size(); ++u) {
        for (const ViewId v : site.down_set(u)) {
            if (v == u) continue;
            for (const ViewId w : site.down_set(v)) {
                if (w == v) continue;
                const auto& uv = table.restriction(u, v);
                const auto& vw = table.restriction(v, w);
                const auto& uw = table.restriction(u, w);
                ++report.composition_checks;
                for (std::size_t i = 0; i < uv.size(); ++i) {
                    if (vw.at(uv[i]) != uw.at(i)) {
                        if (report.composition_violations.size() < kMaxListed) {
                            report.composition_violations.push_back(
                                {u, v, w, i});
                        }
                        break;
                    }
                }
            }
        }
    }
    return report;
}

NestingReport check_fiber_nesting(const PresheafTable& table) {
    NestingReport report;
    const Site& site = table.table_site();
    for (ViewId u = 0; u < site.objects().size(); ++u) {
        const auto& outer = table.fiber(u);
        for (const ViewId v : site.down_set(u)) {
            if (v == u) continue;
            ++report.pairs_checked;
            const auto& inner = table.fiber(v);
            if (!std::includes(outer.begin(), outer.end(), inner.begin(),
                               inner.end())) {
                report.violations.emplace_back(u, v);
            }
        }
    }
    return report;
}

namespace {

// A section of the literal (per-shape) consistency set, in internal
// coordinates. Components the shape projects away stay unset.
struct LitSection {
    std::optional<Scalar> r;
    std::optional<Scalar> e;

    auto operator<=>(const LitSection&) const = default;
};

// Literal fibers follow the per-shape consistency sets: the response
// equation z = r + e*x applies wherever e or z is revealed, while the
// commitment pins r only when no response-side data accompanies it.
std::vector<LitSection> literal_fiber(const Site& site, Scalar x,
                                      const ViewValues& v) {
    const Scalar q = site.protocol().params().q;
    const ViewShape shape = v.shape();
    std::vector<LitSection> out;
    if (shape.bits == 0) {
        for (Scalar r = 0; r < q; ++r) {
            for (Scalar e = 0; e < q; ++e) out.push_back({r, e});
        }
    } else if (shape.bits == ViewShape::kA) {
        out.push_back({site.commitment_log(*v.a), std::nullopt});
    } else if (shape.bits == ViewShape::kE) {
        for (Scalar r = 0; r < q; ++r) out.push_back({r, std::nullopt});
    } else if (shape.bits == (ViewShape::kA | ViewShape::kE)) {
        // response equation only; the nonce ranges freely
        for (Scalar r = 0; r < q; ++r) out.push_back({r, std::nullopt});
    } else if (shape.bits == ViewShape::kZ ||
               shape.bits == (ViewShape::kA | ViewShape::kZ)) {
        for (Scalar e = 0; e < q; ++e) {
            out.push_back({sub_mod(*v.z, mul_mod(e, x, q), q), e});
        }
        std::sort(out.begin(), out.end());
    } else if (shape.bits == (ViewShape::kE | ViewShape::kZ)) {
        out.push_back({sub_mod(*v.z, mul_mod(*v.e, x, q), q), std::nullopt});
    } else {
        out.push_back({std::nullopt, std::nullopt});  // accepting point fiber
    }
    return out;
}

// Restriction of a literal section from a covering target to a member.
// Defined for the shape pairs declared coverings use; x = 0 leaves the
// {a} -> {a,z} case underdetermined and is reported as degenerate.
LitSection literal_restrict(const Site& site, Scalar x, const LitSection& s,
                            const ViewValues& target) {
    const Scalar q = site.protocol().params().q;
    const ViewShape shape = target.shape();
    if (shape.bits == (ViewShape::kA | ViewShape::kE | ViewShape::kZ)) {
        return {std::nullopt, std::nullopt};
    }
    if (shape.bits == (ViewShape::kE | ViewShape::kZ)) {
        return {sub_mod(*target.z, mul_mod(*target.e, x, q), q), std::nullopt};
    }
    if (shape.bits == (ViewShape::kA | ViewShape::kE) ||
        shape.bits == ViewShape::kE) {
        return {s.r, std::nullopt};
    }
    if (shape.bits == (ViewShape::kA | ViewShape::kZ) ||
        shape.bits == ViewShape::kZ) {
        if (s.e) {
            return {sub_mod(*target.z, mul_mod(*s.e, x, q), q), s.e};
        }
        if (!s.r || x % q == 0) {
            throw std::domain_error(
                "literal restriction underdetermined (zero witness)");
        }
        const Scalar e =
            mul_mod(sub_mod(*target.z, *s.r, q), inv_mod(x % q, q), q);
        return {*s.r, e};
    }
    if (shape.bits == ViewShape::kA) {
        return {site.commitment_log(*target.a), std::nullopt};
    }
    return s;  // identity
}

}  // namespace

LitGluingReport check_sheaf_literal(const Site& site, Scalar witness) {
    LitGluingReport report;
    const Scalar q = site.protocol().params().q;
    const Scalar x = witness % q;
    report.degenerate_witness = (x == 0);

    for (std::size_t fi = 0; fi < site.coverings().size(); ++fi) {
        const CoveringFamily& family = site.coverings()[fi];
        const ViewValues& target = site.objects()[family.target];

        LitGluingRecord rec;
        rec.covering_index = fi;

        const auto target_fiber = literal_fiber(site, x, target);
        rec.target_literal_sections = target_fiber.size();

        rec.matching_total = 1;
        for (const ViewId m : family.members) {
            rec.matching_total *=
                literal_fiber(site, x, site.objects()[m]).size();
        }

        // Compatibility constraints couple member choices only through
        // common refinements with more than one literal section; verify
        // that none exist so the product above counts matching families.
        for (std::size_t i = 0; i < family.members.size() && rec.compat_vacuous;
             ++i) {
            for (std::size_t j = i + 1; j < family.members.size(); ++j) {
                const auto& di = site.down_set(family.members[i]);
                const auto& dj = site.down_set(family.members[j]);
                std::vector<ViewId> common;
                std::set_intersection(di.begin(), di.end(), dj.begin(),
                                      dj.end(), std::back_inserter(common));
                for (const ViewId w : common) {
                    if (literal_fiber(site, x, site.objects()[w]).size() > 1) {
                        rec.compat_vacuous = false;
                        break;
                    }
                }
                if (!rec.compat_vacuous) break;
            }
        }

        if (x == 0 && target.shape().bits == ViewShape::kA) {
            // glue induction is underdetermined; counts stay unreported
            report.records.push_back(std::move(rec));
            continue;
        }

        std::map<std::vector<LitSection>, std::uint64_t> induced;
        for (const LitSection& s : target_fiber) {
            std::vector<LitSection> family_choice;
            family_choice.reserve(family.members.size());
            for (const ViewId m : family.members) {
                family_choice.push_back(
                    literal_restrict(site, x, s, site.objects()[m]));
            }
            ++induced[std::move(family_choice)];
        }
        rec.distinct_induced = induced.size();
        for (const auto& [_, count] : induced) {
            if (count == 1) {
                ++rec.gluable_unique;
            } else {
                ++rec.gluable_multi;
            }
        }
        rec.non_gluable = rec.matching_total - BigInt(rec.distinct_induced);
        rec.sheaf_bijection =
            rec.matching_total == BigInt(rec.target_literal_sections) &&
            rec.gluable_multi == 0 && rec.non_gluable == 0;
        report.records.push_back(std::move(rec));
    }

    // side-by-side internal fiber sizes
    PresheafTable internal(site, witness);
    for (auto& rec : report.records) {
        rec.target_internal_sections =
            internal.fiber(site.coverings()[rec.covering_index].target).size();
    }
    return report;
}

DistGluingReport check_sheaf_distributional(const Site& site,
                                            const TranscriptLab& lab,
                                            const Rational& epsilon) {
    DistGluingReport report;
    for (std::size_t fi = 0; fi < site.coverings().size(); ++fi) {
        report.records.push_back(
            site::validate_covering_by_simulation(site, fi, lab, epsilon));
    }
    return report;
}

Section RerandAction::on_state(const Section& s, Scalar t) const {
    const Scalar q = proto->params().q;
    return Section{add_mod(s.r, t, q), s.e};
}

Transcript RerandAction::on_transcript(const Transcript& tr, Scalar t) const {
    const auto& params = proto->params();
    const sigma::Commitment shift = proto->commit(t);
    Transcript out = tr;
    for (std::size_t i = 0; i < out.a.size(); ++i) {
        out.a[i] = mul_mod(out.a[i], shift.at(i), params.p);
    }
    out.z = add_mod(out.z, t, params.q);
    return out;
}

ViewValues RerandAction::on_view(const ViewValues& v, Scalar t) const {
    const auto& params = proto->params();
    ViewValues out = v;
    if (out.a) {
        const sigma::Commitment shift = proto->commit(t);
        for (std::size_t i = 0; i < out.a->size(); ++i) {
            (*out.a)[i] = mul_mod((*out.a)[i], shift.at(i), params.p);
        }
    }
    if (out.z) out.z = add_mod(*out.z, t, params.q);
    return out;
}

bool TorsorReport::passed() const {
    for (const auto& row : fiber_rows) {
        if (!row.closed) continue;  // moved fibers are part B's business
        if (!row.free_ || !row.orbit_transitive) return false;
    }
    bool any_exact = false;
    for (const auto& row : fiber_rows) {
        if (row.closed && row.transitive) any_exact = true;
    }
    for (const auto& row : base_change_rows) {
        if (!row.object_bijection || !row.morphisms_preserved ||
            !row.coverings_preserved || !row.fibers_bijective) {
            return false;
        }
    }
    return any_exact && composition_law && identity_action &&
           !base_change_rows.empty();
}

TorsorReport check_torsor(const PresheafTable& table) {
    TorsorReport report;
    const Site& site = table.table_site();
    const SigmaProtocol& proto = site.protocol();
    const Scalar q = proto.params().q;
    const RerandAction action{&proto};
    const std::size_t n = site.objects().size();

    // (A) fiberwise, over the commitment-hiding shapes
    for (const ViewShape shape : view::all_shapes()) {
        if (shape.has_a()) continue;
        for (const ViewId u : site.objects_of_shape(shape)) {
            TorsorReport::FiberRow row;
            row.u = u;
            const auto& fib = table.fiber(u);
            const std::set<Section> fiber_set(fib.begin(), fib.end());

            row.closed = true;
            for (const Section& s : fib) {
                for (Scalar t = 0; t < q && row.closed; ++t) {
                    if (!fiber_set.count(action.on_state(s, t))) {
                        row.closed = false;
                    }
                }
            }
            row.free_ = true;
            for (const Section& s : fib) {
                for (Scalar t = 1; t < q; ++t) {
                    if (action.on_state(s, t) == s) row.free_ = false;
                }
            }
            row.transitive = true;
            row.orbit_transitive = true;
            for (const Section& s1 : fib) {
                for (const Section& s2 : fib) {
                    bool reachable = false;
                    for (Scalar t = 0; t < q; ++t) {
                        if (action.on_state(s1, t) == s2) reachable = true;
                    }
                    if (!reachable) {
                        row.transitive = false;
                        if (s1.e == s2.e) row.orbit_transitive = false;
                    }
                }
            }
            report.fiber_rows.push_back(row);
        }
    }

    // (B) base change: each sigma_t as a site automorphism
    std::vector<std::vector<ViewId>> perm(q, std::vector<ViewId>(n));
    std::set<std::tuple<ViewId, std::vector<ViewId>, site::FamilyKind>>
        declared;
    for (const auto& f : site.coverings()) {
        declared.emplace(f.target, f.members, f.kind);
    }
    bool permutations_total = true;
    for (Scalar t = 0; t < q; ++t) {
        for (ViewId u = 0; u < n; ++u) {
            const auto image = site.find(action.on_view(site.objects()[u], t));
            if (!image) {
                permutations_total = false;
                break;
            }
            perm[t][u] = *image;
        }
        if (!permutations_total) break;

        TorsorReport::BaseChangeRow row;
        row.t = t;

        std::vector<bool> hit(n, false);
        row.object_bijection = true;
        for (const ViewId im : perm[t]) {
            if (hit[im]) row.object_bijection = false;
            hit[im] = true;
        }

        row.morphisms_preserved = true;
        for (ViewId u = 0; u < n && row.morphisms_preserved; ++u) {
            std::vector<ViewId> mapped;
            for (const ViewId v : site.down_set(u)) mapped.push_back(perm[t][v]);
            std::sort(mapped.begin(), mapped.end());
            if (mapped != site.down_set(perm[t][u])) {
                row.morphisms_preserved = false;
            }
        }

        row.coverings_preserved = true;
        for (const auto& f : site.coverings()) {
            std::vector<ViewId> members;
            for (const ViewId m : f.members) members.push_back(perm[t][m]);
            std::sort(members.begin(), members.end());
            if (!declared.count({perm[t][f.target], members, f.kind})) {
                row.coverings_preserved = false;
                break;
            }
        }

        row.fibers_bijective = true;
        for (ViewId u = 0; u < n && row.fibers_bijective; ++u) {
            std::vector<Section> mapped;
            for (const Section& s : table.fiber(u)) {
                mapped.push_back(action.on_state(s, t));
            }
            std::sort(mapped.begin(), mapped.end());
            if (mapped != table.fiber(perm[t][u])) row.fibers_bijective = false;
        }
        report.base_change_rows.push_back(row);
    }

    if (permutations_total) {
        report.identity_action = true;
        for (ViewId u = 0; u < n; ++u) {
            if (perm[0][u] != u) report.identity_action = false;
        }
        report.composition_law = true;
        for (Scalar s = 0; s < q && report.composition_law; ++s) {
            for (Scalar t = 0; t < q && report.composition_law; ++t) {
                const Scalar st = add_mod(s, t, q);
                for (ViewId u = 0; u < n; ++u) {
                    if (perm[t][perm[s][u]] != perm[st][u]) {
                        report.composition_law = false;
                        break;
                    }
                }
            }
        }
    }
    return report;
}

TrivializationReport local_triviality_witness(const Site& site,
                                              const TranscriptLab& lab) {
    TrivializationReport report;
    const Scalar q = site.protocol().params().q;
    constexpr ViewShape kShapeA{ViewShape::kA};

    for (std::size_t fi = 0; fi < site.coverings().size(); ++fi) {
        const CoveringFamily& family = site.coverings()[fi];
        if (site.objects()[family.target].shape() != kShapeA) continue;

        for (const ViewId mid : family.members) {
            const ViewValues& member = site.objects()[mid];
            TrivializationRow row;
            row.covering_index = fi;
            row.member = mid;

            // scan simulator inputs consistent with the member's
            // revealed challenge/response; first hit wins
            for (Scalar e = member.e.value_or(0);
                 e < (member.e ? *member.e + 1 : q) && !row.found; ++e) {
                for (Scalar z = member.z.value_or(0);
                     z < (member.z ? *member.z + 1 : q) && !row.found; ++z) {
                    const Transcript t = lab.simulate(lab.statement, e, z);
                    if (view::agrees(t, member)) {
                        row.found = true;
                        row.witness_transcript = t;
                    }
                }
            }
            if (row.found) {
                row.in_public_fiber =
                    view::agrees(row.witness_transcript, member) &&
                    site.protocol().verify(lab.statement,
                                           row.witness_transcript);
            }
            report.rows.push_back(std::move(row));
        }
    }
    return report;
}

GlobalSectionReport global_section_analysis(const PresheafTable& table,
                                            const TranscriptLab& lab) {
    GlobalSectionReport report;
    const Site& site = table.table_site();
    const std::size_t n = site.objects().size();

    const auto empty_id = site.find(ViewValues{});
    constexpr ViewShape kShapeFull{ViewShape::kA | ViewShape::kE |
                                   ViewShape::kZ};
    const auto full_views = site.objects_of_shape(kShapeFull);
    if (!empty_id || full_views.empty()) {
        report.degenerate = true;
        if (empty_id) {
            report.candidate_count = table.fiber(*empty_id).size();
            report.section_count = report.candidate_count;
        }
        return report;
    }

    const auto& root_fiber = table.fiber(*empty_id);
    report.candidate_count = root_fiber.size();

    // a commitment with at least two accepting full views, for extraction
    std::optional<std::pair<ViewId, ViewId>> extraction_pair;
    for (const ViewId f1 : full_views) {
        for (const ViewId f2 : full_views) {
            if (f1 != f2 && site.objects()[f1].a == site.objects()[f2].a &&
                site.objects()[f1].e != site.objects()[f2].e) {
                extraction_pair = {f1, f2};
                break;
            }
        }
        if (extraction_pair) break;
    }

    for (std::size_t ri = 0; ri < root_fiber.size(); ++ri) {
        // propagate the root value to every object, then check that the
        // assignment commutes with every restriction
        std::vector<std::uint32_t> assignment(n);
        bool valid = true;
        for (ViewId u = 0; u < n && valid; ++u) {
            if (table.fiber(u).empty()) {
                valid = false;
                break;
            }
            try {
                assignment[u] = table.restriction(*empty_id, u).at(ri);
            } catch (const std::exception&) {
                valid = false;
            }
        }
        for (const auto& [u, v] : table.morphisms()) {
            if (!valid) break;
            if (table.restriction(u, v).at(assignment[u]) != assignment[v]) {
                valid = false;
            }
        }
        if (!valid) continue;

        ++report.section_count;
        GlobalSectionReport::Row row;
        row.root = root_fiber[ri];
        if (extraction_pair) {
            const auto to_transcript = [&](ViewId f) {
                const ViewValues& v = site.objects()[f];
                return Transcript{*v.a, *v.e, *v.z};
            };
            const sigma::Witness w = site.protocol().extract(
                lab.statement, to_transcript(extraction_pair->first),
                to_transcript(extraction_pair->second));
            row.extracted = w.x;
            row.matches_witness = (w.x == lab.witness);
        }
        report.rows.push_back(row);
    }
    return report;
}

}  // namespace sigmalab::sheaf
