#include "sigmalab/suite.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace sigmalab::suite {

namespace {

using json = nlohmann::ordered_json;
using sigma::SigmaProtocol;
using sigma::Transcript;
using view::ViewShape;
using view::ViewValues;

std::string dec(std::uint64_t v) { return std::to_string(v); }
std::string dec(const dist::BigInt& v) { return v.str(); }
std::string rat(const Rational& r) { return dist::to_string(r); }

}  // namespace

const std::vector<CheckId>& all_checks() {
    static const std::vector<CheckId> order = {
        CheckId::group_validation, CheckId::completeness,
        CheckId::tamper,           CheckId::hvzk,
        CheckId::topology,         CheckId::coverings,
        CheckId::presheaf,         CheckId::literal,
        CheckId::distributional,   CheckId::torsor,
        CheckId::local_triviality, CheckId::global_sections,
    };
    return order;
}

std::string check_name(CheckId id) {
    switch (id) {
        case CheckId::group_validation: return "group";
        case CheckId::completeness: return "completeness";
        case CheckId::tamper: return "tamper";
        case CheckId::hvzk: return "hvzk";
        case CheckId::topology: return "topology";
        case CheckId::coverings: return "coverings";
        case CheckId::presheaf: return "presheaf";
        case CheckId::literal: return "literal";
        case CheckId::distributional: return "distributional";
        case CheckId::torsor: return "torsor";
        case CheckId::local_triviality: return "local_triviality";
        case CheckId::global_sections: return "global_sections";
    }
    return "unknown";
}

std::optional<CheckId> check_by_name(const std::string& name) {
    for (const CheckId id : all_checks()) {
        if (check_name(id) == name) return id;
    }
    return std::nullopt;
}

std::uint64_t SeededSampler::next() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

std::uint64_t SeededSampler::below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("sampler: empty range");
    const std::uint64_t bound = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t draw;
    do {
        draw = next();
    } while (draw >= bound);
    return draw % n;
}

namespace {

struct IntField {
    std::optional<std::uint64_t> value;
    std::optional<std::string> error;
};

IntField read_uint(const json& j) {
    if (j.is_number_unsigned()) return {j.get<std::uint64_t>(), std::nullopt};
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
            return {std::nullopt, "expected a decimal integer"};
        }
        try {
            return {std::stoull(s), std::nullopt};
        } catch (const std::exception&) {
            return {std::nullopt, "integer out of range"};
        }
    }
    return {std::nullopt, "expected an integer or decimal string"};
}

}  // namespace

ParseResult parse_config(const std::string& text) {
    std::vector<ConfigError> errors;
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& ex) {
        errors.push_back({"", std::string("malformed JSON: ") + ex.what()});
        return errors;
    }
    if (!j.is_object()) {
        errors.push_back({"", "config must be a JSON object"});
        return errors;
    }

    static const std::vector<std::string> known = {
        "protocol", "p",        "q",     "g",     "h",
        "x",        "seed",     "epsilon", "checks", "fault_simulator"};
    for (const auto& [key, _] : j.items()) {
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            errors.push_back({key, "unknown key"});
        }
    }

    SuiteConfig config;
    if (j.contains("protocol")) {
        if (!j["protocol"].is_string()) {
            errors.push_back({"protocol", "expected a string"});
        } else {
            config.protocol = j["protocol"].get<std::string>();
        }
    }
    if (config.protocol != "schnorr" && config.protocol != "chaum_pedersen") {
        errors.push_back({"protocol", "unknown protocol: " + config.protocol});
    }

    const auto require_int = [&](const char* key,
                                 std::uint64_t& out) {
        if (!j.contains(key)) {
            errors.push_back({key, "missing required key"});
            return;
        }
        const IntField f = read_uint(j[key]);
        if (f.error) {
            errors.push_back({key, *f.error});
        } else {
            out = *f.value;
        }
    };
    require_int("p", config.params.p);
    require_int("q", config.params.q);
    require_int("g", config.params.g);

    if (j.contains("h")) {
        if (config.protocol != "chaum_pedersen") {
            errors.push_back({"h", "h applies to chaum_pedersen only"});
        } else {
            const IntField f = read_uint(j["h"]);
            if (f.error) {
                errors.push_back({"h", *f.error});
            } else {
                config.h = *f.value;
            }
        }
    }

    if (j.contains("x")) {
        if (j["x"].is_string() && j["x"].get<std::string>() == "random") {
            config.random_witness = true;
        } else {
            const IntField f = read_uint(j["x"]);
            if (f.error) {
                errors.push_back({"x", *f.error + " (or the token \"random\")"});
            } else {
                config.witness = *f.value;
            }
        }
    } else {
        errors.push_back({"x", "missing required key"});
    }

    if (j.contains("seed")) {
        const IntField f = read_uint(j["seed"]);
        if (f.error) {
            errors.push_back({"seed", *f.error});
        } else {
            config.seed = *f.value;
        }
    }
    if (config.random_witness && !config.seed) {
        errors.push_back({"seed", "seed required when x is \"random\""});
    }

    if (j.contains("epsilon")) {
        if (!j["epsilon"].is_string()) {
            errors.push_back({"epsilon", "expected a \"num/den\" string"});
        } else {
            try {
                config.epsilon =
                    dist::parse_rational(j["epsilon"].get<std::string>());
                if (config.epsilon < 0) {
                    errors.push_back({"epsilon", "must be nonnegative"});
                }
            } catch (const std::exception& ex) {
                errors.push_back({"epsilon", ex.what()});
            }
        }
    }

    if (j.contains("checks")) {
        if (!j["checks"].is_array()) {
            errors.push_back({"checks", "expected an array of check names"});
        } else {
            std::vector<CheckId> selected;
            for (const auto& entry : j["checks"]) {
                if (!entry.is_string()) {
                    errors.push_back({"checks", "check names must be strings"});
                    continue;
                }
                const auto id = check_by_name(entry.get<std::string>());
                if (!id) {
                    errors.push_back(
                        {"checks",
                         "unknown check: " + entry.get<std::string>()});
                } else {
                    selected.push_back(*id);
                }
            }
            // canonical order, deduplicated
            config.checks.clear();
            for (const CheckId id : all_checks()) {
                if (std::find(selected.begin(), selected.end(), id) !=
                    selected.end()) {
                    config.checks.push_back(id);
                }
            }
        }
    }

    if (j.contains("fault_simulator")) {
        const auto v = j["fault_simulator"].is_string()
                           ? j["fault_simulator"].get<std::string>()
                           : std::string();
        if (v == "constant_z") {
            config.fault_constant_z = true;
        } else if (v != "none") {
            errors.push_back(
                {"fault_simulator", "expected \"none\" or \"constant_z\""});
        }
    }

    if (errors.empty()) {
        const auto group_report = group::validate_group(config.params);
        for (const auto& failure : group_report.failures) {
            errors.push_back({"p/q/g", failure});
        }
    }
    if (errors.empty() && config.protocol == "chaum_pedersen" && config.h) {
        if (!group::in_subgroup(config.params, *config.h) || *config.h == 1) {
            errors.push_back(
                {"h", "must be a non-identity member of the subgroup"});
        }
    }
    if (errors.empty() && !config.random_witness &&
        config.witness >= config.params.q) {
        errors.push_back({"x", "witness must lie in [0, q)"});
    }

    if (!errors.empty()) return errors;
    return config;
}

bool SuiteReport::overall_pass() const {
    for (const auto& rec : records) {
        if (rec.status == CheckStatus::fail) return false;
    }
    return true;
}

namespace {

json shape_counts(const site::Site& s) {
    json out = json::object();
    for (const ViewShape shape : view::all_shapes()) {
        out[shape.label()] = dec(s.objects_of_shape(shape).size());
    }
    return out;
}

CheckRecord run_group_check(const SuiteConfig& config) {
    CheckRecord rec{CheckId::group_validation, CheckStatus::pass, {}};
    const auto report = group::validate_group(config.params);
    rec.details["failures"] = report.failures;
    rec.status = report.ok() ? CheckStatus::pass : CheckStatus::fail;
    return rec;
}

CheckRecord run_completeness(const SigmaProtocol& proto,
                             const dist::TranscriptLab& lab) {
    CheckRecord rec{CheckId::completeness, CheckStatus::pass, {}};
    const Scalar q = proto.params().q;
    std::uint64_t accepted = 0;
    for (Scalar r = 0; r < q; ++r) {
        for (Scalar e = 0; e < q; ++e) {
            if (proto.verify(lab.statement,
                             proto.honest_transcript(lab.witness, r, e))) {
                ++accepted;
            }
        }
    }
    rec.details["transcripts"] = dec(std::uint64_t{q} * q);
    rec.details["accepted"] = dec(accepted);
    rec.status = accepted == std::uint64_t{q} * q ? CheckStatus::pass
                                                  : CheckStatus::fail;
    return rec;
}

CheckRecord run_tamper(const SigmaProtocol& proto,
                       const dist::TranscriptLab& lab) {
    CheckRecord rec{CheckId::tamper, CheckStatus::pass, {}};
    const Scalar q = proto.params().q;
    std::vector<sigma::Commitment> commitment_space;
    for (Scalar t = 0; t < q; ++t) commitment_space.push_back(proto.commit(t));

    std::uint64_t substitutions = 0;
    std::uint64_t false_accepts = 0;
    for (Scalar r = 0; r < q; ++r) {
        for (Scalar e = 0; e < q; ++e) {
            const Transcript t = proto.honest_transcript(lab.witness, r, e);
            for (Scalar z2 = 0; z2 < q; ++z2) {
                if (z2 == t.z) continue;
                Transcript bad = t;
                bad.z = z2;
                ++substitutions;
                if (proto.verify(lab.statement, bad)) ++false_accepts;
            }
            for (Scalar e2 = 0; e2 < q; ++e2) {
                if (e2 == t.e) continue;
                Transcript bad = t;
                bad.e = e2;
                ++substitutions;
                if (proto.verify(lab.statement, bad)) ++false_accepts;
            }
            for (const auto& a2 : commitment_space) {
                if (a2 == t.a) continue;
                Transcript bad = t;
                bad.a = a2;
                ++substitutions;
                if (proto.verify(lab.statement, bad)) ++false_accepts;
            }
        }
    }
    rec.details["substitutions"] = dec(substitutions);
    rec.details["false_accepts"] = dec(false_accepts);
    rec.status = false_accepts == 0 ? CheckStatus::pass : CheckStatus::fail;
    return rec;
}

CheckRecord run_hvzk(const dist::TranscriptLab& lab, const Rational& epsilon) {
    CheckRecord rec{CheckId::hvzk, CheckStatus::pass, {}};
    const Rational d = dist::statistical_distance(lab.real, lab.simulated);
    rec.details["distance"] = rat(d);
    rec.details["real_outcomes"] = dec(lab.real.mass.size());
    rec.details["simulated_outcomes"] = dec(lab.simulated.mass.size());
    rec.status = d <= epsilon ? CheckStatus::pass : CheckStatus::fail;
    return rec;
}

CheckRecord run_topology(const site::Site& s) {
    CheckRecord rec{CheckId::topology, CheckStatus::pass, {}};
    const auto report = site::check_topology_axioms(s);
    rec.details["objects"] = dec(s.objects().size());
    rec.details["objects_by_shape"] = shape_counts(s);
    rec.details["quarantined"] = dec(s.quarantined().size());
    rec.details["families"] = dec(s.coverings().size());
    rec.details["identity_failures"] = dec(report.identity_failures.size());
    rec.details["stability_violations"] =
        dec(report.stability_violations.size());
    rec.details["transitivity_violations"] =
        dec(report.transitivity_violations.size());
    rec.status = report.passed() ? CheckStatus::pass : CheckStatus::fail;
    return rec;
}

CheckRecord run_coverings(const site::Site& s, const dist::TranscriptLab& lab,
                          const Rational& epsilon) {
    CheckRecord rec{CheckId::coverings, CheckStatus::pass, {}};
    Rational max_distance = 0;
    std::uint64_t failures = 0;
    json failing = json::array();
    for (std::size_t fi = 0; fi < s.coverings().size(); ++fi) {
        const auto check =
            site::validate_covering_by_simulation(s, fi, lab, epsilon);
        max_distance = std::max(max_distance, check.distance);
        if (!check.pass) {
            ++failures;
            if (failing.size() < 8) {
                json row;
                row["target"] = s.objects()[s.coverings()[fi].target].label();
                row["kind"] = site::family_kind_name(s.coverings()[fi].kind);
                row["distance"] = rat(check.distance);
                failing.push_back(row);
            }
        }
    }
    rec.details["families"] = dec(s.coverings().size());
    rec.details["max_distance"] = rat(max_distance);
    rec.details["failures"] = dec(failures);
    rec.details["failing"] = failing;
    rec.status = failures == 0 ? CheckStatus::pass : CheckStatus::fail;
    return rec;
}

CheckRecord run_presheaf(const sheaf::PresheafTable& table) {
    CheckRecord rec{CheckId::presheaf, CheckStatus::pass, {}};
    const site::Site& s = table.table_site();
    const auto nesting = sheaf::check_fiber_nesting(table);
    const auto functor = sheaf::check_functoriality(table);

    json sizes = json::object();
    for (const ViewShape shape : view::all_shapes()) {
        const auto ids = s.objects_of_shape(shape);
        if (ids.empty()) continue;
        std::size_t lo = SIZE_MAX, hi = 0;
        for (const auto id : ids) {
            lo = std::min(lo, table.fiber(id).size());
            hi = std::max(hi, table.fiber(id).size());
        }
        sizes[shape.label()] = json::array({dec(lo), dec(hi)});
    }
    rec.details["fiber_size_ranges"] = sizes;
    rec.details["nesting_pairs"] = dec(nesting.pairs_checked);
    rec.details["nesting_violations"] = dec(nesting.violations.size());
    rec.details["identity_checks"] = dec(functor.identity_checks);
    rec.details["composition_checks"] = dec(functor.composition_checks);
    rec.details["functoriality_violations"] =
        dec(functor.identity_violations.size() +
            functor.composition_violations.size());
    rec.status = nesting.passed() && functor.passed() ? CheckStatus::pass
                                                      : CheckStatus::fail;
    return rec;
}

CheckRecord run_literal(const site::Site& s, Scalar witness) {
    CheckRecord rec{CheckId::literal, CheckStatus::info, {}};
    const auto report = sheaf::check_sheaf_literal(s, witness);
    rec.details["degenerate_witness"] = report.degenerate_witness;

    json commitment_rows = json::array();
    std::map<std::string, std::pair<std::uint64_t, std::uint64_t>> aggregate;
    for (const auto& r : report.records) {
        const auto& family = s.coverings()[r.covering_index];
        const std::string kind = site::family_kind_name(family.kind);
        auto& [count, bijective] = aggregate[kind];
        ++count;
        bijective += r.sheaf_bijection ? 1 : 0;
        if (family.kind == site::FamilyKind::commitment_cover) {
            json row;
            row["target"] = s.objects()[family.target].label();
            row["matching_families"] = dec(r.matching_total);
            row["gluable_unique"] = dec(r.gluable_unique);
            row["gluable_multi"] = dec(r.gluable_multi);
            row["non_gluable"] = dec(r.non_gluable);
            row["literal_sections"] = dec(r.target_literal_sections);
            row["internal_sections"] = dec(r.target_internal_sections);
            row["compat_vacuous"] = r.compat_vacuous;
            commitment_rows.push_back(row);
        }
    }
    json agg = json::object();
    for (const auto& [kind, counts] : aggregate) {
        agg[kind] = json::object({{"families", dec(counts.first)},
                                  {"sheaf_bijection", dec(counts.second)}});
    }
    rec.details["by_kind"] = agg;
    rec.details["commitment_covers"] = commitment_rows;
    return rec;  // informational: the distributional check is normative
}

CheckRecord run_distributional(const site::Site& s,
                               const dist::TranscriptLab& lab,
                               const Rational& epsilon) {
    CheckRecord rec{CheckId::distributional, CheckStatus::pass, {}};
    const auto report = sheaf::check_sheaf_distributional(s, lab, epsilon);
    std::uint64_t failures = 0;
    json failing = json::array();
    for (const auto& r : report.records) {
        if (!r.pass) {
            ++failures;
            if (failing.size() < 8) {
                json row;
                row["target"] =
                    s.objects()[s.coverings()[r.covering_index].target].label();
                row["kind"] = site::family_kind_name(
                    s.coverings()[r.covering_index].kind);
                row["distance"] = rat(r.distance);
                failing.push_back(row);
            }
        }
    }
    rec.details["coverings"] = dec(report.records.size());
    rec.details["max_distance"] = rat(report.max_distance());
    rec.details["failures"] = dec(failures);
    rec.details["failing"] = failing;
    rec.status = report.passed() ? CheckStatus::pass : CheckStatus::fail;
    return rec;
}

CheckRecord run_torsor(const sheaf::PresheafTable& table) {
    CheckRecord rec{CheckId::torsor, CheckStatus::pass, {}};
    const auto report = sheaf::check_torsor(table);
    const site::Site& s = table.table_site();

    json fiber = json::object();
    for (const ViewShape shape : view::all_shapes()) {
        if (shape.has_a()) continue;
        std::uint64_t views = 0, closed = 0, exact = 0, orbit = 0;
        for (const auto& row : report.fiber_rows) {
            if (s.objects()[row.u].shape() != shape) continue;
            ++views;
            closed += row.closed;
            exact += row.closed && row.free_ && row.transitive;
            orbit += row.closed && row.free_ && row.orbit_transitive;
        }
        fiber[shape.label()] =
            json::object({{"views", dec(views)},
                          {"closed", dec(closed)},
                          {"free_transitive", dec(exact)},
                          {"free_orbit_transitive", dec(orbit)}});
    }
    std::uint64_t base_ok = 0;
    for (const auto& row : report.base_change_rows) {
        base_ok += row.object_bijection && row.morphisms_preserved &&
                   row.coverings_preserved && row.fibers_bijective;
    }
    rec.details["fiberwise"] = fiber;
    rec.details["base_change_automorphisms"] = dec(base_ok);
    rec.details["base_change_total"] = dec(report.base_change_rows.size());
    rec.details["composition_law"] = report.composition_law;
    rec.details["identity_action"] = report.identity_action;
    rec.status = report.passed() ? CheckStatus::pass : CheckStatus::fail;
    return rec;
}

CheckRecord run_local_triviality(const site::Site& s,
                                 const dist::TranscriptLab& lab) {
    CheckRecord rec{CheckId::local_triviality, CheckStatus::pass, {}};
    const auto report = sheaf::local_triviality_witness(s, lab);
    std::uint64_t failures = 0;
    for (const auto& row : report.rows) {
        if (!row.found || !row.in_public_fiber) ++failures;
    }
    rec.details["members"] = dec(report.rows.size());
    rec.details["failures"] = dec(failures);
    rec.status = report.passed() ? CheckStatus::pass : CheckStatus::fail;
    return rec;
}

CheckRecord run_global_sections(const sheaf::PresheafTable& table,
                                const dist::TranscriptLab& lab) {
    CheckRecord rec{CheckId::global_sections, CheckStatus::pass, {}};
    const auto report = sheaf::global_section_analysis(table, lab);
    rec.details["degenerate"] = report.degenerate;
    rec.details["candidates"] = dec(report.candidate_count);
    rec.details["sections"] = dec(report.section_count);
    rec.details["all_extract_witness"] = report.all_extract_witness();

    // special-soundness sweep: every commitment, every ordered challenge
    // pair; the extractor must return exactly the witness
    const SigmaProtocol& proto = *lab.proto;
    const Scalar q = proto.params().q;
    std::uint64_t total = 0, recovered = 0;
    for (Scalar t = 0; t < q; ++t) {
        for (Scalar e1 = 0; e1 < q; ++e1) {
            for (Scalar e2 = 0; e2 < q; ++e2) {
                if (e1 == e2) continue;
                ++total;
                const Transcript t1 =
                    proto.honest_transcript(lab.witness, t, e1);
                const Transcript t2 =
                    proto.honest_transcript(lab.witness, t, e2);
                try {
                    if (proto.extract(lab.statement, t1, t2).x ==
                        lab.witness) {
                        ++recovered;
                    }
                } catch (const std::exception&) {
                }
            }
        }
    }
    rec.details["extraction_sweep_total"] = dec(total);
    rec.details["extraction_sweep_recovered"] = dec(recovered);

    const bool ok = !report.degenerate && report.section_count > 0 &&
                    report.all_extract_witness() && recovered == total;
    rec.status = ok ? CheckStatus::pass : CheckStatus::fail;
    return rec;
}

}  // namespace

SuiteReport run_suite(const SuiteConfig& config) {
    SuiteReport report;
    report.protocol = config.protocol;
    report.params = config.params;
    report.seed = config.seed;
    report.epsilon = config.epsilon;
    report.fault_constant_z = config.fault_constant_z;

    const auto proto =
        sigma::make_protocol(config.protocol, config.params, config.h);
    if (config.protocol == "chaum_pedersen") {
        report.h = dynamic_cast<const sigma::ChaumPedersen&>(*proto)
                       .second_generator();
    }

    Scalar witness = config.witness;
    if (config.random_witness) {
        SeededSampler sampler(*config.seed);
        witness = sampler.below(config.params.q);
    }
    report.witness = witness;

    if (config.checks.empty()) {
        report.degenerate = true;
        return report;
    }

    dist::Simulator sim;
    if (config.fault_constant_z) sim = dist::constant_z_simulator(*proto);
    const auto lab = dist::TranscriptLab::make(*proto, witness, sim);

    // site and presheaf are built once and shared by the checks below
    std::optional<site::Site> lab_site;
    std::optional<sheaf::PresheafTable> table;
    const auto need_site = [&]() -> site::Site& {
        if (!lab_site) {
            lab_site.emplace(site::build_site(*proto, lab.statement));
            site::declare_standard_coverings(*lab_site);
        }
        return *lab_site;
    };
    const auto need_table = [&]() -> sheaf::PresheafTable& {
        if (!table) {
            table.emplace(
                sheaf::build_presheaf(*proto, lab.statement, witness,
                                      need_site()));
        }
        return *table;
    };

    for (const CheckId id : config.checks) {
        switch (id) {
            case CheckId::group_validation:
                report.records.push_back(run_group_check(config));
                break;
            case CheckId::completeness:
                report.records.push_back(run_completeness(*proto, lab));
                break;
            case CheckId::tamper:
                report.records.push_back(run_tamper(*proto, lab));
                break;
            case CheckId::hvzk:
                report.records.push_back(run_hvzk(lab, config.epsilon));
                break;
            case CheckId::topology:
                report.records.push_back(run_topology(need_site()));
                break;
            case CheckId::coverings:
                report.records.push_back(
                    run_coverings(need_site(), lab, config.epsilon));
                break;
            case CheckId::presheaf:
                report.records.push_back(run_presheaf(need_table()));
                break;
            case CheckId::literal:
                report.records.push_back(run_literal(need_site(), witness));
                break;
            case CheckId::distributional:
                report.records.push_back(
                    run_distributional(need_site(), lab, config.epsilon));
                break;
            case CheckId::torsor:
                report.records.push_back(run_torsor(need_table()));
                break;
            case CheckId::local_triviality:
                report.records.push_back(
                    run_local_triviality(need_site(), lab));
                break;
            case CheckId::global_sections:
                report.records.push_back(
                    run_global_sections(need_table(), lab));
                break;
        }
    }
    return report;
}

namespace {

std::string status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::fail: return "fail";
        case CheckStatus::info: return "info";
    }
    return "unknown";
}

}  // namespace

std::string emit_report(const SuiteReport& report, ReportFormat format) {
    if (format == ReportFormat::machine) {
        json j;
        j["schema"] = "sigmalab-report-v1";
        j["protocol"] = report.protocol;
        j["params"] = json::object({{"p", dec(report.params.p)},
                                    {"q", dec(report.params.q)},
                                    {"g", dec(report.params.g)}});
        if (report.h) j["h"] = dec(*report.h);
        j["witness"] = dec(report.witness);
        if (report.seed) j["seed"] = dec(*report.seed);
        j["epsilon"] = rat(report.epsilon);
        j["fault_simulator"] =
            report.fault_constant_z ? "constant_z" : "none";
        j["degenerate"] = report.degenerate;
        json checks = json::array();
        for (const auto& rec : report.records) {
            json c;
            c["name"] = check_name(rec.id);
            c["status"] = status_name(rec.status);
            c["details"] = rec.details;
            checks.push_back(c);
        }
        j["checks"] = checks;
        j["overall"] = report.overall_pass() ? "pass" : "fail";
        return j.dump(2) + "\n";
    }

    std::ostringstream out;
    out << "protocol " << report.protocol << "  p=" << report.params.p
        << " q=" << report.params.q << " g=" << report.params.g;
    if (report.h) out << " h=" << *report.h;
    out << "  x=" << report.witness;
    if (report.seed) out << " seed=" << *report.seed;
    out << "  epsilon=" << rat(report.epsilon) << "\n";
    if (report.fault_constant_z) {
        out << "fault simulator: constant_z\n";
    }
    if (report.degenerate) {
        out << "no checks selected (degenerate report)\n";
    }
    for (const auto& rec : report.records) {
        out << "  " << check_name(rec.id) << ": ";
        switch (rec.status) {
            case CheckStatus::pass: out << "PASS"; break;
            case CheckStatus::fail: out << "FAIL"; break;
            case CheckStatus::info: out << "INFO"; break;
        }
        if (rec.details.contains("distance")) {
            out << "  distance=" << rec.details["distance"].get<std::string>();
        }
        if (rec.details.contains("max_distance")) {
            out << "  max_distance="
                << rec.details["max_distance"].get<std::string>();
        }
        if (rec.details.contains("false_accepts")) {
            out << "  false_accepts="
                << rec.details["false_accepts"].get<std::string>();
        }
        out << "\n";
    }
    out << "overall: " << (report.overall_pass() ? "PASS" : "FAIL") << "\n";
    return out.str();
}

}  // namespace sigmalab::suite
