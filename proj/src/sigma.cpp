#include "sigmalab/sigma.hpp"

#include <sstream>

namespace sigmalab::sigma {

namespace {

using group::add_mod;
using group::inv_mod;
using group::mul_mod;
using group::pow_mod;
using group::sub_mod;

// y^(-e) = y^(q-e) for members of <g>.
std::uint64_t pow_neg(const GroupParams& params, std::uint64_t base,
                      Scalar e) {
    return pow_mod(params, base, (params.q - e % params.q) % params.q);
}

bool in_scalar_range(const GroupParams& params, Scalar v) {
    return v < params.q;
}

}  // namespace

SigmaProtocol::SigmaProtocol(std::string name, const GroupParams& params)
    : params_(params), name_(std::move(name)) {
    group::require_valid(params);
}

Transcript SigmaProtocol::honest_transcript(Scalar x, Scalar r,
                                            Scalar e) const {
    return Transcript{commit(r), e, respond(x, r, e)};
}

Witness SigmaProtocol::extract(const Statement& stmt, const Transcript& t1,
                               const Transcript& t2) const {
    if (t1.a != t2.a) {
        throw std::invalid_argument("extract: commitments differ");
    }
    if (t1.e == t2.e) {
        throw std::invalid_argument("extract: challenges are equal");
    }
    if (!verify(stmt, t1) || !verify(stmt, t2)) {
        throw std::invalid_argument("extract: transcript does not verify");
    }
    const Scalar q = params_.q;
    // x = (z1 - z2) * (e1 - e2)^-1 mod q
    const Scalar dz = sub_mod(t1.z, t2.z, q);
    const Scalar de = sub_mod(t1.e, t2.e, q);
    const Scalar x = mul_mod(dz, inv_mod(de, q), q);
    if (statement_for(x) != stmt) {
        throw std::logic_error(
            "extract: recovered value does not reproduce the statement");
    }
    return Witness{x};
}

Schnorr::Schnorr(const GroupParams& params) : SigmaProtocol("schnorr", params) {}

std::vector<std::uint64_t> Schnorr::generators() const { return {params_.g}; }

Statement Schnorr::statement_for(Scalar x) const {
    return Statement{{pow_mod(params_, params_.g, x % params_.q)}};
}

Commitment Schnorr::commit(Scalar r) const {
    return {pow_mod(params_, params_.g, r % params_.q)};
}

Scalar Schnorr::respond(Scalar x, Scalar r, Scalar e) const {
    // z = r + e*x mod q
    return add_mod(r, mul_mod(e, x, params_.q), params_.q);
}

bool Schnorr::verify(const Statement& stmt, const Transcript& t) const {
    if (stmt.y.size() != 1 || t.a.size() != 1) return false;
    if (!in_scalar_range(params_, t.e) || !in_scalar_range(params_, t.z)) {
        return false;
    }
    if (t.a[0] == 0 || t.a[0] >= params_.p) return false;
    if (stmt.y[0] == 0 || stmt.y[0] >= params_.p) return false;
    // accept iff g^z = a * y^e (mod p)
    const std::uint64_t lhs = pow_mod(params_, params_.g, t.z);
    const std::uint64_t rhs =
        mul_mod(t.a[0], pow_mod(params_, stmt.y[0], t.e), params_.p);
    return lhs == rhs;
}

Transcript Schnorr::simulate(const Statement& stmt, Scalar e, Scalar z) const {
    // a = g^z * y^(-e); the result always verifies
    const std::uint64_t a =
        mul_mod(pow_mod(params_, params_.g, z % params_.q),
                pow_neg(params_, stmt.y.at(0), e % params_.q), params_.p);
    return Transcript{{a}, e % params_.q, z % params_.q};
}

ChaumPedersen::ChaumPedersen(const GroupParams& params, std::uint64_t h)
    : SigmaProtocol("chaum_pedersen", params), h_(h) {
    if (!group::in_subgroup(params, h) || h == 1) {
        throw std::invalid_argument(
            "chaum_pedersen: second generator must be a non-identity "
            "member of <g>");
    }
}

std::vector<std::uint64_t> ChaumPedersen::generators() const {
    return {params_.g, h_};
}

Statement ChaumPedersen::statement_for(Scalar x) const {
    const Scalar xr = x % params_.q;
    return Statement{
        {pow_mod(params_, params_.g, xr), pow_mod(params_, h_, xr)}};
}

Commitment ChaumPedersen::commit(Scalar r) const {
    const Scalar rr = r % params_.q;
    return {pow_mod(params_, params_.g, rr), pow_mod(params_, h_, rr)};
}

Scalar ChaumPedersen::respond(Scalar x, Scalar r, Scalar e) const {
    return add_mod(r, mul_mod(e, x, params_.q), params_.q);
}

bool ChaumPedersen::verify(const Statement& stmt, const Transcript& t) const {
    if (stmt.y.size() != 2 || t.a.size() != 2) return false;
    if (!in_scalar_range(params_, t.e) || !in_scalar_range(params_, t.z)) {
        return false;
    }
    for (const std::uint64_t v : t.a) {
        if (v == 0 || v >= params_.p) return false;
    }
    for (const std::uint64_t v : stmt.y) {
        if (v == 0 || v >= params_.p) return false;
    }
    // g^z = a1 * y1^e  and  h^z = a2 * y2^e
    const bool first =
        pow_mod(params_, params_.g, t.z) ==
        mul_mod(t.a[0], pow_mod(params_, stmt.y[0], t.e), params_.p);
    const bool second =
        pow_mod(params_, h_, t.z) ==
        mul_mod(t.a[1], pow_mod(params_, stmt.y[1], t.e), params_.p);
    return first && second;
}

Transcript ChaumPedersen::simulate(const Statement& stmt, Scalar e,
                                   Scalar z) const {
    const Scalar er = e % params_.q;
    const Scalar zr = z % params_.q;
    const std::uint64_t a1 =
        mul_mod(pow_mod(params_, params_.g, zr),
                pow_neg(params_, stmt.y.at(0), er), params_.p);
    const std::uint64_t a2 = mul_mod(
        pow_mod(params_, h_, zr), pow_neg(params_, stmt.y.at(1), er), params_.p);
    return Transcript{{a1, a2}, er, zr};
}

std::pair<Statement, Witness> keygen(const SigmaProtocol& proto, Scalar x) {
    const Scalar xr = x % proto.params().q;
    return {proto.statement_for(xr), Witness{xr}};
}

std::unique_ptr<SigmaProtocol> make_protocol(const std::string& name,
                                             const GroupParams& params,
                                             std::optional<std::uint64_t> h) {
    if (name == "schnorr") {
        return std::make_unique<Schnorr>(params);
    }
    if (name == "chaum_pedersen") {
        const std::uint64_t hh =
            h.value_or(group::pow_mod(params, params.g, 2));
        return std::make_unique<ChaumPedersen>(params, hh);
    }
    throw std::invalid_argument("unknown protocol: " + name);
}

namespace {

std::string join_decimal(const std::vector<std::uint64_t>& vs) {
    std::string out;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(vs[i]);
    }
    return out;
}

std::vector<std::uint64_t> split_decimal(const std::string& s) {
    std::vector<std::uint64_t> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, ',')) {
        if (cur.empty() || cur.find_first_not_of("0123456789") != std::string::npos) {
            throw std::invalid_argument("record: non-decimal field value");
        }
        out.push_back(std::stoull(cur));
    }
    if (out.empty()) throw std::invalid_argument("record: empty field value");
    return out;
}

std::uint64_t single(const std::string& s) {
    const auto vs = split_decimal(s);
    if (vs.size() != 1) {
        throw std::invalid_argument("record: expected a single value");
    }
    return vs[0];
}

}  // namespace

std::string to_record(const TranscriptRecord& rec) {
    std::string out = "protocol=" + rec.protocol;
    out += " p=" + std::to_string(rec.params.p);
    out += " q=" + std::to_string(rec.params.q);
    out += " g=" + std::to_string(rec.params.g);
    if (rec.h) out += " h=" + std::to_string(*rec.h);
    out += " y=" + join_decimal(rec.statement.y);
    out += " a=" + join_decimal(rec.transcript.a);
    out += " e=" + std::to_string(rec.transcript.e);
    out += " z=" + std::to_string(rec.transcript.z);
    return out;
}

TranscriptRecord parse_record(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::pair<std::string, std::string>> fields;
    std::string tok;
    while (in >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("record: token without '=': " + tok);
        }
        fields.emplace_back(tok.substr(0, eq), tok.substr(eq + 1));
    }
    TranscriptRecord rec;
    std::size_t i = 0;
    const auto expect = [&](const std::string& key) -> std::string {
        if (i >= fields.size() || fields[i].first != key) {
            throw std::invalid_argument("record: expected field " + key);
        }
        return fields[i++].second;
    };
    rec.protocol = expect("protocol");
    rec.params.p = single(expect("p"));
    rec.params.q = single(expect("q"));
    rec.params.g = single(expect("g"));
    if (i < fields.size() && fields[i].first == "h") {
        rec.h = single(fields[i++].second);
    }
    rec.statement.y = split_decimal(expect("y"));
    rec.transcript.a = split_decimal(expect("a"));
    rec.transcript.e = single(expect("e"));
    rec.transcript.z = single(expect("z"));
    if (i != fields.size()) {
        throw std::invalid_argument("record: trailing fields");
    }

    group::require_valid(rec.params);
    if (rec.protocol == "schnorr") {
        if (rec.h) throw std::invalid_argument("record: schnorr takes no h");
    } else if (rec.protocol == "chaum_pedersen") {
        if (!rec.h) throw std::invalid_argument("record: missing h");
    } else {
        throw std::invalid_argument("record: unknown protocol " + rec.protocol);
    }
    for (const std::uint64_t v : rec.statement.y) {
        group::element(rec.params, v);  // membership check
    }
    for (const std::uint64_t v : rec.transcript.a) {
        group::element(rec.params, v);
    }
    if (rec.transcript.e >= rec.params.q || rec.transcript.z >= rec.params.q) {
        throw std::invalid_argument("record: scalar out of Z_q");
    }
    return rec;
}

}  // namespace sigmalab::sigma
