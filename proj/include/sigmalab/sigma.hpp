// Three-move proof engine behind a protocol-generic interface.
//
// A protocol instance binds group parameters to the five behaviors the
// rest of the lab consumes: key generation, commitment, response,
// verification, and the honest-verifier simulator. Two instantiations
// are provided: Schnorr (knowledge of x with y = g^x) and
// Chaum-Pedersen (equality of discrete logs, y1 = g^x and y2 = h^x).
//
// Randomness is never sampled here. Nonces and challenges are explicit
// arguments so that callers can enumerate the full transcript space and
// reproduce any run exactly.

#pragma once

#include <compare>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sigmalab/group.hpp"

namespace sigmalab::sigma {

using group::GroupParams;
using group::Scalar;

/// Commitment message: one group element for Schnorr, two for
/// Chaum-Pedersen. Values always lie in <g>.
using Commitment = std::vector<std::uint64_t>;

struct Statement {
    std::vector<std::uint64_t> y;  // public value(s), same arity as Commitment

    auto operator<=>(const Statement&) const = default;
};

struct Witness {
    Scalar x = 0;

    auto operator<=>(const Witness&) const = default;
};

/// One conversation (a, e, z). Validity is decided by verify().
struct Transcript {
    Commitment a;
    Scalar e = 0;
    Scalar z = 0;

    auto operator<=>(const Transcript&) const = default;
};

class SigmaProtocol {
  public:
    virtual ~SigmaProtocol() = default;

    const std::string& name() const { return name_; }
    const GroupParams& params() const { return params_; }

    /// Generators in commitment order: {g} or {g, h}.
    virtual std::vector<std::uint64_t> generators() const = 0;
    virtual std::size_t commitment_arity() const = 0;

    virtual Statement statement_for(Scalar x) const = 0;
    virtual Commitment commit(Scalar r) const = 0;
    virtual Scalar respond(Scalar x, Scalar r, Scalar e) const = 0;
    virtual bool verify(const Statement& stmt, const Transcript& t) const = 0;

    /// Simulator: given (e, z), returns the unique accepting transcript
    /// with those components. Never needs the witness.
    virtual Transcript simulate(const Statement& stmt, Scalar e,
                                Scalar z) const = 0;

    /// Commit then respond: (g^r, e, r + e*x). Always verifies.
    Transcript honest_transcript(Scalar x, Scalar r, Scalar e) const;

    /**
     * Special-soundness extractor. Requires two accepting transcripts
     * with equal commitments and distinct challenges; returns
     * x = (z1 - z2) / (e1 - e2) mod q. The result is checked against
     * the statement before returning.
     *
     * Violated preconditions raise std::invalid_argument; an extracted
     * value that fails to reproduce the statement raises
     * std::logic_error (internal inconsistency).
     */
    Witness extract(const Statement& stmt, const Transcript& t1,
                    const Transcript& t2) const;

  protected:
    SigmaProtocol(std::string name, const GroupParams& params);

    GroupParams params_;
    std::string name_;
};

class Schnorr final : public SigmaProtocol {
  public:
    explicit Schnorr(const GroupParams& params);

    std::vector<std::uint64_t> generators() const override;
    std::size_t commitment_arity() const override { return 1; }
    Statement statement_for(Scalar x) const override;
    Commitment commit(Scalar r) const override;
    Scalar respond(Scalar x, Scalar r, Scalar e) const override;
    bool verify(const Statement& stmt, const Transcript& t) const override;
    Transcript simulate(const Statement& stmt, Scalar e,
                        Scalar z) const override;
};

/// Proves log_g(y1) = log_h(y2) with a shared nonce: a = (g^r, h^r),
/// z = r + e*x, and both verification equations must hold.
class ChaumPedersen final : public SigmaProtocol {
  public:
    /// h must be a non-identity member of <g>.
    ChaumPedersen(const GroupParams& params, std::uint64_t h);

    std::uint64_t second_generator() const { return h_; }

    std::vector<std::uint64_t> generators() const override;
    std::size_t commitment_arity() const override { return 2; }
    Statement statement_for(Scalar x) const override;
    Commitment commit(Scalar r) const override;
    Scalar respond(Scalar x, Scalar r, Scalar e) const override;
    bool verify(const Statement& stmt, const Transcript& t) const override;
    Transcript simulate(const Statement& stmt, Scalar e,
                        Scalar z) const override;

  private:
    std::uint64_t h_;
};

/// keygen: derives the statement for witness x.
std::pair<Statement, Witness> keygen(const SigmaProtocol& proto, Scalar x);

/**
 * Factory. `name` is "schnorr" or "chaum_pedersen"; for the latter the
 * second generator defaults to g^2 mod p when not supplied.
 */
std::unique_ptr<SigmaProtocol> make_protocol(
    const std::string& name, const GroupParams& params,
    std::optional<std::uint64_t> h = std::nullopt);

/// One serialized conversation, pinned to its protocol and group.
struct TranscriptRecord {
    std::string protocol;
    GroupParams params;
    std::optional<std::uint64_t> h;  // Chaum-Pedersen only
    Statement statement;
    Transcript transcript;

    bool operator==(const TranscriptRecord&) const = default;
};

/// Canonical single-line text form with decimal fields, e.g.
///   protocol=schnorr p=23 q=11 g=2 y=8 a=9 e=4 z=6
/// Round-trips bit-exactly through parse_record.
std::string to_record(const TranscriptRecord& rec);

/// Strict parser for the canonical form; std::invalid_argument on any
/// deviation (unknown field, wrong order, out-of-group value).
TranscriptRecord parse_record(const std::string& line);

}  // namespace sigmalab::sigma
