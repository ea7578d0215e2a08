// Exact probability engine. Real and simulated transcript distributions
// are enumerated in full, conditioned, and compared with rational
// arithmetic only. No floating point appears anywhere: every mass is a
// boost::multiprecision::cpp_rational, so distribution equalities and
// total-variation distances are exact and tolerance-free.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <functional>
#include <map>
#include <string>

#include "sigmalab/sigma.hpp"
#include "sigmalab/view.hpp"

namespace sigmalab::dist {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using sigma::Scalar;
using sigma::SigmaProtocol;
using sigma::Statement;
using sigma::Transcript;
using view::ViewShape;
using view::ViewValues;

/// Finite distribution over full transcripts with exact rational
/// masses. Invariant (checked by is_normalized): masses are positive
/// and sum to exactly 1.
struct ExactDistribution {
    std::map<Transcript, Rational> mass;

    Rational total() const;
    bool is_normalized() const;
};

/// Finite distribution over view values (a marginal of the above).
struct ViewDistribution {
    std::map<ViewValues, Rational> mass;

    Rational total() const;
};

/// Drop-in simulator signature; defaults to the protocol's own.
using Simulator =
    std::function<Transcript(const Statement&, Scalar, Scalar)>;

/// Uniform over the q^2 honest transcripts (g^r, e, r + e*x).
ExactDistribution real_distribution(const SigmaProtocol& proto, Scalar x);

/// Uniform over the q^2 simulator outputs for (e, z) in Z_q^2.
ExactDistribution simulated_distribution(const SigmaProtocol& proto,
                                         const Statement& stmt);
ExactDistribution simulated_distribution(const SigmaProtocol& proto,
                                         const Statement& stmt,
                                         const Simulator& sim);

/// Exact conditional given agreement with the view's revealed
/// components. std::domain_error when the view has zero mass.
ExactDistribution condition_on_view(const ExactDistribution& d,
                                    const ViewValues& v);

/// Mass of the event "transcript agrees with v".
Rational view_mass(const ExactDistribution& d, const ViewValues& v);

/// Pushforward along the erasure to the given shape.
ViewDistribution marginal_on_shape(const ExactDistribution& d,
                                   ViewShape shape);

/// Total variation distance (1/2) * sum |d1(o) - d2(o)|, exact.
Rational statistical_distance(const ExactDistribution& d1,
                              const ExactDistribution& d2);
Rational statistical_distance(const ViewDistribution& d1,
                              const ViewDistribution& d2);

/// "num/den" rendering used by reports and config files.
std::string to_string(const Rational& r);
Rational parse_rational(const std::string& text);

/// Stable-ordered text listing: one "outcome  mass" line per outcome.
std::string dump_distribution(const ExactDistribution& d);
std::string dump_distribution(const ViewDistribution& d);

/**
 * Bundles one protocol instance with its precomputed real and simulated
 * distributions; the simulator is swappable for fault injection. This
 * is the engine every distribution-comparing check runs against.
 */
struct TranscriptLab {
    const SigmaProtocol* proto = nullptr;
    Statement statement;
    Scalar witness = 0;
    Simulator simulate;
    ExactDistribution real;
    ExactDistribution simulated;

    static TranscriptLab make(const SigmaProtocol& proto, Scalar x,
                              Simulator sim = {});
};

/// Simulator that discards its response input and always uses z = 0.
/// Deliberately wrong; used to demonstrate failing checks.
Simulator constant_z_simulator(const SigmaProtocol& proto);

}  // namespace sigmalab::dist
