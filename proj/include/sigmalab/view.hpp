// Attacker views: partial transcripts obtained by hiding components of
// (a, e, z). A view carries concrete values for the components it
// reveals and nothing else. Views are pure information sets; there is
// no temporal ordering between components.

#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sigmalab/sigma.hpp"

namespace sigmalab::view {

using sigma::Commitment;
using sigma::Scalar;
using sigma::Transcript;

/// Subset of {a, e, z} marking revealed components.
struct ViewShape {
    std::uint8_t bits = 0;  // 1 = a, 2 = e, 4 = z

    static constexpr std::uint8_t kA = 1;
    static constexpr std::uint8_t kE = 2;
    static constexpr std::uint8_t kZ = 4;

    bool has_a() const { return bits & kA; }
    bool has_e() const { return bits & kE; }
    bool has_z() const { return bits & kZ; }
    bool subset_of(ViewShape other) const { return (bits & ~other.bits) == 0; }
    int popcount() const { return __builtin_popcount(bits); }

    auto operator<=>(const ViewShape&) const = default;

    /// "{}", "{a}", "{a,e,z}", ...
    std::string label() const;
};

/// All 8 shapes in canonical order: by number of revealed components,
/// then by component bits.
std::vector<ViewShape> all_shapes();

/// A concrete view: values for the revealed components.
struct ViewValues {
    std::optional<Commitment> a;
    std::optional<Scalar> e;
    std::optional<Scalar> z;

    ViewShape shape() const;

    bool operator==(const ViewValues&) const = default;

    /// Canonical ordering: shape first, then a, e, z values.
    bool operator<(const ViewValues& other) const;

    /// "(a=9 e=4)" style rendering with revealed components only.
    std::string label() const;
};

/// The projection of a full transcript onto a shape.
ViewValues project(const Transcript& t, ViewShape shape);

/// Does the transcript agree with the view on every revealed component?
bool agrees(const Transcript& t, const ViewValues& v);

/// Morphism test: source refines target when target's shape is a subset
/// of source's and their values agree on it (erasure maps only).
bool refines(const ViewValues& source, const ViewValues& target);

/// Forget the components outside target_shape. Requires
/// target_shape to be a subset of the view's shape (std::domain_error).
ViewValues erase_to(const ViewValues& v, ViewShape target_shape);

}  // namespace sigmalab::view
