#include "sigmalab/view.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace sigmalab::view {

std::string ViewShape::label() const {
    std::string out = "{";
    bool first = true;
    for (const auto& [bit, name] :
         {std::pair{kA, "a"}, std::pair{kE, "e"}, std::pair{kZ, "z"}}) {
        if (bits & bit) {
            if (!first) out += ",";
            out += name;
            first = false;
        }
    }
    out += "}";
    return out;
}

std::vector<ViewShape> all_shapes() {
    std::vector<ViewShape> shapes;
    for (std::uint8_t b = 0; b < 8; ++b) shapes.push_back(ViewShape{b});
    std::sort(shapes.begin(), shapes.end(),
              [](ViewShape lhs, ViewShape rhs) {
                  return std::pair(lhs.popcount(), lhs.bits) <
                         std::pair(rhs.popcount(), rhs.bits);
              });
    return shapes;
}

ViewShape ViewValues::shape() const {
    std::uint8_t bits = 0;
    if (a) bits |= ViewShape::kA;
    if (e) bits |= ViewShape::kE;
    if (z) bits |= ViewShape::kZ;
    return ViewShape{bits};
}

bool ViewValues::operator<(const ViewValues& other) const {
    const ViewShape s1 = shape();
    const ViewShape s2 = other.shape();
    if (s1 != s2) {
        return std::pair(s1.popcount(), s1.bits) <
               std::pair(s2.popcount(), s2.bits);
    }
    const auto key = [](const ViewValues& v) {
        return std::tuple(v.a.value_or(Commitment{}), v.e.value_or(0),
                          v.z.value_or(0));
    };
    return key(*this) < key(other);
}

std::string ViewValues::label() const {
    std::string out = "(";
    bool first = true;
    const auto field = [&](const std::string& name, const std::string& value) {
        if (!first) out += " ";
        out += name + "=" + value;
        first = false;
    };
    if (a) {
        std::string av;
        for (std::size_t i = 0; i < a->size(); ++i) {
            if (i) av += ",";
            av += std::to_string((*a)[i]);
        }
        field("a", av);
    }
    if (e) field("e", std::to_string(*e));
    if (z) field("z", std::to_string(*z));
    out += ")";
    return out;
}

ViewValues project(const Transcript& t, ViewShape shape) {
    ViewValues v;
    if (shape.has_a()) v.a = t.a;
    if (shape.has_e()) v.e = t.e;
    if (shape.has_z()) v.z = t.z;
    return v;
}

bool agrees(const Transcript& t, const ViewValues& v) {
    if (v.a && *v.a != t.a) return false;
    if (v.e && *v.e != t.e) return false;
    if (v.z && *v.z != t.z) return false;
    return true;
}

bool refines(const ViewValues& source, const ViewValues& target) {
    if (!target.shape().subset_of(source.shape())) return false;
    if (target.a && source.a != target.a) return false;
    if (target.e && source.e != target.e) return false;
    if (target.z && source.z != target.z) return false;
    return true;
}

ViewValues erase_to(const ViewValues& v, ViewShape target_shape) {
    if (!target_shape.subset_of(v.shape())) {
        throw std::domain_error(
            "erase_to: target shape is not a subset of the view's shape");
    }
    ViewValues out;
    if (target_shape.has_a()) out.a = v.a;
    if (target_shape.has_e()) out.e = v.e;
    if (target_shape.has_z()) out.z = v.z;
    return out;
}

}  // namespace sigmalab::view
