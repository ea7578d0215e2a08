#include "sigmalab/dist.hpp"

#include <sstream>
#include <stdexcept>

namespace sigmalab::dist {

namespace {

void check_scale(const SigmaProtocol& proto) {
    const auto q = proto.params().q;
    if (q >= group::kMaxOrder) {
        throw group::ScaleError(
            "distribution enumeration needs q below the desk-scale bound");
    }
}

template <typename Map>
Rational total_of(const Map& mass) {
    Rational sum = 0;
    for (const auto& [_, m] : mass) sum += m;
    return sum;
}

template <typename Map>
Rational tv_distance(const Map& m1, const Map& m2) {
    Rational sum = 0;
    auto it1 = m1.begin();
    auto it2 = m2.begin();
    while (it1 != m1.end() || it2 != m2.end()) {
        if (it2 == m2.end() || (it1 != m1.end() && it1->first < it2->first)) {
            sum += abs(it1->second);
            ++it1;
        } else if (it1 == m1.end() || it2->first < it1->first) {
            sum += abs(it2->second);
            ++it2;
        } else {
            sum += abs(it1->second - it2->second);
            ++it1;
            ++it2;
        }
    }
    return sum / 2;
}

}  // namespace

Rational ExactDistribution::total() const { return total_of(mass); }

bool ExactDistribution::is_normalized() const {
    for (const auto& [_, m] : mass) {
        if (m <= 0) return false;
    }
    return total() == 1;
}

Rational ViewDistribution::total() const { return total_of(mass); }

ExactDistribution real_distribution(const SigmaProtocol& proto, Scalar x) {
    check_scale(proto);
    const Scalar q = proto.params().q;
    ExactDistribution d;
    const Rational unit(1, BigInt(q) * q);
    for (Scalar r = 0; r < q; ++r) {
        for (Scalar e = 0; e < q; ++e) {
            d.mass[proto.honest_transcript(x, r, e)] += unit;
        }
    }
    return d;
}

ExactDistribution simulated_distribution(const SigmaProtocol& proto,
                                         const Statement& stmt) {
    return simulated_distribution(
        proto, stmt, [&proto](const Statement& s, Scalar e, Scalar z) {
            return proto.simulate(s, e, z);
        });
}

ExactDistribution simulated_distribution(const SigmaProtocol& proto,
                                         const Statement& stmt,
                                         const Simulator& sim) {
    check_scale(proto);
    const Scalar q = proto.params().q;
    ExactDistribution d;
    const Rational unit(1, BigInt(q) * q);
    for (Scalar e = 0; e < q; ++e) {
        for (Scalar z = 0; z < q; ++z) {
            d.mass[sim(stmt, e, z)] += unit;
        }
    }
    return d;
}

Rational view_mass(const ExactDistribution& d, const ViewValues& v) {
    Rational sum = 0;
    for (const auto& [t, m] : d.mass) {
        if (view::agrees(t, v)) sum += m;
    }
    return sum;
}

ExactDistribution condition_on_view(const ExactDistribution& d,
                                    const ViewValues& v) {
    const Rational denom = view_mass(d, v);
    if (denom == 0) {
        throw std::domain_error("condition_on_view: view has zero mass");
    }
    ExactDistribution out;
    for (const auto& [t, m] : d.mass) {
        if (view::agrees(t, v)) out.mass[t] = m / denom;
    }
    return out;
}

ViewDistribution marginal_on_shape(const ExactDistribution& d,
                                   ViewShape shape) {
    ViewDistribution out;
    for (const auto& [t, m] : d.mass) {
        out.mass[view::project(t, shape)] += m;
    }
    return out;
}

Rational statistical_distance(const ExactDistribution& d1,
                              const ExactDistribution& d2) {
    return tv_distance(d1.mass, d2.mass);
}

Rational statistical_distance(const ViewDistribution& d1,
                              const ViewDistribution& d2) {
    return tv_distance(d1.mass, d2.mass);
}

std::string to_string(const Rational& r) {
    std::ostringstream out;
    out << numerator(r) << "/" << denominator(r);
    return out.str();
}

Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    const auto is_decimal = [](const std::string& s) {
        return !s.empty() &&
               s.find_first_not_of("0123456789") == std::string::npos;
    };
    if (slash == std::string::npos) {
        if (!is_decimal(text)) {
            throw std::invalid_argument("rational: expected \"num/den\"");
        }
        return Rational(BigInt(text));
    }
    const std::string num = text.substr(0, slash);
    const std::string den = text.substr(slash + 1);
    if (!is_decimal(num) || !is_decimal(den) || BigInt(den) == 0) {
        throw std::invalid_argument("rational: expected \"num/den\"");
    }
    return Rational(BigInt(num), BigInt(den));
}

namespace {

std::string transcript_label(const Transcript& t) {
    std::string out = "(a=";
    for (std::size_t i = 0; i < t.a.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(t.a[i]);
    }
    out += " e=" + std::to_string(t.e) + " z=" + std::to_string(t.z) + ")";
    return out;
}

}  // namespace

std::string dump_distribution(const ExactDistribution& d) {
    std::string out;
    for (const auto& [t, m] : d.mass) {
        out += transcript_label(t) + "  " + to_string(m) + "\n";
    }
    return out;
}

std::string dump_distribution(const ViewDistribution& d) {
    std::string out;
    for (const auto& [v, m] : d.mass) {
        out += v.label() + "  " + to_string(m) + "\n";
    }
    return out;
}

TranscriptLab TranscriptLab::make(const SigmaProtocol& proto, Scalar x,
                                  Simulator sim) {
    TranscriptLab lab;
    lab.proto = &proto;
    lab.witness = x % proto.params().q;
    lab.statement = proto.statement_for(lab.witness);
    lab.simulate = sim ? std::move(sim)
                       : [&proto](const Statement& s, Scalar e, Scalar z) {
                             return proto.simulate(s, e, z);
                         };
    lab.real = real_distribution(proto, lab.witness);
    lab.simulated = simulated_distribution(proto, lab.statement, lab.simulate);
    return lab;
}

Simulator constant_z_simulator(const SigmaProtocol& proto) {
    return [&proto](const Statement& s, Scalar e, Scalar) {
        return proto.simulate(s, e, 0);
    };
}

}  // namespace sigmalab::dist
