#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sigmalab/dist.hpp"

using namespace sigmalab;
using dist::Rational;
using group::GroupParams;
using group::Scalar;
using view::ViewShape;
using view::ViewValues;

namespace {

const GroupParams kSmall{23, 11, 2};

}  // namespace

TEST_CASE("real distribution is uniform over q^2 distinct transcripts") {
    sigma::Schnorr schnorr(kSmall);
    const auto d = dist::real_distribution(schnorr, 3);
    CHECK(d.mass.size() == 121);
    CHECK(d.is_normalized());
    const Rational unit(1, 121);
    const auto stmt = schnorr.statement_for(3);
    for (const auto& [t, m] : d.mass) {
        CHECK(m == unit);
        CHECK(schnorr.verify(stmt, t));  // support within accepting set
    }
}

TEST_CASE("tiny subgroup: order-2 subgroup of Z_7^*") {
    const GroupParams tiny{7, 2, 6};  // 6^2 = 36 = 1 mod 7
    REQUIRE(group::validate_group(tiny).ok());
    sigma::Schnorr schnorr(tiny);
    const auto d = dist::real_distribution(schnorr, 1);
    CHECK(d.mass.size() == 4);
    CHECK(d.is_normalized());
}

TEST_CASE("simulated distribution equals the real one exactly") {
    sigma::Schnorr schnorr(kSmall);
    SUBCASE("x = 3") {
        const auto real = dist::real_distribution(schnorr, 3);
        const auto sim =
            dist::simulated_distribution(schnorr, schnorr.statement_for(3));
        CHECK(sim.mass.size() == 121);
        CHECK(dist::statistical_distance(real, sim) == 0);
        CHECK(real.mass == sim.mass);
    }
    SUBCASE("zero witness") {
        const auto real = dist::real_distribution(schnorr, 0);
        const auto sim =
            dist::simulated_distribution(schnorr, schnorr.statement_for(0));
        CHECK(sim.mass.size() == 121);
        CHECK(dist::statistical_distance(real, sim) == 0);
    }
    SUBCASE("chaum_pedersen") {
        sigma::ChaumPedersen cp(kSmall, 4);
        const auto real = dist::real_distribution(cp, 3);
        const auto sim =
            dist::simulated_distribution(cp, cp.statement_for(3));
        CHECK(dist::statistical_distance(real, sim) == 0);
    }
}

TEST_CASE("conditioning on a commitment pins the nonce") {
    sigma::Schnorr schnorr(kSmall);
    const auto d = dist::real_distribution(schnorr, 3);

    ViewValues a9;
    a9.a = sigma::Commitment{9};
    const auto cond = dist::condition_on_view(d, a9);
    CHECK(cond.mass.size() == 11);
    CHECK(cond.is_normalized());
    for (const auto& [t, m] : cond.mass) {
        CHECK(m == Rational(1, 11));
        CHECK(t.a == sigma::Commitment{9});
        CHECK(t.z == (5 + 3 * t.e) % 11);  // r = dlog(9) = 5
    }
}

TEST_CASE("conditioning on the empty view is the identity") {
    sigma::Schnorr schnorr(kSmall);
    const auto d = dist::real_distribution(schnorr, 3);
    const auto cond = dist::condition_on_view(d, ViewValues{});
    CHECK(cond.mass == d.mass);
}

TEST_CASE("conditioning on (a, e) is a point mass") {
    sigma::Schnorr schnorr(kSmall);
    const auto d = dist::real_distribution(schnorr, 3);
    ViewValues v;
    v.a = sigma::Commitment{9};
    v.e = 4;
    const auto cond = dist::condition_on_view(d, v);
    REQUIRE(cond.mass.size() == 1);
    CHECK(cond.mass.begin()->first == sigma::Transcript{{9}, 4, 6});
    CHECK(cond.mass.begin()->second == 1);
}

TEST_CASE("conditioning on a zero-mass view is a domain error") {
    sigma::Schnorr schnorr(kSmall);
    const auto d = dist::real_distribution(schnorr, 3);
    ViewValues v;
    v.a = sigma::Commitment{9};
    v.e = 4;
    v.z = 7;  // the inconsistent triple
    CHECK_THROWS_AS(dist::condition_on_view(d, v), std::domain_error);
}

TEST_CASE("statistical distance basics") {
    sigma::Schnorr schnorr(kSmall);
    const auto d = dist::real_distribution(schnorr, 3);
    CHECK(dist::statistical_distance(d, d) == 0);

    dist::ExactDistribution p1, p2;
    p1.mass[sigma::Transcript{{9}, 4, 6}] = 1;
    p2.mass[sigma::Transcript{{9}, 4, 5}] = 1;
    CHECK(dist::statistical_distance(p1, p2) == 1);

    // symmetry, nonnegativity, triangle inequality on sampled triples
    const auto sim =
        dist::simulated_distribution(schnorr, schnorr.statement_for(3));
    const auto d2 = dist::real_distribution(schnorr, 5);
    const auto dv12 = dist::statistical_distance(d, d2);
    const auto dv1s = dist::statistical_distance(d, sim);
    const auto dv2s = dist::statistical_distance(d2, sim);
    CHECK(dv12 == dist::statistical_distance(d2, d));
    CHECK(dv12 >= 0);
    CHECK(dv12 <= dv1s + dv2s);
    CHECK(dv2s <= dv12 + dv1s);
}

TEST_CASE("distance is zero only for outcome-wise equal distributions") {
    sigma::Schnorr schnorr(kSmall);
    const auto d1 = dist::real_distribution(schnorr, 3);
    const auto d2 = dist::real_distribution(schnorr, 4);
    CHECK(dist::statistical_distance(d1, d2) > 0);
    CHECK(d1.mass != d2.mass);
}

TEST_CASE("marginals") {
    sigma::Schnorr schnorr(kSmall);
    const auto d = dist::real_distribution(schnorr, 3);

    SUBCASE("on {a}: uniform over the 11 subgroup elements") {
        const auto m =
            dist::marginal_on_shape(d, ViewShape{ViewShape::kA});
        CHECK(m.mass.size() == 11);
        for (const auto& [v, mass] : m.mass) {
            CHECK(mass == Rational(1, 11));
            CHECK(group::in_subgroup(kSmall, (*v.a)[0]));
        }
    }
    SUBCASE("on the full shape: the distribution itself") {
        const auto m = dist::marginal_on_shape(
            d, ViewShape{ViewShape::kA | ViewShape::kE | ViewShape::kZ});
        CHECK(m.mass.size() == d.mass.size());
        for (const auto& [v, mass] : m.mass) CHECK(mass == Rational(1, 121));
    }
    SUBCASE("on {e,z}: uniform over 121 pairs") {
        const auto m = dist::marginal_on_shape(
            d, ViewShape{ViewShape::kE | ViewShape::kZ});
        CHECK(m.mass.size() == 121);
        for (const auto& [v, mass] : m.mass) CHECK(mass == Rational(1, 121));
    }
    SUBCASE("total mass is preserved") {
        for (const ViewShape shape : view::all_shapes()) {
            CHECK(dist::marginal_on_shape(d, shape).total() == 1);
        }
    }
}

TEST_CASE("marginal distances: real and simulated agree shape by shape") {
    sigma::Schnorr schnorr(kSmall);
    const auto real = dist::real_distribution(schnorr, 3);
    const auto sim =
        dist::simulated_distribution(schnorr, schnorr.statement_for(3));
    for (const ViewShape shape : view::all_shapes()) {
        CHECK(dist::statistical_distance(
                  dist::marginal_on_shape(real, shape),
                  dist::marginal_on_shape(sim, shape)) == 0);
    }
    // a point mass against the uniform commitment marginal: 1 - 1/11
    dist::ViewDistribution point;
    ViewValues v;
    v.a = sigma::Commitment{9};
    point.mass[v] = 1;
    CHECK(dist::statistical_distance(
              dist::marginal_on_shape(real, ViewShape{ViewShape::kA}),
              point) == Rational(10, 11));
}

TEST_CASE("conditioning then marginalizing back gives a point mass") {
    sigma::Schnorr schnorr(kSmall);
    const auto d = dist::real_distribution(schnorr, 3);
    ViewValues v;
    v.a = sigma::Commitment{9};
    const auto cond = dist::condition_on_view(d, v);
    const auto m = dist::marginal_on_shape(cond, ViewShape{ViewShape::kA});
    REQUIRE(m.mass.size() == 1);
    CHECK(m.mass.begin()->first == v);
    CHECK(m.mass.begin()->second == 1);
}

TEST_CASE("rational parsing and rendering") {
    CHECK(dist::parse_rational("0/1") == 0);
    CHECK(dist::parse_rational("10/11") == Rational(10, 11));
    CHECK(dist::parse_rational("3") == 3);
    CHECK(dist::to_string(Rational(10, 11)) == "10/11");
    CHECK(dist::to_string(Rational(0)) == "0/1");
    CHECK_THROWS_AS(dist::parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(dist::parse_rational("a/b"), std::invalid_argument);
    CHECK_THROWS_AS(dist::parse_rational("-1/2"), std::invalid_argument);
}

TEST_CASE("distribution dumps are stable and labeled") {
    sigma::Schnorr schnorr(kSmall);
    const auto d = dist::real_distribution(schnorr, 3);
    const auto once = dist::dump_distribution(d);
    CHECK(once == dist::dump_distribution(d));
    CHECK(once.find("(a=9 e=4 z=6)  1/121") != std::string::npos);
}

TEST_CASE("scale guard rejects oversized orders") {
    // q = 1031 exceeds the enumeration bound; validate_group catches it
    const GroupParams big{2063, 1031, 4};
    sigma::Schnorr* proto = nullptr;
    CHECK_THROWS_AS(proto = new sigma::Schnorr(big), std::invalid_argument);
    (void)proto;
}

TEST_CASE("constant_z fault simulator skews the distribution") {
    sigma::Schnorr schnorr(kSmall);
    const auto lab = dist::TranscriptLab::make(
        schnorr, 3, dist::constant_z_simulator(schnorr));
    CHECK(dist::statistical_distance(lab.real, lab.simulated) > 0);
    for (const auto& [t, m] : lab.simulated.mass) CHECK(t.z == 0);
}
