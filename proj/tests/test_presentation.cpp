#include "wh/presentation.hpp"

#include "support.hpp"

#include <doctest.h>

using namespace wh;

TEST_CASE("parsing and printing presentations")
{
    const auto p = Presentation::parse("I=2,3; J=5; K=omega");
    CHECK(p.I == IndexSet{2, 3});
    CHECK(p.J == IndexSet{5});
    CHECK(p.K);
    CHECK(p.to_string() == "I=2,3; J=5; K=omega");
    CHECK(Presentation::parse("J=2").label() == "V(∅;2;∅)");
    CHECK(Presentation::parse("K=w").K);
    CHECK_THROWS(Presentation::parse("I=0"));
    CHECK_THROWS(Presentation::parse("X=2"));
}

TEST_CASE("divisor closure and lcm")
{
    CHECK(divisor_closure({6, 4}) == IndexSet{1, 2, 3, 4, 6});
    CHECK(divisor_closure({}) == IndexSet{});
    CHECK(lcm_of({4, 6}) == 12);
    CHECK(lcm_of({}) == 1);
}

TEST_CASE("reducedness agrees with the bullet conditions")
{
    for (const auto& I : testing::subsets_up_to(6, 6)) {
        for (const auto& J : testing::subsets_up_to(6, 6)) {
            for (bool K : {false, true}) {
                const Presentation p{I, J, K};
                CHECK(is_reduced(p) == testing::reduced_oracle(I, J, K));
            }
        }
    }
}

TEST_CASE("reduce keeps the variety")
{
    CHECK(reduce(Presentation::parse("I=2,4; J=8; K=omega")) == Presentation::parse("J=8"));
    CHECK(reduce(Presentation::parse("I=3,5; J=2,4")) == Presentation::parse("I=3,5; J=4"));
    CHECK(reduce(Presentation::parse("I=1,2,3")) == Presentation::parse("I=2,3"));
    CHECK_THROWS(reduce(Presentation{}));
    for (const auto& I : testing::subsets_up_to(5, 5)) {
        for (const auto& J : testing::subsets_up_to(5, 5)) {
            for (bool K : {false, true}) {
                const Presentation p{I, J, K};
                if (p.empty()) continue;
                const Presentation r = reduce(p);
                CHECK(is_reduced(r));
                CHECK(testing::variety_leq_oracle(p, r));
                CHECK(testing::variety_leq_oracle(r, p));
            }
        }
    }
}

TEST_CASE("membership and inclusion agree with embeddability")
{
    const auto all = testing::reduced_presentations(6);
    std::vector<ChainDescriptor> chains{ChainDescriptor::neg_cone()};
    for (std::int64_t n = 1; n <= 8; ++n) {
        chains.push_back(ChainDescriptor::fin(n));
        for (std::int64_t k = 0; k < n; ++k) chains.push_back(ChainDescriptor::lex(n, k));
    }
    for (const auto& p : all) {
        for (const auto& c : chains) CHECK(variety_member(c, p) == testing::member_oracle(c, p));
    }
    for (const auto& p : all) {
        for (const auto& q : all) CHECK(variety_leq(p, q) == testing::variety_leq_oracle(p, q));
    }
}

TEST_CASE("inclusion is a partial order on reduced presentations")
{
    const auto all = testing::reduced_presentations(4);
    for (const auto& p : all) {
        CHECK(variety_leq(p, p));
        for (const auto& q : all) {
            if (p != q) CHECK_FALSE((variety_leq(p, q) && variety_leq(q, p)));
            if (!variety_leq(p, q)) continue;
            for (const auto& r : all) {
                if (variety_leq(q, r)) CHECK(variety_leq(p, r));
            }
        }
    }
}

TEST_CASE("structurality and structural cores")
{
    CHECK(is_structural_variety(Presentation::parse("I=2,3")));
    CHECK(is_structural_variety(Presentation::parse("I=2; J=1")));
    CHECK(is_structural_variety(Presentation::parse("K=omega")));
    CHECK_FALSE(is_structural_variety(Presentation::parse("J=2")));
    CHECK(structural_core(Presentation::parse("I=3; J=2")).to_string() == "Q[I=3; J=2]");
    CHECK(structural_core(Presentation::parse("I=3; K=omega")).to_string() == "Q(I=3; K=omega)");
    for (const auto& p : testing::reduced_presentations(5)) {
        const auto core = structural_core(p);
        for (const auto& g : core.generators()) CHECK(variety_member(g, p));
        // The core generates V(P): every generator of P lies in the variety of the core's chains.
        Presentation from_core;
        for (const auto& g : core.generators()) {
            if (g.kind == ChainDescriptor::Kind::Fin) from_core.I.insert(g.n);
            else if (g.kind == ChainDescriptor::Kind::Lex) from_core.J.insert(g.n);
            else from_core.K = true;
        }
        CHECK(testing::variety_leq_oracle(p, from_core));
    }
}

TEST_CASE("quasivariety order")
{
    const auto q = [](const char* s) {
        const auto p = Presentation::parse(s);
        return QuasiDescriptor::bracket(p.I, p.J);
    };
    CHECK(quasi_leq(q("J=2"), q("I=2; J=2")));
    CHECK_FALSE(quasi_leq(q("I=2; J=2"), q("J=2")));
    CHECK(quasi_leq(q("I=1"), q("J=3")));
    CHECK_THROWS(QuasiDescriptor::bracket({}, {}));
    CHECK_THROWS(quasi_leq(QuasiDescriptor::qv(Presentation::parse("I=2")), q("I=2")));
    const auto sets = testing::subsets_up_to(8, 2);
    for (const auto& I : sets) {
        for (const auto& J : sets) {
            if (I.empty() && J.empty()) continue;
            for (const auto& I2 : sets) {
                for (const auto& J2 : sets) {
                    if (I2.empty() && J2.empty()) continue;
                    CHECK(quasi_leq(QuasiDescriptor::bracket(I, J), QuasiDescriptor::bracket(I2, J2)) ==
                          testing::quasi_leq_oracle(I, J, I2, J2));
                }
            }
        }
    }
}

TEST_CASE("primitivity")
{
    CHECK(primitivity(QuasiDescriptor::qv(Presentation::parse("I=2,3"))).verdict == Primitivity::Primitive);
    CHECK(primitivity(QuasiDescriptor::bracket({}, {2})).verdict == Primitivity::Primitive);
    CHECK(primitivity(QuasiDescriptor::bracket({2}, {2})).verdict == Primitivity::NotPrimitive);
    CHECK(primitivity(QuasiDescriptor::bracket({}, {2, 3})).verdict == Primitivity::Unknown);
    CHECK(primitivity(QuasiDescriptor::qv(Presentation::parse("J=1"))).verdict == Primitivity::Primitive);
    CHECK(primitivity(QuasiDescriptor::qv(Presentation::parse("J=6"))).verdict == Primitivity::NotPrimitive);
    CHECK(primitivity(QuasiDescriptor::bracket({4}, {6})).verdict == Primitivity::NotPrimitive);
}

TEST_CASE("small subvariety lattices")
{
    const auto chain = subvariety_lattice(Presentation::parse("I=2"));
    CHECK(chain.nodes.size() == 3);
    CHECK(chain.covers.size() == 2);

    const auto square = subvariety_lattice(Presentation::parse("I=1; K=omega"));
    CHECK(square.nodes.size() == 4);
    CHECK(square.covers.size() == 4);

    const auto lat = subvariety_lattice(Presentation::parse("J=2"));
    const auto a = lat.find(Presentation::parse("I=2; K=omega"));
    const auto b = lat.find(Presentation::parse("J=1"));
    REQUIRE(a);
    REQUIRE(b);
    for (const auto& [lo, hi] : lat.covers) {
        CHECK_FALSE((lo == *a && hi == *b));
        CHECK_FALSE((lo == *b && hi == *a));
    }
    CHECK_FALSE(variety_leq(Presentation::parse("I=2; K=omega"), Presentation::parse("J=1")));
    CHECK_FALSE(variety_leq(Presentation::parse("J=1"), Presentation::parse("I=2; K=omega")));

    // Every node is a reduced presentation below the top, and covers are exactly
    // the Hasse diagram of variety_leq.
    for (std::size_t i = 1; i < lat.nodes.size(); ++i) {
        CHECK(is_reduced(*lat.nodes[i]));
        CHECK(variety_leq(*lat.nodes[i], Presentation::parse("J=2")));
    }
    const auto dot = lat.to_dot();
    CHECK(dot.find("digraph") == 0);
    CHECK(dot.find("V(∅;2;∅)") != std::string::npos);
}
