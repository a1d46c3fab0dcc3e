#include "wh/bdelta.hpp"

#include "support.hpp"

#include <doctest.h>

#include <numeric>
#include <random>

using namespace wh;

namespace {

std::vector<DeltaEntry> delta_oracle(const Presentation& p)
{
    std::vector<DeltaEntry> out;
    for (auto k : divisor_closure(p.I)) {
        for (std::int64_t h = 0; h < k; ++h) {
            if (std::gcd(k, h) == 1) out.push_back({k, h, 2});
        }
    }
    for (auto k : divisor_closure(p.J)) {
        for (std::int64_t h = 0; h < k; ++h) {
            if (std::gcd(k, h) != 1) continue;
            out.push_back({k, h, 0});
            out.push_back({k, h, 1});
        }
    }
    if (p.K && p.J.empty()) out.push_back({0, 0, 3});
    return out;
}

std::vector<Element> sample(const ChainDescriptor& d)
{
    std::vector<Element> out;
    if (d.kind == ChainDescriptor::Kind::Fin) return elements(d);
    if (d.kind == ChainDescriptor::Kind::NegCone) {
        for (std::int64_t z = -5; z <= 0; ++z) out.push_back(make_element(d, z));
        return out;
    }
    for (std::int64_t a = 0; a <= d.n; ++a) {
        for (std::int64_t b = -3; b <= 3; ++b) {
            if (contains(d, a, b)) out.push_back(make_element(d, a, b));
        }
    }
    return out;
}

}  // namespace

TEST_CASE("the index set Delta")
{
    for (const auto& p : testing::reduced_presentations(6, 2)) {
        const auto delta = delta_index(p);
        CHECK(delta.entries == delta_oracle(p));
        const auto alg = delta.algebra();
        REQUIRE(alg.factors.size() == delta.entries.size());
        for (std::size_t c = 0; c < delta.entries.size(); ++c) CHECK(alg.factors[c] == delta.entries[c].factor());
    }
    const auto d = delta_index(Presentation::parse("I=2; J=3"));
    CHECK(d.find(3, 2, 1).has_value());
    CHECK_FALSE(d.find(3, 1, 2).has_value());
}

TEST_CASE("g_{k,h}")
{
    CHECK(g_kh(1, 0).to_string() == "(0,1)");
    CHECK(g_kh(2, 1).to_string() == "(1,0)");
    CHECK(g_kh(5, 2).to_string() == "(2,1)");
    CHECK(g_kh(3, 2).to_string() == "(1,1)");
    CHECK_THROWS(g_kh(4, 2));
    for (std::int64_t k = 2; k <= 30; ++k) {
        for (std::int64_t h = 0; h < k; ++h) {
            if (std::gcd(k, h) != 1) continue;
            const Element g = g_kh(k, h);
            CHECK(std::abs(g.a * h - g.b * k) == 1);
            CHECK(leq(g, neg(g.chain, g)));
            if (k > 6) continue;
            // g generates L(k,h): the closure reaches the atom of the radical.
            const auto sub = generate_subalgebra(g.chain, {g}, 500);
            bool has_atom = false;
            for (const auto& e : sub.elements) has_atom = has_atom || (e.a == 0 && e.b == 1);
            CAPTURE(g.to_string());
            CHECK(has_atom);
        }
    }
}

TEST_CASE("canonical generator coordinates")
{
    const auto cg = canonical_generator(Presentation::parse("I=2; J=3"));
    CHECK(cg.g.to_string() == "[0, 1, (0,1), (1,-1), (1,0), (2,1), (1,1), (2,1)]");
    const auto k = canonical_generator(Presentation::parse("I=1; K=omega"));
    CHECK(k.g.to_string() == "[0, -1]");
}

TEST_CASE("functions of terms evaluated at chain elements")
{
    std::vector<ChainDescriptor> chains{ChainDescriptor::neg_cone()};
    for (std::int64_t n = 1; n <= 5; ++n) {
        chains.push_back(ChainDescriptor::fin(n));
        for (std::int64_t k = 0; k < n; ++k) chains.push_back(ChainDescriptor::lex(n, k));
    }
    std::vector<Term> terms = enumerate_terms({"x"}, 2, 5000);
    std::mt19937_64 rng(3);
    for (int n = 0; n < 200; ++n) terms.push_back(testing::random_term(rng, 5));
    for (const auto& t : terms) {
        const auto f = term_to_pl(t);
        for (const auto& d : chains) {
            for (const auto& x : sample(d)) {
                CAPTURE(print_term(t));
                CAPTURE(x.to_string());
                CHECK(pl_apply_at(f, x) == eval_unary(d, t, x));
            }
        }
    }
}

TEST_CASE("embedding reports")
{
    const auto e1 = verify_embed_finite_chain(Presentation::parse("I=2; J=3"), 2);
    CHECK(e1.status == EmbedStatus::Verified);
    CHECK(e1.closure_size == 3u);

    const auto e1k = verify_embed_finite_chain(Presentation::parse("I=1; K=omega"), 1);
    CHECK(e1k.status == EmbedStatus::Verified);
    CHECK(e1k.witness_function == "L(0,0;1/2,1;1,1)");

    const auto e2 = verify_embed_comega(Presentation::parse("I=2,3; K=omega"));
    CHECK(e2.status == EmbedStatus::Verified);
    CHECK(embed2_witness(Presentation::parse("I=2,3; K=omega")) ==
          term_to_pl(Term::imp(power(Term::var("x"), 6), power(Term::var("x"), 7))));
    CHECK_THROWS(verify_embed_comega(Presentation::parse("J=2")));

    const auto e3 = verify_embed_lj1(Presentation::parse("I=3; J=2"), 2, 3);
    CHECK(e3.status == EmbedStatus::VerifiedBounded);
    CHECK_FALSE(e3.gispert_witness.empty());
    CHECK_THROWS(verify_embed_lj1(Presentation::parse("I=3; J=2"), 5, 3));
}

TEST_CASE("term equalities transfer between a chain and a product")
{
    const auto l = ChainDescriptor::lex(2, 1);
    const ProductAlgebra same{{l}};
    CHECK(same_term_equalities(l, g_kh(2, 1), same, ProductElement{{g_kh(2, 1)}}, 2));
    CHECK_FALSE(same_term_equalities(l, g_kh(2, 1), same, ProductElement{{top(l)}}, 2));
    const auto u = gispert_witness(1, 3);
    REQUIRE(u.has_value());
}
