#include "wh/mcnaughton.hpp"

#include "wh/chains.hpp"

#include "support.hpp"

#include <doctest.h>

#include <random>

using namespace wh;

namespace {

Rational pointwise(Operation op, const Rational& a, const Rational& b)
{
    switch (op) {
    case Operation::Mul: return max(a + b - 1, Rational(0));
    case Operation::Imp: return min(Rational(1) - a + b, Rational(1));
    case Operation::Meet: return min(a, b);
    case Operation::Join: return max(a, b);
    case Operation::Neg: break;
    }
    return Rational(0);
}

std::vector<Rational> grid(std::int64_t max_den)
{
    std::vector<Rational> out;
    for (std::int64_t d = 1; d <= max_den; ++d) {
        for (std::int64_t h = 0; h <= d; ++h) out.emplace_back(h, d);
    }
    return out;
}

}  // namespace

TEST_CASE("interpolation validates and merges collinear nodes")
{
    const auto f = PLFunction::parse("L(0,0;1/4,1/4;1/2,1/2;1,1)");
    CHECK(f == PLFunction::identity());
    CHECK(f.to_string() == "L(0,0;1,1)");
    CHECK(PLFunction::one().to_string() == "L(0,1;1,1)");
    CHECK_THROWS_AS(PLFunction::parse("L(0,0;1,1/2)"), PLError);      // f(1) != 1
    CHECK_THROWS_AS(PLFunction::parse("L(0,0;1/3,1/2;1,1)"), PLError);  // slope 3/2
    CHECK_THROWS_AS(PLFunction::parse("L(0,0;1/2,2;1,1)"), PLError);    // value above 1
    CHECK_THROWS_AS(PLFunction::parse("L(0,0;0,1;1,1)"), PLError);      // repeated abscissa
    CHECK_THROWS_AS(PLFunction::parse("L(1/2,0;1,1)"), PLError);        // does not start at 0
}

TEST_CASE("evaluation, pieces and germs")
{
    const auto f = PLFunction::parse("L(0,1;1/4,0;1/2,1;3/4,0;1,1)");
    CHECK(f.eval(Rational(1, 8)) == Rational(1, 2));
    CHECK(f.eval(Rational(1, 2)) == Rational(1));
    CHECK(f.piece_left(Rational(1, 2)) == Affine{Rational(4), Rational(-1)});
    CHECK(f.piece_right(Rational(1, 2)) == Affine{Rational(-4), Rational(3)});
    CHECK_FALSE(f.locally_one(Rational(1, 2)));
    CHECK(PLFunction::one().locally_one(Rational(1, 2)));
    const auto g = PLFunction::parse("L(0,0;1/2,1;1,1)");
    CHECK(g.locally_one(Rational(1)));
    CHECK(g.locally_one(Rational(3, 4)));
    CHECK_FALSE(g.locally_one(Rational(1, 2)));
    CHECK(g.same_germ(PLFunction::one(), Rational(1)));
    CHECK_FALSE(g.same_germ(PLFunction::one(), Rational(1, 2)));
    CHECK_THROWS_AS(pl_eval(f, Rational(2)), PLError);
    CHECK(f.longest_gap() == Rational(1, 2));
    CHECK(g.longest_gap() == Rational(1, 2));
    CHECK_FALSE(PLFunction::one().longest_gap().has_value());
}

TEST_CASE("operations agree with pointwise evaluation")
{
    std::mt19937_64 rng(11);
    const auto pts = grid(24);
    for (int n = 0; n < 60; ++n) {
        const auto f = term_to_pl(testing::random_term(rng, 4));
        const auto g = term_to_pl(testing::random_term(rng, 4));
        for (Operation op : kBinaryOps) {
            const auto h = pl_apply(op, f, g);
            for (const auto& q : pts) CHECK(h.eval(q) == pointwise(op, f.eval(q), g.eval(q)));
        }
    }
}

TEST_CASE("term functions agree with evaluation in finite chains")
{
    const auto terms = enumerate_terms({"x"}, 2, 5000);
    for (const auto& t : terms) {
        const auto f = term_to_pl(t);
        for (std::int64_t n : {1, 2, 3, 5, 6, 12}) {
            const auto d = ChainDescriptor::fin(n);
            for (const auto& x : elements(d)) {
                const Rational expected(eval_unary(d, t, x).a, n);
                CHECK(f.eval(Rational(x.a, n)) == expected);
            }
        }
    }
}

TEST_CASE("the function of (x -> x^2) -> x")
{
    const auto f = term_to_pl(parse_term("(x -> x*x) -> x"));
    CHECK(f.to_string() == "L(0,0;1/2,1;1,1)");
    CHECK_THROWS(term_to_pl(parse_term("x -> y")));
}

TEST_CASE("comb targets")
{
    const auto t = comb_targets(Presentation::parse("I=2; J=3"));
    CHECK(t.I == std::set<Rational>{Rational(1, 2)});
    CHECK(t.J == std::set<Rational>{Rational(0), Rational(1, 3), Rational(2, 3), Rational(1)});
    const auto k = comb_targets(Presentation::parse("I=1; K=omega"));
    CHECK(k.J == std::set<Rational>{Rational(1)});
    CHECK(fractions_with_denominators({4}) == std::set<Rational>{Rational(1, 4), Rational(3, 4)});
    CHECK(fractions_with_denominators({1}) == std::set<Rational>{Rational(0), Rational(1)});
}

TEST_CASE("is_comb examples")
{
    const auto two = Presentation::parse("I=2");
    const auto c = is_comb(PLFunction::one(), two);
    CHECK_FALSE(c.ok);
    CHECK(c.condition == 3);
    CHECK(c.violated == std::vector<int>{3, 4});
    CHECK(c.denominator == 3);

    const auto f = PLFunction::parse("L(0,1;1/4,0;3/4,0;7/8,1;1,1)");
    const auto ok = is_comb(f, Presentation::parse("I=1; K=omega"));
    CHECK(ok.ok);

    const auto spike = PLFunction::parse("L(0,1;1/4,0;1/2,1;3/4,0;1,1)");
    CHECK(is_comb(spike, two).ok);
    const auto missed = is_comb(spike, Presentation::parse("I=3"));
    CHECK_FALSE(missed.ok);
    CHECK(missed.condition == 2);
    CHECK(missed.violated == std::vector<int>{2, 4});

    CHECK_THROWS(is_comb(spike, Presentation::parse("I=2,4")));
}

TEST_CASE("combs are built and verified")
{
    for (const char* text : {"I=2", "I=2,3", "J=2", "I=3; J=2", "K=omega", "I=1; K=omega", "J=1", "I=4,6; K=omega"}) {
        const auto p = Presentation::parse(text);
        const auto f = make_comb(p);
        CAPTURE(text);
        CHECK(is_comb(f, p).ok);
    }
}

TEST_CASE("the condition-4 cutoff is sound")
{
    std::mt19937_64 rng(5);
    for (int n = 0; n < 200; ++n) {
        const auto f = term_to_pl(testing::random_term(rng, 5));
        const auto cutoff = condition4_cutoff(f);
        if (!cutoff) {
            CHECK(f.identically_one());
            continue;
        }
        for (std::int64_t d = *cutoff; d <= 60; ++d) {
            bool some = false;
            for (std::int64_t h = 0; h < d && !some; ++h) some = f.eval(Rational(h, d)) != 1;
            CHECK(some);
            CHECK(condition4_holds_at(f, d) == some);
        }
    }
}
