#include "wh/bdelta.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace wh {

namespace {

using Kind = ChainDescriptor::Kind;

std::int64_t product_of(const IndexSet& s)
{
    std::int64_t m = 1;
    for (auto v : s) {
        if (__builtin_mul_overflow(m, v, &m)) throw std::overflow_error("product of indices overflows");
    }
    return m;
}

bool is_top(const Element& e) { return e == top(e.chain); }

bool is_bottom(const Element& e) { return e.chain.bounded() && e == bottom(e.chain); }

std::int64_t checked(const Rational& r, const char* what)
{
    if (!r.is_integer()) throw std::logic_error(std::string(what) + ": non-integral value " + r.to_string());
    return r.to_int64();
}

std::vector<std::string> describe(const DeltaIndex& delta, const ProductElement& x)
{
    std::vector<std::string> out;
    out.reserve(delta.entries.size());
    for (std::size_t c = 0; c < delta.entries.size(); ++c) {
        out.push_back(delta.entries[c].to_string() + "=" + x.coords[c].to_string());
    }
    return out;
}

bool is_chain(const ProductAlgebra& alg, const std::vector<ProductElement>& elems)
{
    for (std::size_t i = 0; i < elems.size(); ++i) {
        for (std::size_t j = i + 1; j < elems.size(); ++j) {
            if (!leq(alg, elems[i], elems[j]) && !leq(alg, elems[j], elems[i])) return false;
        }
    }
    return true;
}

// The coordinates where f(g-bar) is predicted to be bottom; top everywhere else.
std::optional<std::string> check_pattern(const DeltaIndex& delta, const ProductElement& value,
                                         const std::set<DeltaEntry>& zeros)
{
    for (std::size_t c = 0; c < delta.entries.size(); ++c) {
        const auto& e = delta.entries[c];
        const Element& v = value.coords[c];
        const bool want_zero = zeros.contains(e);
        if (want_zero ? !is_bottom(v) : !is_top(v)) {
            return "coordinate " + e.to_string() + " is " + v.to_string() + ", expected " +
                   (want_zero ? "bottom" : "top");
        }
    }
    return std::nullopt;
}

// Elements reachable from the generator by terms of depth <= depth, by level.
template <class Alg>
std::vector<element_t<Alg>> depth_closure(const Alg& alg, const element_t<Alg>& x, int depth)
{
    using E = element_t<Alg>;
    std::vector<E> found{x};
    std::unordered_set<E, typename AlgebraTraits<Alg>::hash> seen{x};
    if (seen.insert(top(alg)).second) found.push_back(top(alg));
    for (int d = 1; d <= depth; ++d) {
        const std::size_t n = found.size();
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                for (Operation op : kBinaryOps) {
                    E r = apply(alg, op, found[i], found[j]);
                    if (seen.insert(r).second) found.push_back(std::move(r));
                }
            }
        }
    }
    return found;
}

}  // namespace

ChainDescriptor DeltaEntry::factor() const
{
    switch (i) {
    case 0:
    case 1: return ChainDescriptor::lex(k, h);
    case 2: return ChainDescriptor::fin(k);
    case 3: return ChainDescriptor::neg_cone();
    }
    throw std::logic_error("bad Delta entry " + to_string());
}

std::string DeltaEntry::to_string() const
{
    return "(" + std::to_string(k) + "," + std::to_string(h) + "," + std::to_string(i) + ")";
}

ProductAlgebra DeltaIndex::algebra() const
{
    ProductAlgebra alg;
    for (const auto& e : entries) alg.factors.push_back(e.factor());
    return alg;
}

std::optional<std::size_t> DeltaIndex::find(std::int64_t k, std::int64_t h, int i) const
{
    const DeltaEntry key{k, h, i};
    auto it = std::find(entries.begin(), entries.end(), key);
    if (it == entries.end()) return std::nullopt;
    return static_cast<std::size_t>(it - entries.begin());
}

DeltaIndex delta_index(const Presentation& p)
{
    require_reduced(p, "delta_index");
    DeltaIndex delta;
    for (auto k : divisor_closure(p.I)) {
        for (std::int64_t h = 0; h < k; ++h) {
            if (std::gcd(k, h) == 1) delta.entries.push_back({k, h, 2});
        }
    }
    for (auto k : divisor_closure(p.J)) {
        for (std::int64_t h = 0; h < k; ++h) {
            if (std::gcd(k, h) != 1) continue;
            delta.entries.push_back({k, h, 0});
            delta.entries.push_back({k, h, 1});
        }
    }
    if (p.J.empty() && p.K) delta.entries.push_back({0, 0, 3});
    return delta;
}

Element g_kh(std::int64_t k, std::int64_t h)
{
    if (k < 1 || h < 0 || std::gcd(k, h) != 1 || (h >= k && !(k == 1 && h == 0))) {
        throw std::invalid_argument("g_kh needs 0 <= h < k with gcd(k,h) = 1");
    }
    const auto d = ChainDescriptor::lex(k, h);
    if (k == 1) return make_element(d, 0, 1);
    // r*h = s*k +- 1 has a solution with 0 < r < k because h is a unit mod k.
    std::optional<Element> best;
    for (std::int64_t r = 1; r < k; ++r) {
        for (std::int64_t sign : {-1, 1}) {
            const std::int64_t num = r * h + sign;
            if (num % k != 0) continue;
            const Element cand = make_element(d, r, num / k);
            const Element complement = make_element(d, k - r, h - num / k);
            const Element pick = leq(cand, complement) ? cand : complement;
            if (!best || pick < *best) best = pick;
        }
    }
    if (!best) throw std::logic_error("g_kh: no solution of the determinant equation");
    return *best;
}

CanonicalGenerator canonical_generator(const Presentation& p)
{
    CanonicalGenerator out;
    out.delta = delta_index(p);
    out.algebra = out.delta.algebra();
    for (const auto& e : out.delta.entries) {
        const ChainDescriptor d = e.factor();
        switch (e.i) {
        case 0: out.g.coords.push_back(g_kh(e.k, e.h)); break;
        case 1: out.g.coords.push_back(neg(d, g_kh(e.k, e.h))); break;
        case 2: out.g.coords.push_back(make_element(d, e.h)); break;
        case 3: out.g.coords.push_back(make_element(d, -1)); break;
        default: throw std::logic_error("bad Delta entry");
        }
    }
    return out;
}

Element pl_apply_at(const PLFunction& f, const Element& x)
{
    const ChainDescriptor& d = x.chain;
    switch (d.kind) {
    case Kind::Fin: return make_element(d, checked(Rational(d.n) * f.eval(Rational(x.a, d.n)), "pl_apply_at"));
    case Kind::Lex: {
        const Rational x0(x.a, d.n);
        // x sits infinitesimally to the right of r/k when s*k - r*h > 0, to the left when < 0.
        const std::int64_t side = x.b * d.n - x.a * d.k;
        Affine piece;
        if (side > 0 || (side == 0 && x0 < 1)) piece = f.piece_right(x0);
        else piece = f.piece_left(x0);
        const std::int64_t m = checked(piece.slope, "pl_apply_at");
        const std::int64_t b = checked(piece.intercept, "pl_apply_at");
        return make_element(d, m * x.a + b * d.n, m * x.b + b * d.k);
    }
    case Kind::NegCone: {
        if (x.a == 0) return x;
        const std::int64_t m = checked(f.piece_left(1).slope, "pl_apply_at");
        return make_element(d, m * x.a);
    }
    }
    throw std::logic_error("unknown chain kind");
}

ProductElement pl_apply_at(const PLFunction& f, const ProductElement& x)
{
    ProductElement out;
    out.coords.reserve(x.coords.size());
    for (const auto& c : x.coords) out.coords.push_back(pl_apply_at(f, c));
    return out;
}

// ---------------------------------------------------------------------------
// Witness functions

PLFunction embed1_witness(const Presentation& p, std::int64_t a)
{
    if (p.I.contains(1)) return PLFunction::parse("L(0,0;1/2,1;1,1)");
    const std::int64_t m = product_of(set_union(p.I, p.J));
    const Rational c(1, a), e(1, 2 * m);
    return PLFunction::interpolate({{0, 1}, {c - e, 1}, {c, 0}, {c + e, 1}, {1, 1}});
}

PLFunction embed2_witness(const Presentation& p)
{
    // Nodes (0,1), ((m-1)/m,1), (m/(m+1), m/(m+1)), (1,1); the first two merge when m = 1.
    const std::int64_t m = product_of(p.I);
    std::vector<PLNode> nodes{{0, 1}};
    if (m > 1) nodes.push_back({Rational(m - 1, m), 1});
    nodes.push_back({Rational(m, m + 1), Rational(m, m + 1)});
    nodes.push_back({1, 1});
    return PLFunction::interpolate(std::move(nodes));
}

PLFunction embed3_witness(const Presentation& p, std::int64_t j)
{
    if (j == 1) {
        const std::int64_t m = product_of(p.I);
        return PLFunction::interpolate({{0, 0}, {Rational(1, 3 * m), 0}, {Rational(2, 3 * m), 1}, {1, 1}});
    }
    const std::int64_t m = product_of(set_union(p.I, p.J));
    const Rational c(1, j), e(1, 3 * m);
    return PLFunction::interpolate({{0, 1}, {c - 2 * e, 1}, {c - e, 0}, {c + e, 0}, {c + 2 * e, 1}, {1, 1}});
}

// ---------------------------------------------------------------------------
// Embedding theorems

const char* embed_status_name(EmbedStatus s)
{
    switch (s) {
    case EmbedStatus::Verified: return "Verified";
    case EmbedStatus::VerifiedBounded: return "VerifiedBounded";
    case EmbedStatus::Failed: return "Failed";
    }
    return "?";
}

EmbedReport verify_embed_finite_chain(const Presentation& p, std::int64_t a)
{
    require_reduced(p, "verify_embed_finite_chain");
    if (!p.I.contains(a)) throw std::invalid_argument("verify_embed_finite_chain: a must belong to I");
    const CanonicalGenerator cg = canonical_generator(p);
    EmbedReport rep;
    rep.theorem = "embed1";
    rep.presentation = p;
    rep.index = a;
    auto fail = [&](std::string reason) {
        rep.status = EmbedStatus::Failed;
        rep.reason = std::move(reason);
        return rep;
    };

    ProductElement generator;
    if (a == 1 && !p.K) {
        // B_Delta is L_1 itself.
        generator = cg.g;
    } else if (a == 1) {
        const PLFunction f = embed1_witness(p, a);
        rep.witness_function = f.to_string();
        const PLFunction from_term = term_to_pl(parse_term("(x -> x*x) -> x"));
        if (from_term != f) return fail("(x -> x*x) -> x has function " + from_term.to_string());
        generator = pl_apply_at(f, cg.g);
        rep.coordinates = describe(cg.delta, generator);
        if (auto bad = check_pattern(cg.delta, generator, {DeltaEntry{1, 0, 2}})) return fail(*bad);
    } else {
        const PLFunction f = embed1_witness(p, a);
        rep.witness_function = f.to_string();
        const ProductElement fg = pl_apply_at(f, cg.g);
        rep.coordinates = describe(cg.delta, fg);
        if (auto bad = check_pattern(cg.delta, fg, {DeltaEntry{a, 1, 2}})) return fail(*bad);
        generator = apply(cg.algebra, Operation::Join, cg.g, fg);
    }
    rep.generator = generator.to_string();

    const auto closure = generate_subalgebra(cg.algebra, {generator}, static_cast<std::size_t>(a) + 2);
    if (!closure.finite) return fail("the generated subalgebra has more than " + std::to_string(a + 1) + " elements");
    rep.closure_size = closure.elements.size();
    if (closure.elements.size() != static_cast<std::size_t>(a) + 1) {
        return fail("the generated subalgebra has " + std::to_string(closure.elements.size()) + " elements, expected " +
                    std::to_string(a + 1));
    }
    if (!is_chain(cg.algebra, closure.elements)) return fail("the generated subalgebra is not a chain");
    rep.status = EmbedStatus::Verified;
    return rep;
}

EmbedReport verify_embed_comega(const Presentation& p)
{
    require_reduced(p, "verify_embed_comega");
    if (!p.K || !p.J.empty()) throw std::invalid_argument("verify_embed_comega needs P = (I, {}, {omega})");
    const CanonicalGenerator cg = canonical_generator(p);
    EmbedReport rep;
    rep.theorem = "embed2";
    rep.presentation = p;
    auto fail = [&](std::string reason) {
        rep.status = EmbedStatus::Failed;
        rep.reason = std::move(reason);
        return rep;
    };

    ProductElement generator = cg.g;
    if (!p.I.empty()) {
        const PLFunction f = embed2_witness(p);
        rep.witness_function = f.to_string();
        const std::int64_t m = product_of(p.I);
        const Term x = Term::var("x");
        const PLFunction from_term = term_to_pl(Term::imp(power(x, static_cast<int>(m)), power(x, static_cast<int>(m + 1))));
        if (from_term != f) return fail("x^m -> x^(m+1) has function " + from_term.to_string());
        generator = pl_apply_at(f, cg.g);
        rep.coordinates = describe(cg.delta, generator);
    }
    rep.generator = generator.to_string();
    for (std::size_t c = 0; c < cg.delta.entries.size(); ++c) {
        const Element& v = generator.coords[c];
        if (cg.delta.entries[c].i == 3 ? v.a != -1 : !is_top(v)) {
            return fail("coordinate " + cg.delta.entries[c].to_string() + " is " + v.to_string());
        }
    }
    // Every other coordinate is top, so the subalgebra is a copy of the one c generates.
    const auto closure = generate_subalgebra(cg.algebra, {generator}, 64);
    if (closure.finite) return fail("the generated subalgebra is finite");
    for (const auto& e : closure.elements) {
        for (std::size_t c = 0; c < cg.delta.entries.size(); ++c) {
            if (cg.delta.entries[c].i != 3 && !is_top(e.coords[c])) {
                return fail("closure element " + e.to_string() + " leaves the top of a finite factor");
            }
        }
    }
    rep.status = EmbedStatus::Verified;
    return rep;
}

static std::optional<PLFunction> germ_function(std::int64_t j, std::int64_t c, std::int64_t m1, std::int64_t m2)
{
    const Rational p(1, j);
    const Rational v(c, j);
    const Rational b1((c - m1) / j);
    const Rational b2((c - m2) / j);
    std::vector<PLNode> nodes;
    if (b1 >= 0 && b1 <= 1) {
        nodes.push_back({0, b1});
    } else {
        const Rational level = b1 > 1 ? Rational(1) : Rational(0);
        const Rational hit = (level - b1) / Rational(m1);
        if (hit >= p) return std::nullopt;
        nodes.push_back({0, level});
        nodes.push_back({hit, level});
    }
    nodes.push_back({p, v});
    auto line = [&](const Rational& x) { return Rational(m2) * x + b2; };
    Rational end = 1;
    if (m2 > 0 && line(1) > 1) end = (Rational(1) - b2) / Rational(m2);
    if (m2 < 0 && line(1) < 0) end = (Rational(0) - b2) / Rational(m2);
    if (end <= p) return std::nullopt;
    auto first_break = [](const Rational& above, bool strict) {
        std::int64_t s = 2;
        while (strict ? Rational(s - 1, s) <= above : Rational(s - 1, s) < above) ++s;
        return Rational(s - 1, s);
    };
    const Rational kink = first_break(p, true);
    if (end == 1 && line(1) == 1) {
        nodes.push_back({1, 1});
    } else if (kink <= end) {
        nodes.push_back({kink, line(kink)});
        nodes.push_back({1, 1});
    } else {
        nodes.push_back({end, line(end)});
        if (line(end) == 0) {
            const Rational rise = first_break(end, false);
            if (rise != end) nodes.push_back({rise, 0});
        }
        nodes.push_back({1, 1});
    }
    try {
        return PLFunction::interpolate(std::move(nodes));
    } catch (const PLError&) {
        return std::nullopt;
    }
}

bool same_term_equalities(const ChainDescriptor& a, const Element& x, const ProductAlgebra& b,
                          const ProductElement& y, int depth)
{
    // The pairs (p(x), p(y)) for terms p of depth <= d, built level by level; the
    // claim holds at depth d exactly when these pairs form a bijection.
    std::unordered_map<Element, ProductElement, ElementHash> forward;
    std::unordered_map<ProductElement, Element, ProductElementHash> backward;
    std::vector<std::pair<Element, ProductElement>> pairs;
    auto add = [&](const Element& u, const ProductElement& v) {
        auto f = forward.find(u);
        if (f != forward.end()) return f->second == v ? 0 : -1;
        if (backward.contains(v)) return -1;
        forward.emplace(u, v);
        backward.emplace(v, u);
        pairs.emplace_back(u, v);
        return 1;
    };
    if (add(x, y) < 0 || add(top(a), top(b)) < 0) return false;
    for (int d = 1; d <= depth; ++d) {
        const std::size_t n = pairs.size();
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                for (Operation op : kBinaryOps) {
                    const Element u = apply(a, op, pairs[i].first, pairs[j].first);
                    const ProductElement v = apply(b, op, pairs[i].second, pairs[j].second);
                    if (add(u, v) < 0) return false;
                }
            }
        }
    }
    return true;
}

std::optional<GispertWitness> gispert_witness(std::int64_t j, int depth)
{
    if (j < 1 || depth < 0) throw std::invalid_argument("gispert_witness needs j >= 1 and depth >= 0");
    static std::mutex mutex;
    static std::map<std::pair<std::int64_t, int>, std::optional<GispertWitness>> cache;
    {
        std::lock_guard lock(mutex);
        auto it = cache.find({j, depth});
        if (it != cache.end()) return it->second;
    }

    ChainDescriptor target;
    Element g;
    ProductAlgebra host;
    ProductElement d;
    if (j == 1) {
        target = ChainDescriptor::lex(1, 1);
        g = make_element(target, 0, 1);
        host.factors = {ChainDescriptor::lex(1, 0)};
        d.coords = {make_element(host.factors[0], 0, 1)};
    } else {
        target = ChainDescriptor::lex(j, 1);
        g = g_kh(j, 1);
        host.factors = {ChainDescriptor::lex(j, 1), ChainDescriptor::lex(j, j - 1)};
        d.coords = {make_element(host.factors[0], 1, 0), make_element(host.factors[1], 1, 1)};
    }
    // Elements of D_j are f(d) for McNaughton functions f; besides short terms, try
    // functions with prescribed value and integer slopes on both sides of 1/j.
    std::map<ProductElement, std::string> functions;
    if (j > 1) {
        const std::int64_t bound = j + 1;
        for (std::int64_t c = 0; c <= j; ++c) {
            for (std::int64_t m1 = -bound; m1 <= bound; ++m1) {
                if ((c - m1) % j != 0) continue;
                for (std::int64_t m2 = -bound; m2 <= bound; ++m2) {
                    if ((c - m2) % j != 0) continue;
                    if (auto f = germ_function(j, c, m1, m2)) functions.emplace(pl_apply_at(*f, d), f->to_string());
                }
            }
        }
    }
    auto candidates = depth_closure(host, d, std::min(depth, 2));
    for (const auto& [u, text] : functions) candidates.push_back(u);
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    std::optional<GispertWitness> found;
    for (const auto& u : candidates) {
        if (same_term_equalities(target, g, host, u, depth)) {
            auto it = functions.find(u);
            found = GispertWitness{u, it == functions.end() ? std::string() : it->second};
            break;
        }
    }
    std::lock_guard lock(mutex);
    cache[{j, depth}] = found;
    return found;
}

EmbedReport verify_embed_lj1(const Presentation& p, std::int64_t j, int depth)
{
    require_reduced(p, "verify_embed_lj1");
    if (!p.J.contains(j)) throw std::invalid_argument("verify_embed_lj1: j must belong to J");
    if (depth < 1) throw std::invalid_argument("verify_embed_lj1: depth must be >= 1");
    const CanonicalGenerator cg = canonical_generator(p);
    EmbedReport rep;
    rep.theorem = "embed3";
    rep.presentation = p;
    rep.index = j;
    rep.depth = depth;
    auto fail = [&](std::string reason) {
        rep.status = EmbedStatus::Failed;
        rep.reason = std::move(reason);
        return rep;
    };

    // (a) the coordinates of f(g-bar). Besides the zeros named in the proof, f also
    // vanishes at L_j-coordinates sitting over the same point 1/j (and at (2,1,1) when
    // j = 2, where g and neg g both lie over 1/2).
    const PLFunction f = embed3_witness(p, j);
    rep.witness_function = f.to_string();
    const ProductElement fg = pl_apply_at(f, cg.g);
    rep.coordinates = describe(cg.delta, fg);
    std::set<DeltaEntry> zeros;
    const IndexSet idown = divisor_closure(p.I);
    if (j == 1) {
        zeros.insert({1, 0, 0});
        if (!p.I.empty()) zeros.insert({1, 0, 2});
    } else {
        zeros.insert({j, 1, 0});
        zeros.insert({j, j - 1, 0});
        if (j == 2) zeros.insert({2, 1, 1});
        if (idown.contains(j)) zeros.insert({j, 1, 2});
    }
    if (auto bad = check_pattern(cg.delta, fg, zeros)) return fail(*bad);

    // (b) g-bar \/ f(g-bar), without top coordinates and without L_k-coordinates that
    // are the radical quotient (a,b) -> a of a kept L(k,h)-coordinate, is the generator of D_j.
    const ProductElement w = apply(cg.algebra, Operation::Join, cg.g, fg);
    rep.generator = w.to_string();
    ProductElement reduced;
    std::vector<ChainDescriptor> reduced_factors;
    for (std::size_t c = 0; c < w.coords.size(); ++c) {
        const Element& v = w.coords[c];
        if (is_top(v)) continue;
        if (v.chain.kind == Kind::Fin) {
            const bool dependent = std::any_of(w.coords.begin(), w.coords.end(), [&](const Element& o) {
                return o.chain.kind == Kind::Lex && o.chain.n == v.chain.n && !is_top(o) && o.a == v.a;
            });
            if (dependent) continue;
        }
        reduced.coords.push_back(v);
        reduced_factors.push_back(v.chain);
    }
    ProductElement expected;
    if (j == 1) {
        expected.coords = {make_element(ChainDescriptor::lex(1, 0), 0, 1)};
    } else {
        expected.coords = {make_element(ChainDescriptor::lex(j, 1), 1, 0),
                           make_element(ChainDescriptor::lex(j, j - 1), 1, 1)};
    }
    if (reduced != expected) {
        return fail("g-bar \\/ f(g-bar) reduces to " + reduced.to_string() + ", expected " + expected.to_string());
    }

    // (c) L(j,1) into D_j, certified up to the given depth.
    const auto u = gispert_witness(j, depth);
    if (!u) return fail("no element of D_j matches the term equalities of L(" + std::to_string(j) + ",1) at depth " +
                        std::to_string(depth) + " (bounded search; not a refutation)");
    rep.gispert_witness = u->element.to_string();
    rep.gispert_function = u->function;
    rep.status = EmbedStatus::VerifiedBounded;
    return rep;
}

}  // namespace wh
