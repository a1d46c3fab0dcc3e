#include "wh/chains.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace wh {

namespace {

std::int64_t add(std::int64_t x, std::int64_t y)
{
    std::int64_t r;
    if (__builtin_add_overflow(x, y, &r)) throw std::overflow_error("chain arithmetic overflow");
    return r;
}

std::int64_t sub(std::int64_t x, std::int64_t y)
{
    std::int64_t r;
    if (__builtin_sub_overflow(x, y, &r)) throw std::overflow_error("chain arithmetic overflow");
    return r;
}

struct Pair {
    std::int64_t a, b;
    friend auto operator<=>(const Pair&, const Pair&) = default;
};

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::int64_t parse_int(std::string_view s, std::string_view context)
{
    s = trim(s);
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i == s.size() || !std::all_of(s.begin() + static_cast<std::ptrdiff_t>(i), s.end(),
                                      [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
        throw std::invalid_argument("expected an integer in '" + std::string(context) + "'");
    }
    return std::stoll(std::string(s));
}

std::vector<std::string_view> split_top_level(std::string_view s, char sep)
{
    std::vector<std::string_view> parts;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(' || s[i] == '[') ++depth;
        else if (s[i] == ')' || s[i] == ']') --depth;
        else if (s[i] == sep && depth == 0) {
            parts.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    parts.push_back(s.substr(start));
    return parts;
}

void require_member(const ChainDescriptor& d, const Element& x)
{
    if (x.chain != d) {
        throw AlgebraError("element " + x.to_string() + " of " + x.chain.to_string() + " used in " + d.to_string());
    }
}

}  // namespace

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

ChainDescriptor ChainDescriptor::fin(std::int64_t n)
{
    if (n < 1) throw std::invalid_argument("L_n needs n >= 1");
    return {Kind::Fin, n, 0};
}

ChainDescriptor ChainDescriptor::lex(std::int64_t n, std::int64_t k)
{
    if (n < 1 || k < 0) throw std::invalid_argument("L(n,k) needs n >= 1 and k >= 0");
    return {Kind::Lex, n, k};
}

std::string ChainDescriptor::to_string() const
{
    switch (kind) {
    case Kind::Fin: return "L" + std::to_string(n);
    case Kind::Lex: return "L(" + std::to_string(n) + "," + std::to_string(k) + ")";
    case Kind::NegCone: return "Comega";
    }
    return "?";
}

ChainDescriptor ChainDescriptor::parse(std::string_view text)
{
    const std::string_view s = trim(text);
    if (s == "Comega" || s == "C_omega" || s == "Cw") return neg_cone();
    if (s.starts_with("Linf")) return lex(parse_int(s.substr(4), text), 0);
    if (s.starts_with("L(") && s.ends_with(")")) {
        auto parts = split_top_level(s.substr(2, s.size() - 3), ',');
        if (parts.size() != 2) throw std::invalid_argument("malformed chain '" + std::string(text) + "'");
        return lex(parse_int(parts[0], text), parse_int(parts[1], text));
    }
    if (s.starts_with("L")) return fin(parse_int(s.substr(1), text));
    throw std::invalid_argument("unknown chain '" + std::string(text) + "'");
}

std::string Element::to_string() const
{
    if (chain.kind == ChainDescriptor::Kind::Lex) {
        return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
    }
    return std::to_string(a);
}

std::size_t ElementHash::operator()(const Element& e) const noexcept
{
    std::size_t h = static_cast<std::size_t>(e.a) * 0x9e3779b97f4a7c15ULL;
    h ^= static_cast<std::size_t>(e.b) + 0x7f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= static_cast<std::size_t>(e.chain.n) * 31 + static_cast<std::size_t>(e.chain.k) * 17 +
         static_cast<std::size_t>(e.chain.kind);
    return h;
}

bool contains(const ChainDescriptor& d, std::int64_t a, std::int64_t b)
{
    switch (d.kind) {
    case ChainDescriptor::Kind::Fin: return b == 0 && a >= 0 && a <= d.n;
    case ChainDescriptor::Kind::Lex: return Pair{0, 0} <= Pair{a, b} && Pair{a, b} <= Pair{d.n, d.k};
    case ChainDescriptor::Kind::NegCone: return b == 0 && a <= 0;
    }
    return false;
}

Element make_element(const ChainDescriptor& d, std::int64_t a, std::int64_t b)
{
    if (!contains(d, a, b)) {
        throw AlgebraError("(" + std::to_string(a) + "," + std::to_string(b) + ") is not an element of " +
                           d.to_string());
    }
    return Element{d, a, b};
}

Element parse_element(const ChainDescriptor& d, std::string_view text)
{
    const std::string_view s = trim(text);
    if (d.kind == ChainDescriptor::Kind::Lex) {
        if (!s.starts_with("(") || !s.ends_with(")")) {
            throw std::invalid_argument("expected a pair (a,b) for " + d.to_string() + ", got '" + std::string(s) + "'");
        }
        auto parts = split_top_level(s.substr(1, s.size() - 2), ',');
        if (parts.size() != 2) throw std::invalid_argument("malformed pair '" + std::string(s) + "'");
        return make_element(d, parse_int(parts[0], s), parse_int(parts[1], s));
    }
    return make_element(d, parse_int(s, s));
}

Element top(const ChainDescriptor& d)
{
    switch (d.kind) {
    case ChainDescriptor::Kind::Fin: return {d, d.n, 0};
    case ChainDescriptor::Kind::Lex: return {d, d.n, d.k};
    case ChainDescriptor::Kind::NegCone: return {d, 0, 0};
    }
    return {d, 0, 0};
}

Element bottom(const ChainDescriptor& d)
{
    if (!d.bounded()) throw AlgebraError("C_omega has no least element");
    return {d, 0, 0};
}

bool leq(const Element& x, const Element& y)
{
    if (x.chain != y.chain) throw AlgebraError("comparing elements of different chains");
    return Pair{x.a, x.b} <= Pair{y.a, y.b};
}

Element apply(const ChainDescriptor& d, Operation op, const Element& x, const Element& y)
{
    require_member(d, x);
    require_member(d, y);
    switch (op) {
    case Operation::Meet: return Pair{x.a, x.b} <= Pair{y.a, y.b} ? x : y;
    case Operation::Join: return Pair{x.a, x.b} <= Pair{y.a, y.b} ? y : x;
    case Operation::Neg: throw AlgebraError("neg is unary");
    default: break;
    }
    switch (d.kind) {
    case ChainDescriptor::Kind::Fin:
        if (op == Operation::Mul) return {d, std::max<std::int64_t>(x.a + y.a - d.n, 0), 0};
        return {d, std::min<std::int64_t>(d.n - x.a + y.a, d.n), 0};
    case ChainDescriptor::Kind::Lex: {
        if (op == Operation::Mul) {
            const Pair p{sub(add(x.a, y.a), d.n), sub(add(x.b, y.b), d.k)};
            const Pair r = std::max(p, Pair{0, 0});
            return {d, r.a, r.b};
        }
        const Pair p{add(sub(d.n, x.a), y.a), add(sub(d.k, x.b), y.b)};
        const Pair r = std::min(p, Pair{d.n, d.k});
        return {d, r.a, r.b};
    }
    case ChainDescriptor::Kind::NegCone:
        if (op == Operation::Mul) return {d, add(x.a, y.a), 0};
        return {d, std::min<std::int64_t>(sub(y.a, x.a), 0), 0};
    }
    throw AlgebraError("unknown chain kind");
}

Element neg(const ChainDescriptor& d, const Element& x)
{
    if (!d.bounded()) throw AlgebraError("neg is undefined on the unbounded chain C_omega");
    return apply(d, Operation::Imp, x, bottom(d));
}

Element op_apply(const ChainDescriptor& d, Operation op, std::span<const Element> args)
{
    if (op == Operation::Neg) {
        if (args.size() != 1) throw AlgebraError("neg takes one argument");
        return neg(d, args[0]);
    }
    if (args.size() != 2) throw AlgebraError(std::string(operation_name(op)) + " takes two arguments");
    return apply(d, op, args[0], args[1]);
}

std::vector<Element> elements(const ChainDescriptor& d)
{
    if (!d.finite()) throw AlgebraError(d.to_string() + " is infinite");
    std::vector<Element> out;
    out.reserve(static_cast<std::size_t>(d.n + 1));
    for (std::int64_t a = 0; a <= d.n; ++a) out.push_back({d, a, 0});
    return out;
}

// ---------------------------------------------------------------------------

std::string ProductElement::to_string() const
{
    std::string s = "[";
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (i) s += ", ";
        s += coords[i].to_string();
    }
    return s + "]";
}

std::size_t ProductElementHash::operator()(const ProductElement& e) const noexcept
{
    std::size_t h = e.coords.size();
    ElementHash eh;
    for (const auto& c : e.coords) h = h * 1000003u ^ eh(c);
    return h;
}

bool ProductAlgebra::finite() const
{
    return std::all_of(factors.begin(), factors.end(), [](const auto& f) { return f.finite(); });
}

bool ProductAlgebra::bounded() const
{
    return std::all_of(factors.begin(), factors.end(), [](const auto& f) { return f.bounded(); });
}

std::string ProductAlgebra::to_string() const
{
    std::string s;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (i) s += " x ";
        s += factors[i].to_string();
    }
    return s;
}

ProductAlgebra ProductAlgebra::parse(std::string_view text)
{
    ProductAlgebra p;
    std::string_view rest = trim(text);
    while (true) {
        const auto pos = rest.find(" x ");
        if (pos == std::string_view::npos) {
            p.factors.push_back(ChainDescriptor::parse(rest));
            break;
        }
        p.factors.push_back(ChainDescriptor::parse(rest.substr(0, pos)));
        rest = rest.substr(pos + 3);
    }
    return p;
}

ProductElement top(const ProductAlgebra& p)
{
    ProductElement e;
    for (const auto& f : p.factors) e.coords.push_back(top(f));
    return e;
}

ProductElement apply(const ProductAlgebra& p, Operation op, const ProductElement& x, const ProductElement& y)
{
    if (x.coords.size() != p.factors.size() || y.coords.size() != p.factors.size()) {
        throw AlgebraError("arity mismatch in product " + p.to_string());
    }
    ProductElement r;
    r.coords.reserve(p.factors.size());
    for (std::size_t i = 0; i < p.factors.size(); ++i) r.coords.push_back(apply(p.factors[i], op, x.coords[i], y.coords[i]));
    return r;
}

ProductElement neg(const ProductAlgebra& p, const ProductElement& x)
{
    if (x.coords.size() != p.factors.size()) throw AlgebraError("arity mismatch in product " + p.to_string());
    ProductElement r;
    for (std::size_t i = 0; i < p.factors.size(); ++i) r.coords.push_back(neg(p.factors[i], x.coords[i]));
    return r;
}

ProductElement op_apply(const ProductAlgebra& p, Operation op, std::span<const ProductElement> args)
{
    if (op == Operation::Neg) {
        if (args.size() != 1) throw AlgebraError("neg takes one argument");
        return neg(p, args[0]);
    }
    if (args.size() != 2) throw AlgebraError(std::string(operation_name(op)) + " takes two arguments");
    return apply(p, op, args[0], args[1]);
}

ProductElement parse_element(const ProductAlgebra& p, std::string_view text)
{
    std::string_view s = trim(text);
    if (p.factors.size() == 1 && !s.starts_with("[")) return {{parse_element(p.factors[0], s)}};
    if (!s.starts_with("[") || !s.ends_with("]")) {
        throw std::invalid_argument("expected [e1, e2, ...] for " + p.to_string());
    }
    auto parts = split_top_level(s.substr(1, s.size() - 2), ',');
    if (parts.size() != p.factors.size()) throw AlgebraError("arity mismatch in '" + std::string(s) + "'");
    ProductElement e;
    for (std::size_t i = 0; i < parts.size(); ++i) e.coords.push_back(parse_element(p.factors[i], parts[i]));
    return e;
}

bool leq(const ProductAlgebra& p, const ProductElement& x, const ProductElement& y)
{
    if (x.coords.size() != p.factors.size() || y.coords.size() != p.factors.size()) {
        throw AlgebraError("arity mismatch in product " + p.to_string());
    }
    for (std::size_t i = 0; i < x.coords.size(); ++i) {
        if (!leq(x.coords[i], y.coords[i])) return false;
    }
    return true;
}

std::vector<ProductElement> elements(const ProductAlgebra& p)
{
    if (!p.finite()) throw AlgebraError(p.to_string() + " is infinite");
    std::vector<ProductElement> out{ProductElement{}};
    for (const auto& f : p.factors) {
        std::vector<ProductElement> next;
        const auto carrier = elements(f);
        next.reserve(out.size() * carrier.size());
        for (const auto& prefix : out) {
            for (const auto& e : carrier) {
                ProductElement x = prefix;
                x.coords.push_back(e);
                next.push_back(std::move(x));
            }
        }
        out = std::move(next);
    }
    return out;
}

// ---------------------------------------------------------------------------

bool embeds(const ChainDescriptor& src, const ChainDescriptor& dst)
{
    using K = ChainDescriptor::Kind;
    switch (src.kind) {
    case K::Fin:
        if (dst.kind == K::Fin) return dst.n % src.n == 0;
        if (dst.kind == K::Lex) return gcd64(dst.n, dst.k) % src.n == 0;
        return false;
    case K::Lex:
        // Such a subalgebra is Gamma(H, (n',k')) for a subgroup H generated by
        // (n'/n, c) and (0, t). In those coordinates the unit reads (n, y) with
        // k' = n*c + t*y, and L(n,y) = L(n,k) exactly when y = k mod n (shears
        // (a,b) -> (a, b - q*a) are the only automorphisms of Z x_lex Z).
        // Solvable iff n | n' and gcd(n,k) | k'.
        if (dst.kind == K::Lex) return dst.n % src.n == 0 && dst.k % gcd64(src.n, src.k) == 0;
        return false;
    case K::NegCone: return dst.kind != K::Fin;
    }
    return false;
}

RankAndIndex rank_and_div_index(const ChainDescriptor& d)
{
    switch (d.kind) {
    case ChainDescriptor::Kind::Fin: return {d.n, d.n};
    case ChainDescriptor::Kind::Lex: return {d.n, gcd64(d.n, d.k)};
    case ChainDescriptor::Kind::NegCone: return {std::nullopt, 1};
    }
    return {};
}

bool finite_chains_isomorphic(std::size_t size_a, std::size_t size_b) { return size_a == size_b; }

}  // namespace wh
