#pragma once

// Wajsberg chains built by the Gamma construction over Z and Z x_lex Z:
//
//   L_n      = Gamma(Z, n)                 elements 0..n, top n
//   L_{n,k}  = Gamma(Z x_lex Z, (n,k))     pairs (0,0) <=lex (a,b) <=lex (n,k), top (n,k)
//   C_omega  = negative cone of Z          integers z <= 0, top 0, generator c = -1
//
// On the bounded chains  a*b = max(a+b-u, 0)  and  a -> b = min(u-a+b, u)  for the
// strong unit u. On C_omega  x*y = x+y  and  x -> y = min(y-x, 0).
// Finite products act coordinatewise.

#include "wh/term.hpp"

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace wh {

struct ChainDescriptor {
    enum class Kind { Fin, Lex, NegCone };

    Kind kind = Kind::Fin;
    std::int64_t n = 1;
    std::int64_t k = 0;

    static ChainDescriptor fin(std::int64_t n);
    static ChainDescriptor lex(std::int64_t n, std::int64_t k);
    static ChainDescriptor neg_cone() { return {Kind::NegCone, 0, 0}; }

    bool bounded() const { return kind != Kind::NegCone; }
    bool finite() const { return kind == Kind::Fin; }

    /// "L3", "L(6,4)", "Comega".
    std::string to_string() const;
    /// Also accepts "Linf5" for L(5,0).
    static ChainDescriptor parse(std::string_view text);

    friend auto operator<=>(const ChainDescriptor&, const ChainDescriptor&) = default;
};

/// A carrier element. It carries its chain so that mixing algebras is caught.
/// Fin uses `a`; Lex uses (a,b); NegCone uses `a` (<= 0).
struct Element {
    ChainDescriptor chain;
    std::int64_t a = 0;
    std::int64_t b = 0;

    std::string to_string() const;

    friend auto operator<=>(const Element&, const Element&) = default;
};

struct ElementHash {
    std::size_t operator()(const Element& e) const noexcept;
};

class AlgebraError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

bool contains(const ChainDescriptor& d, std::int64_t a, std::int64_t b = 0);
Element make_element(const ChainDescriptor& d, std::int64_t a, std::int64_t b = 0);
Element parse_element(const ChainDescriptor& d, std::string_view text);

Element top(const ChainDescriptor& d);
Element bottom(const ChainDescriptor& d);  // bounded chains only

/// The chain order (numeric on Fin/NegCone, lexicographic on Lex).
bool leq(const Element& x, const Element& y);

Element apply(const ChainDescriptor& d, Operation op, const Element& x, const Element& y);
/// neg(x) = x -> bottom; throws AlgebraError on C_omega.
Element neg(const ChainDescriptor& d, const Element& x);

/// Generic entry point: `args` must have arity 1 for Neg and 2 otherwise.
Element op_apply(const ChainDescriptor& d, Operation op, std::span<const Element> args);

/// All elements of a finite chain in increasing order.
std::vector<Element> elements(const ChainDescriptor& d);

// ---------------------------------------------------------------------------
// Finite products

struct ProductElement {
    std::vector<Element> coords;

    std::string to_string() const;
    friend auto operator<=>(const ProductElement&, const ProductElement&) = default;
};

struct ProductElementHash {
    std::size_t operator()(const ProductElement& e) const noexcept;
};

struct ProductAlgebra {
    std::vector<ChainDescriptor> factors;

    bool finite() const;
    bool bounded() const;
    /// "L3 x Comega"
    std::string to_string() const;
    static ProductAlgebra parse(std::string_view text);

    friend auto operator<=>(const ProductAlgebra&, const ProductAlgebra&) = default;
};

ProductElement top(const ProductAlgebra& p);
ProductElement apply(const ProductAlgebra& p, Operation op, const ProductElement& x, const ProductElement& y);
ProductElement neg(const ProductAlgebra& p, const ProductElement& x);
ProductElement op_apply(const ProductAlgebra& p, Operation op, std::span<const ProductElement> args);
/// "[2, (1,0), -1]"
ProductElement parse_element(const ProductAlgebra& p, std::string_view text);
bool leq(const ProductAlgebra& p, const ProductElement& x, const ProductElement& y);
/// Cartesian product of the factor carriers in lexicographic order (finite factors only).
std::vector<ProductElement> elements(const ProductAlgebra& p);

// ---------------------------------------------------------------------------
// Term evaluation

template <class Alg>
struct AlgebraTraits;

template <>
struct AlgebraTraits<ChainDescriptor> {
    using element = Element;
    using hash = ElementHash;
};

template <>
struct AlgebraTraits<ProductAlgebra> {
    using element = ProductElement;
    using hash = ProductElementHash;
};

template <class Alg>
using element_t = typename AlgebraTraits<Alg>::element;

template <class Alg>
using Assignment = std::map<std::string, element_t<Alg>>;

template <class Alg>
element_t<Alg> eval(const Alg& alg, const Term& t, const Assignment<Alg>& assignment)
{
    switch (t.kind()) {
    case Term::Kind::One: return top(alg);
    case Term::Kind::Var: {
        auto it = assignment.find(t.name());
        if (it == assignment.end()) throw AlgebraError("unassigned variable '" + t.name() + "'");
        return it->second;
    }
    case Term::Kind::Binary: break;
    }
    return apply(alg, t.op(), eval(alg, t.lhs(), assignment), eval(alg, t.rhs(), assignment));
}

/// Evaluates a term in at most one variable at `x` (the variable name is irrelevant).
template <class Alg>
element_t<Alg> eval_unary(const Alg& alg, const Term& t, const element_t<Alg>& x)
{
    switch (t.kind()) {
    case Term::Kind::One: return top(alg);
    case Term::Kind::Var: return x;
    case Term::Kind::Binary: break;
    }
    return apply(alg, t.op(), eval_unary(alg, t.lhs(), x), eval_unary(alg, t.rhs(), x));
}

// ---------------------------------------------------------------------------
// Subalgebra generation

template <class E>
struct Subalgebra {
    bool finite = false;        // false: the budget was exceeded before a fixpoint
    std::vector<E> elements;    // sorted; partial when !finite
};

/// Closure of generators and top under *, ->, /\, \/. Breadth first; stops as soon
/// as more than `budget` elements have been found.
template <class Alg>
Subalgebra<element_t<Alg>> generate_subalgebra(const Alg& alg, const std::vector<element_t<Alg>>& generators,
                                               std::size_t budget)
{
    using E = element_t<Alg>;
    if (budget < 1) throw std::invalid_argument("generate_subalgebra: budget must be >= 1");
    std::vector<E> found;
    std::unordered_set<E, typename AlgebraTraits<Alg>::hash> seen;
    auto add = [&](const E& e) {
        if (seen.insert(e).second) found.push_back(e);
    };
    add(top(alg));
    for (const auto& g : generators) add(g);

    Subalgebra<E> result;
    std::size_t processed = 0;
    while (processed < found.size() && found.size() <= budget) {
        const E x = found[processed];
        for (std::size_t j = 0; j <= processed && found.size() <= budget; ++j) {
            const E y = found[j];
            for (Operation op : kBinaryOps) {
                add(apply(alg, op, x, y));
                if (op == Operation::Imp) add(apply(alg, op, y, x));
            }
        }
        ++processed;
    }
    result.finite = found.size() <= budget;
    result.elements = std::move(found);
    std::sort(result.elements.begin(), result.elements.end());
    return result;
}

// ---------------------------------------------------------------------------
// Embeddability and invariants

/// Is src isomorphic to a subalgebra of dst? Decided by divisibility:
///   L_n -> L_m         iff n | m
///   L_n -> L(r,j)      iff n | gcd(r,j)
///   L(n,k) -> L(n',k') iff n | n' and gcd(n,k) | k'
///   C_omega -> L(r,j)  always;  C_omega -> C_omega  always
/// Nothing infinite embeds in L_m and nothing bounded embeds in C_omega.
bool embeds(const ChainDescriptor& src, const ChainDescriptor& dst);

struct RankAndIndex {
    std::optional<std::int64_t> rank;  // nullopt = infinite
    std::int64_t div_index = 1;
};

/// L_n -> (n, n); L(n,k) -> (n, gcd(n,k)); C_omega -> (infinite, 1).
RankAndIndex rank_and_div_index(const ChainDescriptor& d);

/// Finite chains are isomorphic iff they have the same size.
bool finite_chains_isomorphic(std::size_t size_a, std::size_t size_b);

std::int64_t gcd64(std::int64_t a, std::int64_t b);

}  // namespace wh
