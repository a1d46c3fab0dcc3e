#pragma once

// Presentations (I, J, K) of proper subvarieties of Wajsberg hoops.
//
// I indexes finite chains L_i, J indexes the chains L_j^inf = L(j,0), and K is
// either empty or {omega} (the cancellative chain C_omega). V(P) is the variety
// generated by those chains.

#include "wh/chains.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace wh {

using IndexSet = std::set<std::int64_t>;

struct Presentation {
    IndexSet I;
    IndexSet J;
    bool K = false;  // K = {omega}

    bool empty() const { return I.empty() && J.empty() && !K; }

    /// "I=2,3; J=5; K=omega"; empty parts are omitted.
    std::string to_string() const;
    /// Node label "V(2,3;∅;ω)".
    std::string label() const;
    /// Inverse of to_string. Every part is optional; "K=omega" or "K=w" sets K.
    static Presentation parse(std::string_view text);

    friend auto operator<=>(const Presentation&, const Presentation&) = default;
};

/// X↓: every positive divisor of every element of X.
IndexSet divisor_closure(const IndexSet& x);
IndexSet set_union(const IndexSet& a, const IndexSet& b);
std::int64_t lcm_of(const IndexSet& x);  // 1 for the empty set

bool is_reduced(const Presentation& p);
/// Normal form generating the same variety. Throws on the empty triple.
Presentation reduce(const Presentation& p);
/// Throws std::invalid_argument unless p is reduced.
void require_reduced(const Presentation& p, const char* where);

/// The generating chains K_P in order: L_i (i in I), L(j,0) (j in J), C_omega.
std::vector<ChainDescriptor> generators(const Presentation& p);

bool variety_member(const ChainDescriptor& d, const Presentation& p);
/// V(p) is contained in V(q).
bool variety_leq(const Presentation& p, const Presentation& q);

bool is_structural_variety(const Presentation& p);

// ---------------------------------------------------------------------------
// Quasivarieties

struct QuasiDescriptor {
    enum class Kind { QV, QBracket };
    Kind kind = Kind::QV;
    Presentation p;  // QV: the full triple; QBracket: I and J only (K empty)

    static QuasiDescriptor qv(Presentation p) { return {Kind::QV, std::move(p)}; }
    static QuasiDescriptor bracket(IndexSet i, IndexSet j);

    /// Generators: QV uses K_P; QBracket uses L_i and L(j,1).
    std::vector<ChainDescriptor> generators() const;
    /// "Q(I=2; K=omega)" or "Q[I=2; J=3]".
    std::string to_string() const;

    friend auto operator<=>(const QuasiDescriptor&, const QuasiDescriptor&) = default;
};

/// The structural core Q(F_V(x)) of V(P): QV(P) when K ≠ ∅ or J = ∅, else Q[I, J].
QuasiDescriptor structural_core(const Presentation& p);

/// Q[I,J] ⊆ Q[I',J']: every i ≠ 1 of I divides some i' of I', every j of J divides some j' of J'.
bool quasi_leq(const QuasiDescriptor& q, const QuasiDescriptor& r);

enum class Primitivity { Primitive, NotPrimitive, Unknown };
const char* primitivity_name(Primitivity p);

struct PrimitivityVerdict {
    Primitivity verdict = Primitivity::Unknown;
    std::string reason;
};

PrimitivityVerdict primitivity(const QuasiDescriptor& q);

// ---------------------------------------------------------------------------
// Subvariety lattice

struct VarietyLattice {
    std::vector<std::optional<Presentation>> nodes;  // nullopt = trivial variety; nodes[0] is it
    std::vector<std::pair<std::size_t, std::size_t>> covers;  // (lower, upper)

    std::optional<std::size_t> find(const Presentation& p) const;
    std::string node_label(std::size_t i) const;
    std::string to_dot() const;
};

/// Every proper subvariety of V(P) (as reduced presentations), plus the trivial
/// variety, with the covering relation of inclusion.
VarietyLattice subvariety_lattice(const Presentation& p);

}  // namespace wh
