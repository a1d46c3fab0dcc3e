#pragma once

// Shared helpers for the unit and acceptance tests. Nothing here calls into the
// library predicates it is used to check.

#include "wh/chains.hpp"
#include "wh/presentation.hpp"
#include "wh/rational.hpp"
#include "wh/term.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace wh::testing {

inline bool divides(std::int64_t a, std::int64_t b) { return b % a == 0; }

/// The reducedness bullets, written out directly.
inline bool reduced_oracle(const IndexSet& I, const IndexSet& J, bool K)
{
    if (I.empty() && J.empty() && !K) return false;
    if (!J.empty() && K) return false;
    for (auto m : I) {
        for (auto other : I) {
            if (other != m && divides(m, other)) return false;
        }
        for (auto n : J) {
            if (divides(m, n)) return false;
        }
    }
    for (auto n : J) {
        for (auto other : J) {
            if (other != n && divides(n, other)) return false;
        }
    }
    return true;
}

inline std::vector<IndexSet> subsets_up_to(std::int64_t max_entry, std::size_t max_size)
{
    std::vector<IndexSet> out;
    for (std::uint32_t mask = 0; mask < (1u << max_entry); ++mask) {
        IndexSet s;
        for (std::int64_t e = 1; e <= max_entry; ++e) {
            if (mask & (1u << (e - 1))) s.insert(e);
        }
        if (s.size() <= max_size) out.push_back(s);
    }
    return out;
}

/// Every reduced presentation with entries <= max_entry and |I|, |J| <= max_size.
inline std::vector<Presentation> reduced_presentations(std::int64_t max_entry, std::size_t max_size = 64)
{
    std::vector<Presentation> out;
    const auto sets = subsets_up_to(max_entry, max_size);
    for (const auto& I : sets) {
        for (const auto& J : sets) {
            for (bool K : {false, true}) {
                if (reduced_oracle(I, J, K)) out.push_back(Presentation{I, J, K});
            }
        }
    }
    return out;
}

/// Chains that V(P) contains by construction: the generators, the finite
/// quotients L_d for d dividing an index, and C_omega when J u K is nonempty.
inline std::vector<ChainDescriptor> member_witnesses(const Presentation& p)
{
    std::vector<ChainDescriptor> out;
    for (const auto& part : {p.I, p.J}) {
        for (auto m : part) {
            for (std::int64_t d = 1; d <= m; ++d) {
                if (divides(d, m)) out.push_back(ChainDescriptor::fin(d));
            }
        }
    }
    for (auto j : p.J) out.push_back(ChainDescriptor::lex(j, 0));
    if (!p.J.empty() || p.K) out.push_back(ChainDescriptor::neg_cone());
    return out;
}

/// A chain lies in V(P) when it embeds in one of the member witnesses.
inline bool member_oracle(const ChainDescriptor& c, const Presentation& p)
{
    for (const auto& w : member_witnesses(p)) {
        if (embeds(c, w)) return true;
    }
    return false;
}

inline std::vector<ChainDescriptor> generator_chains(const Presentation& p)
{
    std::vector<ChainDescriptor> out;
    for (auto i : p.I) out.push_back(ChainDescriptor::fin(i));
    for (auto j : p.J) out.push_back(ChainDescriptor::lex(j, 0));
    if (p.K) out.push_back(ChainDescriptor::neg_cone());
    return out;
}

inline bool variety_leq_oracle(const Presentation& p, const Presentation& q)
{
    for (const auto& g : generator_chains(p)) {
        if (!member_oracle(g, q)) return false;
    }
    return true;
}

/// Q[I,J] is generated by L_i and L(j,1); one quasivariety lies below another when
/// each of its generators other than L_1 embeds in a generator of the other.
inline bool quasi_leq_oracle(const IndexSet& I, const IndexSet& J, const IndexSet& I2, const IndexSet& J2)
{
    std::vector<ChainDescriptor> below, above;
    for (auto i : I) {
        if (i != 1) below.push_back(ChainDescriptor::fin(i));
    }
    for (auto j : J) below.push_back(ChainDescriptor::lex(j, 1));
    for (auto i : I2) above.push_back(ChainDescriptor::fin(i));
    for (auto j : J2) above.push_back(ChainDescriptor::lex(j, 1));
    for (const auto& g : below) {
        bool found = false;
        for (const auto& h : above) found = found || embeds(g, h);
        if (!found) return false;
    }
    return true;
}

/// Random term in x and 1 of depth <= depth.
inline Term random_term(std::mt19937_64& rng, int depth)
{
    std::uniform_int_distribution<int> coin(0, 9);
    if (depth == 0 || coin(rng) < 2) return coin(rng) < 8 ? Term::var("x") : Term::one();
    std::uniform_int_distribution<int> pick(0, 3);
    return Term::binary(kBinaryOps[pick(rng)], random_term(rng, depth - 1), random_term(rng, depth - 1));
}

/// A term equal to t in every hoop, obtained by a random sound rewrite.
inline Term equivalent_term(std::mt19937_64& rng, const Term& t)
{
    std::uniform_int_distribution<int> pick(0, 5);
    switch (pick(rng)) {
    case 0: return Term::meet(t, t);
    case 1: return Term::join(t, t);
    case 2: return Term::imp(Term::one(), t);
    case 3: return Term::mul(t, Term::one());
    case 4:
        if (t.is_binary() && t.op() != Operation::Imp) return Term::binary(t.op(), t.rhs(), t.lhs());
        return Term::meet(t, Term::one());
    default: {
        const Term y = random_term(rng, 2);
        return Term::meet(t, Term::join(t, y));
    }
    }
}

}  // namespace wh::testing
