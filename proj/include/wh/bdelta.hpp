#pragma once

// The canonical one-generated free algebra of V(P): the index set Delta, the
// product A_Delta of the chains L(k,h), L_k and C_omega it indexes, and the
// generator g-bar. B_Delta is the subalgebra of A_Delta generated by g-bar.
//
// The embedding theorems (L_a, C_omega and L(j,1) into B_Delta) are checked by
// evaluating their witness functions on g-bar coordinatewise.

#include "wh/chains.hpp"
#include "wh/mcnaughton.hpp"
#include "wh/presentation.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace wh {

struct DeltaEntry {
    std::int64_t k = 0;
    std::int64_t h = 0;
    int i = 0;  // 0, 1: L(k,h); 2: L_k; 3: C_omega

    ChainDescriptor factor() const;
    /// "(k,h,i)"
    std::string to_string() const;

    friend auto operator<=>(const DeltaEntry&, const DeltaEntry&) = default;
};

struct DeltaIndex {
    /// Delta_I (by k, h), then Delta_J (by k, h, i), then Delta_K.
    std::vector<DeltaEntry> entries;

    ProductAlgebra algebra() const;
    std::optional<std::size_t> find(std::int64_t k, std::int64_t h, int i) const;
};

DeltaIndex delta_index(const Presentation& p);

/// The generator g_{k,h} of L(k,h) with g <= neg g. (1,0) -> (0,1); otherwise the
/// pair (r,s), 0 < r < k, with |r*h - s*k| = 1 that is lexicographically below its
/// negation (k-r, h-s).
Element g_kh(std::int64_t k, std::int64_t h);

struct CanonicalGenerator {
    DeltaIndex delta;
    ProductAlgebra algebra;
    ProductElement g;
};

CanonicalGenerator canonical_generator(const Presentation& p);

/// The value at x of the term whose function is f, computed from f alone:
///   L_n, a            ->  n * f(a/n)
///   L(k,h), (r,s)     ->  m*(r,s) + b*(k,h), where m*t + b is the piece of f at r/k
///                         on the side of sign(s*k - r*h)
///   C_omega, z        ->  m*z, where m is the slope of f just left of 1
Element pl_apply_at(const PLFunction& f, const Element& x);
ProductElement pl_apply_at(const PLFunction& f, const ProductElement& x);

// ---------------------------------------------------------------------------
// Embedding theorems

enum class EmbedStatus { Verified, VerifiedBounded, Failed };
const char* embed_status_name(EmbedStatus s);

struct EmbedReport {
    std::string theorem;       // "embed1", "embed2", "embed3"
    Presentation presentation;
    std::int64_t index = 0;    // a, or j; 0 for embed2
    EmbedStatus status = EmbedStatus::Failed;
    std::string witness_function;          // L-notation, empty when none is used
    std::vector<std::string> coordinates;  // f(g-bar) by Delta entry, "(k,h,i)=value"
    std::string generator;                 // the element whose closure is examined
    std::optional<std::size_t> closure_size;
    std::optional<int> depth;
    std::string gispert_witness;           // embed3: u in D_j
    std::string gispert_function;          // embed3: f with u = f(d), empty when u comes from a short term
    std::string reason;

    bool ok() const { return status != EmbedStatus::Failed; }
};

/// L_a embeds in B_Delta, for a in I.
EmbedReport verify_embed_finite_chain(const Presentation& p, std::int64_t a);

/// C_omega embeds in B_Delta, for P = (I, {}, {omega}).
EmbedReport verify_embed_comega(const Presentation& p);

/// L(j,1) embeds in B_Delta, for P = (I, J, {}) and j in J. The last step (L(j,1)
/// into D_j) is certified for terms of depth <= depth only.
EmbedReport verify_embed_lj1(const Presentation& p, std::int64_t j, int depth);

/// Searches the subalgebra D_j of L(j,1) x L(j,j-1) generated by ((1,0),(1,1)) for
/// u such that, for every one-variable term p,q of depth <= depth,
/// p(g) = q(g) in L(j,1) iff p(u) = q(u). For j = 1 the target is L(1,1) with
/// generator (0,1) and the host is L(1,0) with generator (0,1).
/// Candidates are the values of terms of depth <= 2 at the generator and the values
/// f(generator) for functions f with slopes in [-j-1, j+1] next to 1/j.
/// Returns the first such u in lexicographic order.
struct GispertWitness {
    ProductElement element;
    std::string function;  // L-notation of f with element = f(generator), or empty
};

std::optional<GispertWitness> gispert_witness(std::int64_t j, int depth);

/// For every pair of one-variable terms p,q of depth <= depth:
/// p(x) = q(x) in a iff p(y) = q(y) in b.
bool same_term_equalities(const ChainDescriptor& a, const Element& x, const ProductAlgebra& b,
                          const ProductElement& y, int depth);

/// The witness functions of the three proofs.
PLFunction embed1_witness(const Presentation& p, std::int64_t a);
PLFunction embed2_witness(const Presentation& p);
PLFunction embed3_witness(const Presentation& p, std::int64_t j);

}  // namespace wh
