#pragma once

// One-variable Wajsberg (McNaughton) functions: continuous piecewise-linear maps
// [0,1] -> [0,1] with integer slope and intercept on every piece and f(1) = 1.
// They realize the free one-generated Wajsberg hoop, with the operations taken
// pointwise.
//
// Text form is the interpolation notation L(t0,x0;t1,x1;...;tk,xk), e.g.
// "L(0,1;1/4,0;1/2,1;3/4,0;1,1)".

#include "wh/presentation.hpp"
#include "wh/rational.hpp"
#include "wh/term.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace wh {

struct PLNode {
    Rational t;
    Rational x;

    friend bool operator==(const PLNode&, const PLNode&) = default;
};

/// x -> slope*x + intercept
struct Affine {
    Rational slope;
    Rational intercept;

    Rational at(const Rational& x) const { return slope * x + intercept; }
    friend bool operator==(const Affine&, const Affine&) = default;
};

class PLError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class PLFunction {
public:
    /// Validates the node list (abscissas 0 = t0 < ... < tk = 1, values in [0,1],
    /// integer coefficients, f(1) = 1) and merges collinear nodes.
    static PLFunction interpolate(std::vector<PLNode> nodes);
    static PLFunction identity();
    static PLFunction one();

    /// "L(0,1;1/4,0;1/2,1;3/4,0;1,1)"
    static PLFunction parse(std::string_view text);
    std::string to_string() const;

    const std::vector<PLNode>& nodes() const { return nodes_; }

    Rational eval(const Rational& q) const;
    /// Piece active on (q - e, q) for small e; requires q > 0.
    Affine piece_left(const Rational& q) const;
    /// Piece active on (q, q + e) for small e; requires q < 1.
    Affine piece_right(const Rational& q) const;

    /// f = 1 on a neighborhood of v (relative to [0,1]).
    bool locally_one(const Rational& v) const;
    /// f = g on a neighborhood of v (relative to [0,1]).
    bool same_germ(const PLFunction& g, const Rational& v) const;
    bool identically_one() const { return nodes_.size() == 2 && nodes_[0].x == 1; }

    /// Length of the longest maximal interval (a,b) inside (0,1) on which f < 1,
    /// or nullopt when there is none. Intervals touching 0 are included when f(0) < 1.
    std::optional<Rational> longest_gap() const;

    friend bool operator==(const PLFunction&, const PLFunction&) = default;

private:
    explicit PLFunction(std::vector<PLNode> nodes) : nodes_(std::move(nodes)) {}
    std::size_t segment_index(const Rational& q, bool from_left) const;
    Affine segment(std::size_t i) const;

    std::vector<PLNode> nodes_;
};

/// Pointwise max(f+g-1,0), min(1-f+g,1), min(f,g), max(f,g).
PLFunction pl_apply(Operation op, const PLFunction& f, const PLFunction& g);

/// The function of a term in at most one variable. Throws on two or more variables.
PLFunction term_to_pl(const Term& t);

/// Exact value; throws PLError outside [0,1].
Rational pl_eval(const PLFunction& f, const Rational& q);

// ---------------------------------------------------------------------------
// Combs

struct CombTargets {
    std::set<Rational> I;  // script-I: points where a comb takes value 1
    std::set<Rational> J;  // script-J: points where a comb is locally 1
};

/// Reduced fractions h/d in [0,1] with d in the given set.
std::set<Rational> fractions_with_denominators(const IndexSet& dens);

CombTargets comb_targets(const Presentation& p);

struct CombCheck {
    bool ok = true;
    int condition = 0;            // first violated condition, 1..4 when !ok
    std::vector<int> violated;    // every violated condition, in order
    Rational point;               // offending point for conditions 1-3
    std::int64_t denominator = 0; // least offending d when condition 4 is violated
    std::int64_t cutoff = 0;      // d*: condition 4 is automatic for d >= d*
    std::string message;
};

/// Denominators d >= cutoff always have some h/d (0 <= h < d) with f(h/d) != 1.
/// Returns nullopt when f is identically 1.
std::optional<std::int64_t> condition4_cutoff(const PLFunction& f);

/// Some 0 <= h < d has f(h/d) != 1.
bool condition4_holds_at(const PLFunction& f, std::int64_t d);

/// The four comb conditions. Condition 4 is decided exhaustively below the cutoff.
CombCheck is_comb(const PLFunction& f, const Presentation& p);

/// Least d <= dmax outside (I u J)v with f(h/d) = 1 for every 0 <= h < d.
std::optional<std::int64_t> condition4_direct(const PLFunction& f, const Presentation& p, std::int64_t dmax);

/// A comb for p built from plateaus at script-J and spikes at script-I; verified
/// with is_comb before it is returned.
PLFunction make_comb(const Presentation& p);

}  // namespace wh
