#include "wh/mcnaughton.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace wh {

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool collinear(const PLNode& a, const PLNode& b, const PLNode& c)
{
    return (b.x - a.x) * (c.t - b.t) == (c.x - b.x) * (b.t - a.t);
}

Affine through(const PLNode& a, const PLNode& b)
{
    const Rational slope = (b.x - a.x) / (b.t - a.t);
    return {slope, a.x - slope * a.t};
}

// Value of op on two reals in [0,1].
Rational combine(Operation op, const Rational& a, const Rational& b)
{
    switch (op) {
    case Operation::Mul: return max(a + b - 1, 0);
    case Operation::Imp: return min(Rational(1) - a + b, 1);
    case Operation::Meet: return min(a, b);
    case Operation::Join: return max(a, b);
    case Operation::Neg: break;
    }
    throw std::invalid_argument("pl_apply: unary operation");
}

// Where the case split of op changes between the affine pieces p (of f) and q (of g):
// the zero of (p + q - 1) for mul and of (p - q) otherwise.
std::optional<Rational> switch_point(Operation op, const Affine& p, const Affine& q)
{
    Rational a, b;  // a*t + b
    if (op == Operation::Mul) {
        a = p.slope + q.slope;
        b = p.intercept + q.intercept - 1;
    } else {
        a = p.slope - q.slope;
        b = p.intercept - q.intercept;
    }
    if (a == 0) return std::nullopt;
    return -b / a;
}

}  // namespace

PLFunction PLFunction::interpolate(std::vector<PLNode> nodes)
{
    if (nodes.size() < 2) throw PLError("a PL function needs at least the nodes at 0 and 1");
    if (nodes.front().t != 0) throw PLError("the first abscissa must be 0");
    if (nodes.back().t != 1) throw PLError("the last abscissa must be 1");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].x < 0 || nodes[i].x > 1) {
            throw PLError("value " + nodes[i].x.to_string() + " at " + nodes[i].t.to_string() + " is outside [0,1]");
        }
        if (i > 0 && !(nodes[i - 1].t < nodes[i].t)) throw PLError("abscissas must be strictly increasing");
    }
    if (nodes.back().x != 1) throw PLError("a Wajsberg function must satisfy f(1) = 1");
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        const Affine piece = through(nodes[i], nodes[i + 1]);
        if (!piece.slope.is_integer() || !piece.intercept.is_integer()) {
            throw PLError("non-integer coefficients on [" + nodes[i].t.to_string() + "," + nodes[i + 1].t.to_string() +
                          "]: slope " + piece.slope.to_string() + ", intercept " + piece.intercept.to_string());
        }
    }
    std::vector<PLNode> canon;
    canon.reserve(nodes.size());
    for (auto& n : nodes) {
        if (canon.size() >= 2 && collinear(canon[canon.size() - 2], canon.back(), n)) canon.pop_back();
        canon.push_back(std::move(n));
    }
    return PLFunction(std::move(canon));
}

PLFunction PLFunction::identity() { return PLFunction({{0, 0}, {1, 1}}); }

PLFunction PLFunction::one() { return PLFunction({{0, 1}, {1, 1}}); }

PLFunction PLFunction::parse(std::string_view text)
{
    std::string_view s = trim(text);
    if (!s.starts_with("L(") || !s.ends_with(")")) {
        throw PLError("expected L(t0,x0;...;tk,xk), got '" + std::string(text) + "'");
    }
    s = s.substr(2, s.size() - 3);
    std::vector<PLNode> nodes;
    std::size_t start = 0;
    while (start <= s.size()) {
        auto semi = s.find(';', start);
        if (semi == std::string_view::npos) semi = s.size();
        const auto item = s.substr(start, semi - start);
        const auto comma = item.find(',');
        if (comma == std::string_view::npos || item.find(',', comma + 1) != std::string_view::npos) {
            throw PLError("malformed node '" + std::string(trim(item)) + "'");
        }
        try {
            nodes.push_back({Rational::parse(item.substr(0, comma)), Rational::parse(item.substr(comma + 1))});
        } catch (const std::invalid_argument& e) {
            throw PLError("malformed node '" + std::string(trim(item)) + "': " + e.what());
        }
        start = semi + 1;
    }
    return interpolate(std::move(nodes));
}

std::string PLFunction::to_string() const
{
    std::string out = "L(";
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (i) out += ';';
        out += nodes_[i].t.to_string() + "," + nodes_[i].x.to_string();
    }
    return out + ")";
}

std::size_t PLFunction::segment_index(const Rational& q, bool from_left) const
{
    // from_left: t_i < q <= t_{i+1}; otherwise t_i <= q < t_{i+1}.
    auto cmp_t = [](const PLNode& n, const Rational& v) { return n.t < v; };
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), q, cmp_t);  // first t >= q
    std::size_t idx = static_cast<std::size_t>(it - nodes_.begin());
    if (from_left) return idx - 1;
    if (it != nodes_.end() && it->t == q) return idx;
    return idx - 1;
}

Affine PLFunction::segment(std::size_t i) const { return through(nodes_[i], nodes_[i + 1]); }

Rational PLFunction::eval(const Rational& q) const
{
    if (q < 0 || q > 1) throw PLError("point " + q.to_string() + " is outside [0,1]");
    if (q == 1) return nodes_.back().x;
    return segment(segment_index(q, false)).at(q);
}

Affine PLFunction::piece_left(const Rational& q) const
{
    if (q <= 0 || q > 1) throw PLError("no left piece at " + q.to_string());
    return segment(segment_index(q, true));
}

Affine PLFunction::piece_right(const Rational& q) const
{
    if (q < 0 || q >= 1) throw PLError("no right piece at " + q.to_string());
    return segment(segment_index(q, false));
}

bool PLFunction::locally_one(const Rational& v) const
{
    const Affine constant_one{0, 1};
    if (eval(v) != 1) return false;
    if (v > 0 && piece_left(v) != constant_one) return false;
    if (v < 1 && piece_right(v) != constant_one) return false;
    return true;
}

bool PLFunction::same_germ(const PLFunction& g, const Rational& v) const
{
    if (eval(v) != g.eval(v)) return false;
    if (v > 0 && piece_left(v) != g.piece_left(v)) return false;
    if (v < 1 && piece_right(v) != g.piece_right(v)) return false;
    return true;
}

std::optional<Rational> PLFunction::longest_gap() const
{
    // f is affine between nodes, so f^{-1}(1) is a union of nodes and flat segments at 1;
    // the gaps are the stretches between consecutive nodes valued 1 that are not adjacent.
    std::optional<Rational> best;
    std::optional<std::size_t> last_one;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (nodes_[i].x != 1) continue;
        const Rational from = last_one ? nodes_[*last_one].t : Rational(0);
        const bool gap = last_one ? (i > *last_one + 1) : (i > 0);
        if (gap) {
            const Rational len = nodes_[i].t - from;
            if (!best || *best < len) best = len;
        }
        last_one = i;
    }
    return best;
}

PLFunction pl_apply(Operation op, const PLFunction& f, const PLFunction& g)
{
    std::vector<Rational> ts;
    ts.reserve(f.nodes().size() + g.nodes().size());
    for (const auto& n : f.nodes()) ts.push_back(n.t);
    for (const auto& n : g.nodes()) ts.push_back(n.t);
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());

    std::vector<Rational> points;
    points.reserve(2 * ts.size());
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
        points.push_back(ts[i]);
        const Rational& a = ts[i];
        const Rational& b = ts[i + 1];
        const auto cut = switch_point(op, f.piece_right(a), g.piece_right(a));
        if (cut && a < *cut && *cut < b) points.push_back(*cut);
    }
    points.push_back(ts.back());

    std::vector<PLNode> nodes;
    nodes.reserve(points.size());
    for (const auto& t : points) nodes.push_back({t, combine(op, f.eval(t), g.eval(t))});
    return PLFunction::interpolate(std::move(nodes));
}

PLFunction term_to_pl(const Term& t)
{
    if (t.variables().size() > 1) throw std::invalid_argument("term_to_pl: the term has more than one variable");
    switch (t.kind()) {
    case Term::Kind::Var: return PLFunction::identity();
    case Term::Kind::One: return PLFunction::one();
    case Term::Kind::Binary: break;
    }
    return pl_apply(t.op(), term_to_pl(t.lhs()), term_to_pl(t.rhs()));
}

Rational pl_eval(const PLFunction& f, const Rational& q) { return f.eval(q); }

// ---------------------------------------------------------------------------
// Combs

std::set<Rational> fractions_with_denominators(const IndexSet& dens)
{
    std::set<Rational> out;
    for (auto d : dens) {
        for (std::int64_t h = 0; h <= d; ++h) {
            if (std::gcd(h, d) == 1) out.insert(Rational(h, d));
        }
    }
    return out;
}

CombTargets comb_targets(const Presentation& p)
{
    require_reduced(p, "comb_targets");
    CombTargets out;
    if (p.K) {
        out.J = {Rational(1)};
    } else {
        out.J = fractions_with_denominators(divisor_closure(p.J));
    }
    for (const auto& u : fractions_with_denominators(divisor_closure(p.I))) {
        if (!out.J.contains(u)) out.I.insert(u);
    }
    return out;
}

std::optional<std::int64_t> condition4_cutoff(const PLFunction& f)
{
    // If f(0) != 1 then h = 0 works for every d. Otherwise every maximal gap (a,b)
    // where f < 1 is open with 0 <= a < b <= 1, and once 1/d < b - a it contains
    // some h/d with 0 < h < d. The least such d is floor(1/len) + 1.
    if (f.eval(0) != 1) return 1;
    const auto gap = f.longest_gap();
    if (!gap) return std::nullopt;
    return (Rational(1) / *gap).floor().to_int64() + 1;
}

bool condition4_holds_at(const PLFunction& f, std::int64_t d)
{
    for (std::int64_t h = 0; h < d; ++h) {
        if (f.eval(Rational(h, d)) != 1) return true;
    }
    return false;
}

CombCheck is_comb(const PLFunction& f, const Presentation& p)
{
    const CombTargets targets = comb_targets(p);
    CombCheck out;
    auto fail = [&](int condition, Rational point, std::string message) {
        out.violated.push_back(condition);
        if (!out.ok) return;
        out.ok = false;
        out.condition = condition;
        out.point = std::move(point);
        out.message = std::move(message);
    };

    for (const auto& v : targets.J) {
        if (!f.locally_one(v)) {
            fail(1, v, "not identically 1 near " + v.to_string());
            break;
        }
    }
    for (const auto& u : targets.I) {
        if (f.eval(u) != 1) {
            fail(2, u, "value " + f.eval(u).to_string() + " at " + u.to_string());
            break;
        }
    }
    for (const auto& u : targets.I) {
        const auto du = u.denominator();
        const bool found = std::any_of(targets.I.begin(), targets.I.end(), [&](const Rational& v) {
            return mpz_divisible_p(du.get_mpz_t(), v.denominator().get_mpz_t()) != 0 && !f.locally_one(v);
        });
        if (!found) {
            fail(3, u, "every point of script-I with denominator dividing " + du.get_str() + " is locally 1");
            break;
        }
    }

    const IndexSet allowed = divisor_closure(set_union(p.I, p.J));
    const auto cutoff = condition4_cutoff(f);
    if (!cutoff) {
        std::int64_t d = 1;
        while (allowed.contains(d)) ++d;
        out.denominator = d;
        fail(4, Rational(0, 1), "f is identically 1, so every h/" + std::to_string(d) + " has value 1");
        return out;
    }
    out.cutoff = *cutoff;
    for (std::int64_t d = 1; d < *cutoff; ++d) {
        if (allowed.contains(d) || condition4_holds_at(f, d)) continue;
        out.denominator = d;
        fail(4, Rational(0, 1), "f(h/" + std::to_string(d) + ") = 1 for every 0 <= h < " + std::to_string(d));
        break;
    }
    return out;
}

std::optional<std::int64_t> condition4_direct(const PLFunction& f, const Presentation& p, std::int64_t dmax)
{
    const IndexSet allowed = divisor_closure(set_union(p.I, p.J));
    for (std::int64_t d = 1; d <= dmax; ++d) {
        if (!allowed.contains(d) && !condition4_holds_at(f, d)) return d;
    }
    return std::nullopt;
}

PLFunction make_comb(const Presentation& p)
{
    const CombTargets targets = comb_targets(p);
    const std::int64_t D = lcm_of(set_union(p.I, p.J));

    std::set<Rational> special = targets.I;
    special.insert(targets.J.begin(), targets.J.end());
    special.insert(Rational(0));
    special.insert(Rational(1));
    Rational gap = 1;
    for (auto it = std::next(special.begin()); it != special.end(); ++it) gap = min(gap, *it - *std::prev(it));

    // Slopes are 0 or +-N and the kinks sit at multiples of 1/N, so N a multiple of D
    // keeps every intercept integral. N * gap > D + 4 keeps the bumps disjoint and
    // makes 1/d (for d outside (I u J)v below the cutoff) miss every plateau.
    std::int64_t N = D;
    while (!(Rational(N) * gap > Rational(D + 4))) N += D;
    const Rational w(1, N);

    // Plateau of radius w at each point of script-J, spike of half-width w at each
    // point of script-I, zero elsewhere.
    auto value = [&](const Rational& t) {
        Rational best = 0;
        for (const auto& s : special) {
            const Rational dist = (t - s).abs();
            if (targets.J.contains(s)) best = max(best, min(1, max(0, Rational(2) - N * dist)));
            else if (targets.I.contains(s)) best = max(best, max(0, Rational(1) - N * dist));
        }
        return best;
    };
    std::set<Rational> knots{Rational(0), Rational(1)};
    for (const auto& s : special) {
        for (std::int64_t k = -2; k <= 2; ++k) {
            const Rational t = s + k * w;
            if (t >= 0 && t <= 1) knots.insert(t);
        }
    }
    std::vector<PLNode> nodes;
    for (const auto& t : knots) nodes.push_back({t, value(t)});

    PLFunction f = PLFunction::interpolate(std::move(nodes));
    const CombCheck check = is_comb(f, p);
    if (!check.ok) {
        throw std::logic_error("make_comb produced a non-comb for " + p.to_string() + ": condition " +
                               std::to_string(check.condition) + " (" + check.message + ")");
    }
    return f;
}

}  // namespace wh
