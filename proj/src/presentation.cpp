#include "wh/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace wh {

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::string join_set(const IndexSet& s, const char* empty)
{
    if (s.empty()) return empty;
    std::string out;
    for (auto v : s) {
        if (!out.empty()) out += ',';
        out += std::to_string(v);
    }
    return out;
}

IndexSet parse_index_list(std::string_view s, std::string_view whole)
{
    IndexSet out;
    s = trim(s);
    if (s.empty() || s == "{}" || s == "-") return out;
    if (s.front() == '{' && s.back() == '}') s = trim(s.substr(1, s.size() - 2));
    std::size_t start = 0;
    while (start <= s.size()) {
        auto comma = s.find(',', start);
        if (comma == std::string_view::npos) comma = s.size();
        const auto tok = trim(s.substr(start, comma - start));
        if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
            throw std::invalid_argument("malformed index list in presentation '" + std::string(whole) + "'");
        }
        const auto v = std::stoll(std::string(tok));
        if (v < 1) throw std::invalid_argument("presentation indices must be positive: '" + std::string(whole) + "'");
        out.insert(v);
        start = comma + 1;
    }
    return out;
}

bool divides(std::int64_t a, std::int64_t b) { return b % a == 0; }

bool some_multiple_in(std::int64_t a, const IndexSet& s)
{
    return std::any_of(s.begin(), s.end(), [a](std::int64_t b) { return divides(a, b); });
}

bool is_prime(std::int64_t p)
{
    if (p < 2) return false;
    for (std::int64_t d = 2; d * d <= p; ++d) {
        if (p % d == 0) return false;
    }
    return true;
}

std::vector<IndexSet> subsets(const IndexSet& s)
{
    const std::vector<std::int64_t> items(s.begin(), s.end());
    if (items.size() > 20) throw std::length_error("too many divisors to enumerate subvarieties");
    std::vector<IndexSet> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << items.size()); ++mask) {
        IndexSet sub;
        for (std::size_t i = 0; i < items.size(); ++i) {
            if (mask & (std::uint64_t{1} << i)) sub.insert(items[i]);
        }
        out.push_back(std::move(sub));
    }
    return out;
}

}  // namespace

std::string Presentation::to_string() const
{
    std::vector<std::string> parts;
    if (!I.empty()) parts.push_back("I=" + join_set(I, ""));
    if (!J.empty()) parts.push_back("J=" + join_set(J, ""));
    if (K) parts.push_back("K=omega");
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += "; ";
        out += parts[i];
    }
    return out;
}

std::string Presentation::label() const
{
    return "V(" + join_set(I, "∅") + ";" + join_set(J, "∅") + ";" + (K ? "ω" : "∅") + ")";
}

Presentation Presentation::parse(std::string_view text)
{
    Presentation p;
    std::string_view rest = trim(text);
    bool seen_i = false, seen_j = false, seen_k = false;
    while (!rest.empty()) {
        auto semi = rest.find(';');
        const auto part = trim(rest.substr(0, semi));
        rest = semi == std::string_view::npos ? std::string_view{} : rest.substr(semi + 1);
        if (part.empty()) continue;
        const auto eq = part.find('=');
        if (eq == std::string_view::npos) throw std::invalid_argument("expected X=... in presentation '" + std::string(text) + "'");
        const auto key = trim(part.substr(0, eq));
        const auto value = trim(part.substr(eq + 1));
        if (key == "I" && !seen_i) {
            p.I = parse_index_list(value, text);
            seen_i = true;
        } else if (key == "J" && !seen_j) {
            p.J = parse_index_list(value, text);
            seen_j = true;
        } else if (key == "K" && !seen_k) {
            if (value == "omega" || value == "w" || value == "ω" || value == "{omega}") p.K = true;
            else if (value.empty() || value == "{}" || value == "-") p.K = false;
            else throw std::invalid_argument("K must be 'omega' or empty in '" + std::string(text) + "'");
            seen_k = true;
        } else {
            throw std::invalid_argument("unexpected or repeated part '" + std::string(key) + "' in presentation '" +
                                        std::string(text) + "'");
        }
    }
    return p;
}

IndexSet divisor_closure(const IndexSet& x)
{
    IndexSet out;
    for (auto v : x) {
        for (std::int64_t d = 1; d * d <= v; ++d) {
            if (v % d == 0) {
                out.insert(d);
                out.insert(v / d);
            }
        }
    }
    return out;
}

IndexSet set_union(const IndexSet& a, const IndexSet& b)
{
    IndexSet out = a;
    out.insert(b.begin(), b.end());
    return out;
}

std::int64_t lcm_of(const IndexSet& x)
{
    std::int64_t l = 1;
    for (auto v : x) l = std::lcm(l, v);
    return l;
}

bool is_reduced(const Presentation& p)
{
    if (p.empty()) return false;
    if (!p.J.empty() && p.K) return false;
    for (auto m : p.I) {
        for (auto m2 : p.I) {
            if (m2 != m && divides(m, m2)) return false;
        }
        if (some_multiple_in(m, p.J)) return false;
    }
    for (auto n : p.J) {
        for (auto n2 : p.J) {
            if (n2 != n && divides(n, n2)) return false;
        }
    }
    return true;
}

Presentation reduce(const Presentation& p)
{
    if (p.empty()) throw std::invalid_argument("cannot reduce the empty triple");
    Presentation r;
    r.K = p.K && p.J.empty();
    for (auto j : p.J) {
        const bool dominated = std::any_of(p.J.begin(), p.J.end(), [j](auto j2) { return j2 != j && divides(j, j2); });
        if (!dominated) r.J.insert(j);
    }
    for (auto i : p.I) {
        const bool dominated = std::any_of(p.I.begin(), p.I.end(), [i](auto i2) { return i2 != i && divides(i, i2); }) ||
                               some_multiple_in(i, r.J);
        if (!dominated) r.I.insert(i);
    }
    return r;
}

void require_reduced(const Presentation& p, const char* where)
{
    if (!is_reduced(p)) {
        throw std::invalid_argument(std::string(where) + ": presentation '" + p.to_string() + "' is not reduced");
    }
}

std::vector<ChainDescriptor> generators(const Presentation& p)
{
    std::vector<ChainDescriptor> out;
    for (auto i : p.I) out.push_back(ChainDescriptor::fin(i));
    for (auto j : p.J) out.push_back(ChainDescriptor::lex(j, 0));
    if (p.K) out.push_back(ChainDescriptor::neg_cone());
    return out;
}

bool variety_member(const ChainDescriptor& d, const Presentation& p)
{
    switch (d.kind) {
    case ChainDescriptor::Kind::Fin: return divisor_closure(set_union(p.I, p.J)).contains(d.n);
    case ChainDescriptor::Kind::Lex: return divisor_closure(p.J).contains(d.n);
    case ChainDescriptor::Kind::NegCone: return !p.J.empty() || p.K;
    }
    return false;
}

bool variety_leq(const Presentation& p, const Presentation& q)
{
    const auto gens = generators(p);
    return std::all_of(gens.begin(), gens.end(), [&](const auto& g) { return variety_member(g, q); });
}

bool is_structural_variety(const Presentation& p)
{
    require_reduced(p, "is_structural_variety");
    return p.J.empty() || p.J == IndexSet{1};
}

// ---------------------------------------------------------------------------

QuasiDescriptor QuasiDescriptor::bracket(IndexSet i, IndexSet j)
{
    if (i.empty() && j.empty()) throw std::invalid_argument("Q[I,J] needs I or J nonempty");
    QuasiDescriptor q;
    q.kind = Kind::QBracket;
    q.p.I = std::move(i);
    q.p.J = std::move(j);
    return q;
}

std::vector<ChainDescriptor> QuasiDescriptor::generators() const
{
    if (kind == Kind::QV) return wh::generators(p);
    std::vector<ChainDescriptor> out;
    for (auto i : p.I) out.push_back(ChainDescriptor::fin(i));
    for (auto j : p.J) out.push_back(ChainDescriptor::lex(j, 1));
    return out;
}

std::string QuasiDescriptor::to_string() const
{
    if (kind == Kind::QV) return "Q(" + p.to_string() + ")";
    return "Q[" + p.to_string() + "]";
}

QuasiDescriptor structural_core(const Presentation& p)
{
    require_reduced(p, "structural_core");
    if (p.K || p.J.empty()) return QuasiDescriptor::qv(p);
    return QuasiDescriptor::bracket(p.I, p.J);
}

bool quasi_leq(const QuasiDescriptor& q, const QuasiDescriptor& r)
{
    if (q.kind != QuasiDescriptor::Kind::QBracket || r.kind != QuasiDescriptor::Kind::QBracket) {
        throw std::invalid_argument("quasi_leq compares quasivarieties of the form Q[I,J]");
    }
    for (auto i : q.p.I) {
        if (i != 1 && !some_multiple_in(i, r.p.I)) return false;
    }
    for (auto j : q.p.J) {
        if (!some_multiple_in(j, r.p.J)) return false;
    }
    return true;
}

const char* primitivity_name(Primitivity p)
{
    switch (p) {
    case Primitivity::Primitive: return "Primitive";
    case Primitivity::NotPrimitive: return "NotPrimitive";
    case Primitivity::Unknown: return "Unknown";
    }
    return "?";
}

PrimitivityVerdict primitivity(const QuasiDescriptor& q)
{
    const auto& I = q.p.I;
    const auto& J = q.p.J;
    if (q.p.empty()) throw std::invalid_argument("primitivity: empty presentation");
    if (J.empty() && !q.p.K) {
        return {Primitivity::Primitive, "locally finite: every locally finite quasivariety of Wajsberg hoops is a primitive variety"};
    }
    if (q.kind == QuasiDescriptor::Kind::QV) {
        if (J.empty() || J == IndexSet{1}) {
            return {Primitivity::Primitive, "structural variety (J = ∅ or J = {1}); varieties are structural iff primitive"};
        }
        return {Primitivity::NotPrimitive, "variety with J ≠ ∅ and J ≠ {1} is not structural, hence not primitive"};
    }
    if (J == IndexSet{1}) {
        return {Primitivity::Primitive, "Q[I,{1}] = Q(I,{1},∅) is a structural variety"};
    }
    if (I.empty() && J.size() == 1 && is_prime(*J.begin())) {
        return {Primitivity::Primitive, "Q[∅,{p}] with p prime: every proper subquasivariety is a structural variety"};
    }
    IndexSet common;
    const auto Id = divisor_closure(I), Jd = divisor_closure(J);
    std::set_intersection(Id.begin(), Id.end(), Jd.begin(), Jd.end(), std::inserter(common, common.end()));
    common.erase(1);
    if (!common.empty()) {
        const auto n = *common.begin();
        return {Primitivity::NotPrimitive, "I↓ ∩ J↓ contains " + std::to_string(n) + " ≠ 1: Q[I=" + std::to_string(n) + "; J=" +
                                               std::to_string(n) + "] is a non-structural subquasivariety"};
    }
    return {Primitivity::Unknown, "not settled: subquasivarieties of Q[I,J] need not be generated by chains"};
}

// ---------------------------------------------------------------------------

std::optional<std::size_t> VarietyLattice::find(const Presentation& p) const
{
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i] && *nodes[i] == p) return i;
    }
    return std::nullopt;
}

std::string VarietyLattice::node_label(std::size_t i) const { return nodes.at(i) ? nodes[i]->label() : "0"; }

std::string VarietyLattice::to_dot() const
{
    std::ostringstream os;
    os << "digraph subvarieties {\n  rankdir=BT;\n  node [shape=plaintext];\n";
    for (std::size_t i = 0; i < nodes.size(); ++i) os << "  n" << i << " [label=\"" << node_label(i) << "\"];\n";
    for (const auto& [lo, hi] : covers) os << "  n" << lo << " -> n" << hi << " [arrowhead=none];\n";
    os << "}\n";
    return os.str();
}

VarietyLattice subvariety_lattice(const Presentation& p)
{
    require_reduced(p, "subvariety_lattice");
    const auto i_choices = subsets(divisor_closure(set_union(p.I, p.J)));
    const auto j_choices = subsets(divisor_closure(p.J));

    std::vector<Presentation> found;
    for (const auto& i : i_choices) {
        for (const auto& j : j_choices) {
            for (bool k : {false, true}) {
                Presentation q{i, j, k};
                if (!is_reduced(q) || !variety_leq(q, p)) continue;
                found.push_back(std::move(q));
            }
        }
    }

    // Order by the number of strictly smaller varieties, then by text, so the
    // node numbering is a linear extension of the inclusion order.
    const std::size_t m = found.size();
    std::vector<std::vector<bool>> below(m, std::vector<bool>(m, false));
    std::vector<std::size_t> down_count(m, 0);
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = 0; b < m; ++b) {
            if (a != b && variety_leq(found[a], found[b])) {
                below[a][b] = true;
                ++down_count[b];
            }
        }
    }
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto x, auto y) {
        if (down_count[x] != down_count[y]) return down_count[x] < down_count[y];
        return found[x].label() < found[y].label();
    });

    VarietyLattice lat;
    lat.nodes.push_back(std::nullopt);
    for (auto idx : order) lat.nodes.push_back(found[idx]);

    // leq over lattice indices; the trivial variety (index 0) is below everything.
    auto lt = [&](std::size_t x, std::size_t y) -> bool {
        if (x == y) return false;
        if (x == 0) return true;
        if (y == 0) return false;
        return below[order[x - 1]][order[y - 1]];
    };
    const std::size_t n = lat.nodes.size();
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            if (!lt(x, y)) continue;
            bool covered = true;
            for (std::size_t z = 0; z < n && covered; ++z) {
                if (lt(x, z) && lt(z, y)) covered = false;
            }
            if (covered) lat.covers.emplace_back(x, y);
        }
    }
    return lat;
}

}  // namespace wh
