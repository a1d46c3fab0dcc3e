#include "wh/checker.hpp"

#include "wh/bdelta.hpp"
#include "wh/mcnaughton.hpp"

#include <cctype>
#include <numeric>
#include <stdexcept>

namespace wh {

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    int depth = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(') ++depth;
        else if (s[i] == ')') --depth;
        else if (s[i] == sep && depth == 0) {
            out.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    out.push_back(s.substr(start));
    return out;
}

std::string join_equations(const std::vector<Equation>& es, const char* sep)
{
    std::string out;
    for (const auto& e : es) {
        if (!out.empty()) out += sep;
        out += e.to_string();
    }
    return out;
}

template <class Alg>
std::vector<element_t<Alg>> carrier(const Alg& alg)
{
    if (!alg.finite()) throw std::invalid_argument(alg.to_string() + " is infinite; exhaustive checking needs a finite algebra");
    return elements(alg);
}

// Calls visit(assignment) for every assignment in lexicographic order; stops when it returns false.
template <class Alg, class Visit>
void for_each_assignment(const Alg& alg, const std::set<std::string>& vars, Visit visit)
{
    const auto carrier_elems = carrier(alg);
    const std::vector<std::string> names(vars.begin(), vars.end());
    std::vector<std::size_t> idx(names.size(), 0);
    Assignment<Alg> a;
    while (true) {
        for (std::size_t v = 0; v < names.size(); ++v) a.insert_or_assign(names[v], carrier_elems[idx[v]]);
        if (!visit(a)) return;
        std::size_t pos = names.size();
        while (pos > 0) {
            --pos;
            if (++idx[pos] < carrier_elems.size()) break;
            idx[pos] = 0;
            if (pos == 0) return;
        }
        if (names.empty()) return;
    }
}

template <class Alg>
bool holds(const Alg& alg, const Equation& e, const Assignment<Alg>& a)
{
    return eval(alg, e.lhs, a) == eval(alg, e.rhs, a);
}

template <class Alg>
CheckResult witness(const Alg& alg, const Assignment<Alg>& a)
{
    CheckResult r;
    r.verdict = Verdict::Invalid;
    r.algebra = alg.to_string();
    for (const auto& [name, value] : a) r.assignment.emplace_back(name, value.to_string());
    return r;
}

template <class Alg>
CheckResult identity_finite(const Equation& e, const Alg& alg)
{
    CheckResult result;
    for_each_assignment(alg, e.variables(), [&](const Assignment<Alg>& a) {
        if (holds(alg, e, a)) return true;
        result = witness(alg, a);
        return false;
    });
    return result;
}

template <class Alg>
CheckResult clause_finite(const Clause& c, const Alg& alg)
{
    CheckResult result;
    for_each_assignment(alg, c.variables(), [&](const Assignment<Alg>& a) {
        for (const auto& p : c.premises) {
            if (!holds(alg, p, a)) return true;
        }
        for (const auto& q : c.conclusions) {
            if (holds(alg, q, a)) return true;
        }
        result = witness(alg, a);
        return false;
    });
    return result;
}

CheckResult invalid_at(const ChainDescriptor& d, const Element& x, const std::string& var)
{
    CheckResult r;
    r.verdict = Verdict::Invalid;
    r.algebra = d.to_string();
    r.assignment.emplace_back(var, x.to_string());
    return r;
}

CheckResult route_points(const Equation& e, const Presentation& p, const std::string& var)
{
    auto differs = [&](const ChainDescriptor& d, const Element& x) {
        return eval_unary(d, e.lhs, x) != eval_unary(d, e.rhs, x);
    };
    for (auto k : divisor_closure(set_union(p.I, p.J))) {
        const auto d = ChainDescriptor::fin(k);
        for (const auto& x : elements(d)) {
            if (differs(d, x)) return invalid_at(d, x, var);
        }
    }
    for (auto k : divisor_closure(p.J)) {
        for (std::int64_t h = 0; h < k; ++h) {
            if (std::gcd(k, h) != 1) continue;
            const auto d = ChainDescriptor::lex(k, h);
            const Element g = g_kh(k, h);
            for (const Element& x : {g, neg(d, g)}) {
                if (differs(d, x)) return invalid_at(d, x, var);
            }
        }
    }
    if (!p.J.empty() || p.K) {
        const auto d = ChainDescriptor::neg_cone();
        const Element c = make_element(d, -1);
        if (differs(d, c)) return invalid_at(d, c, var);
    }
    return {};
}

CheckResult route_functions(const Equation& e, const Presentation& p, const std::string& var)
{
    const PLFunction f = term_to_pl(e.lhs);
    const PLFunction g = term_to_pl(e.rhs);
    const CombTargets targets = comb_targets(p);
    CheckResult r;
    for (const auto& u : targets.I) {
        if (f.eval(u) != g.eval(u)) {
            r.verdict = Verdict::Invalid;
            r.algebra = "L" + u.denominator().get_str();
            r.assignment.emplace_back(var, u.numerator().get_str());
            r.note = "values differ at " + u.to_string();
            return r;
        }
    }
    for (const auto& v : targets.J) {
        if (!f.same_germ(g, v)) {
            r.verdict = Verdict::Invalid;
            r.algebra = p.K ? "Comega" : "L(" + v.denominator().get_str() + ",h)";
            r.assignment.emplace_back(var, "near " + v.to_string());
            r.note = "germs differ at " + v.to_string();
            return r;
        }
    }
    return r;
}

}  // namespace

Equation Equation::parse(std::string_view text)
{
    const auto parts = split(text, '~');
    if (parts.size() != 2) throw std::invalid_argument("expected an equation 'p ~ q', got '" + std::string(trim(text)) + "'");
    return {parse_term(parts[0]), parse_term(parts[1])};
}

std::string Equation::to_string() const { return print_term(lhs) + " ~ " + print_term(rhs); }

std::set<std::string> Equation::variables() const
{
    std::set<std::string> out;
    lhs.collect_variables(out);
    rhs.collect_variables(out);
    return out;
}

Clause Clause::parse(std::string_view text)
{
    Clause c;
    std::string_view body = trim(text);
    std::string_view head;
    const auto arrow = body.find("=>");
    if (arrow == std::string_view::npos) {
        head = body;
        body = {};
    } else {
        head = trim(body.substr(arrow + 2));
        body = trim(body.substr(0, arrow));
    }
    if (!body.empty()) {
        for (auto piece : split(body, ',')) c.premises.push_back(Equation::parse(piece));
    }
    for (auto piece : split(head, '|')) c.conclusions.push_back(Equation::parse(piece));
    return c;
}

std::string Clause::to_string() const
{
    std::string out = join_equations(premises, ", ");
    out += premises.empty() ? "=> " : " => ";
    return out + join_equations(conclusions, " | ");
}

std::set<std::string> Clause::variables() const
{
    std::set<std::string> out;
    for (const auto& e : premises) out.merge(e.variables());
    for (const auto& e : conclusions) out.merge(e.variables());
    return out;
}

const char* verdict_name(Verdict v)
{
    switch (v) {
    case Verdict::Valid: return "valid";
    case Verdict::Invalid: return "invalid";
    case Verdict::Undecided: return "undecided";
    }
    return "?";
}

CheckResult valid_identity_finite(const Equation& e, const ChainDescriptor& alg) { return identity_finite(e, alg); }
CheckResult valid_identity_finite(const Equation& e, const ProductAlgebra& alg) { return identity_finite(e, alg); }
CheckResult valid_clause_finite(const Clause& c, const ChainDescriptor& alg) { return clause_finite(c, alg); }
CheckResult valid_clause_finite(const Clause& c, const ProductAlgebra& alg) { return clause_finite(c, alg); }

RouteResults identity_routes(const Equation& e, const Presentation& p)
{
    require_reduced(p, "identity_routes");
    const auto vars = e.variables();
    if (vars.size() > 1) throw std::invalid_argument("identity_routes: the equation has more than one variable");
    const std::string var = vars.empty() ? "x" : *vars.begin();
    return {route_points(e, p, var), route_functions(e, p, var)};
}

CheckResult valid_identity_variety(const Equation& e, const Presentation& p)
{
    require_reduced(p, "valid_identity_variety");
    if (e.variables().size() > 1) {
        if (!p.J.empty() || p.K) {
            CheckResult r;
            r.verdict = Verdict::Undecided;
            r.note = "identities in several variables are decided only for locally finite varieties";
            return r;
        }
        for (auto i : p.I) {
            CheckResult r = valid_identity_finite(e, ChainDescriptor::fin(i));
            if (!r.valid()) return r;
        }
        return {};
    }
    RouteResults routes = identity_routes(e, p);
    if (routes.points.verdict != routes.functions.verdict) {
        throw std::logic_error("route disagreement on " + e.to_string() + " over " + p.to_string() + ": points say " +
                               verdict_name(routes.points.verdict) + ", functions say " +
                               verdict_name(routes.functions.verdict));
    }
    if (!routes.points.valid() && !routes.functions.note.empty()) routes.points.note = routes.functions.note;
    return routes.points;
}

CheckResult derivable_rule_tabular(const Clause& c, std::int64_t n)
{
    CheckResult r = valid_clause_finite(c, ChainDescriptor::fin(n));
    r.note = std::string("the logic of L") + std::to_string(n) +
             " is structurally complete, so this rule is admissible exactly when it is derivable";
    return r;
}

}  // namespace wh
