#include "wh/term.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

namespace wh {

const char* operation_name(Operation op)
{
    switch (op) {
    case Operation::Mul: return "mul";
    case Operation::Imp: return "imp";
    case Operation::Meet: return "meet";
    case Operation::Join: return "join";
    case Operation::Neg: return "neg";
    }
    return "?";
}

namespace {

std::size_t mix(std::size_t h, std::size_t v) { return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)); }

bool valid_identifier(std::string_view s)
{
    if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
    return std::all_of(s.begin(), s.end(),
                       [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

}  // namespace

Term Term::var(std::string name)
{
    if (!valid_identifier(name)) throw std::invalid_argument("invalid variable name '" + name + "'");
    auto n = std::make_shared<Node>();
    n->kind = Kind::Var;
    n->hash = mix(std::hash<std::string>{}(name), 1);
    n->name = std::move(name);
    return Term(std::move(n));
}

Term Term::one()
{
    static const Term t = [] {
        auto n = std::make_shared<Node>();
        n->kind = Kind::One;
        n->hash = 0x51ed27;
        return Term(std::move(n));
    }();
    return t;
}

Term Term::binary(Operation op, Term lhs, Term rhs)
{
    if (op == Operation::Neg) throw std::invalid_argument("negation is not a term constructor");
    auto n = std::make_shared<Node>();
    n->kind = Kind::Binary;
    n->op = op;
    n->depth = 1 + std::max(lhs.depth(), rhs.depth());
    n->size = 1 + lhs.size() + rhs.size();
    n->hash = mix(mix(static_cast<std::size_t>(op) + 7, lhs.node_->hash), rhs.node_->hash);
    n->kids = {std::move(lhs), std::move(rhs)};
    return Term(std::move(n));
}

const std::string& Term::name() const
{
    if (!is_var()) throw std::logic_error("Term::name on a non-variable");
    return node_->name;
}

Operation Term::op() const
{
    if (!is_binary()) throw std::logic_error("Term::op on an atom");
    return node_->op;
}

const Term& Term::lhs() const
{
    if (!is_binary()) throw std::logic_error("Term::lhs on an atom");
    return node_->kids[0];
}

const Term& Term::rhs() const
{
    if (!is_binary()) throw std::logic_error("Term::rhs on an atom");
    return node_->kids[1];
}

void Term::collect_variables(std::set<std::string>& out) const
{
    switch (kind()) {
    case Kind::Var: out.insert(name()); break;
    case Kind::One: break;
    case Kind::Binary:
        lhs().collect_variables(out);
        rhs().collect_variables(out);
        break;
    }
}

std::set<std::string> Term::variables() const
{
    std::set<std::string> out;
    collect_variables(out);
    return out;
}

bool operator==(const Term& a, const Term& b)
{
    if (a.node_ == b.node_) return true;
    if (a.node_->hash != b.node_->hash || a.kind() != b.kind() || a.size() != b.size()) return false;
    switch (a.kind()) {
    case Term::Kind::Var: return a.name() == b.name();
    case Term::Kind::One: return true;
    case Term::Kind::Binary: return a.op() == b.op() && a.lhs() == b.lhs() && a.rhs() == b.rhs();
    }
    return false;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Term parse()
    {
        Term t = parse_imp();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected token '" + std::string(1, text_[pos_]) + "'");
        return t;
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

    void skip_ws()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(std::string_view tok)
    {
        skip_ws();
        if (text_.substr(pos_, tok.size()) == tok) {
            pos_ += tok.size();
            return true;
        }
        return false;
    }

    Term parse_imp()
    {
        Term lhs = parse_join();
        if (accept("->")) return Term::imp(std::move(lhs), parse_imp());
        return lhs;
    }

    Term parse_join()
    {
        Term t = parse_meet();
        while (accept("\\/")) t = Term::join(std::move(t), parse_meet());
        return t;
    }

    Term parse_meet()
    {
        Term t = parse_prod();
        while (accept("/\\")) t = Term::meet(std::move(t), parse_prod());
        return t;
    }

    Term parse_prod()
    {
        Term t = parse_atom();
        while (accept("*")) t = Term::mul(std::move(t), parse_atom());
        return t;
    }

    Term parse_atom()
    {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Term t = parse_imp();
            if (!accept(")")) fail("expected ')'");
            return t;
        }
        if (c == '1') {
            ++pos_;
            if (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) {
                --pos_;
                fail("unknown token (only the constant 1 is allowed)");
            }
            return Term::one();
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                ++pos_;
            }
            return Term::var(std::string(text_.substr(start, pos_ - start)));
        }
        fail("unknown token '" + std::string(1, c) + "'");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

// Binding strength, tightest = highest.
int level(const Term& t)
{
    if (!t.is_binary()) return 5;
    switch (t.op()) {
    case Operation::Mul: return 4;
    case Operation::Meet: return 3;
    case Operation::Join: return 2;
    case Operation::Imp: return 1;
    default: return 0;
    }
}

const char* symbol(Operation op)
{
    switch (op) {
    case Operation::Mul: return "*";
    case Operation::Meet: return " /\\ ";
    case Operation::Join: return " \\/ ";
    case Operation::Imp: return " -> ";
    default: return "?";
    }
}

void print_into(const Term& t, std::string& out)
{
    switch (t.kind()) {
    case Term::Kind::Var: out += t.name(); return;
    case Term::Kind::One: out += '1'; return;
    case Term::Kind::Binary: break;
    }
    const int me = level(t);
    // -> is right associative: the left operand needs parentheses at equal level.
    // The others are left associative: the right operand does.
    const bool right_assoc = t.op() == Operation::Imp;
    const bool paren_l = level(t.lhs()) < me || (right_assoc && level(t.lhs()) == me);
    const bool paren_r = level(t.rhs()) < me || (!right_assoc && level(t.rhs()) == me);
    if (paren_l) out += '(';
    print_into(t.lhs(), out);
    if (paren_l) out += ')';
    out += symbol(t.op());
    if (paren_r) out += '(';
    print_into(t.rhs(), out);
    if (paren_r) out += ')';
}

}  // namespace

Term parse_term(std::string_view text) { return Parser(text).parse(); }

std::string print_term(const Term& t)
{
    std::string out;
    print_into(t, out);
    return out;
}

Term power(const Term& base, int exponent)
{
    if (exponent < 1) throw std::invalid_argument("power: exponent must be >= 1");
    Term t = base;
    for (int i = 1; i < exponent; ++i) t = Term::mul(t, base);
    return t;
}

std::vector<Term> enumerate_terms(const std::vector<std::string>& vars, int max_depth, std::size_t budget)
{
    if (max_depth < 0) throw std::invalid_argument("enumerate_terms: max_depth must be >= 0");
    if (budget < 1) throw std::invalid_argument("enumerate_terms: budget must be >= 1");

    std::vector<Term> out;
    std::set<std::string> seen_vars;
    for (const auto& v : vars) {
        if (!seen_vars.insert(v).second) continue;
        out.push_back(Term::var(v));
        if (out.size() >= budget) return out;
    }
    out.push_back(Term::one());
    if (out.size() >= budget) return out;

    // out[0, prev_end) has depth < d-1, out[prev_end, level_end) has depth exactly d-1.
    std::size_t prev_end = 0;
    std::size_t level_end = out.size();
    for (int d = 1; d <= max_depth; ++d) {
        for (Operation op : kBinaryOps) {
            for (std::size_t i = 0; i < level_end; ++i) {
                for (std::size_t j = 0; j < level_end; ++j) {
                    if (i < prev_end && j < prev_end) continue;  // would have depth < d
                    out.push_back(Term::binary(op, out[i], out[j]));
                    if (out.size() >= budget) return out;
                }
            }
        }
        prev_end = level_end;
        level_end = out.size();
    }
    return out;
}

}  // namespace wh
