#pragma once

// Term language for Wajsberg hoops: x*y, x -> y, x /\ y, x \/ y, 1 and variables.
//
// Surface syntax, loosest binding first:
//   term  := imp
//   imp   := join ("->" imp)?          right associative
//   join  := meet ("\/" meet)*         left associative
//   meet  := prod ("/\" prod)*         left associative
//   prod  := atom ("*" atom)*          left associative
//   atom  := ident | "1" | "(" term ")"
//   ident := [a-zA-Z][a-zA-Z0-9_]*

#include <cstddef>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace wh {

/// Binary hoop operations; Neg is only defined on bounded algebras and is not a term constructor.
enum class Operation { Mul, Imp, Meet, Join, Neg };

inline constexpr Operation kBinaryOps[] = {Operation::Mul, Operation::Imp, Operation::Meet, Operation::Join};

const char* operation_name(Operation op);

class ParseError : public std::invalid_argument {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::invalid_argument(what + " at position " + std::to_string(position)), position_(position)
    {
    }
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

class Term {
public:
    enum class Kind { Var, One, Binary };

    static Term var(std::string name);
    static Term one();
    static Term binary(Operation op, Term lhs, Term rhs);

    static Term mul(Term l, Term r) { return binary(Operation::Mul, std::move(l), std::move(r)); }
    static Term imp(Term l, Term r) { return binary(Operation::Imp, std::move(l), std::move(r)); }
    static Term meet(Term l, Term r) { return binary(Operation::Meet, std::move(l), std::move(r)); }
    static Term join(Term l, Term r) { return binary(Operation::Join, std::move(l), std::move(r)); }

    Kind kind() const { return node_->kind; }
    bool is_var() const { return kind() == Kind::Var; }
    bool is_one() const { return kind() == Kind::One; }
    bool is_binary() const { return kind() == Kind::Binary; }

    const std::string& name() const;  // Var only
    Operation op() const;             // Binary only
    const Term& lhs() const;          // Binary only
    const Term& rhs() const;          // Binary only

    /// Height of the tree; atoms have depth 0.
    int depth() const { return node_->depth; }
    std::size_t size() const { return node_->size; }

    void collect_variables(std::set<std::string>& out) const;
    std::set<std::string> variables() const;

    friend bool operator==(const Term& a, const Term& b);
    friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

private:
    struct Node {
        Kind kind;
        Operation op = Operation::Mul;
        std::string name;
        std::vector<Term> kids;  // two operands for Binary
        int depth = 0;
        std::size_t size = 1;
        std::size_t hash = 0;
    };
    explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;

    friend struct TermHash;
    friend class TermBuilder;
};

struct TermHash {
    std::size_t operator()(const Term& t) const noexcept { return t.node_->hash; }
};

/// Parses a term; throws ParseError carrying the offending offset.
Term parse_term(std::string_view text);

/// Prints with the fewest parentheses that still re-parse to the same tree.
std::string print_term(const Term& t);

/// x^n as x*x*...*x (n >= 1).
Term power(const Term& base, int exponent);

/// Every term over `vars` (plus the constant 1) of depth <= max_depth, pairwise
/// distinct, in a fixed order: by depth, then operation (*, ->, /\, \/), then by
/// the position of the operands in the output so far. Stops after `budget` terms.
std::vector<Term> enumerate_terms(const std::vector<std::string>& vars, int max_depth, std::size_t budget);

}  // namespace wh
