#pragma once

// Real-valued expressions in one variable `t` with named constants.
//
// Grammar (whitespace-insensitive):
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' unary)?          right-associative, binds tighter than unary minus
//   primary := number | 't' | identifier | function '(' expr ')' | '(' expr ')'
//   function in {sin, cos, sqrt}

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace envelopes {

using Constants = std::map<std::string, double, std::less<>>;

enum class NodeKind { Number, Variable, Constant, Neg, Sin, Cos, Sqrt, Add, Sub, Mul, Div, Pow };

/// Immutable expression tree. Copies share structure.
class Expr {
public:
    struct Node;

    Expr();  // the number 0

    static Expr number(double value);
    static Expr variable();
    static Expr constant(std::string name);
    static Expr unary(NodeKind kind, Expr operand);
    static Expr binary(NodeKind kind, Expr lhs, Expr rhs);

    NodeKind kind() const;
    double value() const;              // Number only
    const std::string& name() const;   // Constant only
    const Expr& lhs() const;           // unary operand or binary left
    const Expr& rhs() const;           // binary right

    bool is_number() const { return kind() == NodeKind::Number; }
    bool is_number(double v) const { return is_number() && value() == v; }

    /// True when the subtree mentions the variable t.
    bool depends_on_t() const;

    /// Names of all constants referenced, sorted and unique.
    std::vector<std::string> constant_names() const;

private:
    explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

Expr parse(std::string_view source);

/// Evaluates at t. Throws DomainError for a negative sqrt operand, division by
/// zero or a non-finite result; UnboundConstant for a missing name.
double eval(const Expr& e, double t, const Constants& constants = {});

/// Symbolic d/dt with constant folding. Throws DomainError if an exponent depends on t.
Expr differentiate(const Expr& e);

/// Infix text that parses back to an equivalent tree (numbers printed with 17 digits).
std::string to_string(const Expr& e);

/// Prefix form, e.g. "add(pow(t,2),1)"; mainly for tests and diagnostics.
std::string to_tree_string(const Expr& e);

/// Flattened postfix program with constants resolved, for hot evaluation loops.
class CompiledExpr {
public:
    CompiledExpr() = default;
    CompiledExpr(const Expr& e, const Constants& constants);

    double operator()(double t) const;

private:
    struct Op {
        NodeKind kind;
        double value;
    };
    std::vector<Op> program_;
    std::size_t max_depth_ = 0;
};

}  // namespace envelopes
