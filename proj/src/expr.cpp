#include "envelopes/expr.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <optional>
#include <set>

#include "envelopes/error.hpp"

namespace envelopes {

struct Expr::Node {
    NodeKind kind;
    double value = 0.0;
    std::string name;
    std::optional<Expr> lhs_;
    std::optional<Expr> rhs_;
    bool has_t = false;
};

namespace {

bool is_unary(NodeKind k) {
    return k == NodeKind::Neg || k == NodeKind::Sin || k == NodeKind::Cos || k == NodeKind::Sqrt;
}

bool is_binary(NodeKind k) {
    return k == NodeKind::Add || k == NodeKind::Sub || k == NodeKind::Mul || k == NodeKind::Div ||
           k == NodeKind::Pow;
}

const char* kind_name(NodeKind k) {
    switch (k) {
        case NodeKind::Number: return "num";
        case NodeKind::Variable: return "t";
        case NodeKind::Constant: return "const";
        case NodeKind::Neg: return "neg";
        case NodeKind::Sin: return "sin";
        case NodeKind::Cos: return "cos";
        case NodeKind::Sqrt: return "sqrt";
        case NodeKind::Add: return "add";
        case NodeKind::Sub: return "sub";
        case NodeKind::Mul: return "mul";
        case NodeKind::Div: return "div";
        case NodeKind::Pow: return "pow";
    }
    return "?";
}

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

Expr::Expr() : Expr(number(0.0)) {}

Expr Expr::number(double value) {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Number;
    n->value = value;
    return Expr(std::move(n));
}

Expr Expr::variable() {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Variable;
    n->has_t = true;
    return Expr(std::move(n));
}

Expr Expr::constant(std::string name) {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Constant;
    n->name = std::move(name);
    return Expr(std::move(n));
}

Expr Expr::unary(NodeKind kind, Expr operand) {
    if (!is_unary(kind)) throw InvalidArgument("not a unary node kind");
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->has_t = operand.depends_on_t();
    n->lhs_ = std::move(operand);
    return Expr(std::move(n));
}

Expr Expr::binary(NodeKind kind, Expr lhs, Expr rhs) {
    if (!is_binary(kind)) throw InvalidArgument("not a binary node kind");
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->has_t = lhs.depends_on_t() || rhs.depends_on_t();
    n->lhs_ = std::move(lhs);
    n->rhs_ = std::move(rhs);
    return Expr(std::move(n));
}

NodeKind Expr::kind() const { return node_->kind; }
double Expr::value() const { return node_->value; }
const std::string& Expr::name() const { return node_->name; }
const Expr& Expr::lhs() const { return node_->lhs_.value(); }
const Expr& Expr::rhs() const { return node_->rhs_.value(); }
bool Expr::depends_on_t() const { return node_->has_t; }

std::vector<std::string> Expr::constant_names() const {
    std::set<std::string> names;
    auto walk = [&](auto&& self, const Expr& e) -> void {
        if (e.kind() == NodeKind::Constant) names.insert(e.name());
        if (is_unary(e.kind()) || is_binary(e.kind())) self(self, e.lhs());
        if (is_binary(e.kind())) self(self, e.rhs());
    };
    walk(walk, *this);
    return {names.begin(), names.end()};
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
public:
    explicit Parser(std::string_view src) : src_(src) {}

    Expr parse_all() {
        Expr e = parse_expr();
        skip_ws();
        if (pos_ < src_.size()) fail("unexpected trailing input", {"'+'", "'-'", "'*'", "'/'", "'^'", "end of input"});
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg, std::vector<std::string> expected) const {
        std::string what = msg + " at offset " + std::to_string(pos_);
        if (!expected.empty()) {
            what += " (expected ";
            for (std::size_t i = 0; i < expected.size(); ++i) {
                if (i) what += ", ";
                what += expected[i];
            }
            what += ")";
        }
        throw ParseError(what, pos_, std::move(expected));
    }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Expr parse_expr() {
        Expr lhs = parse_term();
        for (;;) {
            if (accept('+')) {
                lhs = Expr::binary(NodeKind::Add, lhs, parse_term());
            } else if (accept('-')) {
                lhs = Expr::binary(NodeKind::Sub, lhs, parse_term());
            } else {
                return lhs;
            }
        }
    }

    Expr parse_term() {
        Expr lhs = parse_unary();
        for (;;) {
            if (accept('*')) {
                lhs = Expr::binary(NodeKind::Mul, lhs, parse_unary());
            } else if (accept('/')) {
                lhs = Expr::binary(NodeKind::Div, lhs, parse_unary());
            } else {
                return lhs;
            }
        }
    }

    Expr parse_unary() {
        if (accept('-')) return Expr::unary(NodeKind::Neg, parse_unary());
        return parse_power();
    }

    Expr parse_power() {
        Expr base = parse_primary();
        if (accept('^')) return Expr::binary(NodeKind::Pow, base, parse_unary());
        return base;
    }

    Expr parse_primary() {
        skip_ws();
        static const std::vector<std::string> kExpected = {"number", "identifier", "'('", "'-'"};
        if (pos_ >= src_.size()) fail("unexpected end of input", kExpected);
        const char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            Expr inner = parse_expr();
            if (!accept(')')) fail("unbalanced parenthesis", {"')'"});
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
        fail(std::string("unexpected character '") + c + "'", kExpected);
    }

    Expr parse_number() {
        const std::size_t start = pos_;
        std::size_t end = pos_;
        auto digits = [&] {
            std::size_t n = 0;
            while (end < src_.size() && std::isdigit(static_cast<unsigned char>(src_[end]))) ++end, ++n;
            return n;
        };
        std::size_t mantissa = digits();
        if (end < src_.size() && src_[end] == '.') {
            ++end;
            mantissa += digits();
        }
        if (mantissa == 0) fail("malformed number", {"digit"});
        if (end < src_.size() && (src_[end] == 'e' || src_[end] == 'E')) {
            std::size_t save = end++;
            if (end < src_.size() && (src_[end] == '+' || src_[end] == '-')) ++end;
            if (digits() == 0) end = save;  // "2e" is the number 2 followed by identifier e
        }
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(src_.data() + start, src_.data() + end, value);
        if (ec != std::errc() || ptr != src_.data() + end) fail("malformed number", {"number"});
        pos_ = end;
        return Expr::number(value);
    }

    Expr parse_identifier() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
            ++pos_;
        std::string ident(src_.substr(start, pos_ - start));
        skip_ws();
        const bool call = pos_ < src_.size() && src_[pos_] == '(';
        NodeKind fn = NodeKind::Number;
        if (ident == "sin") fn = NodeKind::Sin;
        else if (ident == "cos") fn = NodeKind::Cos;
        else if (ident == "sqrt") fn = NodeKind::Sqrt;

        if (call) {
            if (fn == NodeKind::Number) {
                pos_ = start;
                fail("unknown function '" + ident + "'", {"sin", "cos", "sqrt"});
            }
            ++pos_;
            Expr arg = parse_expr();
            if (!accept(')')) fail("unbalanced parenthesis", {"')'"});
            return Expr::unary(fn, arg);
        }
        if (fn != NodeKind::Number) fail("function '" + ident + "' requires an argument", {"'('"});
        if (ident == "t") return Expr::variable();
        return Expr::constant(std::move(ident));
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view source) { return Parser(source).parse_all(); }

// ---------------------------------------------------------------------------
// Evaluation

namespace {

double checked(double v, const char* what) {
    if (!std::isfinite(v)) throw DomainError(std::string("non-finite result in ") + what);
    return v;
}

double apply_unary(NodeKind k, double x) {
    switch (k) {
        case NodeKind::Neg: return -x;
        case NodeKind::Sin: return std::sin(x);
        case NodeKind::Cos: return std::cos(x);
        case NodeKind::Sqrt:
            if (x < 0.0) throw DomainError("sqrt of negative operand " + format_number(x));
            return std::sqrt(x);
        default: throw InvalidArgument("bad unary op");
    }
}

double apply_binary(NodeKind k, double a, double b) {
    switch (k) {
        case NodeKind::Add: return a + b;
        case NodeKind::Sub: return a - b;
        case NodeKind::Mul: return a * b;
        case NodeKind::Div:
            if (b == 0.0) throw DomainError("division by zero");
            return checked(a / b, "division");
        case NodeKind::Pow: return checked(std::pow(a, b), "pow");
        default: throw InvalidArgument("bad binary op");
    }
}

double eval_node(const Expr& e, double t, const Constants& constants) {
    const NodeKind k = e.kind();
    switch (k) {
        case NodeKind::Number: return e.value();
        case NodeKind::Variable: return t;
        case NodeKind::Constant: {
            auto it = constants.find(e.name());
            if (it == constants.end()) throw UnboundConstant(e.name());
            return it->second;
        }
        default: break;
    }
    if (is_unary(k)) return apply_unary(k, eval_node(e.lhs(), t, constants));
    const double a = eval_node(e.lhs(), t, constants);
    const double b = eval_node(e.rhs(), t, constants);
    return apply_binary(k, a, b);
}

}  // namespace

double eval(const Expr& e, double t, const Constants& constants) {
    return checked(eval_node(e, t, constants), "expression");
}

// ---------------------------------------------------------------------------
// Differentiation with folding

namespace {

Expr num(double v) { return Expr::number(v); }

Expr neg(const Expr& a) {
    if (a.is_number()) return num(-a.value());
    if (a.kind() == NodeKind::Neg) return a.lhs();
    return Expr::unary(NodeKind::Neg, a);
}

Expr add(const Expr& a, const Expr& b) {
    if (a.is_number(0.0)) return b;
    if (b.is_number(0.0)) return a;
    if (a.is_number() && b.is_number()) return num(a.value() + b.value());
    return Expr::binary(NodeKind::Add, a, b);
}

Expr sub(const Expr& a, const Expr& b) {
    if (b.is_number(0.0)) return a;
    if (a.is_number(0.0)) return neg(b);
    if (a.is_number() && b.is_number()) return num(a.value() - b.value());
    return Expr::binary(NodeKind::Sub, a, b);
}

Expr mul(const Expr& a, const Expr& b) {
    if (a.is_number(0.0) || b.is_number(0.0)) return num(0.0);
    if (a.is_number(1.0)) return b;
    if (b.is_number(1.0)) return a;
    if (a.is_number(-1.0)) return neg(b);
    if (b.is_number(-1.0)) return neg(a);
    if (a.is_number() && b.is_number()) return num(a.value() * b.value());
    return Expr::binary(NodeKind::Mul, a, b);
}

Expr div(const Expr& a, const Expr& b) {
    if (a.is_number(0.0)) return num(0.0);
    if (b.is_number(1.0)) return a;
    return Expr::binary(NodeKind::Div, a, b);
}

Expr pow_(const Expr& a, const Expr& b) {
    if (b.is_number(1.0)) return a;
    if (b.is_number(0.0)) return num(1.0);
    return Expr::binary(NodeKind::Pow, a, b);
}

Expr derive(const Expr& e) {
    if (!e.depends_on_t()) return num(0.0);
    if (e.kind() == NodeKind::Variable) return num(1.0);
    const Expr& f = e.lhs();
    switch (e.kind()) {
        case NodeKind::Variable: return num(1.0);
        case NodeKind::Neg: return neg(derive(f));
        case NodeKind::Sin: return mul(Expr::unary(NodeKind::Cos, f), derive(f));
        case NodeKind::Cos: return neg(mul(Expr::unary(NodeKind::Sin, f), derive(f)));
        case NodeKind::Sqrt: return div(derive(f), mul(num(2.0), e));
        case NodeKind::Add: return add(derive(f), derive(e.rhs()));
        case NodeKind::Sub: return sub(derive(f), derive(e.rhs()));
        case NodeKind::Mul: return add(mul(derive(f), e.rhs()), mul(f, derive(e.rhs())));
        case NodeKind::Div: {
            const Expr& g = e.rhs();
            return div(sub(mul(derive(f), g), mul(f, derive(g))), pow_(g, num(2.0)));
        }
        case NodeKind::Pow: {
            const Expr& c = e.rhs();
            if (c.depends_on_t()) throw DomainError("cannot differentiate pow with a t-dependent exponent");
            return mul(mul(c, pow_(f, sub(c, num(1.0)))), derive(f));
        }
        default: return num(0.0);
    }
}

}  // namespace

Expr differentiate(const Expr& e) { return derive(e); }

// ---------------------------------------------------------------------------
// Printing

std::string to_string(const Expr& e) {
    switch (e.kind()) {
        case NodeKind::Number: {
            std::string s = format_number(e.value());
            return e.value() < 0.0 || std::signbit(e.value()) ? "(" + s + ")" : s;
        }
        case NodeKind::Variable: return "t";
        case NodeKind::Constant: return e.name();
        case NodeKind::Neg: return "(-" + to_string(e.lhs()) + ")";
        case NodeKind::Sin:
        case NodeKind::Cos:
        case NodeKind::Sqrt: return std::string(kind_name(e.kind())) + "(" + to_string(e.lhs()) + ")";
        default: break;
    }
    char op = '+';
    switch (e.kind()) {
        case NodeKind::Sub: op = '-'; break;
        case NodeKind::Mul: op = '*'; break;
        case NodeKind::Div: op = '/'; break;
        case NodeKind::Pow: op = '^'; break;
        default: break;
    }
    return "(" + to_string(e.lhs()) + op + to_string(e.rhs()) + ")";
}

std::string to_tree_string(const Expr& e) {
    switch (e.kind()) {
        case NodeKind::Number: {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.15g", e.value());
            return buf;
        }
        case NodeKind::Variable: return "t";
        case NodeKind::Constant: return e.name();
        default: break;
    }
    std::string s = std::string(kind_name(e.kind())) + "(" + to_tree_string(e.lhs());
    if (is_binary(e.kind())) s += "," + to_tree_string(e.rhs());
    return s + ")";
}

// ---------------------------------------------------------------------------
// Compiled form

CompiledExpr::CompiledExpr(const Expr& e, const Constants& constants) {
    std::size_t depth = 0;
    auto emit = [&](auto&& self, const Expr& x) -> void {
        const NodeKind k = x.kind();
        if (k == NodeKind::Constant) {
            auto it = constants.find(x.name());
            if (it == constants.end()) throw UnboundConstant(x.name());
            program_.push_back({NodeKind::Number, it->second});
            max_depth_ = std::max(max_depth_, ++depth);
            return;
        }
        if (k == NodeKind::Number || k == NodeKind::Variable) {
            program_.push_back({k, x.value()});
            max_depth_ = std::max(max_depth_, ++depth);
            return;
        }
        self(self, x.lhs());
        if (is_binary(k)) {
            self(self, x.rhs());
            --depth;
        }
        program_.push_back({k, 0.0});
    };
    emit(emit, e);
}

double CompiledExpr::operator()(double t) const {
    std::array<double, 64> small{};
    std::vector<double> big;
    double* stack = small.data();
    if (max_depth_ > small.size()) {
        big.resize(max_depth_);
        stack = big.data();
    }
    std::size_t sp = 0;
    for (const Op& op : program_) {
        switch (op.kind) {
            case NodeKind::Number: stack[sp++] = op.value; break;
            case NodeKind::Variable: stack[sp++] = t; break;
            case NodeKind::Neg:
            case NodeKind::Sin:
            case NodeKind::Cos:
            case NodeKind::Sqrt: stack[sp - 1] = apply_unary(op.kind, stack[sp - 1]); break;
            default:
                --sp;
                stack[sp - 1] = apply_binary(op.kind, stack[sp - 1], stack[sp]);
                break;
        }
    }
    if (sp != 1) throw InvalidArgument("evaluating an empty compiled expression");
    return checked(stack[0], "expression");
}

}  // namespace envelopes
