#include "bvp/expr.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>

namespace bvp {

namespace {

enum class Kind { Number, Pi, Euler, Var, Neg, Add, Sub, Mul, Div, Pow, Call };

enum class Fn { Sin, Cos, Tan, Cot, Exp, Log, Sqrt, Abs };

constexpr std::array<std::string_view, 8> kFnNames = {"sin", "cos", "tan", "cot",
                                                      "exp", "log", "sqrt", "abs"};

// Precedence levels for printing: higher binds tighter.
int precedence(Kind k) {
    switch (k) {
        case Kind::Add:
        case Kind::Sub: return 1;
        case Kind::Mul:
        case Kind::Div: return 2;
        case Kind::Neg: return 3;
        case Kind::Pow: return 4;
        default: return 5;
    }
}

}  // namespace

struct Expr::Node {
    Kind kind = Kind::Number;
    double value = 0.0;   // Number
    Fn fn = Fn::Sin;      // Call
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
};

namespace {

std::shared_ptr<Expr::Node> make_node(Kind kind) {
    auto n = std::make_shared<Expr::Node>();
    n->kind = kind;
    return n;
}

}  // namespace

Expr Expr::number(double value) {
    auto n = make_node(Kind::Number);
    n->value = value;
    return Expr(std::move(n));
}
Expr Expr::pi() { return Expr(make_node(Kind::Pi)); }
Expr Expr::euler() { return Expr(make_node(Kind::Euler)); }
Expr Expr::variable() { return Expr(make_node(Kind::Var)); }

Expr Expr::negate(Expr operand) {
    auto n = make_node(Kind::Neg);
    n->lhs = std::move(operand.node_);
    return Expr(std::move(n));
}

Expr Expr::binary(char op, Expr lhs, Expr rhs) {
    Kind kind;
    switch (op) {
        case '+': kind = Kind::Add; break;
        case '-': kind = Kind::Sub; break;
        case '*': kind = Kind::Mul; break;
        case '/': kind = Kind::Div; break;
        case '^': kind = Kind::Pow; break;
        default: throw std::invalid_argument("Expr::binary: bad operator");
    }
    auto n = make_node(kind);
    n->lhs = std::move(lhs.node_);
    n->rhs = std::move(rhs.node_);
    return Expr(std::move(n));
}

Expr Expr::call(std::string_view fn, Expr arg) {
    for (std::size_t i = 0; i < kFnNames.size(); ++i) {
        if (kFnNames[i] == fn) {
            auto n = make_node(Kind::Call);
            n->fn = static_cast<Fn>(i);
            n->lhs = std::move(arg.node_);
            return Expr(std::move(n));
        }
    }
    throw std::invalid_argument("Expr::call: unknown function " + std::string(fn));
}

namespace {

std::string print_node(const Expr::Node* n);

std::string print_child(const Expr::Node* child, int parent_prec, bool needs_paren_on_tie) {
    int child_prec = precedence(child->kind);
    bool paren = child_prec < parent_prec || (needs_paren_on_tie && child_prec == parent_prec);
    std::string s = print_node(child);
    return paren ? "(" + s + ")" : s;
}

std::string print_node(const Expr::Node* n) {
    switch (n->kind) {
        case Kind::Number: {
            std::ostringstream os;
            os.precision(17);
            os << n->value;
            return os.str();
        }
        case Kind::Pi: return "pi";
        case Kind::Euler: return "e";
        case Kind::Var: return "t";
        case Kind::Neg: return "-" + print_child(n->lhs.get(), precedence(Kind::Neg), false);
        case Kind::Add:
            return print_child(n->lhs.get(), 1, false) + " + " + print_child(n->rhs.get(), 1, true);
        case Kind::Sub:
            return print_child(n->lhs.get(), 1, false) + " - " + print_child(n->rhs.get(), 1, true);
        case Kind::Mul:
            return print_child(n->lhs.get(), 2, false) + "*" + print_child(n->rhs.get(), 2, true);
        case Kind::Div:
            return print_child(n->lhs.get(), 2, false) + "/" + print_child(n->rhs.get(), 2, true);
        case Kind::Pow:
            // Right-associative; a negated exponent reparses fine unparenthesized.
            return print_child(n->lhs.get(), 4, true) + "^" + print_child(n->rhs.get(), 4, false);
        case Kind::Call:
            return std::string(kFnNames[static_cast<std::size_t>(n->fn)]) + "(" +
                   print_node(n->lhs.get()) + ")";
    }
    return "?";
}

double eval_node(const Expr::Node* n, double t) {
    auto fault = [&](const char* msg) -> double {
        throw EvalError(msg, print_node(n), t);
    };
    switch (n->kind) {
        case Kind::Number: return n->value;
        case Kind::Pi: return std::numbers::pi;
        case Kind::Euler: return std::numbers::e;
        case Kind::Var: return t;
        case Kind::Neg: return -eval_node(n->lhs.get(), t);
        case Kind::Add: return eval_node(n->lhs.get(), t) + eval_node(n->rhs.get(), t);
        case Kind::Sub: return eval_node(n->lhs.get(), t) - eval_node(n->rhs.get(), t);
        case Kind::Mul: return eval_node(n->lhs.get(), t) * eval_node(n->rhs.get(), t);
        case Kind::Div: {
            double num = eval_node(n->lhs.get(), t);
            double den = eval_node(n->rhs.get(), t);
            if (den == 0.0) return fault("division by zero");
            return num / den;
        }
        case Kind::Pow: {
            double base = eval_node(n->lhs.get(), t);
            double exp = eval_node(n->rhs.get(), t);
            double r = std::pow(base, exp);
            if (!std::isfinite(r)) return fault("power out of domain");
            return r;
        }
        case Kind::Call: {
            double x = eval_node(n->lhs.get(), t);
            switch (n->fn) {
                case Fn::Sin: return std::sin(x);
                case Fn::Cos: return std::cos(x);
                case Fn::Tan: {
                    if (std::cos(x) == 0.0) return fault("tan at odd multiple of pi/2");
                    return std::tan(x);
                }
                case Fn::Cot: {
                    double s = std::sin(x);
                    if (s == 0.0) return fault("cot at multiple of pi");
                    return std::cos(x) / s;
                }
                case Fn::Exp: return std::exp(x);
                case Fn::Log: {
                    if (x <= 0.0) return fault("log of non-positive value");
                    return std::log(x);
                }
                case Fn::Sqrt: {
                    if (x < 0.0) return fault("sqrt of negative value");
                    return std::sqrt(x);
                }
                case Fn::Abs: return std::abs(x);
            }
            return fault("unknown function");
        }
    }
    return 0.0;
}

bool depends_node(const Expr::Node* n) {
    if (n->kind == Kind::Var) return true;
    if (n->lhs && depends_node(n->lhs.get())) return true;
    if (n->rhs && depends_node(n->rhs.get())) return true;
    return false;
}

bool equal_node(const Expr::Node* a, const Expr::Node* b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind) return false;
    if (a->kind == Kind::Number && a->value != b->value) return false;
    if (a->kind == Kind::Call && a->fn != b->fn) return false;
    return equal_node(a->lhs.get(), b->lhs.get()) && equal_node(a->rhs.get(), b->rhs.get());
}

}  // namespace

double Expr::eval(double t) const {
    if (!node_) throw std::logic_error("Expr::eval on null expression");
    return eval_node(node_.get(), t);
}

bool Expr::depends_on_t() const { return node_ && depends_node(node_.get()); }

std::string Expr::to_string() const {
    return node_ ? print_node(node_.get()) : std::string("<null>");
}

bool Expr::operator==(const Expr& other) const {
    return equal_node(node_.get(), other.node_.get());
}

// ---------------------------------------------------------------------------
// Recursive-descent parser.
//
// expr   := term (('+'|'-') term)*
// term   := unary (('*'|'/') unary)*
// unary  := '-' unary | power
// power  := primary ('^' unary)?          (right-associative)
// primary:= number | 't' | 'pi' | 'e' | fn '(' expr ')' | '(' expr ')'

namespace {

class Parser {
public:
    explicit Parser(std::string_view src) : src_(src) {}

    Expr parse() {
        skip_ws();
        if (pos_ >= src_.size()) throw ParseError("empty expression", pos_);
        Expr e = parse_expr_level();
        skip_ws();
        if (pos_ < src_.size())
            throw ParseError(std::string("unexpected character '") + src_[pos_] + "'", pos_);
        return e;
    }

private:
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

    char peek() {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }

    Expr parse_expr_level() {
        Expr lhs = parse_term();
        for (;;) {
            if (accept('+')) lhs = Expr::binary('+', std::move(lhs), parse_term());
            else if (accept('-')) lhs = Expr::binary('-', std::move(lhs), parse_term());
            else return lhs;
        }
    }

    Expr parse_term() {
        Expr lhs = parse_unary();
        for (;;) {
            if (accept('*')) lhs = Expr::binary('*', std::move(lhs), parse_unary());
            else if (accept('/')) lhs = Expr::binary('/', std::move(lhs), parse_unary());
            else return lhs;
        }
    }

    Expr parse_unary() {
        if (accept('-')) return Expr::negate(parse_unary());
        return parse_power();
    }

    Expr parse_power() {
        Expr base = parse_primary();
        if (accept('^')) return Expr::binary('^', std::move(base), parse_unary());
        return base;
    }

    Expr parse_primary() {
        skip_ws();
        if (pos_ >= src_.size()) throw ParseError("missing operand", pos_);
        char c = src_[pos_];
        if (c == '(') {
            std::size_t open = pos_;
            ++pos_;
            Expr e = parse_expr_level();
            if (!accept(')')) throw ParseError("unbalanced parenthesis", open);
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c))) return parse_ident();
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }

    Expr parse_number() {
        const char* begin = src_.data() + pos_;
        char* end = nullptr;
        double v = std::strtod(begin, &end);
        if (end == begin) throw ParseError("malformed number", pos_);
        pos_ += static_cast<std::size_t>(end - begin);
        return Expr::number(v);
    }

    Expr parse_ident() {
        std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
            ++pos_;
        std::string_view name = src_.substr(start, pos_ - start);
        if (name == "t") return Expr::variable();
        if (name == "pi") return Expr::pi();
        if (name == "e") return Expr::euler();
        for (std::string_view fn : kFnNames) {
            if (name == fn) {
                if (peek() != '(')
                    throw ParseError("function '" + std::string(name) + "' needs an argument",
                                     start);
                std::size_t open = pos_;
                ++pos_;
                Expr arg = parse_expr_level();
                if (!accept(')')) throw ParseError("unbalanced parenthesis", open);
                return Expr::call(name, std::move(arg));
            }
        }
        throw ParseError("unknown identifier '" + std::string(name) + "'", start);
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

}  // namespace

Expr parse_expr(std::string_view src) { return Parser(src).parse(); }

}  // namespace bvp
