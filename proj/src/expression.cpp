#include "hypoindex/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>

#include "hypoindex/error.hpp"

namespace hypoindex {

namespace {

using NodePtr = std::shared_ptr<const ExprNode>;

NodePtr make_number(double v) {
    auto n = std::make_shared<ExprNode>();
    n->kind = NodeKind::Number;
    n->value = v;
    return n;
}

NodePtr make_variable(int axis) {
    auto n = std::make_shared<ExprNode>();
    n->kind = NodeKind::Variable;
    n->index = axis;
    return n;
}

NodePtr make_node(NodeKind kind, std::vector<NodePtr> children, int index = 0) {
    auto n = std::make_shared<ExprNode>();
    n->kind = kind;
    n->index = index;
    n->children = std::move(children);
    return n;
}

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    NodePtr parse() {
        NodePtr e = expr();
        skip_space();
        if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw ExpressionError(what, pos_); }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    NodePtr expr() {
        NodePtr lhs = term();
        for (;;) {
            if (accept('+')) {
                lhs = make_node(NodeKind::Add, {lhs, term()});
            } else if (accept('-')) {
                lhs = make_node(NodeKind::Sub, {lhs, term()});
            } else {
                return lhs;
            }
        }
    }

    NodePtr term() {
        NodePtr lhs = factor();
        for (;;) {
            if (accept('*')) {
                lhs = make_node(NodeKind::Mul, {lhs, factor()});
            } else if (accept('/')) {
                lhs = make_node(NodeKind::Div, {lhs, factor()});
            } else {
                return lhs;
            }
        }
    }

    NodePtr factor() {
        NodePtr b = base();
        if (accept('^')) {
            skip_space();
            const std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            if (start == pos_) fail("expected an integer exponent");
            int exponent = 0;
            auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, exponent);
            if (ec != std::errc()) {
                pos_ = start;
                fail("exponent out of range");
            }
            return make_node(NodeKind::Pow, {b}, exponent);
        }
        return b;
    }

    NodePtr base() {
        skip_space();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr e = expr();
            expect(')');
            return e;
        }
        if (c == '-') {
            ++pos_;
            return make_node(NodeKind::Neg, {base()});
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
        fail("unexpected character '" + std::string(1, c) + "'");
    }

    NodePtr number() {
        const std::size_t start = pos_;
        auto digits = [this] {
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        };
        digits();
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            digits();
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t save = pos_++;
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
            const std::size_t exp_start = pos_;
            digits();
            if (exp_start == pos_) pos_ = save;  // 'e' belongs to whatever follows
        }
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, v);
        if (ec != std::errc() || ptr != text_.data() + pos_ || !std::isfinite(v)) {
            pos_ = start;
            fail("malformed number");
        }
        return make_number(v);
    }

    NodePtr identifier() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
        const std::string_view name = text_.substr(start, pos_ - start);
        if (name == "x") return make_variable(0);
        if (name == "y") return make_variable(1);
        if (name == "z") return make_variable(2);
        NodeKind kind;
        if (name == "sin") {
            kind = NodeKind::Sin;
        } else if (name == "cos") {
            kind = NodeKind::Cos;
        } else if (name == "exp") {
            kind = NodeKind::Exp;
        } else {
            pos_ = start;
            fail("unknown identifier '" + std::string(name) + "'");
        }
        expect('(');
        NodePtr arg = expr();
        expect(')');
        return make_node(kind, {arg});
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

double eval(const ExprNode& n, const Point3& p) {
    auto arg = [&](std::size_t i) { return eval(*n.children[i], p); };
    double r = 0.0;
    switch (n.kind) {
        case NodeKind::Number: return n.value;
        case NodeKind::Variable: return p[static_cast<std::size_t>(n.index)];
        case NodeKind::Add: r = arg(0) + arg(1); break;
        case NodeKind::Sub: r = arg(0) - arg(1); break;
        case NodeKind::Mul: r = arg(0) * arg(1); break;
        case NodeKind::Div: {
            const double den = arg(1);
            if (den == 0.0) throw NumericError("division by zero in coefficient expression");
            r = arg(0) / den;
            break;
        }
        case NodeKind::Pow: r = std::pow(arg(0), n.index); break;
        case NodeKind::Neg: r = -arg(0); break;
        case NodeKind::Sin: r = std::sin(arg(0)); break;
        case NodeKind::Cos: r = std::cos(arg(0)); break;
        case NodeKind::Exp: r = std::exp(arg(0)); break;
    }
    if (!std::isfinite(r)) throw NumericError("non-finite value in coefficient expression");
    return r;
}

std::size_t count(const ExprNode& n) {
    std::size_t c = 1;
    for (const auto& ch : n.children) c += count(*ch);
    return c;
}

bool same(const ExprNode& a, const ExprNode& b) {
    if (a.kind != b.kind || a.children.size() != b.children.size()) return false;
    if (a.kind == NodeKind::Number && a.value != b.value) return false;
    if ((a.kind == NodeKind::Variable || a.kind == NodeKind::Pow) && a.index != b.index) return false;
    for (std::size_t i = 0; i < a.children.size(); ++i) {
        if (!same(*a.children[i], *b.children[i])) return false;
    }
    return true;
}

std::string format_number(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::string print(const ExprNode& n);

// Operand of '^' or unary '-': must itself be a `base`.
std::string print_base(const ExprNode& n) {
    switch (n.kind) {
        case NodeKind::Number:
            return n.value < 0 ? "(" + format_number(n.value) + ")" : format_number(n.value);
        case NodeKind::Variable:
        case NodeKind::Sin:
        case NodeKind::Cos:
        case NodeKind::Exp:
        case NodeKind::Neg: return print(n);
        default: return "(" + print(n) + ")";
    }
}

std::string print(const ExprNode& n) {
    static constexpr const char* kAxes[] = {"x", "y", "z"};
    auto binary = [&](const char* op) { return "(" + print(*n.children[0]) + " " + op + " " + print(*n.children[1]) + ")"; };
    switch (n.kind) {
        case NodeKind::Number: return print_base(n);
        case NodeKind::Variable: return kAxes[n.index];
        case NodeKind::Add: return binary("+");
        case NodeKind::Sub: return binary("-");
        case NodeKind::Mul: return binary("*");
        case NodeKind::Div: return binary("/");
        case NodeKind::Pow: return print_base(*n.children[0]) + "^" + std::to_string(n.index);
        case NodeKind::Neg: return "-" + print_base(*n.children[0]);
        case NodeKind::Sin: return "sin(" + print(*n.children[0]) + ")";
        case NodeKind::Cos: return "cos(" + print(*n.children[0]) + ")";
        case NodeKind::Exp: return "exp(" + print(*n.children[0]) + ")";
    }
    return {};
}

}  // namespace

ScalarField::ScalarField() : root_(make_number(0.0)) {}

ScalarField::ScalarField(std::shared_ptr<const ExprNode> root) : root_(std::move(root)) {}

ScalarField ScalarField::constant(double value) { return ScalarField(make_number(value)); }

ScalarField ScalarField::variable(int axis) {
    if (axis < 0 || axis > 2) throw DomainError("ScalarField::variable: axis must be 0, 1 or 2");
    return ScalarField(make_variable(axis));
}

double ScalarField::operator()(const Point3& p) const { return eval(*root_, p); }

std::size_t ScalarField::node_count() const { return count(*root_); }

std::string ScalarField::to_string() const { return print(*root_); }

bool operator==(const ScalarField& a, const ScalarField& b) { return same(*a.root_, *b.root_); }

ScalarField parse_field(std::string_view text) { return ScalarField(Parser(text).parse()); }

}  // namespace hypoindex
