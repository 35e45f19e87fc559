#pragma once

#include <array>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hypoindex {

/// Syntax error in a coefficient expression. `position` is the 0-based
/// character offset of the offending token.
class ExpressionError : public std::runtime_error {
public:
    ExpressionError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " at position " + std::to_string(position)), position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

using Point3 = std::array<double, 3>;

enum class NodeKind { Number, Variable, Add, Sub, Mul, Div, Pow, Neg, Sin, Cos, Exp };

struct ExprNode {
    NodeKind kind = NodeKind::Number;
    double value = 0.0;  // Number
    int index = 0;       // Variable: 0=x 1=y 2=z; Pow: integer exponent
    std::vector<std::shared_ptr<const ExprNode>> children;
};

/// Real-valued coefficient function of (x, y, z). Immutable; copies share the tree.
///
/// Grammar:
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := base ('^' INT)?
///   base   := NUMBER | 'x' | 'y' | 'z' | ('sin'|'cos'|'exp') '(' expr ')' | '(' expr ')' | '-' base
class ScalarField {
public:
    ScalarField();  // the constant 0
    explicit ScalarField(std::shared_ptr<const ExprNode> root);

    static ScalarField constant(double value);
    static ScalarField variable(int axis);

    /// Throws NumericError when a division by zero or a non-finite value occurs.
    double operator()(const Point3& p) const;

    const ExprNode& root() const { return *root_; }
    std::size_t node_count() const;

    /// Text that parses back to a structurally identical tree (for trees with
    /// non-negative numeric literals, which is all the parser produces).
    std::string to_string() const;

    friend bool operator==(const ScalarField& a, const ScalarField& b);

private:
    std::shared_ptr<const ExprNode> root_;
};

/// Throws ExpressionError on malformed input or unknown identifiers.
ScalarField parse_field(std::string_view text);

}  // namespace hypoindex
