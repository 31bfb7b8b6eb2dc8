#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace volcol {

/// Minimal arithmetic expressions for user-supplied kernels and
/// nonlinearities: operators + - * / ^ (right-associative power), unary
/// signs, parentheses, functions sqrt and exp, the constant pi, numeric
/// literals, and the variables supplied at parse time.
class Expression {
public:
    static Expression parse(std::string_view text, std::vector<std::string> variables);

    /// Evaluates with one value per declared variable.
    double operator()(std::span<const double> values) const;

    const std::string& text() const { return text_; }
    std::span<const std::string> variables() const { return variables_; }

private:
    enum class Op { PushConst, PushVar, Add, Sub, Mul, Div, Pow, Neg, Sqrt, Exp };
    struct Instr {
        Op op;
        double value = 0.0;   // PushConst
        std::size_t index = 0; // PushVar
    };

    Expression() = default;

    std::string text_;
    std::vector<std::string> variables_;
    std::vector<Instr> program_; // postfix order
    std::size_t max_stack_ = 0;

    friend class ExpressionParser;
};

} // namespace volcol
