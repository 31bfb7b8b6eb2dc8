#include "volcol/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numbers>

#include "volcol/errors.hpp"

namespace volcol {

class ExpressionParser {
public:
    ExpressionParser(std::string_view text, Expression& out)
        : text_(text), out_(out) {}

    void run() {
        parse_expr();
        skip_ws();
        if (pos_ != text_.size())
            fail("unexpected trailing input");
        // postfix stack depth
        std::size_t depth = 0, max_depth = 0;
        for (const auto& ins : out_.program_) {
            switch (ins.op) {
            case Expression::Op::PushConst:
            case Expression::Op::PushVar:
                ++depth;
                break;
            case Expression::Op::Neg:
            case Expression::Op::Sqrt:
            case Expression::Op::Exp:
                break;
            default:
                --depth; // binary ops consume one
            }
            max_depth = std::max(max_depth, depth);
        }
        out_.max_stack_ = max_depth;
    }

private:
    void fail(const std::string& why) const {
        throw ConfigError("expression '" + std::string(text_) + "': " + why +
                          " (at offset " + std::to_string(pos_) + ")");
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    void emit(Expression::Op op, double value = 0.0, std::size_t index = 0) {
        out_.program_.push_back({op, value, index});
    }

    void parse_expr() {
        parse_term();
        for (;;) {
            if (eat('+')) {
                parse_term();
                emit(Expression::Op::Add);
            } else if (eat('-')) {
                parse_term();
                emit(Expression::Op::Sub);
            } else {
                return;
            }
        }
    }

    void parse_term() {
        parse_unary();
        for (;;) {
            if (eat('*')) {
                parse_unary();
                emit(Expression::Op::Mul);
            } else if (eat('/')) {
                parse_unary();
                emit(Expression::Op::Div);
            } else {
                return;
            }
        }
    }

    void parse_unary() {
        if (eat('-')) {
            parse_unary();
            emit(Expression::Op::Neg);
            return;
        }
        if (eat('+')) {
            parse_unary();
            return;
        }
        parse_power();
    }

    void parse_power() {
        parse_primary();
        if (eat('^')) {
            parse_unary(); // right-associative, signed exponents allowed
            emit(Expression::Op::Pow);
        }
    }

    void parse_primary() {
        skip_ws();
        if (pos_ >= text_.size())
            fail("unexpected end of input");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            parse_expr();
            if (!eat(')'))
                fail("missing ')'");
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const char* begin = text_.data() + pos_;
            char* end = nullptr;
            const double value = std::strtod(begin, &end);
            if (end == begin)
                fail("malformed number");
            pos_ += static_cast<std::size_t>(end - begin);
            emit(Expression::Op::PushConst, value);
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                    text_[pos_] == '_'))
                ++pos_;
            const std::string name(text_.substr(start, pos_ - start));
            if (peek() == '(') {
                eat('(');
                parse_expr();
                if (!eat(')'))
                    fail("missing ')' after " + name);
                if (name == "sqrt")
                    emit(Expression::Op::Sqrt);
                else if (name == "exp")
                    emit(Expression::Op::Exp);
                else
                    fail("unknown function '" + name + "' (have: sqrt, exp)");
                return;
            }
            if (name == "pi") {
                emit(Expression::Op::PushConst, std::numbers::pi);
                return;
            }
            for (std::size_t i = 0; i < out_.variables_.size(); ++i) {
                if (out_.variables_[i] == name) {
                    emit(Expression::Op::PushVar, 0.0, i);
                    return;
                }
            }
            std::string allowed;
            for (const auto& v : out_.variables_)
                allowed += (allowed.empty() ? "" : ", ") + v;
            fail("unknown identifier '" + name + "' (variables: " + allowed + ")");
            return;
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    std::string_view text_;
    Expression& out_;
    std::size_t pos_ = 0;
};

Expression Expression::parse(std::string_view text, std::vector<std::string> variables) {
    Expression out;
    out.text_ = std::string(text);
    out.variables_ = std::move(variables);
    ExpressionParser parser(text, out);
    parser.run();
    if (out.max_stack_ > 64)
        throw ConfigError("expression too deeply nested");
    return out;
}

double Expression::operator()(std::span<const double> values) const {
    if (values.size() != variables_.size())
        throw ConfigError("expression: wrong number of variable values");
    double stack[64];
    std::size_t top = 0;
    for (const auto& ins : program_) {
        switch (ins.op) {
        case Op::PushConst:
            stack[top++] = ins.value;
            break;
        case Op::PushVar:
            stack[top++] = values[ins.index];
            break;
        case Op::Add:
            stack[top - 2] += stack[top - 1];
            --top;
            break;
        case Op::Sub:
            stack[top - 2] -= stack[top - 1];
            --top;
            break;
        case Op::Mul:
            stack[top - 2] *= stack[top - 1];
            --top;
            break;
        case Op::Div:
            stack[top - 2] /= stack[top - 1];
            --top;
            break;
        case Op::Pow:
            stack[top - 2] = std::pow(stack[top - 2], stack[top - 1]);
            --top;
            break;
        case Op::Neg:
            stack[top - 1] = -stack[top - 1];
            break;
        case Op::Sqrt:
            stack[top - 1] = std::sqrt(stack[top - 1]);
            break;
        case Op::Exp:
            stack[top - 1] = std::exp(stack[top - 1]);
            break;
        }
    }
    return stack[0];
}

} // namespace volcol
