#include "rpc/parser.hpp"

#include <cctype>
#include <vector>

#include "rpc/errors.hpp"

namespace rpc {

namespace {

constexpr unsigned kMaxExponent = 10000;

class Parser {
public:
    Parser(const std::string& text, int order) : text_(text), order_(order) {}

    std::vector<Series2> parse_list(std::size_t expected)
    {
        std::vector<Series2> out{expr()};
        while (peek() == ',') {
            ++pos_;
            out.push_back(expr());
        }
        skip_space();
        if (pos_ < text_.size()) {
            fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        }
        if (out.size() != expected) {
            throw ParseError("expected " + std::to_string(expected) + " comma-separated component(s), got " +
                                 std::to_string(out.size()),
                             0);
        }
        return out;
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

    void skip_space()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    char peek()
    {
        skip_space();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    static bool starts_primary(char c)
    {
        return std::isdigit(static_cast<unsigned char>(c)) || std::isalpha(static_cast<unsigned char>(c)) || c == '(';
    }

    Series2 expr()
    {
        Series2 acc = term();
        for (char c = peek(); c == '+' || c == '-'; c = peek()) {
            ++pos_;
            if (c == '+') {
                acc += term();
            } else {
                acc -= term();
            }
        }
        return acc;
    }

    Series2 term()
    {
        Series2 acc = unary();
        for (char c = peek(); c == '*' || c == '/'; c = peek()) {
            const std::size_t at = pos_;
            ++pos_;
            Series2 rhs = unary();
            if (c == '*') {
                acc = acc * rhs;
                continue;
            }
            if (rhs.degree() > 0 || rhs.is_zero()) {
                pos_ = at;
                fail(rhs.is_zero() ? "division by zero" : "division by a non-constant expression");
            }
            acc = (Scalar(1) / rhs.constant_term()) * acc;
        }
        return acc;
    }

    Series2 unary()
    {
        const char c = peek();
        if (c == '-') {
            ++pos_;
            return -unary();
        }
        if (c == '+') {
            ++pos_;
            return unary();
        }
        return power();
    }

    Series2 power()
    {
        Series2 base = primary();
        if (peek() == '^') {
            ++pos_;
            if (peek() == '-') {
                fail("negative exponent");
            }
            if (!std::isdigit(static_cast<unsigned char>(peek()))) {
                fail("expected a non-negative integer exponent");
            }
            const std::size_t at = pos_;
            const std::string digits = integer_literal();
            if (digits.size() > 5 || std::stoul(digits) > kMaxExponent) {
                pos_ = at;
                fail("exponent too large");
            }
            unsigned e = static_cast<unsigned>(std::stoul(digits));
            Series2 result = Series2::constant(Scalar(1), order_);
            Series2 b = base;
            while (e > 0) {
                if ((e & 1U) != 0U) {
                    result = result * b;
                }
                e >>= 1U;
                if (e > 0) {
                    b = b * b;
                }
            }
            base = std::move(result);
        }
        if (starts_primary(peek())) {
            fail("implicit multiplication is not allowed; write '*'");
        }
        return base;
    }

    std::string integer_literal()
    {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
        return text_.substr(start, pos_ - start);
    }

    Series2 primary()
    {
        const char c = peek();
        if (c == '\0') {
            fail("unexpected end of input");
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const mpz_class v(integer_literal());
            return Series2::constant(Scalar(mpq_class(v)), order_);
        }
        if (c == '(') {
            ++pos_;
            Series2 inner = expr();
            if (peek() != ')') {
                fail("expected ')'");
            }
            ++pos_;
            return inner;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const std::size_t at = pos_;
            std::string name;
            while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) {
                name += text_[pos_++];
            }
            if (name == "i") {
                return Series2::constant(Scalar::i(), order_);
            }
            if (name.size() == 1) {
                const char v = name[0];
                const int slot = variable_slot(v, at);
                return slot == 0 ? Series2::x(order_) : Series2::y(order_);
            }
            pos_ = at;
            fail("unknown identifier '" + name + "'");
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    int variable_slot(char v, std::size_t at)
    {
        char pair = 0;
        if (v == 'x' || v == 'y') {
            pair = 'x';
        } else if (v == 'u' || v == 'v') {
            pair = 'u';
        } else {
            pos_ = at;
            fail("unknown variable '" + std::string(1, v) + "'; use x, y or u, v");
        }
        if (pair_ == 0) {
            pair_ = pair;
        } else if (pair_ != pair) {
            pos_ = at;
            fail("variable '" + std::string(1, v) + "' mixed with the " + (pair_ == 'x' ? "x, y" : "u, v") +
                 " pair");
        }
        return (v == 'x' || v == 'u') ? 0 : 1;
    }

    const std::string& text_;
    int order_;
    std::size_t pos_ = 0;
    char pair_ = 0;
};

void check_order(int order)
{
    if (order < 1) {
        throw DomainError("rp_cli/parse", "truncation order must be at least 1");
    }
}

} // namespace

Series2 parse_poly(const std::string& text, int order)
{
    check_order(order);
    return Parser(text, order).parse_list(1).front();
}

VectorField parse_field(const std::string& text, int order)
{
    check_order(order);
    auto parts = Parser(text, order).parse_list(2);
    return VectorField(parts[0], parts[1]);
}

TangentMap parse_map(const std::string& text, int order)
{
    check_order(order);
    auto parts = Parser(text, order).parse_list(2);
    return TangentMap(parts[0], parts[1]);
}

} // namespace rpc
