#pragma once

#include <climits>
#include <map>
#include <optional>
#include <string>

#include "rpc/scalar.hpp"

namespace rpc {

inline constexpr int kDefaultOrder = 12;

// Truncation order of a univariate series that is a known polynomial.
inline constexpr int kUnbounded = INT_MAX / 4;

// Saturating addition on truncation orders.
constexpr int add_orders(int a, int b) noexcept
{
    if (a >= kUnbounded || b >= kUnbounded) {
        return kUnbounded;
    }
    const long s = static_cast<long>(a) + b;
    return s >= kUnbounded ? kUnbounded : static_cast<int>(s);
}

// Univariate series in z. Coefficients of z^k for k <= order() are exact;
// order() == kUnbounded marks a series known to be a polynomial.
class Series1 {
public:
    using TermMap = std::map<int, Scalar>;

    explicit Series1(int order = kUnbounded);

    static Series1 monomial(int exponent, const Scalar& c, int order = kUnbounded);

    int order() const noexcept { return order_; }
    bool exact() const noexcept { return order_ >= kUnbounded; }
    const TermMap& terms() const noexcept { return terms_; }
    const Scalar& coeff(int exponent) const;

    // Adds c*z^e; silently ignores e > order().
    void add_term(int exponent, const Scalar& c);

    bool is_zero() const noexcept { return terms_.empty(); }
    // Lowest exponent with nonzero coefficient; nullopt for the zero series.
    std::optional<int> ord() const;
    // A lower bound for the true order: ord() if known, otherwise order()+1.
    int valuation_bound() const;
    int degree() const;

    Series1 truncated(int order) const;
    Series1 derivative() const;
    // a(z^n).
    Series1 compose_power(int n) const;

    Series1& operator+=(const Series1& o);
    Series1& operator-=(const Series1& o);
    friend Series1 operator+(Series1 a, const Series1& b) { return a += b; }
    friend Series1 operator-(Series1 a, const Series1& b) { return a -= b; }
    Series1 operator-() const;
    friend Series1 operator*(const Series1& a, const Series1& b);
    friend Series1 operator*(const Scalar& c, const Series1& a);

    // Compares truncation order and coefficients.
    friend bool operator==(const Series1& a, const Series1& b)
    {
        return a.order_ == b.order_ && a.terms_ == b.terms_;
    }

    std::string to_string(const std::string& var = "z") const;

private:
    int order_;
    TermMap terms_;
};

// Divides by z^e. Throws DomainError when z^e does not divide a.
Series1 divide_monomial(const Series1& a, int e);

// Exponent pair of the monomial x^i y^j.
struct Exponent {
    int i = 0;
    int j = 0;

    int degree() const noexcept { return i + j; }
    friend bool operator==(const Exponent&, const Exponent&) = default;
};

// Graded lexicographic: by total degree, then x^2 < xy < y^2.
struct GradedLex {
    bool operator()(const Exponent& a, const Exponent& b) const noexcept
    {
        if (a.degree() != b.degree()) {
            return a.degree() < b.degree();
        }
        return a.i > b.i;
    }
};

// Bivariate power series truncated at total degree order(). Only nonzero
// coefficients are stored. exact() additionally records that the series is a
// polynomial whose every term is stored, i.e. nothing was lost to truncation.
class Series2 {
public:
    using TermMap = std::map<Exponent, Scalar, GradedLex>;

    explicit Series2(int order = kDefaultOrder);

    static Series2 constant(const Scalar& c, int order = kDefaultOrder);
    static Series2 monomial(int i, int j, const Scalar& c, int order = kDefaultOrder);
    static Series2 x(int order = kDefaultOrder) { return monomial(1, 0, Scalar(1), order); }
    static Series2 y(int order = kDefaultOrder) { return monomial(0, 1, Scalar(1), order); }

    int order() const noexcept { return order_; }
    bool exact() const noexcept { return exact_; }
    void mark_inexact() noexcept { exact_ = false; }

    const TermMap& terms() const noexcept { return terms_; }
    const Scalar& coeff(int i, int j) const;
    Scalar constant_term() const { return coeff(0, 0); }

    // Adds c*x^i*y^j. A nonzero term beyond the truncation is dropped and
    // clears exact().
    void add_term(int i, int j, const Scalar& c);

    bool is_zero() const noexcept { return terms_.empty(); }
    std::optional<int> ord() const;
    int degree() const;

    Series2 homogeneous_part(int d) const;
    // Re-truncates at a new order. Raising the order is only allowed for
    // exact series.
    Series2 truncated(int order) const;

    // Partial derivatives. For an inexact series the top degree is lost and
    // the result has order()-1.
    Series2 dx() const;
    Series2 dy() const;

    // Largest k with x^k (resp. y^k) dividing every stored term; nullopt for 0.
    std::optional<int> x_valuation() const;
    std::optional<int> y_valuation() const;
    // Exact division by x^k (resp. y^k); the order drops by k.
    Series2 divide_x_power(int k) const;
    Series2 divide_y_power(int k) const;

    // Restriction y = 0 (resp. x = 0) as a univariate series.
    Series1 restrict_y_zero() const;
    Series1 restrict_x_zero() const;

    // Exchanges the roles of x and y.
    Series2 swapped() const;

    Series2& operator+=(const Series2& o);
    Series2& operator-=(const Series2& o);
    friend Series2 operator+(Series2 a, const Series2& b) { return a += b; }
    friend Series2 operator-(Series2 a, const Series2& b) { return a -= b; }
    Series2 operator-() const;
    friend Series2 operator*(const Series2& a, const Series2& b);
    friend Series2 operator*(const Scalar& c, const Series2& a);

    friend bool operator==(const Series2& a, const Series2& b)
    {
        return a.order_ == b.order_ && a.terms_ == b.terms_;
    }

    std::string to_string(char vx = 'x', char vy = 'y') const;

private:
    void check_compatible(const Series2& o, const char* op) const;

    int order_;
    bool exact_ = true;
    TermMap terms_;
};

// Cauchy product truncated at `order`, for operands of different truncation.
// The caller is responsible for `order` being certified by the operands.
Series2 mul_to(const Series2& a, const Series2& b, int order);

// Inverse of a unit (nonzero constant term) up to the truncation order.
Series2 invert_unit(const Series2& a);

// a(sx, sy) truncated at the common order; sx, sy must vanish at 0.
Series2 substitute(const Series2& a, const Series2& sx, const Series2& sy);

// a(z^q, phi(z)) as a series in z. The result order is the largest one
// certified by the truncations of a and phi, capped by max_order.
Series1 ramified_restrict(const Series2& a, const Series1& phi, int q, int max_order = kUnbounded);

// Embeds phi(z) as a bivariate series phi(x) of the given order.
Series2 lift_x(const Series1& phi, int order);

} // namespace rpc
