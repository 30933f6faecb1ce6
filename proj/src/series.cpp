#include "rpc/series.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

#include "rpc/errors.hpp"

namespace rpc {

namespace {

const Scalar kZero{};

// Appends "coefficient * monomial" to a polynomial rendering.
void append_term(std::string& out, const Scalar& c, const std::string& mono)
{
    const bool first = out.empty();
    std::string body;
    bool negative = false;
    if (c.is_real()) {
        mpq_class v = c.re();
        if (sgn(v) < 0) {
            negative = true;
            v = -v;
        }
        if (mono.empty()) {
            body = v.get_str();
        } else if (v == 1) {
            body = mono;
        } else {
            body = v.get_str() + "*" + mono;
        }
    } else if (sgn(c.re()) == 0) {
        mpq_class v = c.im();
        if (sgn(v) < 0) {
            negative = true;
            v = -v;
        }
        const std::string im = v == 1 ? std::string("i") : v.get_str() + "*i";
        body = mono.empty() ? im : im + "*" + mono;
    } else {
        const std::string par = "(" + c.to_string() + ")";
        body = mono.empty() ? par : par + "*" + mono;
    }
    if (first) {
        out = negative ? "-" + body : body;
    } else {
        out += negative ? " - " : " + ";
        out += body;
    }
}

std::string power_str(char v, int e)
{
    if (e == 1) {
        return std::string(1, v);
    }
    return std::string(1, v) + "^" + std::to_string(e);
}

} // namespace

// ---------------------------------------------------------------- Series1

Series1::Series1(int order) : order_(order)
{
    if (order < -1) {
        throw DomainError("exact_algebra/series1", "truncation order must be >= -1");
    }
}

Series1 Series1::monomial(int exponent, const Scalar& c, int order)
{
    Series1 s(order);
    s.add_term(exponent, c);
    return s;
}

const Scalar& Series1::coeff(int exponent) const
{
    auto it = terms_.find(exponent);
    return it == terms_.end() ? kZero : it->second;
}

void Series1::add_term(int exponent, const Scalar& c)
{
    if (exponent < 0) {
        throw DomainError("exact_algebra/series1", "negative exponent");
    }
    if (exponent > order_ || c.is_zero()) {
        return;
    }
    auto [it, inserted] = terms_.try_emplace(exponent, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) {
            terms_.erase(it);
        }
    }
}

std::optional<int> Series1::ord() const
{
    if (terms_.empty()) {
        return std::nullopt;
    }
    return terms_.begin()->first;
}

int Series1::valuation_bound() const
{
    if (auto o = ord()) {
        return *o;
    }
    return add_orders(order_, 1);
}

int Series1::degree() const
{
    return terms_.empty() ? -1 : terms_.rbegin()->first;
}

Series1 Series1::truncated(int order) const
{
    if (order > order_) {
        order = order_;
    }
    Series1 s(order);
    for (const auto& [e, c] : terms_) {
        if (e > order) {
            break;
        }
        s.terms_.emplace(e, c);
    }
    return s;
}

Series1 Series1::derivative() const
{
    Series1 s(exact() ? kUnbounded : order_ - 1);
    for (const auto& [e, c] : terms_) {
        if (e > 0) {
            s.add_term(e - 1, c * Scalar(e));
        }
    }
    return s;
}

Series1 Series1::compose_power(int n) const
{
    if (n < 1) {
        throw DomainError("exact_algebra/series1", "compose_power needs n >= 1");
    }
    Series1 s(exact() ? kUnbounded : (order_ + 1) * n - 1);
    for (const auto& [e, c] : terms_) {
        s.add_term(e * n, c);
    }
    return s;
}

Series1& Series1::operator+=(const Series1& o)
{
    order_ = std::min(order_, o.order_);
    for (auto it = terms_.begin(); it != terms_.end();) {
        it = it->first > order_ ? terms_.erase(it) : std::next(it);
    }
    for (const auto& [e, c] : o.terms_) {
        add_term(e, c);
    }
    return *this;
}

Series1& Series1::operator-=(const Series1& o)
{
    return *this += -o;
}

Series1 Series1::operator-() const
{
    Series1 s(*this);
    for (auto& [e, c] : s.terms_) {
        c = -c;
    }
    return s;
}

Series1 operator*(const Series1& a, const Series1& b)
{
    // Product coefficients are exact up to the smaller of the two
    // "known part times lowest term of the other" bounds.
    const int order = std::min(add_orders(a.order_, b.valuation_bound()), add_orders(b.order_, a.valuation_bound()));
    Series1 s(order);
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            if (ea + eb > order) {
                break;
            }
            s.add_term(ea + eb, ca * cb);
        }
    }
    return s;
}

Series1 operator*(const Scalar& c, const Series1& a)
{
    Series1 s(a.order_);
    if (c.is_zero()) {
        return s;
    }
    for (const auto& [e, v] : a.terms_) {
        s.terms_.emplace(e, c * v);
    }
    return s;
}

std::string Series1::to_string(const std::string& var) const
{
    std::string out;
    for (const auto& [e, c] : terms_) {
        std::string mono;
        if (e == 1) {
            mono = var;
        } else if (e > 1) {
            mono = var + "^" + std::to_string(e);
        }
        append_term(out, c, mono);
    }
    if (out.empty()) {
        out = "0";
    }
    if (!exact()) {
        out += " + O(" + var + "^" + std::to_string(order_ + 1) + ")";
    }
    return out;
}

Series1 divide_monomial(const Series1& a, int e)
{
    if (e < 0) {
        throw DomainError("exact_algebra/divide_monomial", "negative exponent");
    }
    if (a.valuation_bound() < e) {
        throw DomainError("exact_algebra/divide_monomial",
                          "z^" + std::to_string(e) + " does not divide a series of order " +
                              std::to_string(a.valuation_bound()));
    }
    Series1 s(a.exact() ? kUnbounded : a.order() - e);
    for (const auto& [k, c] : a.terms()) {
        s.add_term(k - e, c);
    }
    return s;
}

// ---------------------------------------------------------------- Series2

Series2::Series2(int order) : order_(order)
{
    if (order < 0) {
        throw DomainError("exact_algebra/series2", "truncation order must be >= 0");
    }
}

Series2 Series2::constant(const Scalar& c, int order)
{
    Series2 s(order);
    s.add_term(0, 0, c);
    return s;
}

Series2 Series2::monomial(int i, int j, const Scalar& c, int order)
{
    Series2 s(order);
    s.add_term(i, j, c);
    return s;
}

const Scalar& Series2::coeff(int i, int j) const
{
    auto it = terms_.find(Exponent{i, j});
    return it == terms_.end() ? kZero : it->second;
}

void Series2::add_term(int i, int j, const Scalar& c)
{
    if (i < 0 || j < 0) {
        throw DomainError("exact_algebra/series2", "negative exponent");
    }
    if (c.is_zero()) {
        return;
    }
    if (i + j > order_) {
        exact_ = false;
        return;
    }
    auto [it, inserted] = terms_.try_emplace(Exponent{i, j}, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) {
            terms_.erase(it);
        }
    }
}

std::optional<int> Series2::ord() const
{
    if (terms_.empty()) {
        return std::nullopt;
    }
    return terms_.begin()->first.degree();
}

int Series2::degree() const
{
    return terms_.empty() ? -1 : terms_.rbegin()->first.degree();
}

Series2 Series2::homogeneous_part(int d) const
{
    Series2 s(order_);
    for (const auto& [e, c] : terms_) {
        if (e.degree() == d) {
            s.terms_.emplace(e, c);
        }
    }
    return s;
}

Series2 Series2::truncated(int order) const
{
    if (order > order_ && !exact_) {
        throw DomainError("exact_algebra/truncate",
                          "cannot raise the truncation order of an inexact series from " + std::to_string(order_) +
                              " to " + std::to_string(order));
    }
    Series2 s(order);
    s.exact_ = exact_;
    for (const auto& [e, c] : terms_) {
        s.add_term(e.i, e.j, c);
    }
    return s;
}

Series2 Series2::dx() const
{
    Series2 s(exact_ ? order_ : std::max(order_ - 1, 0));
    s.exact_ = exact_;
    for (const auto& [e, c] : terms_) {
        if (e.i > 0) {
            s.add_term(e.i - 1, e.j, c * Scalar(e.i));
        }
    }
    return s;
}

Series2 Series2::dy() const
{
    Series2 s(exact_ ? order_ : std::max(order_ - 1, 0));
    s.exact_ = exact_;
    for (const auto& [e, c] : terms_) {
        if (e.j > 0) {
            s.add_term(e.i, e.j - 1, c * Scalar(e.j));
        }
    }
    return s;
}

std::optional<int> Series2::x_valuation() const
{
    if (terms_.empty()) {
        return std::nullopt;
    }
    int v = INT_MAX;
    for (const auto& [e, c] : terms_) {
        v = std::min(v, e.i);
    }
    return v;
}

std::optional<int> Series2::y_valuation() const
{
    if (terms_.empty()) {
        return std::nullopt;
    }
    int v = INT_MAX;
    for (const auto& [e, c] : terms_) {
        v = std::min(v, e.j);
    }
    return v;
}

Series2 Series2::divide_x_power(int k) const
{
    auto v = x_valuation();
    if (k < 0 || (v && *v < k)) {
        throw DomainError("exact_algebra/divide", "x^" + std::to_string(k) + " does not divide the series");
    }
    Series2 s(std::max(order_ - k, 0));
    s.exact_ = exact_;
    for (const auto& [e, c] : terms_) {
        s.add_term(e.i - k, e.j, c);
    }
    return s;
}

Series2 Series2::divide_y_power(int k) const
{
    auto v = y_valuation();
    if (k < 0 || (v && *v < k)) {
        throw DomainError("exact_algebra/divide", "y^" + std::to_string(k) + " does not divide the series");
    }
    Series2 s(std::max(order_ - k, 0));
    s.exact_ = exact_;
    for (const auto& [e, c] : terms_) {
        s.add_term(e.i, e.j - k, c);
    }
    return s;
}

Series1 Series2::restrict_y_zero() const
{
    Series1 s(exact_ ? kUnbounded : order_);
    for (const auto& [e, c] : terms_) {
        if (e.j == 0) {
            s.add_term(e.i, c);
        }
    }
    return s;
}

Series1 Series2::restrict_x_zero() const
{
    Series1 s(exact_ ? kUnbounded : order_);
    for (const auto& [e, c] : terms_) {
        if (e.i == 0) {
            s.add_term(e.j, c);
        }
    }
    return s;
}

Series2 Series2::swapped() const
{
    Series2 s(order_);
    s.exact_ = exact_;
    for (const auto& [e, c] : terms_) {
        s.terms_.emplace(Exponent{e.j, e.i}, c);
    }
    return s;
}

void Series2::check_compatible(const Series2& o, const char* op) const
{
    if (order_ != o.order_) {
        throw DomainError(std::string("exact_algebra/") + op,
                          "mismatched truncation orders " + std::to_string(order_) + " and " +
                              std::to_string(o.order_));
    }
}

Series2& Series2::operator+=(const Series2& o)
{
    check_compatible(o, "add");
    exact_ = exact_ && o.exact_;
    for (const auto& [e, c] : o.terms_) {
        add_term(e.i, e.j, c);
    }
    return *this;
}

Series2& Series2::operator-=(const Series2& o)
{
    check_compatible(o, "sub");
    exact_ = exact_ && o.exact_;
    for (const auto& [e, c] : o.terms_) {
        add_term(e.i, e.j, -c);
    }
    return *this;
}

Series2 Series2::operator-() const
{
    Series2 s(*this);
    for (auto& [e, c] : s.terms_) {
        c = -c;
    }
    return s;
}

Series2 mul_to(const Series2& a, const Series2& b, int order)
{
    Series2 s(order);
    for (const auto& [ea, ca] : a.terms()) {
        // Terms are graded, so the rest of b lies beyond the order too.
        for (const auto& [eb, cb] : b.terms()) {
            if (ea.degree() + eb.degree() > order) {
                s.mark_inexact();
                break;
            }
            s.add_term(ea.i + eb.i, ea.j + eb.j, ca * cb);
        }
    }
    if (!a.exact() || !b.exact()) {
        s.mark_inexact();
    }
    return s;
}

Series2 operator*(const Series2& a, const Series2& b)
{
    a.check_compatible(b, "mul");
    return mul_to(a, b, a.order_);
}

Series2 operator*(const Scalar& c, const Series2& a)
{
    Series2 s(a.order_);
    s.exact_ = a.exact_;
    if (c.is_zero()) {
        return s;
    }
    for (const auto& [e, v] : a.terms_) {
        s.terms_.emplace(e, c * v);
    }
    return s;
}

std::string Series2::to_string(char vx, char vy) const
{
    std::string out;
    for (const auto& [e, c] : terms_) {
        std::string mono;
        if (e.i > 0) {
            mono = power_str(vx, e.i);
        }
        if (e.j > 0) {
            mono += (mono.empty() ? "" : "*") + power_str(vy, e.j);
        }
        append_term(out, c, mono);
    }
    return out.empty() ? "0" : out;
}

Series2 invert_unit(const Series2& a)
{
    const Scalar c0 = a.constant_term();
    if (c0.is_zero()) {
        throw DomainError("exact_algebra/invert_unit", "constant term is zero; the series is not a unit");
    }
    // b = c0^{-1} * sum_k (-r)^k with r = a/c0 - 1 of order >= 1.
    const Scalar inv0 = Scalar(1) / c0;
    Series2 r = inv0 * a - Series2::constant(Scalar(1), a.order());
    Series2 result = Series2::constant(Scalar(1), a.order());
    Series2 power = Series2::constant(Scalar(1), a.order());
    for (int k = 1; k <= a.order(); ++k) {
        power = -(power * r);
        if (power.is_zero()) {
            break;
        }
        result += power;
    }
    Series2 out = inv0 * result;
    if (!a.exact() || a.degree() > 0) {
        out.mark_inexact();
    }
    return out;
}

Series2 substitute(const Series2& a, const Series2& sx, const Series2& sy)
{
    const int n = a.order();
    if (sx.order() != n || sy.order() != n) {
        throw DomainError("exact_algebra/substitute", "all truncation orders must be equal");
    }
    if (!sx.constant_term().is_zero() || !sy.constant_term().is_zero()) {
        throw DomainError("exact_algebra/substitute", "substituted series must vanish at the origin");
    }
    int max_i = 0;
    int max_j = 0;
    for (const auto& [e, c] : a.terms()) {
        max_i = std::max(max_i, e.i);
        max_j = std::max(max_j, e.j);
    }
    std::vector<Series2> ypow{Series2::constant(Scalar(1), n)};
    for (int j = 1; j <= max_j; ++j) {
        ypow.push_back(ypow.back() * sy);
    }
    // Group by the power of x: a = sum_i x^i * a_i(y).
    std::vector<Series2> inner(static_cast<std::size_t>(max_i) + 1, Series2(n));
    for (const auto& [e, c] : a.terms()) {
        inner[e.i] += c * ypow[e.j];
    }
    Series2 result(n);
    Series2 xpow = Series2::constant(Scalar(1), n);
    for (int i = 0; i <= max_i; ++i) {
        if (i > 0) {
            xpow = xpow * sx;
        }
        if (!inner[i].is_zero()) {
            result += xpow * inner[i];
        }
    }
    if (!a.exact() || !sx.exact() || !sy.exact()) {
        result.mark_inexact();
    }
    return result;
}

Series1 ramified_restrict(const Series2& a, const Series1& phi, int q, int max_order)
{
    if (q < 1) {
        throw DomainError("exact_algebra/ramified_restrict", "ramification index must be positive");
    }
    if (!phi.coeff(0).is_zero()) {
        throw DomainError("exact_algebra/ramified_restrict", "phi must vanish at the origin");
    }
    // Terms of a beyond its truncation have total degree >= N+1, hence
    // z-order >= (N+1)*min(q, ord phi).
    int order = max_order;
    if (!a.exact()) {
        const int p = phi.valuation_bound();
        const long bound = static_cast<long>(a.order() + 1) * std::min(q, p) - 1;
        order = static_cast<int>(std::min<long>(order, bound));
    }
    int max_j = 0;
    for (const auto& [e, c] : a.terms()) {
        max_j = std::max(max_j, e.j);
    }
    std::vector<Series1> phipow{Series1::monomial(0, Scalar(1)).truncated(order)};
    for (int j = 1; j <= max_j; ++j) {
        phipow.push_back((phipow.back() * phi).truncated(order));
    }
    Series1 result(order);
    for (const auto& [e, c] : a.terms()) {
        const long shift = static_cast<long>(q) * e.i;
        if (shift > order) {
            continue;
        }
        Series1 term = Series1::monomial(static_cast<int>(shift), c) * phipow[e.j];
        result += term.truncated(order);
    }
    return result;
}

Series2 lift_x(const Series1& phi, int order)
{
    const int n = phi.exact() ? order : std::min(order, phi.order());
    Series2 s(n);
    for (const auto& [e, c] : phi.terms()) {
        s.add_term(e, 0, c);
    }
    if (!phi.exact()) {
        s.mark_inexact();
    }
    return s;
}

} // namespace rpc
