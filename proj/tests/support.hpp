#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "rpc/blowup.hpp"
#include "rpc/intersection.hpp"
#include "rpc/parser.hpp"
#include "rpc/separatrix.hpp"
#include "rpc/series.hpp"
#include "rpc/vector_field.hpp"

namespace rpt {

using rpc::Scalar;
using rpc::Series1;
using rpc::Series2;
using rpc::TangentMap;
using rpc::VectorField;

inline VectorField field(const std::string& text, int order = rpc::kDefaultOrder)
{
    return rpc::parse_field(text, order);
}

inline VectorField e1(int order = rpc::kDefaultOrder) { return field("x^2, x*y + y^2", order); }
inline VectorField e2(int order = rpc::kDefaultOrder) { return field("x^2, y^2", order); }
inline VectorField e3(int order = rpc::kDefaultOrder) { return field("x^2, x*y", order); }

// Bundled fields plus hand-picked ones covering cusps, families, complex
// branches and non-reduced separatrices.
inline std::vector<std::pair<std::string, VectorField>> corpus(int order = rpc::kDefaultOrder)
{
    std::vector<std::pair<std::string, VectorField>> out;
    for (const char* t : {"x^2, x*y + y^2", "x^2, y^2", "x^2, x*y", "2*x*y, 3*x^3", "x^2, 2*y^2 - x*y",
                          "y^2, x^2", "x^2 + y^2, x*y", "x*y, y^2 - x^3", "x^3, y^3 + x^2*y", "x^2 - y^2, 2*x*y",
                          "x^2, x*y + x^3", "y^2 + x^3, x*y", "x^2 + i*y^2, y^2", "x*y, x^2 + y^3"}) {
        out.emplace_back(t, field(t, order));
    }
    return out;
}

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    bool coin(int one_in) { return uniform(1, one_in) == 1; }

    Scalar rational(int span = 3, int den = 3)
    {
        int n = 0;
        while (n == 0) {
            n = uniform(-span, span);
        }
        return Scalar::fraction(n, uniform(1, den));
    }

    Scalar gaussian()
    {
        Scalar c = rational();
        if (coin(4)) {
            c = c + rational() * Scalar::i();
        }
        return c;
    }

    // Sparse polynomial with support in degrees [lo, hi].
    Series2 poly(int lo, int hi, int order, int max_terms, bool complex = false)
    {
        Series2 s(order);
        const int n = uniform(1, max_terms);
        for (int k = 0; k < n; ++k) {
            const int d = uniform(lo, hi);
            const int i = uniform(0, d);
            s.add_term(i, d - i, complex ? gaussian() : rational());
        }
        return s;
    }

    // Nonzero field with min(ord A, ord B) == lo and terms of degree <= hi.
    VectorField field(int lo, int hi, int order = rpc::kDefaultOrder, bool complex = false)
    {
        for (;;) {
            VectorField x(poly(lo, hi, order, 4, complex), poly(lo, hi, order, 4, complex));
            if (x.order() && *x.order() == lo) {
                return x;
            }
        }
    }

    TangentMap map(int hi, int order = rpc::kDefaultOrder)
    {
        for (;;) {
            const Series2 d1 = poly(2, hi, order, 4);
            const Series2 d2 = poly(2, hi, order, 4);
            if (d1.is_zero() && d2.is_zero()) {
                continue;
            }
            return TangentMap(Series2::x(order) + d1, Series2::y(order) + d2);
        }
    }

private:
    std::mt19937_64 rng_;
};

// ------------------------------------------------------------------ oracles

// Dense truncated univariate series: entry k is the coefficient of z^k.
using Dense = std::vector<Scalar>;

inline Dense dense_mul(const Dense& a, const Dense& b, std::size_t len)
{
    Dense r(len);
    for (std::size_t i = 0; i < a.size() && i < len; ++i) {
        if (a[i].is_zero()) {
            continue;
        }
        for (std::size_t j = 0; j < b.size() && i + j < len; ++j) {
            r[i + j] += a[i] * b[j];
        }
    }
    return r;
}

inline Dense dense(const Series1& s, std::size_t len)
{
    Dense r(len);
    for (const auto& [e, c] : s.terms()) {
        if (static_cast<std::size_t>(e) < len) {
            r[e] = c;
        }
    }
    return r;
}

// g(z^q, phi(z)) for an exact polynomial g, coefficients of z^0 .. z^(len-1).
inline Dense restrict_dense(const Series2& g, const Dense& phi, int q, std::size_t len)
{
    Dense out(len);
    for (const auto& [e, c] : g.terms()) {
        Dense t(len);
        if (static_cast<std::size_t>(q * e.i) >= len) {
            continue;
        }
        t[q * e.i] = c;
        for (int k = 0; k < e.j; ++k) {
            t = dense_mul(t, phi, len);
        }
        for (std::size_t k = 0; k < len; ++k) {
            out[k] += t[k];
        }
    }
    return out;
}

// q z^(q-1) B(z^q, phi) - phi' A(z^q, phi): zero iff the branch is invariant.
inline Dense invariance_oracle(const VectorField& x, const rpc::PuiseuxBranch& br, std::size_t len)
{
    const VectorField o = rpc::oriented(x, br.orientation);
    const Dense phi = dense(br.phi, len);
    Dense dphi(len);
    for (std::size_t k = 1; k < len; ++k) {
        dphi[k - 1] = Scalar(static_cast<long>(k)) * phi[k];
    }
    const Dense a = restrict_dense(o.a(), phi, br.q, len);
    const Dense b = restrict_dense(o.b(), phi, br.q, len);
    Dense out(len);
    const Dense pa = dense_mul(dphi, a, len);
    for (std::size_t k = 0; k < len; ++k) {
        const std::size_t src = k + 1 >= static_cast<std::size_t>(br.q) ? k + 1 - br.q : len;
        if (src < len) {
            out[k] += Scalar(br.q) * b[src];
        }
        out[k] -= pa[k];
    }
    return out;
}

inline bool all_zero(const Dense& d)
{
    for (const auto& c : d) {
        if (!c.is_zero()) {
            return false;
        }
    }
    return true;
}

// Rank of a matrix over Q(i) by Gaussian elimination.
inline int rank(std::vector<std::vector<Scalar>> m)
{
    int r = 0;
    const std::size_t cols = m.empty() ? 0 : m[0].size();
    for (std::size_t c = 0; c < cols && r < static_cast<int>(m.size()); ++c) {
        std::size_t piv = r;
        while (piv < m.size() && m[piv][c].is_zero()) {
            ++piv;
        }
        if (piv == m.size()) {
            continue;
        }
        std::swap(m[r], m[piv]);
        for (std::size_t row = r + 1; row < m.size(); ++row) {
            if (m[row][c].is_zero()) {
                continue;
            }
            const Scalar f = m[row][c] / m[r][c];
            for (std::size_t k = c; k < cols; ++k) {
                m[row][k] -= f * m[r][k];
            }
        }
        ++r;
    }
    return r;
}

// dim Q(i)[x, y] / ((f, g) + m^d).
inline int local_dimension(const Series2& f, const Series2& g, int d)
{
    std::vector<rpc::Exponent> monos;
    for (int deg = 0; deg < d; ++deg) {
        for (int i = deg; i >= 0; --i) {
            monos.push_back({i, deg - i});
        }
    }
    auto column = [&](int i, int j) {
        const int deg = i + j;
        return deg * (deg + 1) / 2 + (deg - i);
    };
    std::vector<std::vector<Scalar>> rows;
    for (const auto& m : monos) {
        for (const Series2* h : {&f, &g}) {
            std::vector<Scalar> row(monos.size());
            bool any = false;
            for (const auto& [e, c] : h->terms()) {
                const int i = e.i + m.i;
                const int j = e.j + m.j;
                if (i + j < d) {
                    row[column(i, j)] = c;
                    any = true;
                }
            }
            if (any) {
                rows.push_back(std::move(row));
            }
        }
    }
    return static_cast<int>(monos.size()) - rank(std::move(rows));
}

// Local intersection multiplicity of exact polynomials: once the dimension
// stabilises between d and d + 1, m^d lies in the ideal and the value is final.
inline std::optional<int> multiplicity_oracle(const Series2& f, const Series2& g, int max_d = 14)
{
    int prev = local_dimension(f, g, 1);
    for (int d = 2; d <= max_d; ++d) {
        const int cur = local_dimension(f, g, d);
        if (cur == prev) {
            return cur;
        }
        prev = cur;
    }
    return std::nullopt;
}

// x*B_nu - y*A_nu computed from the homogeneous parts directly.
inline bool tangent_cone_vanishes(const VectorField& x)
{
    const int nu = *x.order();
    Series2 cone(x.truncation() + 1);
    for (const auto& [e, c] : x.b().terms()) {
        if (e.i + e.j == nu) {
            cone.add_term(e.i + 1, e.j, c);
        }
    }
    for (const auto& [e, c] : x.a().terms()) {
        if (e.i + e.j == nu) {
            cone.add_term(e.i, e.j + 1, -c);
        }
    }
    return cone.is_zero();
}

// Coefficients of (1 - u)^(-1/k) = sum c_n u^n.
inline std::vector<Scalar> binomial_series(int k, int len)
{
    std::vector<Scalar> c(len);
    c[0] = Scalar(1);
    // c_{n+1} = c_n * (n + 1/k) / (n + 1)
    for (int n = 0; n + 1 < len; ++n) {
        c[n + 1] = c[n] * Scalar::fraction(n * k + 1, k * (n + 1));
    }
    return c;
}

inline bool same_to(const Series2& a, const Series2& b, int degree)
{
    return a.truncated(degree).terms() == b.truncated(degree).terms();
}

} // namespace rpt

#ifdef DOCTEST_LIBRARY_INCLUDED
namespace doctest {
template <>
struct StringMaker<rpc::Series2> {
    static String convert(const rpc::Series2& s)
    {
        return (s.to_string() + " [N=" + std::to_string(s.order()) + (s.exact() ? ", exact]" : "]")).c_str();
    }
};
template <>
struct StringMaker<rpc::Series1> {
    static String convert(const rpc::Series1& s) { return s.to_string().c_str(); }
};
template <>
struct StringMaker<rpc::VectorField> {
    static String convert(const rpc::VectorField& x) { return x.to_string().c_str(); }
};
template <>
struct StringMaker<rpc::TangentMap> {
    static String convert(const rpc::TangentMap& f) { return f.to_string().c_str(); }
};
} // namespace doctest
#endif
