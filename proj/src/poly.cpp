#include "rpc/detail/poly.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "rpc/errors.hpp"

namespace rpc::detail {

namespace {

const Scalar kZero{};

using cld = std::complex<long double>;

long double to_ld(const mpq_class& q)
{
    return static_cast<long double>(q.get_d());
}

cld to_complex(const Scalar& s)
{
    return {to_ld(s.re()), to_ld(s.im())};
}

// Convergents of the continued fraction of v, nearest first as accuracy grows.
std::vector<mpq_class> convergents(long double v, int max_terms = 40)
{
    std::vector<mpq_class> out;
    mpz_class h_prev = 1, h_prev2 = 0, k_prev = 0, k_prev2 = 1;
    long double x = v;
    for (int n = 0; n < max_terms; ++n) {
        const long double a_ld = std::floor(x);
        if (std::fabs(a_ld) > 1e15L) {
            break;
        }
        const mpz_class a = static_cast<long>(a_ld);
        const mpz_class h = a * h_prev + h_prev2;
        const mpz_class k = a * k_prev + k_prev2;
        mpq_class q(h, k);
        q.canonicalize();
        out.push_back(q);
        if (k > mpz_class("1000000000")) {
            break;
        }
        const long double frac = x - a_ld;
        if (std::fabs(frac) < 1e-14L) {
            break;
        }
        x = 1.0L / frac;
        h_prev2 = h_prev;
        h_prev = h;
        k_prev2 = k_prev;
        k_prev = k;
    }
    return out;
}

std::vector<cld> numeric_roots(const UPoly& p)
{
    const int n = degree(p);
    std::vector<cld> coeffs(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) {
        coeffs[k] = to_complex(p[k]) / to_complex(p[n]);
    }
    auto horner = [&](cld z) {
        cld v = coeffs[n];
        for (int k = n - 1; k >= 0; --k) {
            v = v * z + coeffs[k];
        }
        return v;
    };
    long double bound = 0;
    for (int k = 0; k < n; ++k) {
        bound = std::max(bound, std::abs(coeffs[k]));
    }
    bound = 1 + bound;
    std::vector<cld> z(n);
    const cld seed(0.4L, 0.9L);
    for (int k = 0; k < n; ++k) {
        z[k] = std::pow(seed, k) * (bound / 2);
    }
    // Durand-Kerner.
    for (int it = 0; it < 2000; ++it) {
        long double change = 0;
        for (int k = 0; k < n; ++k) {
            cld denom = 1;
            for (int m = 0; m < n; ++m) {
                if (m != k) {
                    denom *= z[k] - z[m];
                }
            }
            if (std::abs(denom) == 0) {
                denom = 1e-30L;
            }
            const cld step = horner(z[k]) / denom;
            z[k] -= step;
            change = std::max(change, std::abs(step));
        }
        if (change < 1e-30L) {
            break;
        }
    }
    return z;
}

std::vector<Scalar> rational_candidates(cld z)
{
    std::vector<Scalar> out;
    auto re = convergents(z.real());
    auto im = std::fabs(z.imag()) < 1e-12L ? std::vector<mpq_class>{mpq_class(0)} : convergents(z.imag());
    // Pair convergents of equal rank from the tail (most accurate first).
    for (auto r = re.rbegin(); r != re.rend() && out.size() < 64; ++r) {
        for (auto i = im.rbegin(); i != im.rend() && std::distance(im.rbegin(), i) < 4; ++i) {
            out.emplace_back(*r, *i);
        }
        if (std::distance(re.rbegin(), r) >= 4) {
            break;
        }
    }
    return out;
}

} // namespace

void Poly2::add(int i, int j, const Scalar& c)
{
    if (c.is_zero()) {
        return;
    }
    auto [it, inserted] = terms.try_emplace({i, j}, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) {
            terms.erase(it);
        }
    }
}

const Scalar& Poly2::coeff(int i, int j) const
{
    auto it = terms.find({i, j});
    return it == terms.end() ? kZero : it->second;
}

std::optional<int> Poly2::min_x_at(int j) const
{
    std::optional<int> best;
    for (const auto& [e, c] : terms) {
        if (e.second == j && (!best || e.first < *best)) {
            best = e.first;
        }
    }
    return best;
}

Poly2 to_poly(const Series2& s)
{
    Poly2 p;
    for (const auto& [e, c] : s.terms()) {
        p.add(e.i, e.j, c);
    }
    return p;
}

Poly2 mul(const Poly2& a, const Poly2& b)
{
    Poly2 p;
    for (const auto& [ea, ca] : a.terms) {
        for (const auto& [eb, cb] : b.terms) {
            p.add(ea.first + eb.first, ea.second + eb.second, ca * cb);
        }
    }
    return p;
}

Poly2 scaled_shift(const Poly2& a, const Scalar& c, int di, int dj)
{
    Poly2 p;
    for (const auto& [e, v] : a.terms) {
        p.add(e.first + di, e.second + dj, c * v);
    }
    return p;
}

void trim(UPoly& p)
{
    while (!p.empty() && p.back().is_zero()) {
        p.pop_back();
    }
}

int degree(const UPoly& p)
{
    return static_cast<int>(p.size()) - 1;
}

UPoly derivative(const UPoly& p)
{
    UPoly d;
    for (std::size_t k = 1; k < p.size(); ++k) {
        d.push_back(p[k] * Scalar(static_cast<long>(k)));
    }
    trim(d);
    return d;
}

std::pair<UPoly, UPoly> divmod(const UPoly& p, const UPoly& d)
{
    if (d.empty()) {
        throw DomainError("exact_algebra/upoly", "division by the zero polynomial");
    }
    UPoly r = p;
    trim(r);
    const int dd = degree(d);
    UPoly q(r.size() > d.size() - 1 ? r.size() - d.size() + 1 : 0);
    while (degree(r) >= dd) {
        const int shift = degree(r) - dd;
        const Scalar c = r.back() / d.back();
        q[shift] = c;
        for (int k = 0; k <= dd; ++k) {
            r[shift + k] -= c * d[k];
        }
        r.pop_back();
        trim(r);
    }
    trim(q);
    return {q, r};
}

UPoly gcd(UPoly a, UPoly b)
{
    trim(a);
    trim(b);
    while (!b.empty()) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        const Scalar lead = a.back();
        for (auto& c : a) {
            c /= lead;
        }
    }
    return a;
}

namespace {

// Polynomial in y with coefficients in Q(i)[x]; entry k is the coefficient of y^k.
using YPoly = std::vector<UPoly>;

UPoly umul(const UPoly& a, const UPoly& b)
{
    if (a.empty() || b.empty()) {
        return {};
    }
    UPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            r[i + j] += a[i] * b[j];
        }
    }
    trim(r);
    return r;
}

UPoly usub(UPoly a, const UPoly& b)
{
    if (a.size() < b.size()) {
        a.resize(b.size());
    }
    for (std::size_t k = 0; k < b.size(); ++k) {
        a[k] -= b[k];
    }
    trim(a);
    return a;
}

void ytrim(YPoly& p)
{
    while (!p.empty() && p.back().empty()) {
        p.pop_back();
    }
}

YPoly to_ypoly(const Poly2& p)
{
    YPoly r;
    for (const auto& [e, c] : p.terms) {
        if (r.size() <= static_cast<std::size_t>(e.second)) {
            r.resize(e.second + 1);
        }
        UPoly& u = r[e.second];
        if (u.size() <= static_cast<std::size_t>(e.first)) {
            u.resize(e.first + 1);
        }
        u[e.first] = c;
    }
    for (auto& u : r) {
        trim(u);
    }
    ytrim(r);
    return r;
}

Poly2 from_ypoly(const YPoly& p)
{
    Poly2 r;
    for (std::size_t j = 0; j < p.size(); ++j) {
        for (std::size_t i = 0; i < p[j].size(); ++i) {
            r.add(static_cast<int>(i), static_cast<int>(j), p[j][i]);
        }
    }
    return r;
}

UPoly content(const YPoly& p)
{
    UPoly c;
    for (const auto& u : p) {
        c = gcd(c, u);
    }
    return c;
}

YPoly primitive(const YPoly& p)
{
    const UPoly c = content(p);
    YPoly r;
    for (const auto& u : p) {
        r.push_back(u.empty() ? u : divmod(u, c).first);
    }
    return r;
}

// lc(b)^k a reduced modulo b in y, k large enough to stay in Q(i)[x].
YPoly pseudo_remainder(YPoly a, const YPoly& b)
{
    const std::size_t n = b.size() - 1;
    while (!a.empty() && a.size() - 1 >= n) {
        const UPoly la = a.back();
        const std::size_t shift = a.size() - 1 - n;
        for (auto& u : a) {
            u = umul(u, b.back());
        }
        for (std::size_t k = 0; k <= n; ++k) {
            a[shift + k] = usub(a[shift + k], umul(la, b[k]));
        }
        ytrim(a);
    }
    return a;
}

} // namespace

Poly2 gcd(const Poly2& a, const Poly2& b)
{
    YPoly pa = to_ypoly(a);
    YPoly pb = to_ypoly(b);
    if (pa.empty()) {
        return b;
    }
    if (pb.empty()) {
        return a;
    }
    const UPoly c = gcd(content(pa), content(pb));
    pa = primitive(pa);
    pb = primitive(pb);
    if (pa.size() < pb.size()) {
        std::swap(pa, pb);
    }
    // Primitive remainder sequence.
    while (!pb.empty() && pb.size() > 1) {
        YPoly r = pseudo_remainder(pa, pb);
        pa = std::move(pb);
        pb = r.empty() ? r : primitive(r);
    }
    YPoly g = pb.empty() ? pa : YPoly{UPoly{Scalar(1)}};
    for (auto& u : g) {
        u = umul(u, c);
    }
    return from_ypoly(g);
}

bool share_component_at_origin(const Poly2& a, const Poly2& b)
{
    if (a.is_zero() || b.is_zero()) {
        return (a.is_zero() ? b : a).coeff(0, 0).is_zero();
    }
    auto x_divides = [](const Poly2& p) {
        return std::all_of(p.terms.begin(), p.terms.end(), [](const auto& t) { return t.first.first > 0; });
    };
    if (x_divides(a) && x_divides(b)) {
        return true;
    }
    // Any other common factor through the origin has positive y-degree and
    // survives specialising x unless its leading coefficient vanishes there.
    const YPoly ya = to_ypoly(a);
    const YPoly yb = to_ypoly(b);
    if (ya.size() == 1 || yb.size() == 1) {
        // One operand lies in Q(i)[x]; its factors through 0 are powers of x.
        return false;
    }
    for (long x0 = 1; x0 <= 8; ++x0) {
        const Scalar t(x0);
        if (eval(ya.back(), t).is_zero() || eval(yb.back(), t).is_zero()) {
            continue;
        }
        UPoly sa;
        UPoly sb;
        for (const auto& u : ya) {
            sa.push_back(eval(u, t));
        }
        for (const auto& u : yb) {
            sb.push_back(eval(u, t));
        }
        if (degree(gcd(sa, sb)) == 0) {
            return false;
        }
    }
    return gcd(a, b).coeff(0, 0).is_zero();
}

Scalar eval(const UPoly& p, const Scalar& t)
{
    Scalar v;
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
        v = v * t + *it;
    }
    return v;
}

RootSet gaussian_rational_roots(const UPoly& input)
{
    UPoly p = input;
    trim(p);
    if (p.empty()) {
        throw DomainError("exact_algebra/roots", "the zero polynomial has every root");
    }
    RootSet out;
    int zero_mult = 0;
    while (!p.empty() && p.front().is_zero()) {
        p.erase(p.begin());
        ++zero_mult;
    }
    if (zero_mult > 0) {
        out.roots.emplace_back(Scalar(0), zero_mult);
    }
    if (degree(p) < 1) {
        return out;
    }
    const UPoly g = gcd(p, derivative(p));
    UPoly squarefree = degree(g) > 0 ? divmod(p, g).first : p;
    auto record = [&](const Scalar& root) {
        const UPoly lin{-root, Scalar(1)};
        int mult = 0;
        UPoly rest = p;
        while (true) {
            auto [q, r] = divmod(rest, lin);
            if (!r.empty()) {
                break;
            }
            rest = std::move(q);
            ++mult;
        }
        out.roots.emplace_back(root, mult);
        squarefree = divmod(squarefree, lin).first;
    };
    if (degree(squarefree) > 1) {
        for (const cld& z : numeric_roots(squarefree)) {
            for (const Scalar& cand : rational_candidates(z)) {
                if (degree(squarefree) > 1 && eval(squarefree, cand).is_zero()) {
                    record(cand);
                    break;
                }
            }
        }
    }
    // A linear cofactor has its root read off exactly.
    if (degree(squarefree) == 1) {
        record(-squarefree[0] / squarefree[1]);
    }
    int found = 0;
    for (const auto& [r, m] : out.roots) {
        found += r.is_zero() ? 0 : m;
    }
    out.unresolved_degree = degree(p) - found;
    return out;
}

std::optional<Scalar> nth_root(const Scalar& w, int n)
{
    if (n == 1 || w.is_zero()) {
        return w;
    }
    const cld z = to_complex(w);
    const long double r = std::pow(std::abs(z), 1.0L / n);
    const long double arg = std::arg(z);
    const long double pi = std::acos(-1.0L);
    for (int k = 0; k < n; ++k) {
        const cld cand = std::polar(r, (arg + 2 * pi * k) / n);
        for (const Scalar& c : rational_candidates(cand)) {
            if (pow(c, static_cast<unsigned>(n)) == w) {
                return c;
            }
        }
    }
    return std::nullopt;
}

} // namespace rpc::detail
