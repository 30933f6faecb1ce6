#include "rpc/detail/newton_engine.hpp"

#include <algorithm>
#include <numeric>

#include "rpc/errors.hpp"

namespace rpc::detail {

bool Precision::known(long i, long j) const noexcept
{
    switch (kind) {
    case Kind::exact:
        return true;
    case Kind::total:
        return i + j < bound;
    case Kind::x_only:
        return i < bound;
    }
    return true;
}

long Precision::min_unknown_weight(long n, long m) const noexcept
{
    switch (kind) {
    case Kind::exact:
        return kUnbounded;
    case Kind::total:
        return bound * std::min(n, m);
    case Kind::x_only:
        return bound * n;
    }
    return kUnbounded;
}

bool Precision::above(long n, long m, long w) const noexcept
{
    return is_exact() || min_unknown_weight(n, m) > w;
}

Precision Precision::after(long n, long m, long w, long shift) const noexcept
{
    if (is_exact()) {
        return *this;
    }
    return {Kind::x_only, std::max(0L, min_unknown_weight(n, m) - w + shift)};
}

std::vector<Exponent> lower_hull(const std::vector<Exponent>& points)
{
    if (points.empty()) {
        return {};
    }
    // Leftmost point, lowest among ties.
    Exponent v = points.front();
    for (const auto& p : points) {
        if (p.i < v.i || (p.i == v.i && p.j < v.j)) {
            v = p;
        }
    }
    std::vector<Exponent> hull{v};
    while (true) {
        // Steepest descent from v; among collinear points the farthest.
        const Exponent* best = nullptr;
        for (const auto& p : points) {
            if (p.j >= v.j || p.i <= v.i) {
                continue;
            }
            if (best == nullptr) {
                best = &p;
                continue;
            }
            // slope(p) < slope(best)  <=>  (p.j-v.j)(best.i-v.i) < (best.j-v.j)(p.i-v.i)
            const long lhs = static_cast<long>(p.j - v.j) * (best->i - v.i);
            const long rhs = static_cast<long>(best->j - v.j) * (p.i - v.i);
            if (lhs < rhs || (lhs == rhs && p.i > best->i)) {
                best = &p;
            }
        }
        if (best == nullptr) {
            break;
        }
        v = *best;
        hull.push_back(v);
    }
    return hull;
}

EdgeWeights edge_weights(const Exponent& left, const Exponent& right)
{
    // gamma = (right.i - left.i) / (left.j - right.j)
    long num = right.i - left.i;
    long den = left.j - right.j;
    if (num <= 0 || den <= 0) {
        throw Error("intersection/newton", "malformed Newton edge");
    }
    const long g = std::gcd(num, den);
    EdgeWeights w;
    w.m = num / g;
    w.n = den / g;
    w.weight = w.n * left.i + w.m * left.j;
    return w;
}

BranchState BranchState::refine(long n, long m, const Scalar& c) const
{
    BranchState s;
    s.q = q * n;
    s.e = e * n + m;
    for (const auto& [k, v] : phi) {
        s.phi.emplace(static_cast<int>(k * n), v);
    }
    s.phi[static_cast<int>(s.e)] += c;
    return s;
}

Series1 BranchState::phi_series(int order, long& q_out) const
{
    long g = q;
    for (const auto& [k, v] : phi) {
        g = std::gcd(g, static_cast<long>(k));
    }
    if (order < kUnbounded) {
        order = static_cast<int>(order / g);
    }
    q_out = q / g;
    Series1 s(order);
    for (const auto& [k, v] : phi) {
        s.add_term(static_cast<int>(k / g), v);
    }
    return s;
}

Poly2 edge_substitution(const Poly2& g, long n, long m, const Scalar& c, long shift)
{
    int max_j = 0;
    for (const auto& [e, v] : g.terms) {
        max_j = std::max(max_j, e.second);
    }
    // Rows of binomial(J, k) * c^(J-k).
    std::vector<std::vector<Scalar>> rows{{Scalar(1)}};
    for (int j = 1; j <= max_j; ++j) {
        const auto& prev = rows.back();
        std::vector<Scalar> row(static_cast<std::size_t>(j) + 1);
        for (int k = 0; k <= j; ++k) {
            if (k < j) {
                row[k] += c * prev[k];
            }
            if (k > 0) {
                row[k] += prev[k - 1];
            }
        }
        rows.push_back(std::move(row));
    }
    Poly2 out;
    for (const auto& [e, v] : g.terms) {
        const long t = n * e.first + m * e.second + shift;
        if (t < 0) {
            throw Error("intersection/newton", "substitution below the Newton polygon");
        }
        for (int k = 0; k <= e.second; ++k) {
            out.add(static_cast<int>(t), k, v * rows[e.second][k]);
        }
    }
    return out;
}

Poly2 known_part(const Poly2& g, const Precision& prec)
{
    if (prec.is_exact()) {
        return g;
    }
    Poly2 out;
    for (const auto& [e, v] : g.terms) {
        if (prec.known(e.first, e.second)) {
            out.add(e.first, e.second, v);
        }
    }
    return out;
}

std::vector<Exponent> support(const Poly2& g)
{
    std::vector<Exponent> pts;
    pts.reserve(g.terms.size());
    for (const auto& [e, v] : g.terms) {
        pts.push_back({e.first, e.second});
    }
    return pts;
}

} // namespace rpc::detail
