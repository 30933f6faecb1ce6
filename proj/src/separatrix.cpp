#include "rpc/separatrix.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "rpc/detail/newton_engine.hpp"
#include "rpc/detail/poly.hpp"
#include "rpc/errors.hpp"

namespace rpc {

using detail::BranchState;
using detail::Poly2;
using detail::Precision;

VectorField oriented(const VectorField& x, Orientation o)
{
    return o == Orientation::y_of_x ? x : x.swapped();
}

namespace {

constexpr int kMaxLevels = 64;

// Point (I, J) of the 1-form B dx - A dy carries b = B_{I-1,J} and
// a = A_{I,J-1}; along an edge of slope gamma it contributes (b - gamma a) c^J.
struct FormPoint {
    Scalar a;
    Scalar b;
};

using FormPoints = std::map<std::pair<int, int>, FormPoint>;

FormPoints form_points(const Poly2& a, const Poly2& b)
{
    FormPoints pts;
    for (const auto& [e, c] : a.terms) {
        pts[{e.first, e.second + 1}].a = c;
    }
    for (const auto& [e, c] : b.terms) {
        pts[{e.first + 1, e.second}].b = c;
    }
    return pts;
}

bool positive_rational(const Scalar& s)
{
    return s.is_real() && sgn(s.re()) > 0;
}

struct FoliationExpansion {
    Orientation orientation;
    int depth;
    SeparatrixSet* out;

    PuiseuxBranch make(const BranchState& st, int order) const
    {
        long q = 1;
        PuiseuxBranch br;
        br.orientation = orientation;
        br.phi = st.phi_series(order, q);
        br.q = static_cast<int>(q);
        br.p = br.phi.ord().value_or(1);
        return br;
    }

    void emit(const BranchState& st, long certified)
    {
        const int order = certified >= kUnbounded ? kUnbounded : static_cast<int>(certified);
        PuiseuxBranch br = make(st, order);
        br.depth_exhausted = order < depth;
        out->branches.push_back(std::move(br));
    }

    void emit_family(const BranchState& st, long n, long m)
    {
        // The zero placeholder keeps the free exponent in the gcd reduction.
        const BranchState stem = st.refine(n, m, Scalar(0));
        long q = 1;
        stem.phi_series(kUnbounded, q);
        const long g = stem.q / q;
        const int free = static_cast<int>(stem.e / g);
        PuiseuxBranch br = make(stem, free - 1);
        br.family_parameter = free;
        if (br.phi.is_zero()) {
            br.p = free;
        }
        out->families.push_back(std::move(br));
    }

    void unresolved(const BranchState& st, const std::string& why)
    {
        long q = 1;
        const Series1 partial = st.phi_series(static_cast<int>(st.e), q);
        std::ostringstream msg;
        msg << to_string(orientation) << " separatrix starting " << partial.to_string("z") << " (q=" << q
            << "): " << why;
        out->unresolved.push_back(msg.str());
    }

    static long unknown_gamma(const Precision& prec, const Exponent& v)
    {
        long best = kUnbounded;
        for (int j = 0; j < v.j; ++j) {
            const long i = prec.kind == Precision::Kind::total ? std::max<long>(0, prec.bound - j) : prec.bound;
            const long num = i - v.i;
            const long den = v.j - j;
            best = std::min(best, num <= 0 ? 1 : (num + den - 1) / den);
        }
        return best;
    }

    bool keep_at_root(long n, long m) const
    {
        return orientation == Orientation::y_of_x ? m >= n : m > n;
    }

    void run(const Poly2& a, const Poly2& b, const Precision& prec, const BranchState& st, int level)
    {
        const FormPoints pts = form_points(a, b);
        if (pts.empty()) {
            unresolved(st, "truncation order exhausted");
            return;
        }
        if (level > kMaxLevels) {
            unresolved(st, "branches did not separate within " + std::to_string(kMaxLevels) + " steps");
            return;
        }
        std::vector<Exponent> support;
        for (const auto& [e, v] : pts) {
            support.push_back({e.first, e.second});
        }
        const auto hull = detail::lower_hull(support);
        const bool root = level == 0;
        auto at = [&](const Exponent& e) -> const FormPoint& { return pts.at({e.i, e.j}); };

        std::vector<detail::EdgeWeights> edges;
        for (std::size_t k = 1; k < hull.size(); ++k) {
            edges.push_back(detail::edge_weights(hull[k - 1], hull[k]));
        }

        // Free coefficients: a vertex whose own coefficient b - gamma a
        // vanishes at a slope strictly between its neighbours, or an edge
        // whose characteristic polynomial vanishes identically. The member
        // with a zero free coefficient has higher contact, so everything to
        // the right of the leftmost family is absorbed into it. At the root a
        // slope-one family is the pencil of lines and absorbs both axes.
        std::size_t absorbed = edges.size() + 1;
        std::vector<bool> edge_family(edges.size(), false);
        for (std::size_t k = 0; k < hull.size(); ++k) {
            const auto& v = hull[k];
            const auto& fp = at(v);
            if (v.j < 1 || fp.a.is_zero()) {
                continue;
            }
            const Scalar ratio = fp.b / fp.a;
            if (!positive_rational(ratio)) {
                continue;
            }
            const mpq_class gamma = ratio.re();
            if (k > 0 && gamma <= edges[k - 1].gamma()) {
                continue;
            }
            if (k + 1 < hull.size() && gamma >= edges[k].gamma()) {
                continue;
            }
            const long n = gamma.get_den().get_si();
            const long m = gamma.get_num().get_si();
            const long w = n * v.i + m * v.j;
            if (!prec.above(n, m, w)) {
                unresolved(st, "truncation order exhausted at a candidate free coefficient");
                continue;
            }
            if (!root || keep_at_root(n, m)) {
                emit_family(st, n, m);
            }
            if (!root || keep_at_root(n, m) || n == m) {
                absorbed = std::min(absorbed, k);
            }
        }
        for (std::size_t k = 0; k < edges.size(); ++k) {
            const auto& w = edges[k];
            if (!prec.above(w.n, w.m, w.weight)) {
                continue;
            }
            bool vanishes = true;
            for (const auto& [e, fp] : pts) {
                if (w.n * e.first + w.m * e.second == w.weight) {
                    const Scalar coeff = fp.b - Scalar(w.gamma()) * fp.a;
                    if (!coeff.is_zero()) {
                        vanishes = false;
                        break;
                    }
                }
            }
            if (vanishes) {
                edge_family[k] = true;
                if (!root || keep_at_root(w.n, w.m)) {
                    emit_family(st, w.n, w.m);
                }
                if (!root || keep_at_root(w.n, w.m) || w.n == w.m) {
                    absorbed = std::min(absorbed, k);
                }
            }
        }
        const Exponent left = hull.front();
        const Exponent bottom = hull.back();
        if (absorbed <= edges.size()) {
            int candidates = bottom.j >= 1 ? 1 : 0;
            for (std::size_t k = absorbed; k < edges.size(); ++k) {
                if (!edge_family[k]) {
                    candidates += static_cast<int>((hull[k].j - hull[k + 1].j) / edges[k].n);
                }
            }
            if (candidates > 1) {
                unresolved(st, "invariant curves of higher contact than a family are not separated");
            }
        }
        if (bottom.j >= 1 && absorbed > edges.size()) {
            if (prec.is_exact()) {
                emit(st, kUnbounded);
            } else if (bottom.j == 1) {
                emit(st, st.e + unknown_gamma(prec, bottom) - 1);
            } else {
                unresolved(st, "invariant curve of higher contact cannot be separated at this truncation order");
            }
        }

        const bool separated = left.j <= 1;
        if (!root && separated && st.e >= depth && hull.size() == 2 && absorbed > edges.size()) {
            const long next = std::min(edges[0].m, prec.is_exact() ? kUnbounded : unknown_gamma(prec, left));
            emit(st, st.e + next - 1);
            return;
        }

        for (std::size_t k = 0; k < edges.size(); ++k) {
            const auto& w = edges[k];
            if (edge_family[k] || k >= absorbed || (root && !keep_at_root(w.n, w.m))) {
                continue;
            }
            if (!prec.above(w.n, w.m, w.weight)) {
                unresolved(st, "truncation order exhausted before the next term was determined");
                continue;
            }
            const int base = hull[k + 1].j;
            detail::UPoly chi(static_cast<std::size_t>((hull[k].j - base) / w.n) + 1);
            for (const auto& [e, fp] : pts) {
                if (w.n * e.first + w.m * e.second == w.weight) {
                    chi[static_cast<std::size_t>((e.second - base) / w.n)] = fp.b - Scalar(w.gamma()) * fp.a;
                }
            }
            detail::trim(chi);
            const auto roots = detail::gaussian_rational_roots(chi);
            if (roots.unresolved_degree > 0) {
                unresolved(st, "separatrix requires a field extension of Q(i) (degree " +
                                   std::to_string(roots.unresolved_degree) + ")");
            }
            for (const auto& [root_w, mult] : roots.roots) {
                if (root_w.is_zero()) {
                    continue;
                }
                const auto c = detail::nth_root(root_w, static_cast<int>(w.n));
                if (!c) {
                    unresolved(st, "separatrix requires a field extension of Q(i) (root of order " +
                                       std::to_string(w.n) + " of " + root_w.to_string() + ")");
                    continue;
                }
                descend(a, b, prec, st, w, *c, level);
            }
        }
    }

    // x = t^n, y = t^m (c + y1): the form becomes
    // [n t^(n-1) B - m t^(m-1) (c + y1) A] dt - t^m A dy1, divided by t^(w-1).
    void descend(const Poly2& a, const Poly2& b, const Precision& prec, const BranchState& st,
                 const detail::EdgeWeights& w, const Scalar& c, int level)
    {
        const Precision next = prec.after(w.n, w.m, w.weight, 1);
        Poly2 a1 = detail::edge_substitution(a, w.n, w.m, c, w.m - w.weight + 1);
        Poly2 shifted_a = detail::edge_substitution(a, w.n, w.m, c, w.m - w.weight);
        Poly2 cy;
        cy.add(0, 0, c);
        cy.add(0, 1, Scalar(1));
        Poly2 b1 = detail::scaled_shift(detail::edge_substitution(b, w.n, w.m, c, w.n - w.weight),
                                        Scalar(w.n), 0, 0);
        for (const auto& [e, v] : detail::mul(cy, shifted_a).terms) {
            b1.add(e.first, e.second, -(Scalar(w.m) * v));
        }
        if (!next.is_exact()) {
            Poly2 ka;
            for (const auto& [e, v] : a1.terms) {
                if (next.known(e.first, e.second + 1)) {
                    ka.add(e.first, e.second, v);
                }
            }
            Poly2 kb;
            for (const auto& [e, v] : b1.terms) {
                if (next.known(e.first + 1, e.second)) {
                    kb.add(e.first, e.second, v);
                }
            }
            a1 = std::move(ka);
            b1 = std::move(kb);
        }
        run(a1, b1, next, st.refine(w.n, w.m, c), level + 1);
    }
};

} // namespace

SeparatrixSet separatrices(const VectorField& x, int depth)
{
    if (x.is_zero()) {
        throw DomainError("separatrix_dynamics/separatrices", "the zero field has no separatrices");
    }
    if (depth < 1) {
        throw DomainError("separatrix_dynamics/separatrices", "depth must be positive");
    }
    SeparatrixSet out;
    out.includes_x_axis = x.a().is_zero() || x.a().x_valuation().value_or(0) >= 1;
    out.includes_y_axis = x.b().is_zero() || x.b().y_valuation().value_or(0) >= 1;
    // Unknown A- or B-terms have degree >= N+1, i.e. I + J >= N + 2 as form points.
    const Precision prec = x.exact() ? Precision::exact_poly() : Precision::total_degree(x.truncation() + 2);
    for (Orientation o : {Orientation::y_of_x, Orientation::x_of_y}) {
        const VectorField y = oriented(x, o);
        FoliationExpansion run{o, depth, &out};
        run.run(detail::to_poly(y.a()), detail::to_poly(y.b()), prec, BranchState{}, 0);
    }
    return out;
}

Series1 invariance_residual(const VectorField& x, const PuiseuxBranch& br, int order)
{
    const VectorField y = oriented(x, br.orientation);
    const int cap = add_orders(order, br.q);
    const Series1 a = ramified_restrict(y.a(), br.phi, br.q, cap);
    const Series1 b = ramified_restrict(y.b(), br.phi, br.q, cap);
    Series1 res = Series1::monomial(br.q - 1, Scalar(br.q)) * b - br.phi.derivative() * a;
    res = Scalar(1) / Scalar(br.q) * res;
    return res.order() > order ? res.truncated(order) : res;
}

VectorField rectify(const VectorField& x, const PuiseuxBranch& br)
{
    if (br.q != 1) {
        throw DomainError("separatrix_dynamics/rectify",
                          "rectification needs a branch that is smooth in its orientation (q = 1)");
    }
    const VectorField y = oriented(x, br.orientation);
    const int n = y.truncation();
    const Series1 res = invariance_residual(x, br, n);
    if (!res.is_zero()) {
        throw DomainError("separatrix_dynamics/rectify", "the branch is not invariant: residual " + res.to_string());
    }
    int m = std::min(n, res.order());
    if (!br.phi.exact()) {
        m = std::min(m, br.phi.order());
    }
    const Series2 phi = lift_x(br.phi, n);
    const Series2 u = Series2::x(n);
    const Series2 v = Series2::y(n) + phi;
    const Series2 a = substitute(y.a(), u, v);
    const Series2 b = substitute(y.b(), u, v) - mul_to(lift_x(br.phi.derivative(), n), a, n);
    Series2 ra = a.truncated(m);
    Series2 rb = b.truncated(m);
    for (const auto& [e, c] : rb.terms()) {
        if (e.j == 0) {
            throw Error("separatrix_dynamics/rectify", "rectified field does not leave {v = 0} invariant");
        }
    }
    return VectorField(ra, rb);
}

PetalReport restricted_exponent(const VectorField& x, const PuiseuxBranch& br)
{
    const VectorField y = oriented(x, br.orientation);
    const Series1 a = ramified_restrict(y.a(), br.phi, br.q);
    Series1 z = Scalar(1) / Scalar(br.q) * divide_monomial(a, br.q - 1);
    PetalReport rep;
    rep.branch = br;
    if (z.is_zero()) {
        if (z.exact()) {
            throw DomainError("separatrix_dynamics/restricted_exponent",
                              "the restricted field vanishes identically: the branch is a curve of singular points");
        }
        throw UncertifiedError("separatrix_dynamics/restricted_exponent",
                               "the restricted field vanishes to the certified order " + std::to_string(z.order()));
    }
    rep.h = *z.ord();
    if (rep.h < 2) {
        throw DomainError("separatrix_dynamics/restricted_exponent",
                          "the restricted field has a linear part, so the restricted map is not parabolic");
    }
    rep.petal_count = rep.h - 1;
    rep.leading_coefficient = z.coeff(rep.h);
    rep.restricted = std::move(z);
    const int nu1 = x.a().ord().value_or(0);
    const int nu2 = x.b().ord().value_or(0);
    rep.petal_upper_bound = std::max(nu1, nu2) * br.p;
    return rep;
}

ExponentCandidates exponent_candidates(int nu1, int p, int q)
{
    if (nu1 < 2) {
        throw DomainError("separatrix_dynamics/exponent_candidates", "nu1 must be at least 2");
    }
    if (p < 1 || q < 1 || std::gcd(p, q) != 1) {
        throw DomainError("separatrix_dynamics/exponent_candidates", "p and q must be coprime positive integers");
    }
    if (p < q) {
        throw DomainError("separatrix_dynamics/exponent_candidates",
                          "p/q < 1: reorient the branch so that its leading exponent is at least 1");
    }
    ExponentCandidates c;
    for (int i = 0; i <= nu1; ++i) {
        const int j = nu1 - i;
        c.values.insert(q * i + p * j + 1 - j);
    }
    c.max = *c.values.rbegin();
    return c;
}

PqBounds pq_bounds(int nu1, int nu2)
{
    if (nu1 < 2 || nu2 < 2) {
        throw DomainError("separatrix_dynamics/pq_bounds", "both orders must be at least 2");
    }
    PqBounds b;
    b.k_max = mpq_class(nu2 - 1, nu1 - 1);
    b.k_max.canonicalize();
    b.p_max = nu2 - 1;
    b.q_max = nu1 - 1;
    return b;
}

bool within_pq_bounds(const PuiseuxBranch& br, const PqBounds& bounds)
{
    return br.p <= bounds.p_max && br.q <= bounds.q_max && br.leading_exponent() <= bounds.k_max;
}

} // namespace rpc
