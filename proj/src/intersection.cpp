#include "rpc/intersection.hpp"

#include <algorithm>
#include <sstream>

#include "rpc/detail/newton_engine.hpp"
#include "rpc/detail/poly.hpp"
#include "rpc/errors.hpp"

namespace rpc {

using detail::BranchState;
using detail::Poly2;
using detail::Precision;

// ---------------------------------------------------------- Newton polygon

NewtonPolygon newton_polygon(const Series2& f)
{
    if (f.is_zero()) {
        throw DomainError("intersection/newton_polygon", "the zero series has no Newton polygon");
    }
    NewtonPolygon poly;
    for (const auto& [e, c] : f.terms()) {
        poly.support.push_back(e);
    }
    poly.vertices = detail::lower_hull(poly.support);
    for (std::size_t k = 1; k < poly.vertices.size(); ++k) {
        const auto& l = poly.vertices[k - 1];
        const auto& r = poly.vertices[k];
        mpq_class slope(r.j - l.j, r.i - l.i);
        slope.canonicalize();
        poly.edges.push_back({l, r, slope});
    }
    return poly;
}

std::string to_string(Orientation o)
{
    return o == Orientation::y_of_x ? "y_of_x" : "x_of_y";
}

mpq_class PuiseuxBranch::leading_exponent() const
{
    mpq_class k(p, q);
    k.canonicalize();
    return k;
}

std::string PuiseuxBranch::describe() const
{
    const bool yx = orientation == Orientation::y_of_x;
    const std::string dep = yx ? "y" : "x";
    const std::string par = yx ? "x" : "y";
    const std::string var = q == 1 ? par : "z";
    std::string rhs;
    if (family_parameter) {
        // Stem terms, then the free coefficient C.
        for (const auto& [e, c] : phi.terms()) {
            Series1 t = Series1::monomial(e, c);
            rhs += (rhs.empty() ? "" : " + ") + t.to_string(var);
        }
        rhs += (rhs.empty() ? "" : " + ") + std::string("C*") + var;
        if (*family_parameter != 1) {
            rhs += "^" + std::to_string(*family_parameter);
        }
        rhs += " + ...";
    } else {
        rhs = phi.to_string(var);
    }
    if (q == 1) {
        return dep + " = " + rhs;
    }
    return par + " = z^" + std::to_string(q) + ", " + dep + " = " + rhs;
}

// ------------------------------------------------------- curve branches

namespace {

constexpr int kMaxLevels = 64;

struct CurveExpansion {
    Orientation orientation;
    int depth;
    BranchSet* out;

    void emit(const BranchState& st, long certified, int multiplicity)
    {
        long q = 1;
        const int order = certified >= kUnbounded ? kUnbounded : static_cast<int>(certified);
        PuiseuxBranch br;
        br.orientation = orientation;
        br.phi = st.phi_series(order, q);
        br.q = static_cast<int>(q);
        br.multiplicity = multiplicity;
        br.p = br.phi.ord().value_or(1);
        br.depth_exhausted = order < depth;
        out->branches.push_back(std::move(br));
    }

    void unresolved(const BranchState& st, const std::string& why)
    {
        long q = 1;
        const Series1 partial = st.phi_series(static_cast<int>(st.e), q);
        std::ostringstream msg;
        msg << to_string(orientation) << " branch starting " << partial.to_string("z") << " (q=" << q << "): " << why;
        out->unresolved.push_back(msg.str());
    }

    // Smallest exponent gamma an unknown term could contribute to y_cur, seen
    // from the vertex (i0, k) that currently carries the lowest y-power.
    static long unknown_gamma(const Precision& prec, const Exponent& v)
    {
        long best = kUnbounded;
        for (int j = 0; j < v.j; ++j) {
            long i = 0;
            if (prec.kind == Precision::Kind::total) {
                i = std::max<long>(0, prec.bound - j);
            } else {
                i = prec.bound;
            }
            // ceil((i - v.i) / (v.j - j))
            const long num = i - v.i;
            const long den = v.j - j;
            const long g = num <= 0 ? 1 : (num + den - 1) / den;
            best = std::min(best, g);
        }
        return best;
    }

    void run(const Poly2& g, const Precision& prec, const BranchState& st, int level)
    {
        if (g.is_zero()) {
            unresolved(st, "truncation order exhausted");
            return;
        }
        if (level > kMaxLevels) {
            unresolved(st, "branches did not separate within " + std::to_string(kMaxLevels) + " steps");
            return;
        }
        const auto hull = detail::lower_hull(detail::support(g));
        const Exponent left = hull.front();
        const Exponent bottom = hull.back();
        const bool root = level == 0;
        const bool separated = left.j <= 1;

        if (bottom.j >= 1) {
            if (prec.is_exact()) {
                emit(st, kUnbounded, bottom.j);
            } else if (bottom.j == 1) {
                emit(st, st.e + unknown_gamma(prec, bottom) - 1, 1);
            } else {
                unresolved(st, "repeated factor cannot be separated at this truncation order");
            }
        }

        if (!root && separated && st.e >= depth && hull.size() == 2) {
            const auto w = detail::edge_weights(left, hull[1]);
            const long next = std::min(w.m, prec.is_exact() ? kUnbounded : unknown_gamma(prec, left));
            emit(st, st.e + next - 1, 1);
            return;
        }

        for (std::size_t k = 1; k < hull.size(); ++k) {
            const auto w = detail::edge_weights(hull[k - 1], hull[k]);
            if (root) {
                const bool keep = orientation == Orientation::y_of_x ? w.m >= w.n : w.m > w.n;
                if (!keep) {
                    continue;
                }
            }
            if (!prec.above(w.n, w.m, w.weight)) {
                unresolved(st, "truncation order exhausted before the next term was determined");
                continue;
            }
            const int base = hull[k].j;
            detail::UPoly chi(static_cast<std::size_t>((hull[k - 1].j - base) / w.n) + 1);
            for (const auto& [e, c] : g.terms) {
                if (w.n * e.first + w.m * e.second == w.weight) {
                    chi[static_cast<std::size_t>((e.second - base) / w.n)] = c;
                }
            }
            const auto roots = detail::gaussian_rational_roots(chi);
            if (roots.unresolved_degree > 0) {
                unresolved(st, "branch requires a field extension of Q(i) (degree " +
                                   std::to_string(roots.unresolved_degree) + ")");
            }
            for (const auto& [root_w, mult] : roots.roots) {
                if (root_w.is_zero()) {
                    continue;
                }
                const auto c = detail::nth_root(root_w, static_cast<int>(w.n));
                if (!c) {
                    unresolved(st, "branch requires a field extension of Q(i) (root of order " +
                                       std::to_string(w.n) + " of " + root_w.to_string() + ")");
                    continue;
                }
                const Precision next = prec.after(w.n, w.m, w.weight);
                const Poly2 g1 = detail::known_part(detail::edge_substitution(g, w.n, w.m, *c, -w.weight), next);
                run(g1, next, st.refine(w.n, w.m, *c), level + 1);
            }
        }
    }
};

} // namespace

BranchSet puiseux_branches(const Series2& f, int depth)
{
    if (f.is_zero()) {
        throw DomainError("intersection/puiseux_branches", "the zero series defines no curve");
    }
    if (!f.constant_term().is_zero()) {
        throw DomainError("intersection/puiseux_branches", "the curve does not pass through the origin");
    }
    if (depth < 1) {
        throw DomainError("intersection/puiseux_branches", "depth must be positive");
    }
    const Precision prec = f.exact() ? Precision::exact_poly() : Precision::total_degree(f.order() + 1);
    BranchSet out;
    CurveExpansion yx{Orientation::y_of_x, depth, &out};
    yx.run(detail::to_poly(f), prec, BranchState{}, 0);
    CurveExpansion xy{Orientation::x_of_y, depth, &out};
    xy.run(detail::to_poly(f.swapped()), prec, BranchState{}, 0);
    return out;
}

// ----------------------------------------------------- Fulton's algorithm

namespace {

// A common component off {y = 0} makes the reduction run forever, adding to
// acc each round; past `cap` the multiplicity is reported as exceeded.
struct FultonOutcome {
    Multiplicity m;
    bool exceeded = false;
};

FultonOutcome fulton(Poly2 f, Poly2 g, int cap)
{
    int acc = 0;
    for (long step = 0;; ++step) {
        if (step > 1000000) {
            throw Error("intersection/intersection_multiplicity", "reduction did not terminate");
        }
        if (acc > cap) {
            return {Multiplicity::finite(acc), true};
        }
        if (!f.coeff(0, 0).is_zero() || !g.coeff(0, 0).is_zero()) {
            return {Multiplicity::finite(acc)};
        }
        if (f.is_zero() || g.is_zero()) {
            return {Multiplicity::infinity()};
        }
        // Restrictions to y = 0: degree and leading coefficient.
        auto restriction = [](const Poly2& p) {
            int deg = -1;
            for (const auto& [e, c] : p.terms) {
                if (e.second == 0) {
                    deg = std::max(deg, e.first);
                }
            }
            return deg;
        };
        int r = restriction(f);
        int s = restriction(g);
        if (r == -1 && s == -1) {
            return {Multiplicity::infinity()};
        }
        // f becomes the y-divisible operand, else the one of smaller degree.
        if (s == -1 || (r != -1 && r > s)) {
            std::swap(f, g);
            std::swap(r, s);
        }
        if (r == -1) {
            // f = y * h: i(f, g) = ord_x g(x, 0) + i(h, g).
            acc += *g.min_x_at(0);
            Poly2 h;
            for (const auto& [e, c] : f.terms) {
                h.add(e.first, e.second - 1, c);
            }
            f = std::move(h);
            continue;
        }
        const Scalar factor = g.coeff(s, 0) / f.coeff(r, 0);
        for (const auto& [e, c] : f.terms) {
            g.add(e.first + s - r, e.second, -(factor * c));
        }
    }
}

} // namespace

std::string Multiplicity::to_string() const
{
    if (!infinite) {
        return std::to_string(value);
    }
    return certified ? "infinite" : "infinite (uncertified: exceeds the truncation order)";
}

Multiplicity intersection_multiplicity(const Series2& f, const Series2& g)
{
    const bool exact = f.exact() && g.exact();
    // Truncated data certify nothing past their order.
    int cap = INT_MAX;
    if (!f.exact()) {
        cap = f.order();
    }
    if (!g.exact()) {
        cap = std::min(cap, g.order());
    }
    if (exact && detail::share_component_at_origin(detail::to_poly(f), detail::to_poly(g))) {
        return Multiplicity::infinity();
    }
    const FultonOutcome fo = fulton(detail::to_poly(f), detail::to_poly(g), cap);
    Multiplicity m = fo.m;
    if (m.infinite) {
        m.certified = exact;
        return m;
    }
    if ((!f.exact() && m.value > f.order()) || (!g.exact() && m.value > g.order())) {
        throw UncertifiedError("intersection/intersection_multiplicity",
                               "multiplicity " + std::to_string(m.value) +
                                   " of the truncated series exceeds the truncation order " +
                                   std::to_string(std::min(f.order(), g.order())) + "; raise --order");
    }
    return m;
}

Multiplicity milnor_number(const VectorField& x)
{
    return intersection_multiplicity(x.a(), x.b());
}

Multiplicity milnor_of_map(const TangentMap& f)
{
    const VectorField d = f.displacement();
    return intersection_multiplicity(d.a(), d.b());
}

} // namespace rpc
