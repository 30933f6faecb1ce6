#include "rpc/vector_field.hpp"

#include <algorithm>

#include "rpc/errors.hpp"

namespace rpc {

namespace {

void require_same_order(const Series2& a, const Series2& b, const char* stage)
{
    if (a.order() != b.order()) {
        throw DomainError(stage, "components have different truncation orders " + std::to_string(a.order()) +
                                     " and " + std::to_string(b.order()));
    }
}

} // namespace

// ------------------------------------------------------------ VectorField

VectorField::VectorField(int order) : a_(order), b_(order) {}

VectorField::VectorField(Series2 a, Series2 b) : a_(std::move(a)), b_(std::move(b))
{
    require_same_order(a_, b_, "vector_fields/field");
}

bool VectorField::singular() const
{
    return a_.constant_term().is_zero() && b_.constant_term().is_zero();
}

std::optional<int> VectorField::order() const
{
    auto oa = a_.ord();
    auto ob = b_.ord();
    if (!oa) {
        return ob;
    }
    if (!ob) {
        return oa;
    }
    return std::min(*oa, *ob);
}

VectorField VectorField::swapped() const
{
    return VectorField(b_.swapped(), a_.swapped());
}

VectorField VectorField::truncated(int order) const
{
    return VectorField(a_.truncated(order), b_.truncated(order));
}

VectorField operator+(const VectorField& u, const VectorField& v)
{
    return VectorField(u.a_ + v.a_, u.b_ + v.b_);
}

VectorField operator-(const VectorField& u, const VectorField& v)
{
    return VectorField(u.a_ - v.a_, u.b_ - v.b_);
}

VectorField operator*(const Scalar& c, const VectorField& v)
{
    return VectorField(c * v.a_, c * v.b_);
}

std::string VectorField::to_string(char vx, char vy) const
{
    return "(" + a_.to_string(vx, vy) + ")*d/d" + vx + " + (" + b_.to_string(vx, vy) + ")*d/d" + vy;
}

std::string PlaneMap::to_string(char vx, char vy) const
{
    return "(" + f1.to_string(vx, vy) + ", " + f2.to_string(vx, vy) + ")";
}

// ------------------------------------------------------------- TangentMap

TangentMap::TangentMap(Series2 f1, Series2 f2) : f1_(std::move(f1)), f2_(std::move(f2))
{
    require_same_order(f1_, f2_, "vector_fields/tangent_map");
    if (!f1_.constant_term().is_zero() || !f2_.constant_term().is_zero()) {
        throw DomainError("vector_fields/tangent_map", "the map must fix the origin");
    }
    const bool identity_linear = f1_.coeff(1, 0).is_one() && f1_.coeff(0, 1).is_zero() &&
                                 f2_.coeff(1, 0).is_zero() && f2_.coeff(0, 1).is_one();
    if (!identity_linear) {
        throw DomainError("vector_fields/tangent_map",
                          "the map is not tangent to the identity: its linear part must be the identity, "
                          "i.e. the associated field must have order >= 2");
    }
}

TangentMap TangentMap::identity(int order)
{
    return TangentMap(Series2::x(order), Series2::y(order));
}

VectorField TangentMap::displacement() const
{
    const int n = truncation();
    return VectorField(f1_ - Series2::x(n), f2_ - Series2::y(n));
}

bool TangentMap::is_identity() const
{
    return displacement().is_zero();
}

TangentMap TangentMap::truncated(int order) const
{
    return TangentMap(f1_.truncated(order), f2_.truncated(order));
}

std::string TangentMap::to_string(char vx, char vy) const
{
    return as_plane_map().to_string(vx, vy);
}

// -------------------------------------------------------------- operations

Series2 apply_derivation(const VectorField& x, const Series2& g)
{
    // A has no constant term, so A*dg/dx is exact to the order of g even
    // though the derivative of an inexact g loses its top degree.
    const int n = g.order();
    Series2 out = mul_to(x.a(), g.dx(), n);
    out += mul_to(x.b(), g.dy(), n);
    if (!x.exact()) {
        out.mark_inexact();
    }
    return out;
}

namespace {

// x + sum_{n>=1} X^n.x / n!, stopping once an iterate vanishes.
Series2 lie_series(const VectorField& x, const Series2& g, int max_terms)
{
    Series2 sum = g;
    Series2 term = g;
    for (int n = 1; n <= max_terms; ++n) {
        term = apply_derivation(x, term);
        if (term.is_zero()) {
            if (!term.exact()) {
                sum.mark_inexact();
            }
            return sum;
        }
        sum += (Scalar(1) / factorial(static_cast<unsigned>(n))) * term;
    }
    throw Error("vector_fields/exp", "Lie series did not terminate within " + std::to_string(max_terms) + " terms");
}

void require_singular(const VectorField& x, const char* stage)
{
    if (!x.singular()) {
        throw DomainError(stage, "the field does not vanish at the origin, so its flow does not fix it");
    }
}

} // namespace

TangentMap exp_flow(const VectorField& x)
{
    require_singular(x, "vector_fields/exp_flow");
    const int n = x.truncation();
    auto nu = x.order();
    if (!nu) {
        return TangentMap::identity(n);
    }
    if (*nu < 2) {
        throw DomainError("vector_fields/exp_flow",
                          "field of order " + std::to_string(*nu) +
                              " has a linear part, so its time-one map is not tangent to the identity; "
                              "the exponential requires order >= 2");
    }
    // X^k.x has order >= k*(nu-1)+1, so terms past this bound are truncated away.
    const int max_terms = (n + *nu - 2) / (*nu - 1) + 1;
    return TangentMap(lie_series(x, Series2::x(n), max_terms), lie_series(x, Series2::y(n), max_terms));
}

PlaneMap exp_series(const VectorField& x)
{
    require_singular(x, "vector_fields/exp_series");
    const int n = x.truncation();
    const Scalar a10 = x.a().coeff(1, 0);
    const Scalar a01 = x.a().coeff(0, 1);
    const Scalar b10 = x.b().coeff(1, 0);
    const Scalar b01 = x.b().coeff(0, 1);
    const bool nilpotent = (a10 + b01).is_zero() && (a10 * b01 - a01 * b10).is_zero();
    if (!nilpotent) {
        throw DomainError("vector_fields/exp_series",
                          "the linear part of the field is not nilpotent, so its time-one map is not tangent "
                          "to the identity and has no exact truncated expansion");
    }
    // The derivation is nilpotent on the truncated ring, whose dimension
    // bounds the number of nonzero iterates.
    const int max_terms = (n + 1) * (n + 2) / 2 + 1;
    return {lie_series(x, Series2::x(n), max_terms), lie_series(x, Series2::y(n), max_terms)};
}

VectorField log_map(const TangentMap& f)
{
    const int n = f.truncation();
    VectorField x = f.displacement();
    auto lift = [n](const Series2& s) {
        Series2 r(n);
        for (const auto& [e, c] : s.terms()) {
            r.add_term(e.i, e.j, c);
        }
        return r;
    };
    // Corrections at degree t only move exp(x) in degrees >= t, so the
    // degree-t defect can be read off an exponential truncated at t.
    for (int t = 2; t < n; ++t) {
        const VectorField xt = x.truncated(t);
        const TangentMap e = exp_flow(xt);
        x = x + VectorField(lift(f.f1().truncated(t) - e.f1()), lift(f.f2().truncated(t) - e.f2()));
    }
    for (int pass = 0; pass <= n + 1; ++pass) {
        const TangentMap e = exp_flow(x);
        const VectorField defect(f.f1() - e.f1(), f.f2() - e.f2());
        if (defect.is_zero()) {
            return x;
        }
        x = x + defect;
    }
    throw Error("vector_fields/log_map", "correction did not stabilise");
}

MapOrders orders(const TangentMap& f)
{
    const VectorField d = f.displacement();
    if (d.is_zero()) {
        throw DomainError("vector_fields/orders", "f is the identity; its orders are undefined");
    }
    MapOrders o;
    o.nu1 = d.a().ord();
    o.nu2 = d.b().ord();
    o.nu = *d.order();
    if (o.nu1 && o.nu2) {
        o.eta = std::max(*o.nu1, *o.nu2);
    }
    return o;
}

Series2 tangent_cone(const VectorField& x)
{
    const int n = x.truncation();
    auto nu = x.order();
    if (!nu) {
        throw DomainError("vector_fields/tangent_cone", "the zero field has no tangent cone");
    }
    const Series2 a = x.a().homogeneous_part(*nu);
    const Series2 b = x.b().homogeneous_part(*nu);
    // Degree nu+1 may exceed the truncation; compute without truncation loss.
    const int m = std::max(n, *nu + 1);
    Series2 cone = mul_to(Series2::x(m), b.truncated(m), m) - mul_to(Series2::y(m), a.truncated(m), m);
    return cone;
}

PlaneMap compose(const PlaneMap& f, const PlaneMap& g)
{
    return {substitute(f.f1, g.f1, g.f2), substitute(f.f2, g.f1, g.f2)};
}

TangentMap compose(const TangentMap& f, const TangentMap& g)
{
    auto h = compose(f.as_plane_map(), g.as_plane_map());
    return TangentMap(h.f1, h.f2);
}

} // namespace rpc
