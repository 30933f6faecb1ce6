#include "rpc/blowup.hpp"

#include <algorithm>

#include "rpc/errors.hpp"

namespace rpc {

std::string to_string(Chart c)
{
    return c == Chart::u1 ? "u1" : "u2";
}

Series2 BlowupChart::exceptional_divisor(int order) const
{
    return chart == Chart::u1 ? Series2::x(order) : Series2::y(order);
}

namespace {

// U2 is U1 conjugated by the coordinate swap.
PlaneMap swap_map(const PlaneMap& g)
{
    return {g.f2.swapped(), g.f1.swapped()};
}

// g o pi for pi(u, v) = (u, uv).
Series2 along_u1(const Series2& g)
{
    const int n = g.order();
    return substitute(g, Series2::x(n), Series2::monomial(1, 1, Scalar(1), n));
}

Series2 divide_by_u(const Series2& s, const char* stage)
{
    if (s.x_valuation().value_or(1) < 1) {
        throw DomainError(stage, "the chart expression is not divisible by the divisor equation");
    }
    return s.divide_x_power(1);
}

PlaneMap blowup_u1(const TangentMap& f)
{
    const char* stage = "blowup/blowup_map";
    const Series2 g1 = along_u1(f.f1());
    const Series2 g2 = along_u1(f.f2());
    const Series2 q1 = divide_by_u(g1, stage);
    const Series2 q2 = divide_by_u(g2, stage);
    if (q1.constant_term().is_zero()) {
        throw DomainError(stage, "f1 o pi / u is not a unit at the chart origin; use the other chart");
    }
    const int m = f.truncation() - 1;
    return {g1.truncated(m), mul_to(q2, invert_unit(q1), m)};
}

VectorField pullback_u1(const VectorField& x)
{
    const char* stage = "blowup/pullback_field";
    const int n = x.truncation();
    const Series2 a = along_u1(x.a());
    const Series2 b = along_u1(x.b());
    const Series2 numer = b - mul_to(Series2::y(n), a, n);
    const Series2 vdot = divide_by_u(numer, stage);
    const int m = n - 1;
    return VectorField(a.truncated(m), vdot.truncated(m));
}

} // namespace

PlaneMap blowup_map(const TangentMap& f, Chart chart)
{
    if (chart == Chart::u1) {
        return blowup_u1(f);
    }
    const TangentMap g(f.f2().swapped(), f.f1().swapped());
    return swap_map(blowup_u1(g));
}

VectorField pullback_field(const VectorField& x, Chart chart)
{
    if (!x.singular()) {
        throw DomainError("blowup/pullback_field", "the field does not vanish at the origin");
    }
    if (chart == Chart::u1) {
        return pullback_u1(x);
    }
    return pullback_u1(x.swapped()).swapped();
}

Saturation saturate(const VectorField& x, const Series2& divisor)
{
    if (x.is_zero()) {
        throw DomainError("blowup/saturate", "the zero field cannot be saturated");
    }
    const bool along_x = divisor.terms().size() == 1 && divisor.coeff(1, 0).is_one();
    const bool along_y = divisor.terms().size() == 1 && divisor.coeff(0, 1).is_one();
    if (!along_x && !along_y) {
        throw DomainError("blowup/saturate", "the divisor must be a chart coordinate (u or v)");
    }
    auto val = [&](const Series2& s) { return along_x ? s.x_valuation() : s.y_valuation(); };
    int m = INT_MAX;
    for (const Series2* s : {&x.a(), &x.b()}) {
        if (auto v = val(*s)) {
            m = std::min(m, *v);
        }
    }
    if (m == 0) {
        return {x, 0};
    }
    auto div = [&](const Series2& s) { return along_x ? s.divide_x_power(m) : s.divide_y_power(m); };
    return {VectorField(div(x.a()), div(x.b())), m};
}

Saturation saturate(const VectorField& x, Chart chart)
{
    return saturate(x, BlowupChart{chart}.exceptional_divisor(x.truncation()));
}

bool exp_pullback_check(const VectorField& x, Chart chart)
{
    const PlaneMap lhs = blowup_map(exp_flow(x), chart);
    const PlaneMap rhs = exp_series(pullback_field(x, chart));
    const int m = std::min(lhs.f1.order(), rhs.f1.order());
    return lhs.f1.truncated(m) == rhs.f1.truncated(m) && lhs.f2.truncated(m) == rhs.f2.truncated(m);
}

TangentialityResult tangentiality(const PlaneMap& g, Chart chart)
{
    const char* stage = "blowup/tangentiality";
    if (chart == Chart::u2) {
        return tangentiality(swap_map(g), Chart::u1);
    }
    const int n = g.f1.order();
    if (g.f2.order() != n) {
        throw DomainError(stage, "components have different truncation orders");
    }
    const Series2 d1 = g.f1 - Series2::x(n);
    const Series2 d2 = g.f2 - Series2::y(n);
    TangentialityResult r;
    r.alpha = d1.x_valuation();
    r.beta = d2.x_valuation();
    if (!r.alpha && !r.beta) {
        throw DomainError(stage, "the map is the identity to the truncation order; tangentiality needs f != Id");
    }
    r.T = std::min(r.alpha.value_or(INT_MAX), r.beta.value_or(INT_MAX));
    if (r.T < 1) {
        throw DomainError(stage, "the map does not fix the exceptional divisor pointwise");
    }
    r.witness = r.alpha ? d1.divide_x_power(r.T).restrict_x_zero() : Series1(n - r.T);
    r.tangential = r.witness.is_zero();
    return r;
}

bool dicritical_field(const VectorField& x)
{
    if (x.is_zero()) {
        throw DomainError("blowup/dicritical_field", "the zero field has no tangent cone");
    }
    if (!x.singular()) {
        throw DomainError("blowup/dicritical_field", "the field does not vanish at the origin");
    }
    return tangent_cone(x).is_zero();
}

bool divisor_invariant(const VectorField& x, Chart chart)
{
    const Saturation s = saturate(pullback_field(x, chart), chart);
    // {u = 0} is invariant iff u divides u' (resp. v divides v' in U2).
    const Series2& normal = chart == Chart::u1 ? s.field.a() : s.field.b();
    if (normal.is_zero()) {
        return true;
    }
    return chart == Chart::u1 ? *normal.x_valuation() >= 1 : *normal.y_valuation() >= 1;
}

bool dicritical_map(const TangentMap& f)
{
    for (Chart c : {Chart::u1, Chart::u2}) {
        if (!tangentiality(blowup_map(f, c), c).tangential) {
            return true;
        }
    }
    return false;
}

} // namespace rpc
