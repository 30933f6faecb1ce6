#pragma once

#include <optional>
#include <string>

#include "rpc/series.hpp"

namespace rpc {

// The field A d/dx + B d/dy. Saturation can produce fields that do not
// vanish at the origin; operations that need a singular point check it.
class VectorField {
public:
    explicit VectorField(int order = kDefaultOrder);
    VectorField(Series2 a, Series2 b);

    const Series2& a() const noexcept { return a_; }
    const Series2& b() const noexcept { return b_; }
    int truncation() const noexcept { return a_.order(); }
    bool exact() const noexcept { return a_.exact() && b_.exact(); }
    bool is_zero() const noexcept { return a_.is_zero() && b_.is_zero(); }
    // Vanishes at the origin.
    bool singular() const;

    // min(ord A, ord B); nullopt for the zero field, 0 when not singular.
    std::optional<int> order() const;

    // The same field written in swapped coordinates (x <-> y).
    VectorField swapped() const;
    VectorField truncated(int order) const;

    friend VectorField operator+(const VectorField& u, const VectorField& v);
    friend VectorField operator-(const VectorField& u, const VectorField& v);
    friend VectorField operator*(const Scalar& c, const VectorField& v);
    friend bool operator==(const VectorField& u, const VectorField& v) = default;

    std::string to_string(char vx = 'x', char vy = 'y') const;

private:
    Series2 a_;
    Series2 b_;
};

// A pair of series (f1, f2) fixing the origin; no condition on the linear part.
struct PlaneMap {
    Series2 f1;
    Series2 f2;

    friend bool operator==(const PlaneMap&, const PlaneMap&) = default;
    std::string to_string(char vx = 'x', char vy = 'y') const;
};

// A map germ tangent to the identity: f - Id has order >= 2 componentwise.
class TangentMap {
public:
    TangentMap(Series2 f1, Series2 f2);
    static TangentMap identity(int order = kDefaultOrder);

    const Series2& f1() const noexcept { return f1_; }
    const Series2& f2() const noexcept { return f2_; }
    int truncation() const noexcept { return f1_.order(); }
    PlaneMap as_plane_map() const { return {f1_, f2_}; }

    // (f1 - x, f2 - y) as a vector field.
    VectorField displacement() const;
    bool is_identity() const;
    TangentMap truncated(int order) const;

    friend bool operator==(const TangentMap&, const TangentMap&) = default;
    std::string to_string(char vx = 'x', char vy = 'y') const;

private:
    Series2 f1_;
    Series2 f2_;
};

// X.g = A dg/dx + B dg/dy, truncated at the order of g.
Series2 apply_derivation(const VectorField& x, const Series2& g);

// Time-one map of a field of order >= 2, summed as the Lie series
// x + sum_n X^n.x / n! (and likewise for y). The sum is cut at the first n
// with n*(order-1) > N, past which every term is truncated away.
TangentMap exp_flow(const VectorField& x);

// Lie-series exponential for fields whose linear part is nilpotent. This
// covers pull-backs through a blow-up, whose time-one maps need not be
// tangent to the identity at the chart origin.
PlaneMap exp_series(const VectorField& x);

// Field X with exp_flow(X) = f to the truncation order, by the correction
// X <- X + (f - exp_flow(X)), which fixes at least one more degree per pass.
VectorField log_map(const TangentMap& f);

struct MapOrders {
    // ord(f1 - x), ord(f2 - y); nullopt when the component is the identity
    // to the truncation order.
    std::optional<int> nu1;
    std::optional<int> nu2;
    int nu = 0;                 // min
    std::optional<int> eta;     // max, nullopt if a component is the identity
};

MapOrders orders(const TangentMap& f);

// x*B_nu - y*A_nu for nu = order(X); homogeneous of degree nu+1 or zero.
Series2 tangent_cone(const VectorField& x);

// f o g.
PlaneMap compose(const PlaneMap& f, const PlaneMap& g);
TangentMap compose(const TangentMap& f, const TangentMap& g);

} // namespace rpc
