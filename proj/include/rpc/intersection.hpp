#pragma once

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "rpc/series.hpp"
#include "rpc/vector_field.hpp"

namespace rpc {

struct NewtonEdge {
    Exponent left;
    Exponent right;
    mpq_class slope; // (right.j - left.j) / (right.i - left.i), negative
};

// Compact faces of the Newton polygon, vertices ordered by increasing x
// exponent. Slopes increase along the list, i.e. the edges get shallower.
struct NewtonPolygon {
    std::vector<Exponent> support;
    std::vector<Exponent> vertices;
    std::vector<NewtonEdge> edges;
};

NewtonPolygon newton_polygon(const Series2& f);

enum class Orientation { y_of_x, x_of_y };

std::string to_string(Orientation o);

// One branch through the origin. For y_of_x: x = z^q, y = phi(z); for
// x_of_y the roles of x and y are exchanged. phi.order() is the certified
// z-order (kUnbounded when the parametrization is exact).
struct PuiseuxBranch {
    Orientation orientation = Orientation::y_of_x;
    int q = 1;
    Series1 phi;
    // ord_z(phi); p = 1 when phi vanishes to its certified order.
    int p = 1;
    // Exponent of a free coefficient when the branch stands for a family.
    std::optional<int> family_parameter;
    // Repeated component of a non-reduced curve.
    int multiplicity = 1;
    // The requested depth could not be certified from the truncation.
    bool depth_exhausted = false;

    // phi vanishes to its certified order: the branch is a coordinate axis.
    bool is_axis() const { return phi.is_zero() && !family_parameter; }
    // Leading exponent p/q in lowest terms.
    mpq_class leading_exponent() const;
    std::string describe() const;
};

struct BranchSet {
    std::vector<PuiseuxBranch> branches;
    // Outcomes that could not be turned into branches (field extensions,
    // truncation exhausted before separation, ...).
    std::vector<std::string> unresolved;
};

// Branches of {F = 0} through the origin, each parametrized to z-order
// `depth`. Conjugate branches are reported once.
BranchSet puiseux_branches(const Series2& f, int depth);

// Intersection multiplicity at the origin.
struct Multiplicity {
    bool infinite = false;
    int value = 0;
    // False only for an infinite verdict drawn from truncated input: then
    // the multiplicity is merely known to exceed the truncation order.
    bool certified = true;

    static Multiplicity finite(int v) { return {false, v, true}; }
    static Multiplicity infinity(bool certified = true) { return {true, 0, certified}; }

    friend bool operator==(const Multiplicity& a, const Multiplicity& b)
    {
        return a.infinite == b.infinite && (a.infinite || a.value == b.value);
    }
    std::string to_string() const;
};

// Fulton's reduction. For truncated (inexact) operands a finite answer n is
// certified when n <= N; otherwise UncertifiedError is thrown.
Multiplicity intersection_multiplicity(const Series2& f, const Series2& g);

// mu_0(X) = i_0(A, B).
Multiplicity milnor_number(const VectorField& x);

// mu(f) = i_0(f1 - x, f2 - y).
Multiplicity milnor_of_map(const TangentMap& f);

} // namespace rpc
