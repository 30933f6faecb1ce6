#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "rpc/scalar.hpp"
#include "rpc/series.hpp"

// Untruncated polynomial helpers shared by the Newton polygon, Fulton and
// separatrix algorithms. Not part of the public interface.
namespace rpc::detail {

// Sparse bivariate polynomial, keyed by (i, j) for x^i y^j.
struct Poly2 {
    std::map<std::pair<int, int>, Scalar> terms;

    void add(int i, int j, const Scalar& c);
    bool is_zero() const noexcept { return terms.empty(); }
    const Scalar& coeff(int i, int j) const;
    // Smallest exponent of x among the terms with y-exponent j.
    std::optional<int> min_x_at(int j) const;
};

Poly2 to_poly(const Series2& s);
Poly2 mul(const Poly2& a, const Poly2& b);
Poly2 scaled_shift(const Poly2& a, const Scalar& c, int di, int dj);

// Dense univariate polynomial, coefficient k of t^k; trimmed (no leading zero).
using UPoly = std::vector<Scalar>;

void trim(UPoly& p);
int degree(const UPoly& p);
UPoly derivative(const UPoly& p);
// Quotient and remainder of p by d (d nonzero).
std::pair<UPoly, UPoly> divmod(const UPoly& p, const UPoly& d);
UPoly gcd(UPoly a, UPoly b);
Scalar eval(const UPoly& p, const Scalar& t);

struct RootSet {
    // Distinct roots in Q(i) with multiplicity.
    std::vector<std::pair<Scalar, int>> roots;
    // Degree of the part whose roots lie outside Q(i).
    int unresolved_degree = 0;
};

// All roots of p lying in Q(i). Candidates come from a numerical solver on
// the square-free part and are accepted only after exact verification.
RootSet gaussian_rational_roots(const UPoly& p);

// Greatest common divisor in Q(i)[x, y], up to a nonzero scalar.
Poly2 gcd(const Poly2& a, const Poly2& b);

// a and b have a common factor vanishing at the origin.
bool share_component_at_origin(const Poly2& a, const Poly2& b);

// Some c in Q(i) with c^n = w, if one exists.
std::optional<Scalar> nth_root(const Scalar& w, int n);

} // namespace rpc::detail
