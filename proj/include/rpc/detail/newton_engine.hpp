#pragma once

#include <map>
#include <vector>

#include <gmpxx.h>

#include "rpc/detail/poly.hpp"
#include "rpc/series.hpp"

// Support machinery for the Newton-Puiseux style recursions (curve branches
// and separatrices). Not part of the public interface.
namespace rpc::detail {

// Region of exponent space whose coefficients are unknown after truncation:
// nothing (exact), {I + J >= bound} (total), or {I >= bound} (x_only).
struct Precision {
    enum class Kind { exact, total, x_only };

    Kind kind = Kind::exact;
    long bound = 0;

    static Precision exact_poly() { return {}; }
    static Precision total_degree(long b) { return {Kind::total, b}; }

    bool is_exact() const noexcept { return kind == Kind::exact; }
    bool known(long i, long j) const noexcept;
    // Minimum of n*I + m*J over the unknown region.
    long min_unknown_weight(long n, long m) const noexcept;
    // True iff every unknown point satisfies n*I + m*J > w.
    bool above(long n, long m, long w) const noexcept;
    // Precision after the substitution x = t^n, y = t^m(c + y1) followed by
    // division by t^w; `shift` is added to the new x-exponents.
    Precision after(long n, long m, long w, long shift = 0) const noexcept;
};

// Vertices of the part of the lower-left convex hull running from the
// leftmost point (smallest I, then smallest J) to the bottom point
// (smallest J, then smallest I). Ordered by increasing I.
std::vector<Exponent> lower_hull(const std::vector<Exponent>& points);

// Slope data of the edge from `left` to `right`: gamma = m/n in lowest terms
// with n*I + m*J constant along the edge.
struct EdgeWeights {
    long n = 1;
    long m = 1;
    long weight = 0; // n*I + m*J on the edge
    mpq_class gamma() const { return mpq_class(m, n); }
};

EdgeWeights edge_weights(const Exponent& left, const Exponent& right);

// Accumulated Puiseux data of one branch under construction:
// x = t^q, y = sum_k phi[k] t^k + t^e * y_cur.
struct BranchState {
    long q = 1;
    long e = 0;
    std::map<int, Scalar> phi;

    BranchState refine(long n, long m, const Scalar& c) const;
    // Reduces q and the exponents of phi by their common factor.
    Series1 phi_series(int order, long& q_out) const;
};

// sum a_IJ t^(nI + mJ + shift) (c + y1)^J, the substitution x = t^n,
// y = t^m (c + y1) followed by multiplication with t^shift.
Poly2 edge_substitution(const Poly2& g, long n, long m, const Scalar& c, long shift);

// Drops the terms that fall into the unknown region of `prec`.
Poly2 known_part(const Poly2& g, const Precision& prec);

std::vector<Exponent> support(const Poly2& g);

} // namespace rpc::detail
