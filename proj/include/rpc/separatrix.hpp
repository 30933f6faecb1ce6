#pragma once

#include <set>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "rpc/intersection.hpp"
#include "rpc/vector_field.hpp"

namespace rpc {

struct SeparatrixSet {
    // Isolated invariant branches.
    std::vector<PuiseuxBranch> branches;
    // One-parameter families: phi is the stem known below the free
    // coefficient, whose z-exponent is family_parameter.
    std::vector<PuiseuxBranch> families;
    bool includes_x_axis = false; // {x = 0} invariant, i.e. x | A
    bool includes_y_axis = false; // {y = 0} invariant, i.e. y | B
    std::vector<std::string> unresolved;
};

// Invariant branches of X through the origin, from the Newton polygon of
// B dx - A dy in both orientations. Each branch is expanded to z-order
// `depth` when the truncation allows it.
SeparatrixSet separatrices(const VectorField& x, int depth);

// (q z^(q-1) B(z^q, phi) - phi'(z) A(z^q, phi)) / q, with A and B read in the
// branch orientation. Truncated at `order`; a smaller order() on the result
// means the data do not certify more.
Series1 invariance_residual(const VectorField& x, const PuiseuxBranch& br, int order);

// The field in coordinates u = t, v = s - phi(t), where (t, s) is (x, y) for
// y_of_x branches and (y, x) for x_of_y ones. {v = 0} is then invariant.
VectorField rectify(const VectorField& x, const PuiseuxBranch& br);

struct PetalReport {
    PuiseuxBranch branch;
    Series1 restricted;      // z' = A(z^q, phi) / (q z^(q-1))
    int h = 0;               // ord of the restricted series
    int petal_count = 0;     // h - 1
    Scalar leading_coefficient;
    int petal_upper_bound = 0; // max(nu1, nu2) * p
};

PetalReport restricted_exponent(const VectorField& x, const PuiseuxBranch& br);

struct ExponentCandidates {
    std::set<int> values; // q*i + p*j + 1 - j over i + j = nu1
    int max = 0;
};

ExponentCandidates exponent_candidates(int nu1, int p, int q);

struct PqBounds {
    mpq_class k_max; // (nu2 - 1) / (nu1 - 1)
    int p_max = 0;   // nu2 - 1
    int q_max = 0;   // nu1 - 1
};

PqBounds pq_bounds(int nu1, int nu2);

// Whether br satisfies p <= p_max, q <= q_max and p/q <= k_max.
bool within_pq_bounds(const PuiseuxBranch& br, const PqBounds& bounds);

// The field read in the coordinates of the orientation (swapped for x_of_y).
VectorField oriented(const VectorField& x, Orientation o);

} // namespace rpc
