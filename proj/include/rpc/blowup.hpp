#pragma once

#include <optional>
#include <string>

#include "rpc/series.hpp"
#include "rpc/vector_field.hpp"

namespace rpc {

// U1: pi(u, v) = (u, uv), divisor {u = 0}.  U2: pi(u, v) = (uv, v), divisor {v = 0}.
enum class Chart { u1, u2 };

std::string to_string(Chart c);

struct BlowupChart {
    Chart chart = Chart::u1;

    // Local equation of the exceptional divisor.
    Series2 exceptional_divisor(int order = kDefaultOrder) const;
};

// pi^-1 o f o pi in the chart. Dividing by the divisor costs one degree, so
// the result is truncated at N - 1.
PlaneMap blowup_map(const TangentMap& f, Chart chart);

// Pull-back of X by pi, without saturation. In U1:
// u' = A(u, uv), v' = (B(u, uv) - v A(u, uv)) / u, truncated at N - 1.
VectorField pullback_field(const VectorField& x, Chart chart);

struct Saturation {
    VectorField field;
    int multiplicity = 0;
};

// Divides by the largest power of the divisor (u or v) dividing both components.
Saturation saturate(const VectorField& x, const Series2& divisor);
Saturation saturate(const VectorField& x, Chart chart);

// blowup_map(exp_flow(X)) == exp_series(pullback_field(X)) to order N - 1.
bool exp_pullback_check(const VectorField& x, Chart chart);

struct TangentialityResult {
    int T = 0;                  // min over components of ord_l(g_k - id_k)
    bool tangential = false;
    Series1 witness;            // (l o g - l) / l^T restricted to {l = 0}
    std::optional<int> alpha;   // ord_l of the divisor component of g - id
    std::optional<int> beta;    // ord_l of the other component
};

// g is a map in chart coordinates fixing the divisor of `chart` pointwise.
TangentialityResult tangentiality(const PlaneMap& g, Chart chart);

// tangent_cone(X) == 0.
bool dicritical_field(const VectorField& x);

// Whether {divisor} is invariant for the saturated pull-back in the chart.
bool divisor_invariant(const VectorField& x, Chart chart);

// The blown-up map is non-tangential on the divisor in some chart.
bool dicritical_map(const TangentMap& f);

} // namespace rpc
