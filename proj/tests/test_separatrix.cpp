#include "doctest.h"

#include <algorithm>

#include "rpc/errors.hpp"
#include "support.hpp"

using namespace rpc;
using rpt::Gen;

namespace {

Series2 p(const std::string& s, int order = kDefaultOrder) { return parse_poly(s, order); }

std::vector<std::string> descriptions(const std::vector<PuiseuxBranch>& bs)
{
    std::vector<std::string> d;
    for (const auto& br : bs) {
        d.push_back(br.describe());
    }
    std::sort(d.begin(), d.end());
    return d;
}

PuiseuxBranch smooth(Orientation o, const Series1& phi)
{
    PuiseuxBranch br;
    br.orientation = o;
    br.phi = phi;
    br.p = phi.ord().value_or(1);
    return br;
}

// Coefficients of the compositional inverse of phi = c1 z + ..., c1 != 0.
rpt::Dense reversion(const rpt::Dense& phi, std::size_t len)
{
    rpt::Dense psi(len);
    psi[1] = Scalar(1) / phi[1];
    for (std::size_t n = 2; n < len; ++n) {
        rpt::Dense comp(len);
        rpt::Dense power(len);
        power[0] = Scalar(1);
        for (std::size_t k = 1; k < len; ++k) {
            power = rpt::dense_mul(power, phi, len);
            for (std::size_t e = 0; e < len; ++e) {
                comp[e] += psi[k] * power[e];
            }
        }
        // The z^n coefficient of psi(phi) depends on psi_n through psi_n c1^n.
        psi[n] = psi[n] - comp[n] / pow(phi[1], static_cast<unsigned>(n));
    }
    return psi;
}

Series1 from_dense(const rpt::Dense& d, int order)
{
    Series1 s(order);
    for (std::size_t k = 0; k < d.size() && static_cast<int>(k) <= order; ++k) {
        if (!d[k].is_zero()) {
            s.add_term(static_cast<int>(k), d[k]);
        }
    }
    return s;
}

} // namespace

TEST_CASE("separatrices of the bundled fields")
{
    const SeparatrixSet s1 = separatrices(rpt::e1(), 24);
    CHECK(descriptions(s1.branches) == std::vector<std::string>{"x = 0", "y = 0"});
    CHECK(s1.families.empty());
    CHECK(s1.unresolved.empty());
    CHECK(s1.includes_x_axis);
    CHECK(s1.includes_y_axis);

    // The second field has the axes plus the family y = x + C x^2 + ...
    const SeparatrixSet s2 = separatrices(rpt::e2(), 24);
    CHECK(descriptions(s2.branches) == std::vector<std::string>{"x = 0", "y = 0"});
    REQUIRE(s2.families.size() == 1);
    CHECK(s2.families[0].family_parameter == 2);
    CHECK(s2.families[0].phi.truncated(1) == Series1::monomial(1, Scalar(1)).truncated(1));
    CHECK(s2.families[0].describe() == "y = x + C*x^2 + ...");

    // Every direction is invariant for the third: one family, no isolated branch.
    const SeparatrixSet s3 = separatrices(rpt::e3(), 24);
    CHECK(s3.branches.empty());
    REQUIRE(s3.families.size() == 1);
    CHECK(s3.families[0].describe() == "y = C*x + ...");

    CHECK_THROWS_AS(separatrices(VectorField(), 10), DomainError);
    CHECK_THROWS_AS(separatrices(rpt::e1(), 0), DomainError);
}

TEST_CASE("separatrices off the axes and through cusps")
{
    // Rotating the second field by w = x + i y swaps the axes for y = +-i x.
    const SeparatrixSet rot = separatrices(rpt::field("x^2 - y^2, 2*x*y"), 16);
    CHECK(descriptions(rot.branches) == std::vector<std::string>{"y = -i*x", "y = i*x"});
    CHECK(rot.families.size() == 1);

    // y^2 = x^3 is invariant for 2xy d/dx + 3x^3 d/dy.
    const SeparatrixSet cusp = separatrices(rpt::field("2*x*y, 3*x^3"), 16);
    CHECK(descriptions(cusp.branches) == std::vector<std::string>{"x = 0", "x = z^2, y = z^3"});
    for (const auto& br : cusp.branches) {
        if (br.q == 2) {
            CHECK(br.p == 3);
            CHECK(br.leading_exponent() == mpq_class(3, 2));
        }
    }

    // Saddle directions y = +-x carry non-polynomial separatrices.
    const SeparatrixSet saddle = separatrices(rpt::field("y^2 + x^3, x*y"), 24);
    CHECK(saddle.unresolved.empty());
    CHECK(saddle.branches.size() == 3);
    for (const auto& br : saddle.branches) {
        if (!br.is_axis()) {
            CHECK(br.phi.order() == 24);
            CHECK(br.phi.coeff(2) == Scalar::fraction(br.phi.coeff(1) == Scalar(1) ? -1 : 1, 3));
        }
    }

    // Irrational directions are reported, not dropped.
    const SeparatrixSet irr = separatrices(rpt::field("y^2, x^2"), 12);
    CHECK(descriptions(irr.branches) == std::vector<std::string>{"y = x"});
    REQUIRE(irr.unresolved.size() == 1);
    CHECK(irr.unresolved[0].find("field extension") != std::string::npos);

    // y = C x + x^2 solves the equation for every C, including C = 0.
    const SeparatrixSet dic = separatrices(rpt::field("x^2, x*y + x^3"), 12);
    CHECK(dic.branches.empty());
    CHECK(dic.families.size() == 1);
}

TEST_CASE("invariance residual")
{
    const VectorField e2 = rpt::e2();
    CHECK(invariance_residual(e2, smooth(Orientation::y_of_x, Series1()), 20).is_zero());
    CHECK(invariance_residual(e2, smooth(Orientation::y_of_x, Series1::monomial(1, Scalar(1))), 20).is_zero());
    const Series1 r = invariance_residual(rpt::e1(), smooth(Orientation::y_of_x, Series1::monomial(1, Scalar(1))), 20);
    CHECK(r.truncated(20) == Series1::monomial(2, Scalar(1)).truncated(20));

    // The library residual is the oracle divided by q.
    Gen g(41);
    for (int k = 0; k < 40; ++k) {
        const VectorField x = g.field(2, 4);
        PuiseuxBranch br;
        br.q = g.uniform(1, 3);
        for (int e = br.q; e < br.q + 4; ++e) {
            if (g.coin(2)) {
                br.phi.add_term(e, g.rational());
            }
        }
        const Series1 lib = invariance_residual(x, br, 20);
        rpt::Dense want = rpt::invariance_oracle(x, br, 21);
        for (auto& c : want) {
            c = c / Scalar(br.q);
        }
        CHECK(rpt::dense(lib, 21) == want);
    }
}

TEST_CASE("isolated branches have zero residual and perturbations do not")
{
    for (const auto& [name, x] : rpt::corpus()) {
        CAPTURE(name);
        const SeparatrixSet s = separatrices(x, 24);
        for (const auto& br : s.branches) {
            CAPTURE(br.describe());
            CHECK(invariance_residual(x, br, 20).is_zero());
            CHECK(rpt::all_zero(rpt::invariance_oracle(x, br, 21)));
            PuiseuxBranch moved = br;
            moved.phi.add_term(br.p + 1, Scalar(1));
            CHECK_FALSE(invariance_residual(x, moved, 20).is_zero());
        }
    }

    Gen g(42);
    int checked = 0;
    for (int k = 0; k < 40; ++k) {
        const VectorField x = g.field(2, 3, kDefaultOrder, k % 5 == 0);
        const SeparatrixSet s = separatrices(x, 12);
        for (const auto& br : s.branches) {
            const std::size_t len = br.phi.exact() ? 21 : static_cast<std::size_t>(br.phi.order()) + 1;
            CHECK(rpt::all_zero(rpt::invariance_oracle(x, br, std::min<std::size_t>(len, 21))));
            ++checked;
        }
    }
    CHECK(checked > 40);
}

TEST_CASE("rectification")
{
    const VectorField e2 = rpt::e2();
    const VectorField r = rectify(e2, smooth(Orientation::y_of_x, Series1::monomial(1, Scalar(1))));
    CHECK(r.a().terms() == p("x^2").terms());
    CHECK(r.b().terms() == p("y^2 + 2*x*y").terms());
    CHECK(rectify(e2, smooth(Orientation::y_of_x, Series1())) == e2);
    CHECK(rectify(rpt::e1(), smooth(Orientation::y_of_x, Series1())) == rpt::e1());

    CHECK_THROWS_AS(rectify(rpt::e1(), smooth(Orientation::y_of_x, Series1::monomial(1, Scalar(1)))), DomainError);
    PuiseuxBranch ram = smooth(Orientation::y_of_x, Series1::monomial(3, Scalar(1)));
    ram.q = 2;
    CHECK_THROWS_AS(rectify(rpt::field("2*x*y, 3*x^3"), ram), DomainError);

    // {v = 0} is invariant after rectifying along any reported smooth branch.
    for (const auto& [name, x] : rpt::corpus()) {
        CAPTURE(name);
        for (const auto& br : separatrices(x, 12).branches) {
            if (br.q != 1) {
                continue;
            }
            const VectorField rx = rectify(x, br);
            for (const auto& [e, c] : rx.b().terms()) {
                CHECK(e.j >= 1);
            }
        }
    }
}

TEST_CASE("restricted exponent and petals")
{
    const PetalReport axis = restricted_exponent(rpt::e2(), smooth(Orientation::y_of_x, Series1()));
    CHECK(axis.h == 2);
    CHECK(axis.petal_count == 1);
    CHECK(axis.leading_coefficient == Scalar(1));
    CHECK(axis.petal_upper_bound == 2);

    const PetalReport e1y = restricted_exponent(rpt::e1(), smooth(Orientation::x_of_y, Series1()));
    CHECK(e1y.h == 2);
    CHECK(e1y.restricted == Series1::monomial(2, Scalar(1)));

    const PetalReport diag = restricted_exponent(rpt::e2(), smooth(Orientation::y_of_x, Series1::monomial(1, Scalar(1))));
    CHECK(diag.h == 2);
    CHECK(diag.petal_count == 1);

    // Cusp: z' = A(z^2, z^3) / (2z) = z^4.
    PuiseuxBranch cusp = smooth(Orientation::y_of_x, Series1::monomial(3, Scalar(1)));
    cusp.q = 2;
    const PetalReport c = restricted_exponent(rpt::field("2*x*y, 3*x^3"), cusp);
    CHECK(c.h == 4);
    CHECK(c.restricted == Series1::monomial(4, Scalar(1)));

    // x = 0 is a curve of zeros of 2xy d/dx + 3x^3 d/dy.
    CHECK_THROWS_AS(restricted_exponent(rpt::field("2*x*y, 3*x^3"), smooth(Orientation::x_of_y, Series1())),
                    DomainError);
}

TEST_CASE("restricted exponent does not depend on the orientation")
{
    // Along y = x both readings restrict to z' = z^2.
    const VectorField e2 = rpt::e2();
    CHECK(restricted_exponent(e2, smooth(Orientation::y_of_x, Series1::monomial(1, Scalar(1)))).h ==
          restricted_exponent(e2, smooth(Orientation::x_of_y, Series1::monomial(1, Scalar(1)))).h);

    // Branches tangent to y = +-x with infinitely many terms: invert them.
    int flipped_count = 0;
    for (const char* text : {"y^2 + x^3, x*y", "x*y, x^2 + y^3"}) {
        CAPTURE(text);
        const VectorField x = rpt::field(text, 20);
        for (const auto& br : separatrices(x, 18).branches) {
            if (br.is_axis() || br.q != 1) {
                continue;
            }
            const int len = std::min(br.phi.order(), 18) + 1;
            const rpt::Dense inv = reversion(rpt::dense(br.phi, len), len);
            const Orientation other =
                br.orientation == Orientation::y_of_x ? Orientation::x_of_y : Orientation::y_of_x;
            const PuiseuxBranch flipped = smooth(other, from_dense(inv, len - 1));
            CHECK(invariance_residual(x, flipped, len - 2).is_zero());
            const PetalReport a = restricted_exponent(x, br);
            const PetalReport b = restricted_exponent(x, flipped);
            CHECK(a.h == b.h);
            CHECK(a.petal_count == b.petal_count);
            ++flipped_count;
        }
    }
    CHECK(flipped_count == 4);
}

TEST_CASE("exponent candidates and ramification bounds")
{
    const ExponentCandidates c1 = exponent_candidates(2, 1, 1);
    CHECK(c1.values == std::set<int>{1, 2, 3});
    CHECK(c1.max == 3);
    const ExponentCandidates c2 = exponent_candidates(2, 3, 2);
    CHECK(c2.values == std::set<int>{5});
    CHECK(c2.max == 5);
    CHECK_THROWS_AS(exponent_candidates(1, 1, 1), DomainError);
    CHECK_THROWS_AS(exponent_candidates(2, 2, 4), DomainError);
    CHECK_THROWS_AS(exponent_candidates(2, 1, 2), DomainError);

    // The enumerated maximum can exceed nu1 * p: (i, j) = (nu1, 0) gives nu1 + 1 at p = q = 1.
    for (int nu1 = 2; nu1 <= 6; ++nu1) {
        CHECK(exponent_candidates(nu1, 1, 1).max == nu1 + 1);
    }

    auto check = [](int nu1, int nu2, mpq_class k, int pm, int qm) {
        const PqBounds b = pq_bounds(nu1, nu2);
        CHECK(b.k_max == k);
        CHECK(b.p_max == pm);
        CHECK(b.q_max == qm);
    };
    check(2, 2, 1, 1, 1);
    check(2, 3, 2, 2, 1);
    check(3, 5, 2, 4, 2);
    CHECK_THROWS_AS(pq_bounds(1, 3), DomainError);

    // The cusp of 2xy d/dx + 3x^3 d/dy (nu1 = 2, nu2 = 3) has q = 2 > q_max
    // and h = 4 outside the candidate set {5}.
    PuiseuxBranch cusp = smooth(Orientation::y_of_x, Series1::monomial(3, Scalar(1)));
    cusp.q = 2;
    cusp.p = 3;
    CHECK_FALSE(within_pq_bounds(cusp, pq_bounds(2, 3)));
    CHECK(exponent_candidates(2, 3, 2).values.count(restricted_exponent(rpt::field("2*x*y, 3*x^3"), cusp).h) == 0);
    CHECK(within_pq_bounds(smooth(Orientation::y_of_x, Series1()), pq_bounds(2, 2)));
}
