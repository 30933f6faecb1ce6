#include "doctest.h"

#include "json.hpp"

#include "rpc/commands.hpp"
#include "rpc/errors.hpp"
#include "rpc/report.hpp"
#include "support.hpp"

using namespace rpc;
using nlohmann::json;
using rpt::Gen;

namespace {

Series2 p(const std::string& s, int order = kDefaultOrder) { return parse_poly(s, order); }

InputSpec field_spec(const std::string& text, int order = kDefaultOrder)
{
    InputSpec s;
    s.text = text;
    s.order = order;
    return s;
}

InputSpec map_spec(const std::string& text, int order = kDefaultOrder)
{
    InputSpec s = field_spec(text, order);
    s.kind = InputKind::map;
    return s;
}

json run_json(const std::string& cmd, const InputSpec& s)
{
    const CommandResult r = run_command(cmd, s, true);
    REQUIRE_MESSAGE(r.exit_code == kExitOk, r.err);
    return json::parse(r.out);
}

bool has_warning(const Report& r, const std::string& needle)
{
    for (const auto& w : r.warnings) {
        if (w.find(needle) != std::string::npos) {
            return true;
        }
    }
    return false;
}

} // namespace

TEST_CASE("parsing polynomials")
{
    Series2 a(kDefaultOrder);
    a.add_term(2, 0, Scalar(1));
    a.add_term(1, 1, Scalar(1));
    CHECK(p("x^2 + x*y") == a);

    Series2 b(kDefaultOrder);
    b.add_term(0, 3, Scalar::fraction(1, 2));
    b.add_term(1, 0, -Scalar::i());
    CHECK(p("1/2*y^3 - i*x") == b);

    CHECK(p("(x + y)^2") == p("x^2 + 2*x*y + y^2"));
    CHECK(p("-(x - 2*y)") == p("2*y - x"));
    CHECK(p("u^2 + u*v") == a);
    CHECK(p("x^14", 12).is_zero());
    CHECK_FALSE(p("x^14", 12).exact());
    CHECK(p("(1 + i)*(1 - i)") == p("2"));
    CHECK(p("x/2 + x/2") == p("x"));

    auto fails_at = [](const std::string& text, std::size_t pos) {
        try {
            parse_poly(text);
            FAIL("accepted " << text);
        } catch (const ParseError& e) {
            CHECK(e.position() == pos);
        }
    };
    fails_at("x^-1", 2);
    fails_at("2x", 1);
    fails_at("x*z", 2);
    fails_at("x + u", 4);
    fails_at("(x", 2);
    fails_at("x/y", 1);
    fails_at("x^2^3", 3);
    fails_at("", 0);
    CHECK_THROWS_WITH_AS(parse_poly("x^-1"), doctest::Contains("negative exponent"), ParseError);

    CHECK(parse_field("x^2, x*y + y^2") == rpt::e1());
    CHECK_THROWS_AS(parse_field("x^2"), ParseError);
    CHECK_THROWS_AS(parse_field("x^2, y^2, x"), ParseError);
    CHECK(parse_map("x + y^2, y").f1() == p("x + y^2"));
    CHECK_THROWS_AS(parse_map("2*x, y"), DomainError);
    CHECK_THROWS_AS(parse_map("x + y, y"), DomainError);
}

TEST_CASE("printing and parsing round trip")
{
    Gen g(61);
    for (int k = 0; k < 500; ++k) {
        const Series2 s = g.poly(0, 6, kDefaultOrder, 6, k % 2 == 0);
        const bool uv = k % 5 == 0;
        const std::string text = uv ? s.to_string('u', 'v') : s.to_string();
        CAPTURE(text);
        const Series2 back = parse_poly(text);
        CHECK(back == s);
        CHECK((uv ? back.to_string('u', 'v') : back.to_string()) == text);
    }
}

TEST_CASE("RP-curve bound")
{
    const TheoremBound e1 = theorem_bound(exp_flow(rpt::e1()));
    REQUIRE(e1.mu);
    CHECK(*e1.mu == Multiplicity::finite(4));
    CHECK(e1.eta == 2);
    CHECK(e1.bound == 10);
    CHECK_FALSE(e1.dicritical);

    CHECK(rp_curve_bound(1, 2) == 4);
    CHECK(rp_curve_bound(4, 2) == 10);
    CHECK(rp_curve_bound(9, 3) == 60);
    CHECK_THROWS_AS(rp_curve_bound(1, 1), DomainError);

    const TheoremBound e3 = theorem_bound(exp_flow(rpt::e3()));
    CHECK(e3.dicritical);
    CHECK_FALSE(e3.bound);
    CHECK(e3.diagnosis == "dicritical: infinitely many RP curves");

    // A line of fixed points: mu is infinite and no bound exists.
    CHECK_THROWS_WITH_AS(theorem_bound(TangentMap(p("x + x^2"), p("y + x*y^2"))),
                         doctest::Contains("non-isolated fixed curve"), DomainError);
    // The field's components share x, and on the map side the Fulton count
    // keeps running into the truncation order instead of certifying that.
    CHECK_THROWS_AS(theorem_bound(exp_flow(rpt::field("2*x*y, 3*x^3"))), UncertifiedError);
    CHECK_THROWS_AS(theorem_bound(exp_flow(rpt::field("2*x*y, 3*x^3", 16))), UncertifiedError);
}

TEST_CASE("reports")
{
    const Report r1 = rp_report(rpt::e1(), 10, "x^2, x*y + y^2");
    CHECK(r1.orders.nu1 == 2);
    CHECK(r1.orders.nu2 == 2);
    CHECK(r1.orders.eta == 2);
    CHECK(r1.mu_field == Multiplicity::finite(4));
    CHECK(r1.mu_map == Multiplicity::finite(4));
    CHECK_FALSE(r1.dicritical_field);
    CHECK(r1.dicritical_equivalent());
    CHECK(r1.separatrices.branches.size() == 2);
    REQUIRE(r1.petals.size() == 2);
    for (const auto& bp : r1.petals) {
        CHECK(bp.petals.h == 2);
        CHECK(bp.petals.petal_count == 1);
        CHECK(bp.within_candidates);
        CHECK(bp.within_pq_bounds);
    }
    CHECK(r1.rp_lower_count == 2);
    REQUIRE(r1.bound);
    CHECK(r1.bound->bound == 10);
    CHECK(r1.consistent());
    CHECK(r1.warnings.empty());

    // The same numbers from the map side.
    const Report m1 = rp_report(exp_flow(rpt::e1()));
    CHECK(m1.kind == "map");
    CHECK(m1.rp_lower_count == 2);
    CHECK(m1.bound->bound == 10);
    CHECK(m1.field == rpt::e1());

    const Report r2 = rp_report(rpt::e2());
    CHECK(has_warning(r2, "hypothesis check: separatrix family present"));
    CHECK(r2.separatrices.families.size() == 1);
    CHECK(r2.bound->bound == 10);

    const Report r3 = rp_report(rpt::e3());
    CHECK(r3.dicritical_field);
    CHECK(r3.dicritical_map);
    CHECK_FALSE(r3.rp_lower_count);
    CHECK(r3.bound->diagnosis == "dicritical: infinitely many RP curves");
    CHECK(r3.consistent());

    const Report irr = rp_report(rpt::field("y^2, x^2"));
    CHECK(has_warning(irr, "unresolved branch"));

    const Report cusp = rp_report(rpt::field("2*x*y, 3*x^3"));
    CHECK(has_warning(cusp, "uncertified multiplicity"));
    CHECK(has_warning(cusp, "exceeds the ramification bounds"));
    CHECK(has_warning(cusp, "curve of singular points"));

    CHECK_THROWS_WITH_AS(rp_report(VectorField()), doctest::Contains("not a singular field of order >= 2"),
                         DomainError);
    CHECK_THROWS_WITH_AS(rp_report(rpt::field("x, y^2")), doctest::Contains("not a singular field of order >= 2"),
                         DomainError);

    // Lower count never exceeds the bound on the corpus.
    for (const auto& [name, x] : rpt::corpus()) {
        CAPTURE(name);
        CHECK(rp_report(x, 12, name).consistent());
    }
}

TEST_CASE("report JSON")
{
    const json j = to_json(rp_report(rpt::e1(), 10, "x^2, x*y + y^2"));
    CHECK(j["input"]["kind"] == "field");
    CHECK(j["input"]["truncation"] == 12);
    CHECK(j["milnor"]["field"] == 4);
    CHECK(j["theorem_bound"]["bound"] == 10);
    CHECK(j["rp_lower_count"] == 2);
    CHECK(j["consistent"] == true);
    CHECK(j["separatrices"]["isolated"].size() == 2);
    CHECK(j["petals"][0]["h"] == 2);
    CHECK(to_json(Multiplicity::infinity()) == "infinite");
    CHECK(j.dump() == to_json(rp_report(rpt::e1(), 10, "x^2, x*y + y^2")).dump());

    const json j3 = to_json(rp_report(rpt::e3()));
    CHECK(j3["rp_lower_count"].is_null());
    CHECK(j3["theorem_bound"]["diagnosis"] == "dicritical: infinitely many RP curves");
}

TEST_CASE("commands")
{
    const json e = run_json("exp", field_spec("x^2, y^2", 6));
    CHECK(e["map"]["f1"] == "x + x^2 + x^3 + x^4 + x^5 + x^6");
    CHECK(e["map"]["f2"] == "y + y^2 + y^3 + y^4 + y^5 + y^6");
    CHECK(e["truncation"] == 6);

    const json b = run_json("bound", field_spec("x^2, x*y + y^2"));
    CHECK(b["mu"] == 4);
    CHECK(b["eta"] == 2);
    CHECK(b["bound"] == 10);

    const json d = run_json("dicritical", field_spec("x^2, x*y"));
    CHECK(d["field"] == true);
    CHECK(d["map"] == true);

    const json l = run_json("log", map_spec("x + y^2, y"));
    CHECK(l["field"]["a"] == "y^2");

    const json pb = run_json("pullback", field_spec("x^2, y^2"));
    CHECK(pb["pullback"]["b"] == "-u*v + u*v^2");
    CHECK(pb["saturated"]["a"] == "u");
    CHECK(pb["multiplicity"] == 1);

    const json v = run_json("verify", field_spec("x^2, x*y + y^2"));
    CHECK(v["all_passed"] == true);
    const json vm = run_json("verify", map_spec("x + y^2, y + x^2"));
    CHECK(vm["all_passed"] == true);

    for (const auto& cmd : command_names()) {
        CAPTURE(cmd);
        const InputSpec s = cmd == "log" ? map_spec("x + x^2, y + y^2") : field_spec("x^2, x*y + y^2");
        const CommandResult a = run_command(cmd, s, true);
        const CommandResult again = run_command(cmd, s, true);
        CHECK(a.exit_code == kExitOk);
        CHECK(a.out == again.out);
        CHECK(run_command(cmd, s, false).exit_code == kExitOk);
    }
}

TEST_CASE("exit codes")
{
    CHECK(run_command("exp", field_spec("x^-1, y^2"), false).exit_code == kExitParse);
    CHECK(run_command("nonsense", field_spec("x^2, y^2"), false).exit_code == kExitParse);
    const CommandResult order1 = run_command("exp", field_spec("u, v^2 - v"), false);
    CHECK(order1.exit_code == kExitDomain);
    CHECK(order1.err.find("not tangent to the identity") != std::string::npos);
    CHECK(run_command("log", field_spec("x^2, y^2"), false).exit_code == kExitDomain);
    CHECK(run_command("report", field_spec("0, 0"), false).exit_code == kExitDomain);
    // y^13 is cut at N = 12, leaving i(x*y + O(13), x^3) undecided.
    CHECK(run_command("milnor", map_spec("x + x*y + y^13, y + x^3"), false).exit_code == kExitUncertified);
    CHECK(run_json("milnor", map_spec("x + x*y + y^13, y + x^3", 16))["milnor"] == 39);
    CHECK(run_command("bound", field_spec("2*x*y, 3*x^3"), false).exit_code == kExitUncertified);
    CHECK(run_command("bound", field_spec("x^2, x*y"), false).exit_code == kExitOk);
}

TEST_CASE("input files")
{
    const InputSpec s = read_input_file("# example\n\nfield x^2, x*y + y^2  # first bundled field\n");
    CHECK(s.kind == InputKind::field);
    CHECK(s.text == "x^2, x*y + y^2");
    const InputSpec m = read_input_file("map x + y^2, y\n");
    CHECK(m.kind == InputKind::map);
    CHECK(m.text == "x + y^2, y");
    CHECK_THROWS_AS(read_input_file("# nothing\n"), ParseError);
    CHECK_THROWS_AS(read_input_file("field x^2, y^2\nmap x, y\n"), ParseError);
    CHECK_THROWS_AS(read_input_file("vector x^2, y^2\n"), ParseError);
}
