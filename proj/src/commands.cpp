#include "rpc/commands.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "rpc/errors.hpp"
#include "rpc/parser.hpp"

namespace rpc {

namespace {

using nlohmann::json;

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) {
        return "";
    }
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

VectorField field_of(const InputSpec& s)
{
    if (s.kind == InputKind::field) {
        return parse_field(s.text, s.order);
    }
    return log_map(parse_map(s.text, s.order));
}

TangentMap map_of(const InputSpec& s)
{
    if (s.kind == InputKind::map) {
        return parse_map(s.text, s.order);
    }
    return exp_flow(parse_field(s.text, s.order));
}

json field_json(const VectorField& x, char vx = 'x', char vy = 'y')
{
    return {{"a", x.a().to_string(vx, vy)}, {"b", x.b().to_string(vx, vy)}};
}

json map_json(const Series2& f1, const Series2& f2, char vx = 'x', char vy = 'y')
{
    return {{"f1", f1.to_string(vx, vy)}, {"f2", f2.to_string(vx, vy)}};
}

char chart_x(Chart) { return 'u'; }
char chart_y(Chart) { return 'v'; }

struct Outcome {
    Outcome(json b, int code = kExitOk, std::string t = {}) : body(std::move(b)), exit_code(code), text(std::move(t)) {}

    json body;
    int exit_code;
    std::string text; // preferred text rendering, if any
};

Outcome cmd_exp(const InputSpec& s)
{
    if (s.kind != InputKind::field) {
        throw DomainError("rp_cli/exp", "exp takes a field (--field)");
    }
    const TangentMap f = exp_flow(parse_field(s.text, s.order));
    return {{{"map", map_json(f.f1(), f.f2())}}};
}

Outcome cmd_log(const InputSpec& s)
{
    if (s.kind != InputKind::map) {
        throw DomainError("rp_cli/log", "log takes a map (--map)");
    }
    return {{{"field", field_json(log_map(parse_map(s.text, s.order)))}}};
}

Outcome cmd_orders(const InputSpec& s)
{
    const MapOrders o = orders(map_of(s));
    auto opt = [](const std::optional<int>& v) { return v ? json(*v) : json(nullptr); };
    return {{{"nu1", opt(o.nu1)}, {"nu2", opt(o.nu2)}, {"nu", o.nu}, {"eta", opt(o.eta)}}};
}

Outcome cmd_milnor(const InputSpec& s)
{
    const Multiplicity m =
        s.kind == InputKind::field ? milnor_number(parse_field(s.text, s.order)) : milnor_of_map(parse_map(s.text, s.order));
    Outcome out{{{"milnor", to_json(m)}, {"certified", m.certified}}};
    if (!m.certified) {
        out.exit_code = kExitUncertified;
    }
    return out;
}

Outcome cmd_separatrices(const InputSpec& s)
{
    return {{{"separatrices", to_json(separatrices(field_of(s), s.depth))}}};
}

Outcome cmd_petals(const InputSpec& s)
{
    const VectorField x = field_of(s);
    const SeparatrixSet seps = separatrices(x, s.depth);
    json petals = json::array();
    json skipped = json::array();
    for (const auto& br : seps.branches) {
        try {
            petals.push_back(to_json(restricted_exponent(x, br)));
        } catch (const Error& e) {
            skipped.push_back({{"branch", br.describe()}, {"reason", e.what()}});
        }
    }
    return {{{"petals", petals}, {"skipped", skipped}}};
}

Outcome cmd_blowup(const InputSpec& s)
{
    const PlaneMap g = blowup_map(map_of(s), s.chart);
    return {{{"chart", to_string(s.chart)}, {"map", map_json(g.f1, g.f2, chart_x(s.chart), chart_y(s.chart))}}};
}

Outcome cmd_pullback(const InputSpec& s)
{
    const VectorField p = pullback_field(field_of(s), s.chart);
    const Saturation sat = saturate(p, s.chart);
    const char u = chart_x(s.chart);
    const char v = chart_y(s.chart);
    return {{{"chart", to_string(s.chart)},
             {"pullback", field_json(p, u, v)},
             {"saturated", field_json(sat.field, u, v)},
             {"multiplicity", sat.multiplicity}}};
}

Outcome cmd_dicritical(const InputSpec& s)
{
    const bool field = dicritical_field(field_of(s));
    const bool map = dicritical_map(map_of(s));
    return {{{"field", field}, {"map", map}, {"equivalent", field == map}}};
}

Outcome cmd_bound(const InputSpec& s)
{
    return {to_json(theorem_bound(map_of(s)))};
}

Outcome cmd_report(const InputSpec& s)
{
    const Report rep = s.kind == InputKind::field ? rp_report(parse_field(s.text, s.order), s.depth, s.text)
                                                  : rp_report(parse_map(s.text, s.order), s.depth, s.text);
    return {to_json(rep), kExitOk, to_text(rep)};
}

Outcome cmd_verify(const InputSpec& s)
{
    const VectorField x = field_of(s);
    const TangentMap f = map_of(s);
    json checks;
    checks["exp_pullback_u1"] = exp_pullback_check(x, Chart::u1);
    checks["exp_pullback_u2"] = exp_pullback_check(x, Chart::u2);
    checks["dicritical_equivalence"] = dicritical_field(x) == dicritical_map(f);
    try {
        checks["milnor_equivalence"] = milnor_number(x) == milnor_of_map(f);
    } catch (const UncertifiedError&) {
        checks["milnor_equivalence"] = nullptr;
    }
    if (s.kind == InputKind::field) {
        checks["exp_log_round_trip"] = log_map(f) == x;
    } else {
        checks["exp_log_round_trip"] = exp_flow(x) == f;
    }
    bool ok = true;
    for (const auto& [k, v] : checks.items()) {
        ok = ok && (v.is_null() || v.get<bool>());
    }
    return {{{"checks", checks}, {"all_passed", ok}}, ok ? kExitOk : kExitFailed, ""};
}

using Handler = std::function<Outcome(const InputSpec&)>;

const std::map<std::string, Handler>& handlers()
{
    static const std::map<std::string, Handler> h = {
        {"exp", cmd_exp},         {"log", cmd_log},
        {"orders", cmd_orders},   {"milnor", cmd_milnor},
        {"separatrices", cmd_separatrices}, {"petals", cmd_petals},
        {"blowup", cmd_blowup},   {"pullback", cmd_pullback},
        {"dicritical", cmd_dicritical},     {"bound", cmd_bound},
        {"report", cmd_report},   {"verify", cmd_verify},
    };
    return h;
}

void render_text(std::ostream& os, const json& j, int indent)
{
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    for (const auto& [k, v] : j.items()) {
        if (v.is_object()) {
            os << pad << k << ":\n";
            render_text(os, v, indent + 2);
        } else if (v.is_array() && !v.empty() && v.front().is_object()) {
            os << pad << k << ":\n";
            for (const auto& item : v) {
                os << pad << "  -\n";
                render_text(os, item, indent + 4);
            }
        } else if (v.is_string()) {
            os << pad << k << ": " << v.get<std::string>() << "\n";
        } else if (v.is_null()) {
            os << pad << k << ": none\n";
        } else {
            os << pad << k << ": " << v.dump() << "\n";
        }
    }
}

} // namespace

const std::vector<std::string>& command_names()
{
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const auto& [k, _] : handlers()) {
            n.push_back(k);
        }
        return n;
    }();
    return names;
}

InputSpec read_input_file(const std::string& contents)
{
    std::istringstream in(contents);
    std::string line;
    std::optional<InputSpec> spec;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line.substr(0, line.find('#')));
        if (line.empty()) {
            continue;
        }
        if (spec) {
            throw ParseError("input file holds more than one spec (line " + std::to_string(lineno) + ")", 0);
        }
        const auto sp = line.find_first_of(" \t");
        const std::string kind = line.substr(0, sp);
        InputSpec s;
        if (kind == "field") {
            s.kind = InputKind::field;
        } else if (kind == "map") {
            s.kind = InputKind::map;
        } else {
            throw ParseError("line " + std::to_string(lineno) + " must start with 'field' or 'map'", 0);
        }
        s.text = sp == std::string::npos ? "" : trim(line.substr(sp));
        spec = s;
    }
    if (!spec) {
        throw ParseError("input file holds no spec", 0);
    }
    return *spec;
}

CommandResult run_command(const std::string& cmd, const InputSpec& spec, bool json_format)
{
    CommandResult r;
    const auto it = handlers().find(cmd);
    if (it == handlers().end()) {
        r.exit_code = kExitParse;
        r.err = "error: unknown command '" + cmd + "'\n";
        return r;
    }
    try {
        Outcome o = it->second(spec);
        std::ostringstream os;
        if (json_format) {
            json j = std::move(o.body);
            j["command"] = cmd;
            j["truncation"] = spec.order;
            os << j.dump(2) << "\n";
        } else if (!o.text.empty()) {
            os << o.text;
        } else {
            os << "command: " << cmd << "\ntruncation: " << spec.order << "\n";
            render_text(os, o.body, 0);
        }
        r.out = os.str();
        r.exit_code = o.exit_code;
    } catch (const ParseError& e) {
        r.exit_code = kExitParse;
        r.err = std::string("error: ") + e.what() + "\n";
    } catch (const UncertifiedError& e) {
        r.exit_code = kExitUncertified;
        r.err = std::string("error: ") + e.what() + "\n";
    } catch (const DomainError& e) {
        r.exit_code = kExitDomain;
        r.err = std::string("error: ") + e.what() + "\n";
    } catch (const std::exception& e) {
        r.exit_code = kExitFailed;
        r.err = std::string("error: ") + e.what() + "\n";
    }
    return r;
}

} // namespace rpc
