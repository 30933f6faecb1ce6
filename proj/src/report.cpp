#include "rpc/report.hpp"

#include <sstream>

#include "rpc/errors.hpp"

namespace rpc {

namespace {

using nlohmann::json;

const char* const kFamilyWarning = "hypothesis check: separatrix family present";
const char* const kDicriticalDiagnosis = "dicritical: infinitely many RP curves";
const char* const kNonIsolatedDiagnosis = "non-isolated fixed curve: no finite bound";

} // namespace

long rp_curve_bound(long mu, long eta)
{
    if (mu < 0 || eta < 2) {
        throw DomainError("report/theorem_bound", "the bound needs mu >= 0 and eta >= 2");
    }
    return (mu + 1) * (eta * eta - eta);
}

namespace {

// Without throwing on infinite mu when `strict` is false.
TheoremBound compute_bound(const TangentMap& f, bool strict)
{
    const char* stage = "report/theorem_bound";
    TheoremBound tb;
    if (dicritical_map(f)) {
        tb.dicritical = true;
        tb.diagnosis = kDicriticalDiagnosis;
        return tb;
    }
    const Multiplicity mu = milnor_of_map(f);
    tb.mu = mu;
    const MapOrders o = orders(f);
    if (mu.infinite) {
        if (!mu.certified) {
            throw UncertifiedError(stage, "mu(f) exceeds the truncation order; raise --order");
        }
        if (strict) {
            throw DomainError(stage, kNonIsolatedDiagnosis);
        }
        tb.eta = o.eta.value_or(0);
        tb.diagnosis = kNonIsolatedDiagnosis;
        return tb;
    }
    if (!o.eta) {
        throw UncertifiedError(stage, "a component of f - Id vanishes to the truncation order, so eta is unknown");
    }
    tb.eta = *o.eta;
    tb.bound = rp_curve_bound(mu.value, tb.eta);
    return tb;
}

void require_order_two(const VectorField& x)
{
    const auto ord = x.order();
    if (!ord || *ord < 2) {
        throw DomainError("report/rp_report", "not a singular field of order >= 2");
    }
}

std::optional<Multiplicity> guarded(Multiplicity (*fn)(const TangentMap&), const TangentMap& f,
                                    std::vector<std::string>& warnings, const char* what)
{
    try {
        return fn(f);
    } catch (const UncertifiedError& e) {
        warnings.push_back(std::string("uncertified multiplicity (") + what + "): " + e.what());
        return std::nullopt;
    }
}

std::optional<Multiplicity> guarded_field(const VectorField& x, std::vector<std::string>& warnings)
{
    try {
        return milnor_number(x);
    } catch (const UncertifiedError& e) {
        warnings.push_back(std::string("uncertified multiplicity (field): ") + e.what());
        return std::nullopt;
    }
}

void note_multiplicity(const std::optional<Multiplicity>& m, const char* what, std::vector<std::string>& warnings)
{
    if (m && !m->certified) {
        warnings.push_back(std::string("uncertified multiplicity (") + what + "): " + m->to_string());
    }
}

BranchPetals petals_for(const VectorField& x, const PuiseuxBranch& br)
{
    BranchPetals bp{restricted_exponent(x, br), std::nullopt, false, false};
    const VectorField o = oriented(x, br.orientation);
    const auto nu1 = o.a().ord();
    const auto nu2 = o.b().ord();
    if (nu1) {
        try {
            bp.candidates = exponent_candidates(*nu1, br.p, br.q);
            bp.within_candidates = bp.candidates->values.count(bp.petals.h) > 0;
        } catch (const DomainError&) {
            bp.candidates.reset();
        }
    }
    if (nu1 && nu2 && *nu1 >= 2 && *nu2 >= 2) {
        bp.within_pq_bounds = within_pq_bounds(br, pq_bounds(*nu1, *nu2));
    }
    return bp;
}

void analyse(Report& r)
{
    r.orders = orders(r.map);
    r.mu_field = guarded_field(r.field, r.warnings);
    r.mu_map = guarded(&milnor_of_map, r.map, r.warnings, "map");
    note_multiplicity(r.mu_field, "field", r.warnings);
    note_multiplicity(r.mu_map, "map", r.warnings);

    r.dicritical_field = dicritical_field(r.field);
    r.dicritical_map = dicritical_map(r.map);
    if (!r.dicritical_equivalent()) {
        r.warnings.push_back("dicritical verdicts of the field and the map disagree");
    }

    r.separatrices = separatrices(r.field, r.depth);
    for (const auto& u : r.separatrices.unresolved) {
        r.warnings.push_back("unresolved branch: " + u);
    }
    if (!r.separatrices.families.empty()) {
        r.warnings.push_back(kFamilyWarning);
    }
    for (const auto& br : r.separatrices.branches) {
        try {
            r.petals.push_back(petals_for(r.field, br));
        } catch (const Error& e) {
            r.warnings.push_back("branch " + br.describe() + ": " + e.what());
            continue;
        }
        const BranchPetals& bp = r.petals.back();
        if (!bp.within_pq_bounds) {
            r.warnings.push_back("bounds check: branch " + br.describe() + " exceeds the ramification bounds");
        }
        if (bp.candidates && !bp.within_candidates) {
            r.warnings.push_back("bounds check: h of branch " + br.describe() + " is not an exponent candidate");
        }
    }
    if (!r.dicritical_field) {
        r.rp_lower_count = static_cast<int>(r.separatrices.branches.size());
    }

    try {
        r.bound = compute_bound(r.map, false);
    } catch (const UncertifiedError& e) {
        r.warnings.push_back(std::string("no certified bound: ") + e.what());
    }
}

json rational_json(const mpq_class& q)
{
    return q.get_str();
}

} // namespace

TheoremBound theorem_bound(const TangentMap& f)
{
    return compute_bound(f, true);
}

bool Report::consistent() const
{
    if (!rp_lower_count || !bound || !bound->bound) {
        return true;
    }
    return *rp_lower_count <= *bound->bound;
}

Report rp_report(const VectorField& x, int depth, const std::string& input)
{
    require_order_two(x);
    Report r;
    r.kind = "field";
    r.input = input;
    r.truncation = x.truncation();
    r.depth = depth;
    r.field = x;
    r.map = exp_flow(x);
    analyse(r);
    return r;
}

Report rp_report(const TangentMap& f, int depth, const std::string& input)
{
    if (f.is_identity()) {
        throw DomainError("report/rp_report", "not a singular field of order >= 2 (the map is the identity)");
    }
    Report r;
    r.kind = "map";
    r.input = input;
    r.truncation = f.truncation();
    r.depth = depth;
    r.map = f;
    r.field = log_map(f);
    require_order_two(r.field);
    analyse(r);
    return r;
}

json to_json(const Multiplicity& m)
{
    if (!m.infinite) {
        return m.value;
    }
    return m.certified ? "infinite" : "infinite (uncertified)";
}

json to_json(const PuiseuxBranch& br)
{
    json j;
    j["orientation"] = to_string(br.orientation);
    j["q"] = br.q;
    j["p"] = br.p;
    j["leading_exponent"] = rational_json(br.leading_exponent());
    j["phi"] = br.phi.to_string("z");
    j["certified_order"] = br.phi.exact() ? json(nullptr) : json(br.phi.order());
    j["description"] = br.describe();
    j["multiplicity"] = br.multiplicity;
    j["depth_exhausted"] = br.depth_exhausted;
    if (br.family_parameter) {
        j["family_parameter"] = *br.family_parameter;
    }
    return j;
}

json to_json(const SeparatrixSet& s)
{
    json j;
    j["isolated"] = json::array();
    for (const auto& br : s.branches) {
        j["isolated"].push_back(to_json(br));
    }
    j["families"] = json::array();
    for (const auto& br : s.families) {
        j["families"].push_back(to_json(br));
    }
    j["line_x0_invariant"] = s.includes_x_axis;
    j["line_y0_invariant"] = s.includes_y_axis;
    j["unresolved"] = s.unresolved;
    return j;
}

json to_json(const PetalReport& p)
{
    json j;
    j["branch"] = p.branch.describe();
    j["restricted"] = p.restricted.to_string("z");
    j["h"] = p.h;
    j["petal_count"] = p.petal_count;
    j["leading_coefficient"] = p.leading_coefficient.to_string();
    j["petal_upper_bound"] = p.petal_upper_bound;
    return j;
}

json to_json(const TheoremBound& b)
{
    json j;
    j["mu"] = b.mu ? to_json(*b.mu) : json(nullptr);
    j["eta"] = b.dicritical ? json(nullptr) : json(b.eta);
    j["bound"] = b.bound ? json(*b.bound) : json(nullptr);
    j["dicritical"] = b.dicritical;
    j["diagnosis"] = b.diagnosis;
    return j;
}

json to_json(const Report& r)
{
    json j;
    j["input"] = {{"kind", r.kind}, {"text", r.input}, {"truncation", r.truncation}, {"depth", r.depth}};
    j["field"] = r.field.to_string();
    j["map"] = r.map.to_string();
    auto opt = [](const std::optional<int>& v) { return v ? json(*v) : json(nullptr); };
    j["orders"] = {{"nu1", opt(r.orders.nu1)}, {"nu2", opt(r.orders.nu2)}, {"nu", r.orders.nu}, {"eta", opt(r.orders.eta)}};
    j["milnor"] = {{"field", r.mu_field ? to_json(*r.mu_field) : json(nullptr)},
                   {"map", r.mu_map ? to_json(*r.mu_map) : json(nullptr)}};
    j["dicritical"] = {{"field", r.dicritical_field}, {"map", r.dicritical_map}, {"equivalent", r.dicritical_equivalent()}};
    j["separatrices"] = to_json(r.separatrices);
    j["petals"] = json::array();
    for (const auto& bp : r.petals) {
        json p = to_json(bp.petals);
        if (bp.candidates) {
            p["exponent_candidates"] = bp.candidates->values;
            p["candidate_max"] = bp.candidates->max;
        } else {
            p["exponent_candidates"] = nullptr;
            p["candidate_max"] = nullptr;
        }
        p["within_candidates"] = bp.within_candidates;
        p["within_pq_bounds"] = bp.within_pq_bounds;
        j["petals"].push_back(std::move(p));
    }
    j["rp_lower_count"] = r.rp_lower_count ? json(*r.rp_lower_count) : json(nullptr);
    j["theorem_bound"] = r.bound ? to_json(*r.bound) : json(nullptr);
    j["consistent"] = r.consistent();
    j["warnings"] = r.warnings;
    return j;
}

std::string to_text(const Report& r)
{
    std::ostringstream os;
    auto opt = [](const std::optional<int>& v) { return v ? std::to_string(*v) : std::string("none"); };
    auto mult = [](const std::optional<Multiplicity>& m) { return m ? m->to_string() : std::string("uncertified"); };
    os << "input (" << r.kind << "): " << r.input << "\n";
    os << "truncation: " << r.truncation << "  depth: " << r.depth << "\n";
    os << "field: " << r.field.to_string() << "\n";
    os << "map: " << r.map.to_string() << "\n";
    os << "orders: nu1=" << opt(r.orders.nu1) << " nu2=" << opt(r.orders.nu2) << " nu=" << r.orders.nu
       << " eta=" << opt(r.orders.eta) << "\n";
    os << "milnor: field=" << mult(r.mu_field) << " map=" << mult(r.mu_map) << "\n";
    os << "dicritical: field=" << (r.dicritical_field ? "true" : "false")
       << " map=" << (r.dicritical_map ? "true" : "false")
       << " equivalent=" << (r.dicritical_equivalent() ? "true" : "false") << "\n";
    os << "separatrices:\n";
    for (const auto& br : r.separatrices.branches) {
        os << "  " << br.describe() << "\n";
    }
    for (const auto& br : r.separatrices.families) {
        os << "  family: " << br.describe() << "\n";
    }
    os << "petals:\n";
    for (const auto& bp : r.petals) {
        const PetalReport& p = bp.petals;
        os << "  " << p.branch.describe() << ": h=" << p.h << " petals=" << p.petal_count
           << " a=" << p.leading_coefficient.to_string() << " bound max(nu1,nu2)*p=" << p.petal_upper_bound;
        if (bp.candidates) {
            os << " candidate max=" << bp.candidates->max;
        }
        os << "\n";
    }
    os << "rp lower count: " << opt(r.rp_lower_count) << "\n";
    if (r.bound) {
        const TheoremBound& b = *r.bound;
        if (b.bound) {
            os << "rp curve bound: (" << b.mu->to_string() << "+1)*(" << b.eta << "^2-" << b.eta << ") = " << *b.bound
               << "\n";
        } else {
            os << "rp curve bound: " << b.diagnosis << "\n";
        }
    } else {
        os << "rp curve bound: uncertified\n";
    }
    os << "consistent: " << (r.consistent() ? "true" : "false") << "\n";
    for (const auto& w : r.warnings) {
        os << "warning: " << w << "\n";
    }
    return os.str();
}

} // namespace rpc
