#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "rpc/blowup.hpp"
#include "rpc/intersection.hpp"
#include "rpc/separatrix.hpp"
#include "rpc/vector_field.hpp"

namespace rpc {

inline constexpr int kDefaultDepth = 10;

struct TheoremBound {
    std::optional<Multiplicity> mu;
    int eta = 0;
    // (mu + 1)(eta^2 - eta); empty for dicritical input.
    std::optional<long> bound;
    bool dicritical = false;
    std::string diagnosis;
};

// (mu + 1)(eta^2 - eta).
long rp_curve_bound(long mu, long eta);

// Upper bound on the number of robust parabolic curves of f. A dicritical f
// gets the diagnosis instead of a bound; an infinite mu raises DomainError.
TheoremBound theorem_bound(const TangentMap& f);

struct BranchPetals {
    PetalReport petals;
    std::optional<ExponentCandidates> candidates;
    bool within_candidates = false;
    bool within_pq_bounds = false;
};

struct Report {
    std::string kind; // "field" or "map"
    std::string input;
    int truncation = kDefaultOrder;
    int depth = kDefaultDepth;
    VectorField field;
    TangentMap map = TangentMap::identity();
    MapOrders orders;
    std::optional<Multiplicity> mu_field;
    std::optional<Multiplicity> mu_map;
    bool dicritical_field = false;
    bool dicritical_map = false;
    SeparatrixSet separatrices;
    std::vector<BranchPetals> petals;
    // One robust parabolic curve per isolated separatrix; empty when dicritical.
    std::optional<int> rp_lower_count;
    std::optional<TheoremBound> bound;
    std::vector<std::string> warnings;

    bool dicritical_equivalent() const { return dicritical_field == dicritical_map; }
    // lower <= upper whenever both are finite.
    bool consistent() const;
};

Report rp_report(const VectorField& x, int depth = kDefaultDepth, const std::string& input = "");
Report rp_report(const TangentMap& f, int depth = kDefaultDepth, const std::string& input = "");

nlohmann::json to_json(const Multiplicity& m);
nlohmann::json to_json(const PuiseuxBranch& br);
nlohmann::json to_json(const SeparatrixSet& s);
nlohmann::json to_json(const PetalReport& p);
nlohmann::json to_json(const TheoremBound& b);
nlohmann::json to_json(const Report& r);

std::string to_text(const Report& r);

} // namespace rpc
