#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "aicat/rdf.hpp"
#include "aicat/shacl.hpp"
#include "aicat/vocab.hpp"

namespace aicat {

struct profile_error : error {
    using error::error;
};

/// One of the eight high-risk application areas of Annex III.
class AnnexIIIPoint {
public:
    explicit AnnexIIIPoint(int point) : point_(point) {
        if (point < 1 || point > 8)
            throw profile_error("Annex III point must be in 1..8, got " + std::to_string(point));
    }
    int value() const { return point_; }

    friend bool operator==(const AnnexIIIPoint&, const AnnexIIIPoint&) = default;

private:
    int point_;
};

enum class RiskStatus { HighRisk, AssessedNonHighRisk };
enum class RegistrantRole { Provider, AuthorisedRepresentative, PublicAuthorityDeployer };
enum class Clause { A49_1, A49_1_4, A49_2, A49_2_4, A49_3, A49_3_4, A49_5 };
enum class AnnexSection { A, B, C, None };
enum class Visibility { PublicEU, NonPublicEU, NationalLevel };

inline const char* to_string(Clause c) {
    switch (c) {
        case Clause::A49_1: return "49(1)";
        case Clause::A49_1_4: return "49(1)&(4)";
        case Clause::A49_2: return "49(2)";
        case Clause::A49_2_4: return "49(2)&(4)";
        case Clause::A49_3: return "49(3)";
        case Clause::A49_3_4: return "49(3)&(4)";
        case Clause::A49_5: return "49(5)";
    }
    return "?";
}

inline const char* to_string(AnnexSection s) {
    switch (s) {
        case AnnexSection::A: return "A";
        case AnnexSection::B: return "B";
        case AnnexSection::C: return "C";
        case AnnexSection::None: return "none";
    }
    return "?";
}

inline const char* to_string(Visibility v) {
    switch (v) {
        case Visibility::PublicEU: return "public-eu";
        case Visibility::NonPublicEU: return "non-public-eu";
        case Visibility::NationalLevel: return "national";
    }
    return "?";
}

inline std::optional<RiskStatus> risk_from_token(std::string_view token) {
    if (token == "high") return RiskStatus::HighRisk;
    if (token == "assessed-non-high") return RiskStatus::AssessedNonHighRisk;
    return std::nullopt;
}

inline const char* to_token(RiskStatus r) {
    return r == RiskStatus::HighRisk ? "high" : "assessed-non-high";
}

inline std::optional<RegistrantRole> role_from_token(std::string_view token) {
    if (token == "provider") return RegistrantRole::Provider;
    if (token == "authrep") return RegistrantRole::AuthorisedRepresentative;
    if (token == "deployer") return RegistrantRole::PublicAuthorityDeployer;
    return std::nullopt;
}

inline const char* to_token(RegistrantRole r) {
    switch (r) {
        case RegistrantRole::Provider: return "provider";
        case RegistrantRole::AuthorisedRepresentative: return "authrep";
        case RegistrantRole::PublicAuthorityDeployer: return "deployer";
    }
    return "?";
}

struct RegistrationScenario {
    Clause clause;
    AnnexSection annex_section;
    std::set<int> included_points;
    Visibility visibility;

    friend bool operator==(const RegistrationScenario&, const RegistrationScenario&) = default;
};

namespace profile_detail {

inline std::set<int> points(std::initializer_list<int> list) { return std::set<int>(list); }

inline std::set<int> point_range(int from, int to) {
    std::set<int> out;
    for (int i = from; i <= to; ++i) out.insert(i);
    return out;
}

// Section extents: the registration table names subsets like "points 1 to
// 10 (except 6, 8, and 9)"; the full-section rows cover the whole section,
// whose lengths come from the regulation's annex (A: 12, B: 9, C: 5).
inline const std::set<int>& section_a_full() { static const auto s = point_range(1, 12); return s; }
inline const std::set<int>& section_a_restricted() { static const auto s = points({1, 2, 3, 4, 5, 7, 10}); return s; }
inline const std::set<int>& section_b_full() { static const auto s = point_range(1, 9); return s; }
inline const std::set<int>& section_b_restricted() { static const auto s = points({1, 2, 3, 4, 5, 8, 9}); return s; }
inline const std::set<int>& section_c_full() { static const auto s = point_range(1, 5); return s; }
inline const std::set<int>& section_c_restricted() { static const auto s = points({1, 2, 3}); return s; }

inline bool in(int value, std::initializer_list<int> set) {
    return std::find(set.begin(), set.end(), value) != set.end();
}

}  // namespace profile_detail

/// The registration-scenario matrix. Combinations the regulation's table
/// leaves undefined (a deployer registering a self-assessed non-high-risk
/// system) return nullopt rather than a guess.
inline std::optional<RegistrationScenario> classify_scenario(AnnexIIIPoint point, RiskStatus risk,
                                                             RegistrantRole role) {
    using namespace profile_detail;
    const int p = point.value();
    const bool provider_side = role != RegistrantRole::PublicAuthorityDeployer;

    if (risk == RiskStatus::HighRisk && p == 2)
        return RegistrationScenario{Clause::A49_5, AnnexSection::None, {}, Visibility::NationalLevel};

    if (risk == RiskStatus::HighRisk && provider_side) {
        if (in(p, {3, 4, 5, 8}))
            return RegistrationScenario{Clause::A49_1, AnnexSection::A, section_a_full(),
                                        Visibility::PublicEU};
        if (in(p, {1, 6, 7}))
            return RegistrationScenario{Clause::A49_1_4, AnnexSection::A, section_a_restricted(),
                                        Visibility::NonPublicEU};
    }
    if (risk == RiskStatus::HighRisk && !provider_side) {
        if (in(p, {3, 4, 5, 8}))
            return RegistrationScenario{Clause::A49_3, AnnexSection::C, section_c_full(),
                                        Visibility::PublicEU};
        if (in(p, {1, 6, 7}))
            return RegistrationScenario{Clause::A49_3_4, AnnexSection::C, section_c_restricted(),
                                        Visibility::NonPublicEU};
    }
    if (risk == RiskStatus::AssessedNonHighRisk && provider_side) {
        if (in(p, {2, 3, 4, 5, 8}))
            return RegistrationScenario{Clause::A49_2, AnnexSection::B, section_b_full(),
                                        Visibility::PublicEU};
        if (in(p, {1, 6, 7}))
            return RegistrationScenario{Clause::A49_2_4, AnnexSection::B, section_b_restricted(),
                                        Visibility::NonPublicEU};
    }
    return std::nullopt;
}

enum class AppliesTo { System, Model, Dataset, Operator };
enum class Necessity { Required, Recommended, Optional };

inline const char* to_string(AppliesTo a) {
    switch (a) {
        case AppliesTo::System: return "system";
        case AppliesTo::Model: return "model";
        case AppliesTo::Dataset: return "dataset";
        case AppliesTo::Operator: return "operator";
    }
    return "?";
}

inline const char* to_string(Necessity n) {
    switch (n) {
        case Necessity::Required: return "required";
        case Necessity::Recommended: return "recommended";
        case Necessity::Optional: return "optional";
    }
    return "?";
}

struct FieldRequirement {
    std::string annex_ref;
    Iri predicate;
    AppliesTo applies_to;
    Necessity necessity;
    std::optional<Iri> class_range;     // range is a class: objects need that rdf:type
    std::optional<Iri> datatype_range;  // range is a datatype
    bool literal_range = false;         // range is rdfs:Literal
    std::optional<std::string> any_of_group;

    friend bool operator==(const FieldRequirement&, const FieldRequirement&) = default;
};

struct FieldRequirementSet {
    RegistrationScenario scenario;
    bool includes_model_metadata = false;
    std::vector<FieldRequirement> requirements;
};

namespace profile_detail {

enum class TableSection { A, B, C, ModelMetadata };

struct RequirementRow {
    TableSection section;
    int point;  // annex point within the section; 0 for model-metadata rows
    const char* annex_ref;
    const char* description;
    const char* predicate;  // registry short name
    AppliesTo applies_to;
    Necessity necessity;
    const char* range;  // registry short name, "rdfs:Literal", or ""
    const char* any_of_group;  // "" when the row is not part of an any-of group
};

/// The necessity policy lives in this one table: operator identity, trade
/// name, and intended purpose are required, everything else recommended.
/// Operator detail rows target the operator node and therefore compile to
/// no class-targeted shape; they stay here so the shipped data file lists
/// the full requirement.
inline const std::vector<RequirementRow>& requirement_rows() {
    static const std::vector<RequirementRow> rows = {
        // Annex VIII section A — providers of high-risk systems
        {TableSection::A, 1, "VIII-A1", "AI provider of the system", "airo:isProvidedBy",
         AppliesTo::System, Necessity::Required, "airo:AIProvider", ""},
        {TableSection::A, 1, "VIII-A1", "AI provider's name", "dct:title", AppliesTo::Operator,
         Necessity::Recommended, "rdfs:Literal", ""},
        {TableSection::A, 1, "VIII-A1", "AI provider's address", "dct:description",
         AppliesTo::Operator, Necessity::Recommended, "rdfs:Literal", ""},
        {TableSection::A, 1, "VIII-A1", "AI provider's contact details", "dcat:contactPoint",
         AppliesTo::Operator, Necessity::Recommended, "", ""},
        {TableSection::A, 4, "VIII-A4", "AI system's trade name", "dct:title", AppliesTo::System,
         Necessity::Required, "rdfs:Literal", ""},
        {TableSection::A, 4, "VIII-A4", "AI system's additional reference", "dct:isReferencedBy",
         AppliesTo::System, Necessity::Recommended, "dcat:Resource", ""},
        {TableSection::A, 5, "VIII-A5", "AI system's intended purpose", "odrl:hasPolicy",
         AppliesTo::System, Necessity::Required, "aiup:UsePolicy", ""},
        {TableSection::A, 5, "VIII-A5", "Component's intended purpose", "odrl:hasPolicy",
         AppliesTo::Dataset, Necessity::Recommended, "aiup:UsePolicy", ""},
        {TableSection::A, 6, "VIII-A6", "Training data used by the system", "airo:hasTrainingData",
         AppliesTo::System, Necessity::Recommended, "airo:Data", "data-provenance"},
        {TableSection::A, 6, "VIII-A6", "Validation data used by the system",
         "airo:hasValidationData", AppliesTo::System, Necessity::Recommended, "airo:Data",
         "data-provenance"},
        {TableSection::A, 6, "VIII-A6", "Testing data used by the system", "airo:hasTestingData",
         AppliesTo::System, Necessity::Recommended, "airo:Data", "data-provenance"},
        {TableSection::A, 6, "VIII-A6", "Input data used by the system", "airo:hasInput",
         AppliesTo::System, Necessity::Recommended, "airo:Data", ""},
        {TableSection::A, 7, "VIII-A7", "AI system's market status",
         "tech:hasMarketAvailabilityStatus", AppliesTo::System, Necessity::Recommended,
         "tech:MarketAvailabilityStatus", ""},
        {TableSection::A, 10, "VIII-A10", "Countries where the system is available",
         "dpv:hasCountry", AppliesTo::System, Necessity::Recommended, "dpv:Country", ""},

        // Annex VIII section B — providers of assessed non-high-risk systems
        {TableSection::B, 1, "VIII-B1", "AI provider of the system", "airo:isProvidedBy",
         AppliesTo::System, Necessity::Required, "airo:AIProvider", ""},
        {TableSection::B, 1, "VIII-B1", "AI provider's name", "dct:title", AppliesTo::Operator,
         Necessity::Recommended, "rdfs:Literal", ""},
        {TableSection::B, 1, "VIII-B1", "AI provider's address", "dct:description",
         AppliesTo::Operator, Necessity::Recommended, "rdfs:Literal", ""},
        {TableSection::B, 1, "VIII-B1", "AI provider's contact details", "dcat:contactPoint",
         AppliesTo::Operator, Necessity::Recommended, "", ""},
        {TableSection::B, 4, "VIII-B4", "AI system's trade name", "dct:title", AppliesTo::System,
         Necessity::Required, "rdfs:Literal", ""},
        {TableSection::B, 4, "VIII-B4", "AI system's additional reference", "dct:isReferencedBy",
         AppliesTo::System, Necessity::Recommended, "dcat:Resource", ""},
        {TableSection::B, 5, "VIII-B5", "AI system's intended purpose", "odrl:hasPolicy",
         AppliesTo::System, Necessity::Required, "aiup:UsePolicy", ""},
        {TableSection::B, 5, "VIII-B5", "Component's intended purpose", "odrl:hasPolicy",
         AppliesTo::Dataset, Necessity::Recommended, "aiup:UsePolicy", ""},
        {TableSection::B, 8, "VIII-B8", "AI system's market status",
         "tech:hasMarketAvailabilityStatus", AppliesTo::System, Necessity::Recommended,
         "tech:MarketAvailabilityStatus", ""},
        {TableSection::B, 9, "VIII-B9", "Countries where the system is available",
         "dpv:hasCountry", AppliesTo::System, Necessity::Recommended, "dpv:Country", ""},

        // Annex VIII section C — public-authority deployers
        {TableSection::C, 1, "VIII-C1", "AI deployer of the system", "airo:isDeployedBy",
         AppliesTo::System, Necessity::Required, "airo:AIDeployer", ""},
        {TableSection::C, 1, "VIII-C1", "AI deployer's name", "dct:title", AppliesTo::Operator,
         Necessity::Recommended, "rdfs:Literal", ""},
        {TableSection::C, 1, "VIII-C1", "AI deployer's address", "dct:description",
         AppliesTo::Operator, Necessity::Recommended, "rdfs:Literal", ""},
        {TableSection::C, 1, "VIII-C1", "AI deployer's contact details", "dcat:contactPoint",
         AppliesTo::Operator, Necessity::Recommended, "", ""},

        // Annex XII point 1 — model metadata, attached only on request
        {TableSection::ModelMetadata, 0, "n/a", "AI models used within the system",
         "airo:hasModel", AppliesTo::System, Necessity::Recommended, "airo:AIModel", ""},
        {TableSection::ModelMetadata, 0, "XII-1-1b", "Model's use policy", "odrl:hasPolicy",
         AppliesTo::Model, Necessity::Recommended, "aiup:UsePolicy", ""},
        {TableSection::ModelMetadata, 0, "XII-1-1c", "Model's date of release", "dct:issued",
         AppliesTo::Model, Necessity::Recommended, "xsd:date", ""},
        {TableSection::ModelMetadata, 0, "XII-1-1g", "Model's input data", "airo:hasInput",
         AppliesTo::Model, Necessity::Recommended, "airo:Data", ""},
        {TableSection::ModelMetadata, 0, "XII-1-1g", "Model's output data", "airo:hasOutput",
         AppliesTo::Model, Necessity::Recommended, "airo:Data", ""},
        {TableSection::ModelMetadata, 0, "XII-1-1h", "Model's license", "airo:hasLicense",
         AppliesTo::Model, Necessity::Recommended, "airo:License", ""},
    };
    return rows;
}

inline FieldRequirement to_requirement(const RequirementRow& row) {
    FieldRequirement req{row.annex_ref, vocab::registry().lookup(row.predicate), row.applies_to,
                         row.necessity};
    const std::string range = row.range;
    if (range == "rdfs:Literal") {
        req.literal_range = true;
    } else if (range == "xsd:date") {
        req.datatype_range = xsd::date_type();
    } else if (!range.empty()) {
        req.class_range = vocab::registry().lookup(range);
    }
    if (row.any_of_group[0] != '\0') req.any_of_group = row.any_of_group;
    return req;
}

inline std::optional<TableSection> table_section(AnnexSection s) {
    switch (s) {
        case AnnexSection::A: return TableSection::A;
        case AnnexSection::B: return TableSection::B;
        case AnnexSection::C: return TableSection::C;
        case AnnexSection::None: return std::nullopt;
    }
    return std::nullopt;
}

}  // namespace profile_detail

/// Field requirements for a scenario: the section rows whose annex point the
/// scenario includes, plus the model-metadata rows when the registrant
/// chooses to describe models.
inline FieldRequirementSet required_fields(const RegistrationScenario& scenario,
                                           bool includes_model_metadata) {
    using namespace profile_detail;
    if (scenario.clause == Clause::A49_5)
        throw profile_error(
            "national-level registrations (Article 49(5)) have no requirement set in this profile");

    FieldRequirementSet out{scenario, includes_model_metadata, {}};
    const auto section = table_section(scenario.annex_section);
    for (const RequirementRow& row : requirement_rows()) {
        if (row.section == TableSection::ModelMetadata) {
            if (includes_model_metadata) out.requirements.push_back(to_requirement(row));
            continue;
        }
        if (!section || row.section != *section) continue;
        if (!scenario.included_points.count(row.point)) continue;
        out.requirements.push_back(to_requirement(row));
    }
    return out;
}

namespace profile_detail {

inline const Iri& shapes_ns() {
    static const Iri ns{"https://w3id.org/aicat/shapes#"};
    return ns;
}

inline std::optional<Iri> shape_target(AppliesTo applies_to) {
    switch (applies_to) {
        case AppliesTo::System: return vocab::airo_AISystem();
        case AppliesTo::Model: return vocab::airo_AIModel();
        case AppliesTo::Dataset: return vocab::airo_Data();
        case AppliesTo::Operator: return std::nullopt;  // operator nodes carry no target class
    }
    return std::nullopt;
}

inline const char* shape_name(AppliesTo applies_to) {
    switch (applies_to) {
        case AppliesTo::System: return "SystemRegistrationShape";
        case AppliesTo::Model: return "ModelRegistrationShape";
        case AppliesTo::Dataset: return "DataRegistrationShape";
        case AppliesTo::Operator: return "";
    }
    return "";
}

inline void apply_range_facets(PropertyConstraint& c, const FieldRequirement& req) {
    c.value_type = req.class_range;
    c.datatype = req.datatype_range;
    if (req.literal_range) c.node_kind = NodeKind::LiteralNode;
}

}  // namespace profile_detail

/// Compile a requirement set into shapes: one node shape per target type.
/// Required fields become Violation-severity minCount constraints (their
/// range facets move to separate Warning constraints, since range typing is
/// advisory without subclass reasoning); Recommended fields become Warning
/// constraints carrying their facets directly.
inline ShapeSet shapes_for(const FieldRequirementSet& set) {
    using namespace profile_detail;
    ShapeSet out;
    for (AppliesTo target : {AppliesTo::System, AppliesTo::Model, AppliesTo::Dataset}) {
        auto target_class = shape_target(target);
        if (!target_class) continue;
        NodeShapeDef shape{Subject{Iri(shapes_ns().str() + shape_name(target))}, *target_class,
                           {}, Severity::Violation};
        for (const FieldRequirement& req : set.requirements) {
            if (req.applies_to != target) continue;
            PropertyConstraint cardinality{req.predicate};
            cardinality.min_count = 1;
            if (req.necessity == Necessity::Required) {
                shape.properties.push_back(cardinality);
                PropertyConstraint range{req.predicate};
                apply_range_facets(range, req);
                if (range.has_facet()) {
                    range.severity = Severity::Warning;
                    shape.properties.push_back(std::move(range));
                }
            } else {
                cardinality.severity = Severity::Warning;
                apply_range_facets(cardinality, req);
                shape.properties.push_back(std::move(cardinality));
            }
        }
        if (!shape.properties.empty()) out.shapes.push_back(std::move(shape));
    }
    return out;
}

/// Any-of composite for the data-provenance group: satisfied when the system
/// (or a model one hop away) carries at least one of the three data links.
inline bool data_provenance_satisfied(const Graph& g, const Iri& system) {
    const std::vector<Iri> preds = {vocab::airo_hasTrainingData(), vocab::airo_hasValidationData(),
                                    vocab::airo_hasTestingData()};
    Subject node{system};
    for (const Iri& p : preds)
        if (!g.objects(node, p).empty()) return true;
    for (const Term& model : g.objects(node, vocab::airo_hasModel())) {
        auto subject = as_subject(model);
        if (!subject) continue;
        for (const Iri& p : preds)
            if (!g.objects(*subject, p).empty()) return true;
    }
    return false;
}

enum class View { Public, Full };

inline std::optional<View> view_from_token(std::string_view token) {
    if (token == "public") return View::Public;
    if (token == "full") return View::Full;
    return std::nullopt;
}

/// EU-database views: the public view sees public records, the full view
/// additionally sees non-public ones. National-level records belong to
/// neither EU view.
inline bool visible_in(Visibility v, View view) {
    switch (v) {
        case Visibility::PublicEU: return true;
        case Visibility::NonPublicEU: return view == View::Full;
        case Visibility::NationalLevel: return false;
    }
    return false;
}

template <class Record>
std::vector<Record> visibility_filter(const std::vector<Record>& records, View view) {
    std::vector<Record> out;
    for (const Record& r : records)
        if (visible_in(r.scenario.visibility, view)) out.push_back(r);
    return out;
}

// --- JSON forms -----------------------------------------------------------

inline nlohmann::ordered_json scenario_to_json(const RegistrationScenario& s) {
    nlohmann::ordered_json j;
    j["clause"] = to_string(s.clause);
    j["annexSection"] = to_string(s.annex_section);
    j["includedPoints"] = s.included_points;
    j["visibility"] = to_string(s.visibility);
    return j;
}

inline RegistrationScenario scenario_from_json(const nlohmann::json& j) {
    RegistrationScenario s{Clause::A49_1, AnnexSection::None, {}, Visibility::PublicEU};
    const std::string clause = j.at("clause");
    bool found = false;
    for (Clause c : {Clause::A49_1, Clause::A49_1_4, Clause::A49_2, Clause::A49_2_4, Clause::A49_3,
                     Clause::A49_3_4, Clause::A49_5}) {
        if (clause == to_string(c)) {
            s.clause = c;
            found = true;
        }
    }
    if (!found) throw profile_error("unknown clause in stored scenario: " + clause);
    const std::string section = j.at("annexSection");
    for (AnnexSection a : {AnnexSection::A, AnnexSection::B, AnnexSection::C, AnnexSection::None})
        if (section == to_string(a)) s.annex_section = a;
    for (int p : j.at("includedPoints")) s.included_points.insert(p);
    const std::string vis = j.at("visibility");
    for (Visibility v : {Visibility::PublicEU, Visibility::NonPublicEU, Visibility::NationalLevel})
        if (vis == to_string(v)) s.visibility = v;
    return s;
}

/// The requirement table as shipped in the repository's data file, so the
/// policy choices stay diffable against the regulation.
inline nlohmann::ordered_json requirement_table_json() {
    using namespace profile_detail;
    nlohmann::ordered_json j;
    j["version"] = 1;
    j["description"] =
        "Atomic registration fields per EU AI Act Annex VIII sections A-C and Annex XII point 1, "
        "mapped onto the catalogue profile's predicates. Necessity policy: operator identity, "
        "trade name, and intended purpose are required; everything else is recommended.";
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const RequirementRow& row : requirement_rows()) {
        nlohmann::ordered_json r;
        r["annexRef"] = row.annex_ref;
        switch (row.section) {
            case TableSection::A: r["section"] = "A"; break;
            case TableSection::B: r["section"] = "B"; break;
            case TableSection::C: r["section"] = "C"; break;
            case TableSection::ModelMetadata: r["section"] = "model-metadata"; break;
        }
        r["point"] = row.point == 0 ? nlohmann::ordered_json(nullptr)
                                    : nlohmann::ordered_json(row.point);
        r["description"] = row.description;
        r["predicate"] = row.predicate;
        r["appliesTo"] = to_string(row.applies_to);
        r["necessity"] = to_string(row.necessity);
        r["range"] = row.range[0] == '\0' ? nlohmann::ordered_json(nullptr)
                                          : nlohmann::ordered_json(row.range);
        r["anyOfGroup"] = row.any_of_group[0] == '\0' ? nlohmann::ordered_json(nullptr)
                                                      : nlohmann::ordered_json(row.any_of_group);
        rows.push_back(std::move(r));
    }
    j["requirements"] = std::move(rows);
    return j;
}

}  // namespace aicat
