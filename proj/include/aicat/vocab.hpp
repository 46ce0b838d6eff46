#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "aicat/rdf.hpp"

namespace aicat {

/// A CURIE used an undeclared prefix, or a registry lookup missed.
struct lookup_error : error {
    using error::error;
};

namespace vocab {

struct Namespace {
    std::string label;
    Iri iri;
};

/// Namespaces of the profile. The dcat and rdfs bindings follow the example
/// catalogue's prefix block (they point at specification documents rather
/// than the canonical namespaces); rdf uses the canonical namespace so that
/// 'a' always expands to the full rdf:type IRI.
inline const std::vector<Namespace>& namespaces() {
    static const std::vector<Namespace> all = {
        {"aicat", Iri("https://w3id.org/aicat#")},
        {"airo", Iri("https://w3id.org/airo#")},
        {"aiup", Iri("https://w3id.org/aiup#")},
        {"dcat", Iri("https://www.w3.org/TR/vocab-dcat-3/")},
        {"dct", Iri("http://purl.org/dc/terms/")},
        {"dpv", Iri("https://w3id.org/dpv#")},
        {"odrl", Iri("http://www.w3.org/ns/odrl/2/")},
        {"rdf", Iri("http://www.w3.org/1999/02/22-rdf-syntax-ns#")},
        {"rdfs", Iri("https://www.w3.org/TR/rdf12-schema/")},
        {"sh", Iri("http://www.w3.org/ns/shacl#")},
        {"tech", Iri("https://w3id.org/dpv/tech#")},
        {"xsd", Iri("http://www.w3.org/2001/XMLSchema#")},
    };
    return all;
}

inline const PrefixMap& default_prefixes() {
    static const PrefixMap map = [] {
        PrefixMap m;
        for (const Namespace& ns : namespaces()) m.emplace(ns.label, ns.iri);
        return m;
    }();
    return map;
}

inline const Iri& ns(std::string_view label) {
    for (const Namespace& n : namespaces())
        if (n.label == label) return n.iri;
    throw lookup_error("unknown namespace label: " + std::string(label));
}

namespace detail {
inline Iri term(std::string_view nslabel, std::string_view local) {
    return Iri(ns(nslabel).str() + std::string(local));
}
}  // namespace detail

// Classes
inline const Iri& aicat_Catalog() { static const Iri i = detail::term("aicat", "Catalog"); return i; }
inline const Iri& dcat_Catalog() { static const Iri i = detail::term("dcat", "Catalog"); return i; }
inline const Iri& dcat_Resource() { static const Iri i = detail::term("dcat", "Resource"); return i; }
inline const Iri& dcat_Dataset() { static const Iri i = detail::term("dcat", "Dataset"); return i; }
inline const Iri& airo_AISystem() { static const Iri i = detail::term("airo", "AISystem"); return i; }
inline const Iri& airo_AIModel() { static const Iri i = detail::term("airo", "AIModel"); return i; }
inline const Iri& airo_Data() { static const Iri i = detail::term("airo", "Data"); return i; }
inline const Iri& airo_AIProvider() { static const Iri i = detail::term("airo", "AIProvider"); return i; }
inline const Iri& airo_AIDeployer() { static const Iri i = detail::term("airo", "AIDeployer"); return i; }
inline const Iri& airo_License() { static const Iri i = detail::term("airo", "License"); return i; }
inline const Iri& aiup_UsePolicy() { static const Iri i = detail::term("aiup", "UsePolicy"); return i; }
inline const Iri& aiup_UseOffer() { static const Iri i = detail::term("aiup", "UseOffer"); return i; }
inline const Iri& tech_MarketAvailabilityStatus() { static const Iri i = detail::term("tech", "MarketAvailabilityStatus"); return i; }
inline const Iri& dpv_Country() { static const Iri i = detail::term("dpv", "Country"); return i; }
inline const Iri& sh_NodeShape() { static const Iri i = detail::term("sh", "NodeShape"); return i; }
inline const Iri& sh_PropertyShape() { static const Iri i = detail::term("sh", "PropertyShape"); return i; }

// tech:MarketAvailable is the one status instance the profile names; other
// status IRIs are accepted as opaque.
inline const Iri& tech_MarketAvailable() { static const Iri i = detail::term("tech", "MarketAvailable"); return i; }

// Properties
inline const Iri& aicat_system() { static const Iri i = detail::term("aicat", "system"); return i; }
inline const Iri& aicat_model() { static const Iri i = detail::term("aicat", "model"); return i; }
inline const Iri& dcat_dataset() { static const Iri i = detail::term("dcat", "dataset"); return i; }
inline const Iri& dcat_contactPoint() { static const Iri i = detail::term("dcat", "contactPoint"); return i; }
inline const Iri& airo_isProvidedBy() { static const Iri i = detail::term("airo", "isProvidedBy"); return i; }
inline const Iri& airo_isDeployedBy() { static const Iri i = detail::term("airo", "isDeployedBy"); return i; }
inline const Iri& airo_hasModel() { static const Iri i = detail::term("airo", "hasModel"); return i; }
inline const Iri& airo_hasTrainingData() { static const Iri i = detail::term("airo", "hasTrainingData"); return i; }
inline const Iri& airo_hasValidationData() { static const Iri i = detail::term("airo", "hasValidationData"); return i; }
inline const Iri& airo_hasTestingData() { static const Iri i = detail::term("airo", "hasTestingData"); return i; }
inline const Iri& airo_hasInput() { static const Iri i = detail::term("airo", "hasInput"); return i; }
inline const Iri& airo_hasOutput() { static const Iri i = detail::term("airo", "hasOutput"); return i; }
inline const Iri& airo_hasLicense() { static const Iri i = detail::term("airo", "hasLicense"); return i; }
inline const Iri& odrl_hasPolicy() { static const Iri i = detail::term("odrl", "hasPolicy"); return i; }
inline const Iri& tech_hasMarketAvailabilityStatus() { static const Iri i = detail::term("tech", "hasMarketAvailabilityStatus"); return i; }
inline const Iri& dpv_hasCountry() { static const Iri i = detail::term("dpv", "hasCountry"); return i; }
inline const Iri& dct_title() { static const Iri i = detail::term("dct", "title"); return i; }
inline const Iri& dct_identifier() { static const Iri i = detail::term("dct", "identifier"); return i; }
inline const Iri& dct_description() { static const Iri i = detail::term("dct", "description"); return i; }
inline const Iri& dct_created() { static const Iri i = detail::term("dct", "created"); return i; }
inline const Iri& dct_issued() { static const Iri i = detail::term("dct", "issued"); return i; }
inline const Iri& dct_isReferencedBy() { static const Iri i = detail::term("dct", "isReferencedBy"); return i; }
inline const Iri& sh_targetClass() { static const Iri i = detail::term("sh", "targetClass"); return i; }
inline const Iri& sh_path() { static const Iri i = detail::term("sh", "path"); return i; }
inline const Iri& sh_property() { static const Iri i = detail::term("sh", "property"); return i; }
inline const Iri& sh_minCount() { static const Iri i = detail::term("sh", "minCount"); return i; }
inline const Iri& sh_maxCount() { static const Iri i = detail::term("sh", "maxCount"); return i; }
inline const Iri& sh_class() { static const Iri i = detail::term("sh", "class"); return i; }
inline const Iri& sh_datatype() { static const Iri i = detail::term("sh", "datatype"); return i; }
inline const Iri& sh_nodeKind() { static const Iri i = detail::term("sh", "nodeKind"); return i; }
inline const Iri& rdf_type() { return rdf::type(); }

// Datatypes
inline const Iri& xsd_string() { return xsd::string_type(); }
inline const Iri& xsd_date() { return xsd::date_type(); }
inline const Iri& xsd_integer() { return xsd::integer_type(); }
inline const Iri& rdf_langString() { return rdf::lang_string_type(); }

/// Every class and property term of the profile, keyed by CURIE.
struct TermRegistry {
    std::set<Iri> classes;
    std::set<Iri> properties;
    std::map<std::string, Iri> by_short_name;

    bool contains(const Iri& iri) const {
        return classes.count(iri) > 0 || properties.count(iri) > 0;
    }

    /// Lookup by CURIE short name ("airo:AISystem"). Total over the
    /// registered terms; anything else raises.
    const Iri& lookup(const std::string& short_name) const {
        auto it = by_short_name.find(short_name);
        if (it == by_short_name.end())
            throw lookup_error("term not in the profile registry: " + short_name);
        return it->second;
    }
};

inline const TermRegistry& registry() {
    static const TermRegistry reg = [] {
        TermRegistry r;
        auto cls = [&](const char* name, const Iri& iri) {
            r.classes.insert(iri);
            r.by_short_name.emplace(name, iri);
        };
        auto prop = [&](const char* name, const Iri& iri) {
            r.properties.insert(iri);
            r.by_short_name.emplace(name, iri);
        };
        cls("aicat:Catalog", aicat_Catalog());
        cls("dcat:Catalog", dcat_Catalog());
        cls("dcat:Resource", dcat_Resource());
        cls("dcat:Dataset", dcat_Dataset());
        cls("airo:AISystem", airo_AISystem());
        cls("airo:AIModel", airo_AIModel());
        cls("airo:Data", airo_Data());
        cls("airo:AIProvider", airo_AIProvider());
        cls("airo:AIDeployer", airo_AIDeployer());
        cls("airo:License", airo_License());
        cls("aiup:UsePolicy", aiup_UsePolicy());
        cls("aiup:UseOffer", aiup_UseOffer());
        cls("tech:MarketAvailabilityStatus", tech_MarketAvailabilityStatus());
        cls("tech:MarketAvailable", tech_MarketAvailable());
        cls("dpv:Country", dpv_Country());
        cls("sh:NodeShape", sh_NodeShape());
        cls("sh:PropertyShape", sh_PropertyShape());
        cls("xsd:string", xsd_string());
        cls("xsd:date", xsd_date());
        cls("xsd:integer", xsd_integer());
        cls("rdf:langString", rdf_langString());
        prop("aicat:system", aicat_system());
        prop("aicat:model", aicat_model());
        prop("dcat:dataset", dcat_dataset());
        prop("dcat:contactPoint", dcat_contactPoint());
        prop("airo:isProvidedBy", airo_isProvidedBy());
        prop("airo:isDeployedBy", airo_isDeployedBy());
        prop("airo:hasModel", airo_hasModel());
        prop("airo:hasTrainingData", airo_hasTrainingData());
        prop("airo:hasValidationData", airo_hasValidationData());
        prop("airo:hasTestingData", airo_hasTestingData());
        prop("airo:hasInput", airo_hasInput());
        prop("airo:hasOutput", airo_hasOutput());
        prop("airo:hasLicense", airo_hasLicense());
        prop("odrl:hasPolicy", odrl_hasPolicy());
        prop("tech:hasMarketAvailabilityStatus", tech_hasMarketAvailabilityStatus());
        prop("dpv:hasCountry", dpv_hasCountry());
        prop("dct:title", dct_title());
        prop("dct:identifier", dct_identifier());
        prop("dct:description", dct_description());
        prop("dct:created", dct_created());
        prop("dct:issued", dct_issued());
        prop("dct:isReferencedBy", dct_isReferencedBy());
        prop("sh:targetClass", sh_targetClass());
        prop("sh:path", sh_path());
        prop("sh:property", sh_property());
        prop("sh:minCount", sh_minCount());
        prop("sh:maxCount", sh_maxCount());
        prop("sh:class", sh_class());
        prop("sh:datatype", sh_datatype());
        prop("sh:nodeKind", sh_nodeKind());
        prop("rdf:type", rdf_type());
        return r;
    }();
    return reg;
}

/// Expand a CURIE against a prefix map. The prefix is everything before the
/// first ':'; an undeclared prefix raises lookup_error.
inline Iri expand_curie(const PrefixMap& prefixes, std::string_view curie) {
    auto colon = curie.find(':');
    if (colon == std::string_view::npos)
        throw lookup_error("not a CURIE (missing ':'): " + std::string(curie));
    std::string prefix(curie.substr(0, colon));
    std::string local(curie.substr(colon + 1));
    auto it = prefixes.find(prefix);
    if (it == prefixes.end()) throw lookup_error("unknown prefix: '" + prefix + ":'");
    return Iri(it->second.str() + local);
}

inline Iri expand_curie(std::string_view curie) {
    return expand_curie(default_prefixes(), curie);
}

namespace detail {
/// A local name is compactable when the resulting CURIE re-parses as a
/// prefixed name in the Turtle subset this library emits.
inline bool safe_local(std::string_view local) {
    if (local.empty()) return true;
    auto ok_char = [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
    };
    for (char c : local)
        if (!ok_char(c)) return false;
    return true;
}
}  // namespace detail

/// Compact an IRI to a CURIE using the longest matching namespace whose
/// remainder is a safe local name. Returns nullopt when no prefix applies.
inline std::optional<std::string> compact(const PrefixMap& prefixes, const Iri& iri) {
    const std::string& full = iri.str();
    const std::string* best_label = nullptr;
    const std::string* best_ns = nullptr;
    for (const auto& [label, ns_iri] : prefixes) {
        const std::string& ns_str = ns_iri.str();
        if (full.size() < ns_str.size() || full.compare(0, ns_str.size(), ns_str) != 0) continue;
        if (!detail::safe_local(std::string_view(full).substr(ns_str.size()))) continue;
        if (!best_ns || ns_str.size() > best_ns->size()) {
            best_label = &label;
            best_ns = &ns_str;
        }
    }
    if (!best_label) return std::nullopt;
    return *best_label + ":" + full.substr(best_ns->size());
}

}  // namespace vocab
}  // namespace aicat
