#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "aicat/rdf.hpp"
#include "aicat/vocab.hpp"

namespace aicat {

struct build_error : error {
    using error::error;
};

struct extraction_error : error {
    using error::error;
};

/// Language-tagged text. An empty tag stands for a plain string literal.
struct LangText {
    std::string text;
    std::string lang;

    Literal to_literal() const { return lang.empty() ? Literal::str(text) : Literal::lang(text, lang); }

    friend bool operator==(const LangText&, const LangText&) = default;
};

enum class ResourceKind { System, Model, Dataset };

struct CatalogDescriptor {
    Iri iri;
    std::optional<std::string> identifier;
    std::optional<LangText> title;
    std::optional<LangText> description;
    std::optional<std::string> created;  // xsd:date lexical form
    std::vector<Iri> systems;
    std::vector<Iri> models;
    std::vector<Iri> datasets;

    friend bool operator==(const CatalogDescriptor&, const CatalogDescriptor&) = default;
};

struct AISystemDescriptor {
    Iri iri;
    std::optional<LangText> title;                 // CQ1-1
    std::optional<Iri> provider;                   // CQ1-2
    std::optional<Iri> deployer;                   // CQ1-3
    std::optional<Iri> use_policy;                 // CQ1-4
    std::optional<Iri> market_status;              // CQ1-5
    std::vector<Iri> countries;                    // CQ1-6
    std::vector<Iri> references;                   // CQ1-7
    std::optional<std::string> identifier;
    std::optional<LangText> description;
    std::optional<Iri> contact_point;
    std::vector<Iri> models;
    std::vector<Iri> input_data;

    friend bool operator==(const AISystemDescriptor&, const AISystemDescriptor&) = default;
};

struct AIModelDescriptor {
    Iri iri;
    std::optional<LangText> title;
    std::optional<std::string> identifier;
    std::optional<LangText> description;
    std::optional<std::string> issued;  // CQ3-2, xsd:date lexical form
    std::vector<Iri> training_data;
    std::vector<Iri> validation_data;
    std::vector<Iri> testing_data;
    std::vector<Iri> input_data;   // CQ3-3
    std::vector<Iri> output_data;  // CQ3-4
    std::optional<Iri> license;    // CQ3-5
    std::optional<Iri> use_policy; // CQ3-6

    friend bool operator==(const AIModelDescriptor&, const AIModelDescriptor&) = default;
};

struct DatasetDescriptor {
    Iri iri;
    std::optional<LangText> title;
    std::optional<std::string> identifier;
    std::optional<LangText> description;
    std::optional<Iri> use_policy;  // CQ2-3

    friend bool operator==(const DatasetDescriptor&, const DatasetDescriptor&) = default;
};

using DescriptorView =
    std::variant<CatalogDescriptor, AISystemDescriptor, AIModelDescriptor, DatasetDescriptor>;

namespace catalog_detail {

inline void emit_text(GraphBuilder& gb, const Subject& node, const Iri& pred,
                      const std::optional<LangText>& value) {
    if (value) gb.add(node, pred, Term{value->to_literal()});
}

inline void emit_identifier(GraphBuilder& gb, const Subject& node,
                            const std::optional<std::string>& value) {
    if (value) gb.add(node, vocab::dct_identifier(), Term{Literal::str(*value)});
}

inline void emit_date(GraphBuilder& gb, const Subject& node, const Iri& pred,
                      const std::optional<std::string>& value) {
    if (value) gb.add(node, pred, Term{Literal::date(*value)});
}

inline void emit_iris(GraphBuilder& gb, const Subject& node, const Iri& pred,
                      const std::vector<Iri>& values) {
    for (const Iri& v : values) gb.add(node, pred, Term{v});
}

inline void emit_iri(GraphBuilder& gb, const Subject& node, const Iri& pred,
                     const std::optional<Iri>& value) {
    if (value) gb.add(node, pred, Term{*value});
}

/// Policies are opaque typed nodes: the link plus an aiup:UseOffer typing.
inline void emit_policy(GraphBuilder& gb, const Subject& node, const std::optional<Iri>& policy) {
    if (!policy) return;
    gb.add(node, vocab::odrl_hasPolicy(), Term{*policy});
    gb.add(Subject{*policy}, rdf::type(), Term{vocab::aiup_UseOffer()});
}

}  // namespace catalog_detail

/// Assemble a catalogue graph from typed descriptors. Absent fields emit no
/// triples. Linking triples cover the union of the catalogue's resource
/// lists and the supplied resource descriptors.
inline Graph build_catalog(const CatalogDescriptor& cat,
                           const std::vector<AISystemDescriptor>& systems = {},
                           const std::vector<AIModelDescriptor>& models = {},
                           const std::vector<DatasetDescriptor>& datasets = {}) {
    using namespace catalog_detail;

    std::set<Iri> seen;
    auto claim = [&](const Iri& iri) {
        if (!seen.insert(iri).second)
            throw build_error("duplicate resource IRI across descriptor lists: " + iri.str());
    };
    for (const auto& s : systems) claim(s.iri);
    for (const auto& m : models) claim(m.iri);
    for (const auto& d : datasets) claim(d.iri);

    GraphBuilder gb;
    gb.prefixes(vocab::default_prefixes());

    Subject cat_node{cat.iri};
    gb.add(cat_node, rdf::type(), Term{vocab::aicat_Catalog()});
    gb.add(cat_node, rdf::type(), Term{vocab::dcat_Catalog()});
    emit_identifier(gb, cat_node, cat.identifier);
    emit_text(gb, cat_node, vocab::dct_title(), cat.title);
    emit_text(gb, cat_node, vocab::dct_description(), cat.description);
    emit_date(gb, cat_node, vocab::dct_created(), cat.created);

    std::set<Iri> link_systems(cat.systems.begin(), cat.systems.end());
    std::set<Iri> link_models(cat.models.begin(), cat.models.end());
    std::set<Iri> link_datasets(cat.datasets.begin(), cat.datasets.end());
    for (const auto& s : systems) link_systems.insert(s.iri);
    for (const auto& m : models) link_models.insert(m.iri);
    for (const auto& d : datasets) link_datasets.insert(d.iri);
    for (const Iri& s : link_systems) gb.add(cat_node, vocab::aicat_system(), Term{s});
    for (const Iri& m : link_models) gb.add(cat_node, vocab::aicat_model(), Term{m});
    for (const Iri& d : link_datasets) gb.add(cat_node, vocab::dcat_dataset(), Term{d});

    for (const AISystemDescriptor& sys : systems) {
        Subject node{sys.iri};
        gb.add(node, rdf::type(), Term{vocab::airo_AISystem()});
        gb.add(node, rdf::type(), Term{vocab::dcat_Resource()});
        emit_text(gb, node, vocab::dct_title(), sys.title);
        emit_iri(gb, node, vocab::airo_isProvidedBy(), sys.provider);
        emit_iri(gb, node, vocab::airo_isDeployedBy(), sys.deployer);
        emit_policy(gb, node, sys.use_policy);
        emit_iri(gb, node, vocab::tech_hasMarketAvailabilityStatus(), sys.market_status);
        emit_iris(gb, node, vocab::dpv_hasCountry(), sys.countries);
        emit_iris(gb, node, vocab::dct_isReferencedBy(), sys.references);
        emit_identifier(gb, node, sys.identifier);
        emit_text(gb, node, vocab::dct_description(), sys.description);
        emit_iri(gb, node, vocab::dcat_contactPoint(), sys.contact_point);
        emit_iris(gb, node, vocab::airo_hasModel(), sys.models);
        emit_iris(gb, node, vocab::airo_hasInput(), sys.input_data);
    }

    for (const AIModelDescriptor& model : models) {
        Subject node{model.iri};
        gb.add(node, rdf::type(), Term{vocab::airo_AIModel()});
        gb.add(node, rdf::type(), Term{vocab::dcat_Resource()});
        emit_text(gb, node, vocab::dct_title(), model.title);
        emit_identifier(gb, node, model.identifier);
        emit_text(gb, node, vocab::dct_description(), model.description);
        emit_date(gb, node, vocab::dct_issued(), model.issued);
        emit_iris(gb, node, vocab::airo_hasTrainingData(), model.training_data);
        emit_iris(gb, node, vocab::airo_hasValidationData(), model.validation_data);
        emit_iris(gb, node, vocab::airo_hasTestingData(), model.testing_data);
        emit_iris(gb, node, vocab::airo_hasInput(), model.input_data);
        emit_iris(gb, node, vocab::airo_hasOutput(), model.output_data);
        emit_iri(gb, node, vocab::airo_hasLicense(), model.license);
        emit_policy(gb, node, model.use_policy);
    }

    for (const DatasetDescriptor& ds : datasets) {
        Subject node{ds.iri};
        gb.add(node, rdf::type(), Term{vocab::airo_Data()});
        gb.add(node, rdf::type(), Term{vocab::dcat_Dataset()});
        emit_text(gb, node, vocab::dct_title(), ds.title);
        emit_identifier(gb, node, ds.identifier);
        emit_text(gb, node, vocab::dct_description(), ds.description);
        emit_policy(gb, node, ds.use_policy);
    }

    return gb.build();
}

namespace catalog_detail {

inline std::optional<LangText> first_text(const Graph& g, const Subject& s, const Iri& p) {
    for (const Term& o : g.objects(s, p)) {
        if (const auto* lit = std::get_if<Literal>(&o))
            return LangText{lit->lexical(), lit->language()};
    }
    return std::nullopt;
}

inline std::optional<std::string> first_string(const Graph& g, const Subject& s, const Iri& p) {
    if (auto t = first_text(g, s, p)) return t->text;
    return std::nullopt;
}

inline std::optional<Iri> first_iri(const Graph& g, const Subject& s, const Iri& p) {
    for (const Term& o : g.objects(s, p))
        if (const auto* iri = std::get_if<Iri>(&o)) return *iri;
    return std::nullopt;
}

inline std::vector<Iri> all_iris(const Graph& g, const Subject& s, const Iri& p) {
    std::vector<Iri> out;
    for (const Term& o : g.objects(s, p))
        if (const auto* iri = std::get_if<Iri>(&o)) out.push_back(*iri);
    return out;
}

}  // namespace catalog_detail

inline CatalogDescriptor extract_catalog(const Graph& g, const Iri& iri) {
    using namespace catalog_detail;
    Subject node{iri};
    CatalogDescriptor d{iri};
    d.identifier = first_string(g, node, vocab::dct_identifier());
    d.title = first_text(g, node, vocab::dct_title());
    d.description = first_text(g, node, vocab::dct_description());
    d.created = first_string(g, node, vocab::dct_created());
    d.systems = all_iris(g, node, vocab::aicat_system());
    d.models = all_iris(g, node, vocab::aicat_model());
    d.datasets = all_iris(g, node, vocab::dcat_dataset());
    return d;
}

inline AISystemDescriptor extract_system(const Graph& g, const Iri& iri) {
    using namespace catalog_detail;
    Subject node{iri};
    AISystemDescriptor d{iri};
    d.title = first_text(g, node, vocab::dct_title());
    d.provider = first_iri(g, node, vocab::airo_isProvidedBy());
    d.deployer = first_iri(g, node, vocab::airo_isDeployedBy());
    d.use_policy = first_iri(g, node, vocab::odrl_hasPolicy());
    d.market_status = first_iri(g, node, vocab::tech_hasMarketAvailabilityStatus());
    d.countries = all_iris(g, node, vocab::dpv_hasCountry());
    d.references = all_iris(g, node, vocab::dct_isReferencedBy());
    d.identifier = first_string(g, node, vocab::dct_identifier());
    d.description = first_text(g, node, vocab::dct_description());
    d.contact_point = first_iri(g, node, vocab::dcat_contactPoint());
    d.models = all_iris(g, node, vocab::airo_hasModel());
    d.input_data = all_iris(g, node, vocab::airo_hasInput());
    return d;
}

inline AIModelDescriptor extract_model(const Graph& g, const Iri& iri) {
    using namespace catalog_detail;
    Subject node{iri};
    AIModelDescriptor d{iri};
    d.title = first_text(g, node, vocab::dct_title());
    d.identifier = first_string(g, node, vocab::dct_identifier());
    d.description = first_text(g, node, vocab::dct_description());
    d.issued = first_string(g, node, vocab::dct_issued());
    d.training_data = all_iris(g, node, vocab::airo_hasTrainingData());
    d.validation_data = all_iris(g, node, vocab::airo_hasValidationData());
    d.testing_data = all_iris(g, node, vocab::airo_hasTestingData());
    d.input_data = all_iris(g, node, vocab::airo_hasInput());
    d.output_data = all_iris(g, node, vocab::airo_hasOutput());
    d.license = first_iri(g, node, vocab::airo_hasLicense());
    d.use_policy = first_iri(g, node, vocab::odrl_hasPolicy());
    return d;
}

inline DatasetDescriptor extract_dataset(const Graph& g, const Iri& iri) {
    using namespace catalog_detail;
    Subject node{iri};
    DatasetDescriptor d{iri};
    d.title = first_text(g, node, vocab::dct_title());
    d.identifier = first_string(g, node, vocab::dct_identifier());
    d.description = first_text(g, node, vocab::dct_description());
    d.use_policy = first_iri(g, node, vocab::odrl_hasPolicy());
    return d;
}

/// Typed view of a node, selected by its profile type assertion. Raises
/// extraction_error when the node is untyped, unknown, or carries more than
/// one profile type.
inline DescriptorView extract_view(const Graph& g, const Iri& iri) {
    std::vector<Iri> types = g.types_of(Subject{iri});
    std::vector<std::string> markers;
    bool is_catalog = false, is_system = false, is_model = false, is_dataset = false;
    for (const Iri& t : types) {
        if (t == vocab::aicat_Catalog()) { is_catalog = true; markers.push_back("aicat:Catalog"); }
        if (t == vocab::airo_AISystem()) { is_system = true; markers.push_back("airo:AISystem"); }
        if (t == vocab::airo_AIModel()) { is_model = true; markers.push_back("airo:AIModel"); }
        if (t == vocab::airo_Data()) { is_dataset = true; markers.push_back("airo:Data"); }
    }
    int count = static_cast<int>(is_catalog) + is_system + is_model + is_dataset;
    if (count == 0)
        throw extraction_error("node " + iri.str() + " has no profile type assertion");
    if (count > 1) {
        std::string conflict;
        for (const std::string& m : markers) conflict += (conflict.empty() ? "" : ", ") + m;
        throw extraction_error("node " + iri.str() + " is ambiguously typed: " + conflict);
    }
    if (is_catalog) return extract_catalog(g, iri);
    if (is_system) return extract_system(g, iri);
    if (is_model) return extract_model(g, iri);
    return extract_dataset(g, iri);
}

enum class CompetencyQuestion {
    CQ1_1, CQ1_2, CQ1_3, CQ1_4, CQ1_5, CQ1_6, CQ1_7,
    CQ2_1, CQ2_2, CQ2_3,
    CQ3_1, CQ3_2, CQ3_3, CQ3_4, CQ3_5, CQ3_6,
};

inline const std::vector<CompetencyQuestion>& all_competency_questions() {
    static const std::vector<CompetencyQuestion> all = {
        CompetencyQuestion::CQ1_1, CompetencyQuestion::CQ1_2, CompetencyQuestion::CQ1_3,
        CompetencyQuestion::CQ1_4, CompetencyQuestion::CQ1_5, CompetencyQuestion::CQ1_6,
        CompetencyQuestion::CQ1_7, CompetencyQuestion::CQ2_1, CompetencyQuestion::CQ2_2,
        CompetencyQuestion::CQ2_3, CompetencyQuestion::CQ3_1, CompetencyQuestion::CQ3_2,
        CompetencyQuestion::CQ3_3, CompetencyQuestion::CQ3_4, CompetencyQuestion::CQ3_5,
        CompetencyQuestion::CQ3_6,
    };
    return all;
}

inline const char* to_string(CompetencyQuestion cq) {
    switch (cq) {
        case CompetencyQuestion::CQ1_1: return "CQ1-1";
        case CompetencyQuestion::CQ1_2: return "CQ1-2";
        case CompetencyQuestion::CQ1_3: return "CQ1-3";
        case CompetencyQuestion::CQ1_4: return "CQ1-4";
        case CompetencyQuestion::CQ1_5: return "CQ1-5";
        case CompetencyQuestion::CQ1_6: return "CQ1-6";
        case CompetencyQuestion::CQ1_7: return "CQ1-7";
        case CompetencyQuestion::CQ2_1: return "CQ2-1";
        case CompetencyQuestion::CQ2_2: return "CQ2-2";
        case CompetencyQuestion::CQ2_3: return "CQ2-3";
        case CompetencyQuestion::CQ3_1: return "CQ3-1";
        case CompetencyQuestion::CQ3_2: return "CQ3-2";
        case CompetencyQuestion::CQ3_3: return "CQ3-3";
        case CompetencyQuestion::CQ3_4: return "CQ3-4";
        case CompetencyQuestion::CQ3_5: return "CQ3-5";
        case CompetencyQuestion::CQ3_6: return "CQ3-6";
    }
    return "?";
}

inline std::optional<CompetencyQuestion> cq_from_string(std::string_view id) {
    for (CompetencyQuestion cq : all_competency_questions())
        if (id == to_string(cq)) return cq;
    return std::nullopt;
}

/// Predicates each question reads, as mapped by the profile. CQ2-1 is the
/// union of the three data-provenance predicates.
inline const std::map<CompetencyQuestion, std::vector<Iri>>& cq_predicate_map() {
    static const std::map<CompetencyQuestion, std::vector<Iri>> map = {
        {CompetencyQuestion::CQ1_1, {vocab::dct_title()}},
        {CompetencyQuestion::CQ1_2, {vocab::airo_isProvidedBy()}},
        {CompetencyQuestion::CQ1_3, {vocab::airo_isDeployedBy()}},
        {CompetencyQuestion::CQ1_4, {vocab::odrl_hasPolicy()}},
        {CompetencyQuestion::CQ1_5, {vocab::tech_hasMarketAvailabilityStatus()}},
        {CompetencyQuestion::CQ1_6, {vocab::dpv_hasCountry()}},
        {CompetencyQuestion::CQ1_7, {vocab::dct_isReferencedBy()}},
        {CompetencyQuestion::CQ2_1,
         {vocab::airo_hasTrainingData(), vocab::airo_hasValidationData(), vocab::airo_hasTestingData()}},
        {CompetencyQuestion::CQ2_2, {vocab::airo_hasInput()}},
        {CompetencyQuestion::CQ2_3, {vocab::odrl_hasPolicy()}},
        {CompetencyQuestion::CQ3_1, {vocab::airo_hasModel()}},
        {CompetencyQuestion::CQ3_2, {vocab::dct_issued()}},
        {CompetencyQuestion::CQ3_3, {vocab::airo_hasInput()}},
        {CompetencyQuestion::CQ3_4, {vocab::airo_hasOutput()}},
        {CompetencyQuestion::CQ3_5, {vocab::airo_hasLicense()}},
        {CompetencyQuestion::CQ3_6, {vocab::odrl_hasPolicy()}},
    };
    return map;
}

/// Answer a competency question for a subject. Missing data is an empty
/// answer, never an error. CQ2-1 unions the data-provenance links of the
/// subject with those one hop away through airo:hasModel.
inline std::vector<Term> answer_cq(const Graph& g, CompetencyQuestion cq, const Iri& subject) {
    Subject node{subject};
    std::vector<Term> out;
    const auto& preds = cq_predicate_map().at(cq);
    for (const Iri& p : preds)
        for (const Term& o : g.objects(node, p)) out.push_back(o);

    if (cq == CompetencyQuestion::CQ2_1) {
        for (const Term& model : g.objects(node, vocab::airo_hasModel())) {
            auto model_subject = as_subject(model);
            if (!model_subject) continue;
            for (const Iri& p : preds)
                for (const Term& o : g.objects(*model_subject, p)) out.push_back(o);
        }
    }

    std::sort(out.begin(), out.end(),
              [](const Term& a, const Term& b) { return to_ntriples(a) < to_ntriples(b); });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Resources linked from any catalogue node via the kind's sub-property of
/// dcat:resource, deduplicated and sorted.
inline std::vector<Iri> list_resources(const Graph& g, ResourceKind kind) {
    const Iri& pred = kind == ResourceKind::System ? vocab::aicat_system()
                      : kind == ResourceKind::Model ? vocab::aicat_model()
                                                    : vocab::dcat_dataset();
    std::set<Iri> out;
    for (const Triple& t : g.match(std::nullopt, pred, std::nullopt))
        if (const auto* iri = std::get_if<Iri>(&t.object)) out.insert(*iri);
    return {out.begin(), out.end()};
}

}  // namespace aicat
