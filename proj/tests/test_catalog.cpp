#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "aicat/catalog.hpp"
#include "aicat/turtle.hpp"
#include "support.hpp"

using namespace aicat;
using testsupport::ex;
using testsupport::iri;

namespace {

CatalogDescriptor example_catalog() {
    CatalogDescriptor cat{ex("aieduX-catalogue-01")};
    cat.identifier = "aiedux-cat01";
    cat.title = LangText{"AIEduX catalogue", "en"};
    cat.description = LangText{"AI systems and models provided by AIEduX", "en"};
    cat.created = "2024-05-05";
    cat.systems = {ex("proctify")};
    cat.models = {ex("susbehaved_model")};
    cat.datasets = {ex("susbehaved_dataset")};
    return cat;
}

AISystemDescriptor example_system() {
    AISystemDescriptor sys{ex("proctify")};
    sys.title = LangText{"Proctify", "en"};
    sys.provider = ex("aiedux");
    sys.use_policy = ex("proctify_use_policy");
    sys.market_status = vocab::tech_MarketAvailable();
    sys.countries = {iri("http://dbpedia.org/resource/Italy")};
    sys.identifier = "aiedux-ai031";
    sys.description = LangText{"An AI-based proctoring system...", "en"};
    sys.contact_point = iri("http://example.org/aieduX-AI031/contact");
    sys.models = {ex("susbehaved_model")};
    return sys;
}

AIModelDescriptor example_model() {
    AIModelDescriptor model{ex("susbehaved_model")};
    model.title = LangText{"SusBehavedModel", "en"};
    model.identifier = "aiedux-m022";
    model.description = LangText{".. determines suspicious behaviour ..", "en"};
    model.issued = "2024-02-15";
    model.training_data = {ex("susbehaved_dataset")};
    model.use_policy = ex("susbehavedmodel_policy");
    return model;
}

DatasetDescriptor example_dataset() {
    DatasetDescriptor ds{ex("susbehaved_dataset")};
    ds.title = LangText{"SusBehavedDataSet", "en"};
    ds.identifier = "aiedux-d012";
    ds.description = LangText{".. includes suspicious behaviour data..", "en"};
    ds.use_policy = ex("susbehaved_dataset_policy");
    return ds;
}

}  // namespace

TEST_CASE("rebuilding the example catalogue from descriptors") {
    Graph rebuilt = build_catalog(example_catalog(), {example_system()}, {example_model()},
                                  {example_dataset()});
    Graph parsed = testsupport::parse_fixture("listing2.ttl");
    CHECK(rebuilt.size() == 37);
    CHECK(isomorphic(rebuilt, parsed));
}

TEST_CASE("empty catalogue descriptor emits only the catalogue node") {
    CatalogDescriptor cat = example_catalog();
    cat.systems.clear();
    cat.models.clear();
    cat.datasets.clear();
    Graph g = build_catalog(cat);
    // type x2, identifier, title, description, created
    CHECK(g.size() == 6);
    for (const Triple& t : g.triples()) CHECK(t.subject == Subject{cat.iri});
}

TEST_CASE("issued dates become typed literals") {
    CatalogDescriptor cat{iri("http://e.com/cat")};
    AIModelDescriptor model{iri("http://e.com/m")};
    model.issued = "2024-02-15";
    Graph g = build_catalog(cat, {}, {model}, {});
    CHECK(g.has(Subject{model.iri}, vocab::dct_issued(), Term{Literal::date("2024-02-15")}));

    model.issued = "not-a-date";
    CHECK_THROWS_AS(build_catalog(cat, {}, {model}, {}), structural_error);
}

TEST_CASE("duplicate resource IRIs across lists are a construction error") {
    AISystemDescriptor sys{iri("http://e.com/x")};
    AIModelDescriptor model{iri("http://e.com/x")};
    CHECK_THROWS_AS(build_catalog(CatalogDescriptor{iri("http://e.com/cat")}, {sys}, {model}, {}),
                    build_error);
}

TEST_CASE("extracted views reproduce the example catalogue") {
    Graph g = testsupport::parse_fixture("listing2.ttl");

    AISystemDescriptor sys = extract_system(g, ex("proctify"));
    CHECK(sys.market_status == vocab::tech_MarketAvailable());
    CHECK(sys.provider == ex("aiedux"));
    CHECK(sys.title == LangText{"Proctify", "en"});
    CHECK(sys.deployer == std::nullopt);

    AIModelDescriptor model = extract_model(g, ex("susbehaved_model"));
    CHECK(model.training_data == std::vector<Iri>{ex("susbehaved_dataset")});
    CHECK(model.issued == "2024-02-15");

    DatasetDescriptor ds = extract_dataset(g, ex("susbehaved_dataset"));
    CHECK(ds.use_policy == ex("susbehaved_dataset_policy"));

    CatalogDescriptor cat = extract_catalog(g, ex("aieduX-catalogue-01"));
    CHECK(cat.systems == std::vector<Iri>{ex("proctify")});
    CHECK(cat.created == "2024-05-05");

    // the generic dispatch picks the same views
    CHECK(std::holds_alternative<AISystemDescriptor>(extract_view(g, ex("proctify"))));
    CHECK(std::holds_alternative<CatalogDescriptor>(extract_view(g, ex("aieduX-catalogue-01"))));
}

TEST_CASE("extract_view errors are explicit") {
    Graph g = testsupport::parse_fixture("listing2.ttl");
    CHECK_THROWS_AS(extract_view(g, iri("http://nowhere.example/x")), extraction_error);

    Graph conflicted = g.insert(
        Triple(Subject{ex("proctify")}, rdf::type(), Term{vocab::airo_AIModel()}));
    try {
        extract_view(conflicted, ex("proctify"));
        FAIL("expected extraction_error");
    } catch (const extraction_error& e) {
        std::string msg = e.what();
        CHECK(msg.find("airo:AISystem") != std::string::npos);
        CHECK(msg.find("airo:AIModel") != std::string::npos);
    }
}

TEST_CASE("the sixteen competency questions against the example catalogue") {
    Graph g = testsupport::parse_fixture("listing2.ttl");
    const Iri system = ex("proctify");
    const Iri model = ex("susbehaved_model");
    const Iri dataset = ex("susbehaved_dataset");

    // hand-derived answer key from the catalogue text
    using CQ = CompetencyQuestion;
    auto answers = [&](CQ cq, const Iri& subject) { return answer_cq(g, cq, subject); };

    CHECK(answers(CQ::CQ1_1, system) == std::vector<Term>{Term{Literal::lang("Proctify", "en")}});
    CHECK(answers(CQ::CQ1_2, system) == std::vector<Term>{Term{ex("aiedux")}});
    CHECK(answers(CQ::CQ1_3, system).empty());
    CHECK(answers(CQ::CQ1_4, system) == std::vector<Term>{Term{ex("proctify_use_policy")}});
    CHECK(answers(CQ::CQ1_5, system) == std::vector<Term>{Term{vocab::tech_MarketAvailable()}});
    CHECK(answers(CQ::CQ1_6, system) ==
          std::vector<Term>{Term{iri("http://dbpedia.org/resource/Italy")}});
    CHECK(answers(CQ::CQ1_7, system).empty());
    CHECK(answers(CQ::CQ2_1, system) == std::vector<Term>{Term{dataset}});  // one hop via the model
    CHECK(answers(CQ::CQ2_2, system).empty());
    CHECK(answers(CQ::CQ2_3, dataset) == std::vector<Term>{Term{ex("susbehaved_dataset_policy")}});
    CHECK(answers(CQ::CQ3_1, system) == std::vector<Term>{Term{model}});
    CHECK(answers(CQ::CQ3_2, model) == std::vector<Term>{Term{Literal::date("2024-02-15")}});
    CHECK(answers(CQ::CQ3_3, model).empty());
    CHECK(answers(CQ::CQ3_4, model).empty());
    CHECK(answers(CQ::CQ3_5, model).empty());
    CHECK(answers(CQ::CQ3_6, model) == std::vector<Term>{Term{ex("susbehavedmodel_policy")}});
}

TEST_CASE("answer_cq never throws and answers stay within the graph") {
    Graph g = testsupport::parse_fixture("listing2.ttl");
    std::set<std::string> graph_terms;
    for (const Triple& t : g.triples()) graph_terms.insert(to_ntriples(t.object));

    for (CompetencyQuestion cq : all_competency_questions()) {
        for (const Iri& subject : {ex("proctify"), ex("susbehaved_model"), ex("nope"),
                                   iri("http://other.example/x")}) {
            std::vector<Term> result = answer_cq(g, cq, subject);
            for (const Term& t : result) CHECK(graph_terms.count(to_ntriples(t)) == 1);
        }
        CHECK(answer_cq(Graph(), cq, ex("proctify")).empty());
    }
}

TEST_CASE("cq ids round-trip through their string form") {
    for (CompetencyQuestion cq : all_competency_questions())
        CHECK(cq_from_string(to_string(cq)) == cq);
    CHECK_FALSE(cq_from_string("CQ9-9").has_value());
    CHECK(all_competency_questions().size() == 16);
}

TEST_CASE("every profile-mapped predicate is answerable") {
    // cross-module completeness: the CQ map must exercise every mapped
    // predicate of the specification table
    std::set<Iri> mapped;
    for (const auto& [cq, preds] : cq_predicate_map())
        for (const Iri& p : preds) mapped.insert(p);
    for (const Iri& p :
         {vocab::dct_title(), vocab::airo_isProvidedBy(), vocab::airo_isDeployedBy(),
          vocab::odrl_hasPolicy(), vocab::tech_hasMarketAvailabilityStatus(), vocab::dpv_hasCountry(),
          vocab::dct_isReferencedBy(), vocab::airo_hasTrainingData(), vocab::airo_hasValidationData(),
          vocab::airo_hasTestingData(), vocab::airo_hasInput(), vocab::airo_hasModel(),
          vocab::dct_issued(), vocab::airo_hasOutput(), vocab::airo_hasLicense()}) {
        CHECK(mapped.count(p) == 1);
        CHECK(vocab::registry().contains(p));
    }
}

TEST_CASE("list_resources reads the catalogue links") {
    Graph g = testsupport::parse_fixture("listing2.ttl");
    CHECK(list_resources(g, ResourceKind::System) == std::vector<Iri>{ex("proctify")});
    CHECK(list_resources(g, ResourceKind::Model) == std::vector<Iri>{ex("susbehaved_model")});
    CHECK(list_resources(g, ResourceKind::Dataset) == std::vector<Iri>{ex("susbehaved_dataset")});
    CHECK(list_resources(Graph(), ResourceKind::Model).empty());
}

TEST_CASE("merging two catalogues answers questions from both") {
    CatalogDescriptor cat_a{iri("http://a.example/cat")};
    AISystemDescriptor sys{iri("http://a.example/sys")};
    sys.title = LangText{"Sys A", "en"};
    Graph a = build_catalog(cat_a, {sys}, {}, {});

    CatalogDescriptor cat_b{iri("http://b.example/cat")};
    AIModelDescriptor model{iri("http://b.example/model")};
    model.issued = "2024-01-31";
    Graph b = build_catalog(cat_b, {}, {model}, {});

    Graph m = merge(a, b);
    CHECK(answer_cq(m, CompetencyQuestion::CQ1_1, sys.iri) ==
          std::vector<Term>{Term{Literal::lang("Sys A", "en")}});
    CHECK(answer_cq(m, CompetencyQuestion::CQ3_2, model.iri) ==
          std::vector<Term>{Term{Literal::date("2024-01-31")}});
    CHECK(list_resources(m, ResourceKind::System).size() == 1);
    CHECK(list_resources(m, ResourceKind::Model).size() == 1);
}

TEST_CASE("build then extract is the identity on random descriptors") {
    std::mt19937 rng(424242);
    std::uniform_int_distribution<int> coin(0, 1);
    std::uniform_int_distribution<int> small(0, 2);

    auto maybe_text = [&](const char* base) -> std::optional<LangText> {
        if (coin(rng)) return std::nullopt;
        return LangText{base + std::to_string(small(rng)), coin(rng) ? "en" : ""};
    };
    auto some_iris = [&](const char* base) {
        std::vector<Iri> out;
        int n = small(rng);
        for (int i = 0; i < n; ++i)
            out.push_back(iri(std::string("http://pool.example/") + base + std::to_string(i)));
        return out;
    };

    for (int round = 0; round < 50; ++round) {
        CatalogDescriptor cat{iri("http://t.example/cat")};
        cat.identifier = coin(rng) ? std::optional<std::string>("cat-id") : std::nullopt;
        cat.title = maybe_text("cat");
        cat.created = coin(rng) ? std::optional<std::string>("2024-03-01") : std::nullopt;

        AISystemDescriptor sys{iri("http://t.example/sys")};
        sys.title = maybe_text("sys");
        if (coin(rng)) sys.provider = iri("http://t.example/provider");
        if (coin(rng)) sys.deployer = iri("http://t.example/deployer");
        if (coin(rng)) sys.use_policy = iri("http://t.example/sys-policy");
        if (coin(rng)) sys.market_status = vocab::tech_MarketAvailable();
        sys.countries = some_iris("country");
        sys.references = some_iris("ref");
        sys.input_data = some_iris("sysinput");

        AIModelDescriptor model{iri("http://t.example/model")};
        model.title = maybe_text("model");
        if (coin(rng)) model.issued = "2023-12-01";
        model.training_data = some_iris("train");
        model.validation_data = some_iris("valid");
        model.testing_data = some_iris("test");
        model.output_data = some_iris("out");
        if (coin(rng)) model.license = iri("http://t.example/license");
        if (coin(rng)) model.use_policy = iri("http://t.example/model-policy");

        DatasetDescriptor ds{iri("http://t.example/data")};
        ds.title = maybe_text("data");
        if (coin(rng)) ds.use_policy = iri("http://t.example/data-policy");

        Graph g = build_catalog(cat, {sys}, {model}, {ds});
        AISystemDescriptor sys2 = extract_system(g, sys.iri);
        AIModelDescriptor model2 = extract_model(g, model.iri);
        DatasetDescriptor ds2 = extract_dataset(g, ds.iri);
        CatalogDescriptor cat2 = extract_catalog(g, cat.iri);

        CHECK(sys2 == sys);
        CHECK(model2 == model);
        CHECK(ds2 == ds);
        CHECK(cat2.identifier == cat.identifier);
        CHECK(cat2.title == cat.title);
        CHECK(cat2.created == cat.created);
        // the catalogue links cover the supplied resources
        CHECK(cat2.systems == std::vector<Iri>{sys.iri});
        CHECK(cat2.models == std::vector<Iri>{model.iri});
        CHECK(cat2.datasets == std::vector<Iri>{ds.iri});
    }
}
