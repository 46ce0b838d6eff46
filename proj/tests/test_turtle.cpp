#include <catch2/catch_amalgamated.hpp>

#include <json.hpp>

#include "aicat/turtle.hpp"
#include "aicat/vocab.hpp"
#include "support.hpp"

using namespace aicat;
using testsupport::ex;
using testsupport::iri;

namespace {

ParseErrorKind kind_from_name(const std::string& name) {
    static const std::map<std::string, ParseErrorKind> kinds = {
        {"UnterminatedIri", ParseErrorKind::UnterminatedIri},
        {"UnterminatedString", ParseErrorKind::UnterminatedString},
        {"UnknownPrefix", ParseErrorKind::UnknownPrefix},
        {"BadEscape", ParseErrorKind::BadEscape},
        {"UnexpectedToken", ParseErrorKind::UnexpectedToken},
        {"BadLanguageTag", ParseErrorKind::BadLanguageTag},
        {"BadNumber", ParseErrorKind::BadNumber},
    };
    return kinds.at(name);
}

nlohmann::json corpus_manifest() {
    return nlohmann::json::parse(testsupport::read_file(testsupport::fixture_path("corpus/manifest.json")));
}

}  // namespace

TEST_CASE("single statement with prefix") {
    Graph g = parse_turtle("@prefix ex: <http://example.com/> . ex:a ex:b ex:c .");
    REQUIRE(g.size() == 1);
    CHECK(g.has(Subject{iri("http://example.com/a")}, iri("http://example.com/b"),
                Term{iri("http://example.com/c")}));
    CHECK(g.prefixes().at("ex") == iri("http://example.com/"));
}

TEST_CASE("shape example parses with blank property shape and integer shorthand") {
    Graph g = testsupport::parse_fixture("listing1.ttl");
    REQUIRE(g.size() == 6);
    auto blanks = g.blank_labels();
    REQUIRE(blanks.size() == 1);
    BlankNode b(*blanks.begin());
    CHECK(g.has(Subject{b}, rdf::type(), Term{vocab::sh_PropertyShape()}));
    CHECK(g.has(Subject{b}, vocab::sh_minCount(), Term{Literal::typed("1", xsd::integer_type())}));
    CHECK(g.has(Subject{b}, vocab::sh_path(), Term{vocab::airo_isProvidedBy()}));
}

TEST_CASE("example catalogue parses to the expected property values") {
    Graph g = testsupport::parse_fixture("listing2.ttl");
    CHECK(g.has(Subject{ex("proctify")}, vocab::dct_title(), Term{Literal::lang("Proctify", "en")}));
    CHECK(g.has(Subject{ex("proctify")}, vocab::dpv_hasCountry(),
                Term{iri("http://dbpedia.org/resource/Italy")}));
    CHECK(g.has(Subject{ex("susbehaved_model")}, vocab::dct_issued(),
                Term{Literal::date("2024-02-15")}));
}

TEST_CASE("undeclared prefix is an error") {
    try {
        parse_turtle("ex:a ex:b ex:c .");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.kind() == ParseErrorKind::UnknownPrefix);
        CHECK(e.line() == 1);
        CHECK(e.column() == 1);
    }
}

TEST_CASE("integer shorthand equals the explicitly typed form") {
    Graph a = parse_turtle("@prefix ex: <http://e.com/> . ex:a ex:n 1 .");
    Graph b = parse_turtle(
        "@prefix ex: <http://e.com/> . @prefix xsd: <http://www.w3.org/2001/XMLSchema#> . "
        "ex:a ex:n \"1\"^^xsd:integer .");
    CHECK(a.triples() == b.triples());
}

TEST_CASE("plain string literals carry xsd:string") {
    Graph a = parse_turtle("@prefix ex: <http://e.com/> . ex:a ex:p \"v\" .");
    Graph b = parse_turtle(
        "@prefix ex: <http://e.com/> . @prefix xsd: <http://www.w3.org/2001/XMLSchema#> . "
        "ex:a ex:p \"v\"^^xsd:string .");
    CHECK(a.triples() == b.triples());
}

TEST_CASE("relative IRIs need a base") {
    CHECK_THROWS_AS(parse_turtle("<s> <http://e.com/p> <http://e.com/o> ."), ParseError);

    SourceDocument doc;
    doc.text = "<s> <p> <#frag> .";
    doc.base = iri("http://base.example/dir/doc");
    Graph g = parse_turtle(doc);
    REQUIRE(g.size() == 1);
    const Triple& t = g.triples()[0];
    CHECK(std::get<Iri>(t.subject) == iri("http://base.example/dir/s"));
    CHECK(t.predicate == iri("http://base.example/dir/p"));
    CHECK(std::get<Iri>(t.object) == iri("http://base.example/dir/doc#frag"));
}

TEST_CASE("anonymous nodes never collide with document labels") {
    Graph g = parse_turtle(
        "@prefix ex: <http://e.com/> .\n"
        "_:b0 ex:p [ ex:q ex:o ] .\n");
    CHECK(g.size() == 2);
    CHECK(g.blank_labels().size() == 2);
}

TEST_CASE("conformance corpus parses per manifest") {
    auto manifest = corpus_manifest();

    for (const auto& entry : manifest["valid"]) {
        const std::string file = entry["file"];
        INFO("fixture: " << file);
        Graph g = parse_turtle(testsupport::read_file(testsupport::fixture_path("corpus/" + file)));
        CHECK(g.size() == entry["triples"].get<std::size_t>());
    }

    for (const auto& entry : manifest["invalid"]) {
        const std::string file = entry["file"];
        INFO("fixture: " << file);
        try {
            parse_turtle(testsupport::read_file(testsupport::fixture_path("corpus/" + file)));
            FAIL("expected ParseError for " << file);
        } catch (const ParseError& e) {
            CHECK(to_string(e.kind()) == entry["kind"].get<std::string>());
            CHECK(e.line() == entry["line"].get<int>());
            CHECK(e.column() == entry["column"].get<int>());
        }
    }
}

TEST_CASE("corpus spot checks") {
    // IRI escapes expand to code points
    Graph esc = parse_turtle(testsupport::read_file(testsupport::fixture_path("corpus/valid_iri_escapes.ttl")));
    CHECK(esc.has(Subject{iri("http://example.com/Asset")}, iri("http://example.com/p"),
                  Term{iri("http://example.com/B")}));

    // string escapes decode
    Graph str = parse_turtle(testsupport::read_file(testsupport::fixture_path("corpus/valid_string_escapes.ttl")));
    CHECK(str.has(Subject{iri("http://example.com/a")}, iri("http://example.com/p"),
                  Term{Literal::str("line\nbreak\ttab \"quoted\" back\\slash")}));

    // prefix redeclaration applies from its position onwards
    Graph re = parse_turtle(testsupport::read_file(testsupport::fixture_path("corpus/valid_prefix_redeclare.ttl")));
    CHECK(re.has(Subject{iri("http://one.example/a")}, iri("http://one.example/p"),
                 Term{iri("http://one.example/b")}));
    CHECK(re.has(Subject{iri("http://two.example/a")}, iri("http://two.example/p"),
                 Term{iri("http://two.example/b")}));

    // 'a' maps to the full rdf:type IRI even though the catalogue document
    // declares a different rdf prefix
    Graph listing2 = testsupport::parse_fixture("listing2.ttl");
    CHECK_FALSE(listing2.match(std::nullopt, rdf::type(), std::nullopt).empty());
    CHECK(listing2.prefixes().at("rdf") == iri("http://www.w3.org/1999/02/22-rdf-syntax-ns"));
}

TEST_CASE("invalid UTF-8 is rejected with a position") {
    std::string text = "@prefix ex: <http://e.com/> .\nex:a ex:p \"\xFF\" .";
    try {
        parse_turtle(text);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.kind() == ParseErrorKind::UnexpectedToken);
        CHECK(e.line() == 2);
    }
}
