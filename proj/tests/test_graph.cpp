#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <sstream>

#include "aicat/rdf.hpp"
#include "aicat/turtle.hpp"
#include "support.hpp"

using namespace aicat;
using testsupport::ex;
using testsupport::iri;

namespace {

Triple t(const char* s, const char* p, const char* o) {
    return Triple(Subject{Iri(s)}, Iri(p), Term{Iri(o)});
}

std::vector<std::string> oracle_lines() {
    std::istringstream in(testsupport::read_file(testsupport::test_data_path("listing2_expanded.nt")));
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) lines.push_back(line);
    return lines;
}

}  // namespace

TEST_CASE("term invariants") {
    CHECK_THROWS_AS(Iri(""), structural_error);
    CHECK_THROWS_AS(Iri("no-scheme"), structural_error);
    CHECK_THROWS_AS(Iri("http://with space"), structural_error);
    CHECK(Iri("https://w3id.org/airo#AISystem").str() == "https://w3id.org/airo#AISystem");

    CHECK(BlankNode("b0").label() == "b0");
    CHECK(BlankNode("we ird").label() == "we_ird");

    CHECK(Literal::str("x").datatype() == xsd::string_type());
    CHECK(Literal::lang("x", "en").language() == "en");
    CHECK_THROWS_AS(Literal::typed("x", rdf::lang_string_type()), structural_error);
    CHECK_THROWS_AS(Literal::date("2024-5-5"), structural_error);
    CHECK(Literal::date("2024-05-05").lexical() == "2024-05-05");

    // NFC: composed and decomposed forms of the same IRI compare equal
    CHECK(Iri("http://ex.com/caf\xC3\xA9") == Iri("http://ex.com/cafe\xCC\x81"));
}

TEST_CASE("triple subjects are never literals") {
    CHECK_THROWS_AS(Triple::make(Term{Literal::str("x")}, iri("http://p.io/p"), Term{Iri("http://o.io/o")}),
                    structural_error);
    CHECK_NOTHROW(Triple::make(Term{Iri("http://s.io/s")}, iri("http://p.io/p"), Term{Literal::str("x")}));
}

TEST_CASE("insert is persistent and set-semantic") {
    Graph empty;
    Triple statement = t("http://example.com/proctify#proctify",
                         "http://www.w3.org/1999/02/22-rdf-syntax-ns#type",
                         "https://w3id.org/airo#AISystem");
    Graph one = empty.insert(statement);
    CHECK(one.size() == 1);
    CHECK(empty.size() == 0);  // input value unchanged
    Graph two = one.insert(statement);
    CHECK(two.size() == 1);
    CHECK(one.contains(statement));
}

TEST_CASE("inserting every statement of the example catalogue") {
    const auto expected = oracle_lines();
    REQUIRE(expected.size() == 37);  // hand expansion of the ';' and ',' lists

    Graph parsed = testsupport::parse_fixture("listing2.ttl");
    CHECK(parsed.size() == expected.size());

    // one insert per statement, starting from the empty graph
    Graph g;
    for (const Triple& triple : parsed.triples()) g = g.insert(triple);
    CHECK(g.size() == expected.size());

    // the hand-written expansion parses to exactly the same triple set
    Graph oracle = parse_turtle(testsupport::read_file(testsupport::test_data_path("listing2_expanded.nt")));
    REQUIRE(oracle.size() == expected.size());
    CHECK(oracle.triples() == parsed.triples());
}

TEST_CASE("match agrees with bound positions and keeps canonical order") {
    Graph listing2 = testsupport::parse_fixture("listing2.ttl");

    auto provider = listing2.match(Subject{ex("proctify")}, iri("https://w3id.org/airo#isProvidedBy"),
                                   std::nullopt);
    REQUIRE(provider.size() == 1);
    CHECK(provider[0].object == Term{ex("aiedux")});

    CHECK(Graph().match(std::nullopt, std::nullopt, std::nullopt).empty());

    auto offers = listing2.match(std::nullopt, rdf::type(), Term{iri("https://w3id.org/aiup#UseOffer")});
    CHECK(offers.size() == 3);

    auto all = listing2.match(std::nullopt, std::nullopt, std::nullopt);
    CHECK(all.size() == listing2.size());
    CHECK(std::is_sorted(all.begin(), all.end()));
}

TEST_CASE("merge unions triples, renames colliding blanks, keeps left prefixes") {
    Graph g = testsupport::parse_fixture("listing2.ttl");
    CHECK(isomorphic(merge(g, Graph()), g));
    CHECK(isomorphic(merge(g, g), g));

    Graph a = GraphBuilder()
                  .add(Subject{BlankNode("x")}, iri("http://p.io/p"), Term{Literal::str("left")})
                  .prefix("p", iri("http://left.example/"))
                  .build();
    Graph b = GraphBuilder()
                  .add(Subject{BlankNode("x")}, iri("http://p.io/p"), Term{Literal::str("right")})
                  .prefix("p", iri("http://right.example/"))
                  .prefix("q", iri("http://only-right.example/"))
                  .build();
    Graph m = merge(a, b);
    CHECK(m.size() == 2);
    CHECK(m.blank_labels().size() == 2);  // collision renamed
    CHECK(m.prefixes().at("p") == iri("http://left.example/"));
    CHECK(m.prefixes().at("q") == iri("http://only-right.example/"));

    // merge(a,b) contains an isomorphic image of every triple of both inputs
    for (const Graph* part : {&a, &b})
        for (const Triple& triple : part->triples()) {
            Graph single = Graph().insert(triple);
            bool found = false;
            for (const Triple& mt : m.triples())
                if (isomorphic(single, Graph().insert(mt))) found = true;
            CHECK(found);
        }
}

TEST_CASE("isomorphism up to blank relabeling") {
    Graph listing1 = testsupport::parse_fixture("listing1.ttl");
    CHECK(isomorphic(listing1, listing1));

    // relabel the anonymous property-shape node
    GraphBuilder relabeled;
    for (const Triple& triple : listing1.triples()) {
        Subject s = std::holds_alternative<BlankNode>(triple.subject) ? Subject{BlankNode("other")}
                                                                      : triple.subject;
        Term o = is_blank(triple.object) ? Term{BlankNode("other")} : triple.object;
        relabeled.add(s, triple.predicate, o);
    }
    Graph renamed = relabeled.build();
    CHECK(isomorphic(listing1, renamed));
    CHECK(testsupport::brute_force_isomorphic(listing1, renamed));

    // dropping one triple breaks isomorphism
    GraphBuilder smaller;
    for (std::size_t i = 0; i + 1 < listing1.triples().size(); ++i) smaller.add(listing1.triples()[i]);
    CHECK_FALSE(isomorphic(listing1, smaller.build()));

    // ground graphs with different triples are not isomorphic
    Graph x = Graph().insert(t("http://a.io/a", "http://p.io/p", "http://b.io/b"));
    Graph y = Graph().insert(t("http://a.io/a", "http://p.io/p", "http://c.io/c"));
    CHECK_FALSE(isomorphic(x, y));
}

TEST_CASE("isomorphism agrees with the brute-force oracle on random graphs") {
    std::mt19937 rng(20240515);
    std::vector<Iri> iris = {iri("http://n.io/a"), iri("http://n.io/b"), iri("http://n.io/c")};
    std::vector<Iri> preds = {iri("http://p.io/p"), iri("http://p.io/q")};

    auto random_graph = [&](int blanks) {
        GraphBuilder gb;
        std::uniform_int_distribution<int> triples(1, 6);
        std::uniform_int_distribution<int> node(0, static_cast<int>(iris.size()) + blanks - 1);
        std::uniform_int_distribution<int> pred(0, static_cast<int>(preds.size()) - 1);
        int n = triples(rng);
        for (int i = 0; i < n; ++i) {
            int s = node(rng), o = node(rng);
            Subject subj = s < static_cast<int>(iris.size())
                               ? Subject{iris[s]}
                               : Subject{BlankNode("n" + std::to_string(s))};
            Term obj = o < static_cast<int>(iris.size())
                           ? Term{iris[o]}
                           : Term{BlankNode("n" + std::to_string(o))};
            gb.add(subj, preds[pred(rng)], obj);
        }
        return gb.build();
    };

    for (int round = 0; round < 200; ++round) {
        Graph a = random_graph(3);
        Graph b = random_graph(3);
        CHECK(isomorphic(a, b) == testsupport::brute_force_isomorphic(a, b));
        CHECK(isomorphic(a, a));
        CHECK(isomorphic(a, b) == isomorphic(b, a));
    }
}

TEST_CASE("insert and match obey the size and visibility laws") {
    std::mt19937 rng(77);
    std::vector<Iri> pool = {iri("http://n.io/a"), iri("http://n.io/b"), iri("http://n.io/c"),
                             iri("http://n.io/d")};
    std::uniform_int_distribution<int> pick(0, static_cast<int>(pool.size()) - 1);

    Graph g;
    for (int i = 0; i < 100; ++i) {
        Triple triple(Subject{pool[pick(rng)]}, pool[pick(rng)], Term{pool[pick(rng)]});
        std::size_t before = g.size();
        Graph next = g.insert(triple);
        CHECK((next.size() == before || next.size() == before + 1));
        CHECK(next.contains(triple));
        auto found = next.match(Subject{triple.subject}, triple.predicate, triple.object);
        CHECK(std::find(found.begin(), found.end(), triple) != found.end());
        g = next;
    }
    CHECK(g.match(std::nullopt, std::nullopt, std::nullopt).size() == g.size());
}
