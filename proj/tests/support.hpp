#pragma once

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "aicat/rdf.hpp"
#include "aicat/turtle.hpp"

namespace testsupport {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline std::string fixture_path(const std::string& name) {
    return std::string(AICAT_FIXTURE_DIR) + "/" + name;
}

inline std::string test_data_path(const std::string& name) {
    return std::string(AICAT_TEST_DATA_DIR) + "/" + name;
}

inline aicat::Graph parse_fixture(const std::string& name) {
    return aicat::parse_turtle(read_file(fixture_path(name)));
}

inline aicat::Iri iri(const std::string& s) { return aicat::Iri(s); }

inline aicat::Iri ex(const std::string& local) {
    return aicat::Iri("http://example.com/proctify#" + local);
}

/// Exhaustive blank-node bijection search, used as an independent oracle for
/// aicat::isomorphic on small graphs. No pruning beyond size checks.
inline bool brute_force_isomorphic(const aicat::Graph& a, const aicat::Graph& b) {
    using namespace aicat;
    if (a.size() != b.size()) return false;
    const auto a_labels = a.blank_labels();
    const auto b_labels = b.blank_labels();
    std::vector<std::string> la(a_labels.begin(), a_labels.end());
    std::vector<std::string> lb(b_labels.begin(), b_labels.end());
    if (la.size() != lb.size()) return false;

    auto rendered = [](const Graph& g, const std::map<std::string, std::string>& map) {
        std::set<std::string> lines;
        for (const Triple& t : g.triples()) {
            auto name = [&](const BlankNode& bn) {
                auto it = map.find(bn.label());
                return "_:" + (it == map.end() ? bn.label() : it->second);
            };
            std::string line;
            if (const auto* bn = std::get_if<BlankNode>(&t.subject))
                line += name(*bn);
            else
                line += to_ntriples(t.subject);
            line += " " + to_ntriples(t.predicate) + " ";
            if (const auto* bn = std::get_if<BlankNode>(&t.object))
                line += name(*bn);
            else
                line += to_ntriples(t.object);
            lines.insert(line);
        }
        return lines;
    };

    const auto b_lines = rendered(b, {});
    std::sort(la.begin(), la.end());
    std::vector<std::string> perm = lb;
    std::sort(perm.begin(), perm.end());
    do {
        std::map<std::string, std::string> map;
        for (std::size_t i = 0; i < la.size(); ++i) map[la[i]] = perm[i];
        if (rendered(a, map) == b_lines) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return la.empty() ? rendered(a, {}) == b_lines : false;
}

}  // namespace testsupport
