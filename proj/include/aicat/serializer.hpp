#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "aicat/rdf.hpp"
#include "aicat/vocab.hpp"

namespace aicat {

namespace serializer_detail {

inline bool valid_prefix_label(const std::string& label) {
    if (label.empty()) return true;
    if (!std::isalpha(static_cast<unsigned char>(label[0]))) return false;
    for (char c : label)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') return false;
    return true;
}

inline PrefixMap emittable_prefixes(const Graph& g) {
    PrefixMap out;
    for (const auto& [label, ns] : g.prefixes())
        if (valid_prefix_label(label)) out.emplace(label, ns);
    return out;
}

/// Compare label text treating digit runs numerically, so "b2" < "b10".
inline bool natural_less(const std::string& a, const std::string& b) {
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        bool da = std::isdigit(static_cast<unsigned char>(a[i]));
        bool db = std::isdigit(static_cast<unsigned char>(b[j]));
        if (da && db) {
            std::size_t i2 = i, j2 = j;
            while (i2 < a.size() && std::isdigit(static_cast<unsigned char>(a[i2]))) ++i2;
            while (j2 < b.size() && std::isdigit(static_cast<unsigned char>(b[j2]))) ++j2;
            std::string_view na(a.data() + i, i2 - i), nb(b.data() + j, j2 - j);
            std::string_view ta = na.substr(na.find_first_not_of('0') == std::string_view::npos
                                                ? na.size() - 1
                                                : na.find_first_not_of('0'));
            std::string_view tb = nb.substr(nb.find_first_not_of('0') == std::string_view::npos
                                                ? nb.size() - 1
                                                : nb.find_first_not_of('0'));
            if (ta.size() != tb.size()) return ta.size() < tb.size();
            if (ta != tb) return ta < tb;
            i = i2;
            j = j2;
        } else {
            if (a[i] != b[j]) return a[i] < b[j];
            ++i;
            ++j;
        }
    }
    return a.size() - i < b.size() - j;
}

inline std::string turtle_term(const Term& t, const PrefixMap& prefixes);

inline std::string turtle_iri(const Iri& iri, const PrefixMap& prefixes) {
    if (auto curie = vocab::compact(prefixes, iri)) return *curie;
    return to_ntriples(iri);
}

inline std::string turtle_literal(const Literal& lit, const PrefixMap& prefixes) {
    std::string out = "\"" + detail::escape_literal(lit.lexical()) + "\"";
    if (lit.has_language()) return out + "@" + lit.language();
    if (lit.datatype() != xsd::string_type()) return out + "^^" + turtle_iri(lit.datatype(), prefixes);
    return out;
}

inline std::string turtle_term(const Term& t, const PrefixMap& prefixes) {
    if (const auto* iri = std::get_if<Iri>(&t)) return turtle_iri(*iri, prefixes);
    if (const auto* b = std::get_if<BlankNode>(&t)) return "_:" + b->label();
    return turtle_literal(std::get<Literal>(t), prefixes);
}

}  // namespace serializer_detail

/// Serialize to the same Turtle subset the parser accepts: prefix directives
/// from the graph's prefix map, subjects grouped with ';' lists, objects in
/// ',' lists, deterministic ordering throughout. Output re-parses to a graph
/// isomorphic to the input.
inline std::string serialize_turtle(const Graph& g) {
    using namespace serializer_detail;
    const PrefixMap prefixes = emittable_prefixes(g);

    std::string out;
    for (const auto& [label, ns] : prefixes)
        out += "@prefix " + label + ": " + to_ntriples(ns) + " .\n";
    if (!prefixes.empty() && !g.is_empty()) out += "\n";

    // triples() is already in canonical subject order; group consecutive
    // subject/predicate runs.
    const auto& triples = g.triples();
    std::size_t i = 0;
    while (i < triples.size()) {
        const Subject& subject = triples[i].subject;
        std::string subj_text = std::visit(
            [&](const auto& v) -> std::string {
                if constexpr (std::is_same_v<std::decay_t<decltype(v)>, Iri>)
                    return turtle_iri(v, prefixes);
                else
                    return "_:" + v.label();
            },
            subject);
        out += subj_text;
        bool first_predicate = true;
        while (i < triples.size() && triples[i].subject == subject) {
            const Iri& predicate = triples[i].predicate;
            out += first_predicate ? " " : " ;\n    ";
            first_predicate = false;
            out += predicate == rdf::type() ? "a" : turtle_iri(predicate, prefixes);
            bool first_object = true;
            while (i < triples.size() && triples[i].subject == subject &&
                   triples[i].predicate == predicate) {
                out += first_object ? " " : ", ";
                first_object = false;
                out += turtle_term(triples[i].object, prefixes);
                ++i;
            }
        }
        out += " .\n";
    }
    return out;
}

namespace serializer_detail {

struct Occurrence {
    bool as_subject;
    std::string predicate;
    bool other_is_blank;
    std::string other;  // ground text, or blank label
};

/// One round of colour refinement over blank nodes.
inline std::map<std::string, int> refine_colors(
    const std::map<std::string, std::vector<Occurrence>>& occ,
    const std::map<std::string, int>& colors) {
    std::map<std::string, std::string> keys;
    for (const auto& [label, parts] : occ) {
        std::vector<std::string> entries;
        entries.reserve(parts.size());
        for (const Occurrence& o : parts) {
            std::string e = (o.as_subject ? "S|" : "O|") + o.predicate + "|";
            e += o.other_is_blank ? "B" + std::to_string(colors.at(o.other)) : o.other;
            entries.push_back(std::move(e));
        }
        std::sort(entries.begin(), entries.end());
        std::string key = std::to_string(colors.at(label));
        for (const std::string& e : entries) key += ";" + e;
        keys.emplace(label, std::move(key));
    }
    std::set<std::string> distinct;
    for (const auto& [label, key] : keys) distinct.insert(key);
    std::map<std::string, int> rank;
    int r = 0;
    for (const std::string& key : distinct) rank.emplace(key, r++);
    std::map<std::string, int> next;
    for (const auto& [label, key] : keys) next.emplace(label, rank.at(key));
    return next;
}

}  // namespace serializer_detail

/// Canonical N-Triples: full IRIs, one triple per line, blank nodes
/// relabeled _:b0.. by first appearance in the canonical ordering, lines
/// sorted lexicographically. Byte-identical across runs and across input
/// triple permutations, and stable under re-canonicalization of its own
/// output.
inline std::string serialize_ntriples_canonical(const Graph& g) {
    using namespace serializer_detail;

    const std::set<std::string> labels = g.blank_labels();
    if (labels.size() > detail::kMaxBlankNodes)
        throw capacity_error("canonical N-Triples supports at most 32 blank nodes");

    std::map<std::string, int> colors;
    if (!labels.empty()) {
        std::map<std::string, std::vector<Occurrence>> occ;
        for (const std::string& l : labels) occ[l];
        for (const Triple& t : g.triples()) {
            const auto* sb = std::get_if<BlankNode>(&t.subject);
            const auto* ob = std::get_if<BlankNode>(&t.object);
            if (!sb && !ob) continue;
            std::string pred = to_ntriples(t.predicate);
            if (sb) {
                Occurrence o{true, pred, ob != nullptr,
                             ob ? ob->label() : to_ntriples(t.object)};
                occ[sb->label()].push_back(std::move(o));
            }
            if (ob) {
                Occurrence o{false, pred, sb != nullptr,
                             sb ? sb->label() : to_ntriples(t.subject)};
                occ[ob->label()].push_back(std::move(o));
            }
        }
        for (const std::string& l : labels) colors.emplace(l, 0);
        for (std::size_t round = 0; round < labels.size(); ++round) {
            auto next = refine_colors(occ, colors);
            if (next == colors) break;
            colors = std::move(next);
        }
    }

    // Order triples by colour-keyed text (label-independent), breaking exact
    // ties by natural order of the current labels.
    auto pad = [](int v) {
        char buf[8];
        std::snprintf(buf, sizeof(buf), "%06d", v);
        return std::string(buf);
    };
    auto color_text = [&](const Triple& t) {
        auto part = [&](const auto& node) -> std::string {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, BlankNode>)
                return "_:\x01" + pad(colors.at(node.label())) + "\x01";
            else
                return to_ntriples(node);
        };
        std::string s = std::visit(part, t.subject);
        s += " " + to_ntriples(t.predicate) + " ";
        s += std::visit([&](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, BlankNode>)
                return "_:\x01" + pad(colors.at(v.label())) + "\x01";
            else
                return to_ntriples(v);
        }, t.object);
        return s;
    };
    auto label_text = [&](const Triple& t) {
        std::string s = std::visit([](const auto& v) { return to_ntriples(v); }, t.subject);
        s += " " + to_ntriples(t.predicate) + " " + to_ntriples(t.object);
        return s;
    };

    std::vector<const Triple*> order;
    order.reserve(g.size());
    for (const Triple& t : g.triples()) order.push_back(&t);
    std::sort(order.begin(), order.end(), [&](const Triple* a, const Triple* b) {
        std::string ca = color_text(*a), cb = color_text(*b);
        if (ca != cb) return ca < cb;
        return natural_less(label_text(*a), label_text(*b));
    });

    std::map<std::string, std::string> assigned;
    int next_id = 0;
    auto assign = [&](const std::string& label) {
        if (!assigned.count(label)) assigned.emplace(label, "b" + std::to_string(next_id++));
    };
    for (const Triple* t : order) {
        if (const auto* b = std::get_if<BlankNode>(&t->subject)) assign(b->label());
        if (const auto* b = std::get_if<BlankNode>(&t->object)) assign(b->label());
    }

    std::vector<std::string> lines;
    lines.reserve(order.size());
    for (const Triple* t : order) {
        auto render = [&](const auto& node) -> std::string {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, BlankNode>)
                return "_:" + assigned.at(node.label());
            else
                return to_ntriples(node);
        };
        std::string line = std::visit(render, t->subject);
        line += " " + to_ntriples(t->predicate) + " ";
        line += std::visit([&](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, BlankNode>)
                return "_:" + assigned.at(v.label());
            else
                return to_ntriples(v);
        }, t->object);
        line += " .";
        lines.push_back(std::move(line));
    }
    std::sort(lines.begin(), lines.end());

    std::string out;
    for (const std::string& line : lines) {
        out += line;
        out += '\n';
    }
    return out;
}

/// Flattened JSON export: a top-level array of node objects, one per
/// subject, each carrying "@id", an optional "@type" array, and predicate
/// keys in the graph's compact (CURIE) form mapping to arrays of value
/// objects. This is a self-contained machine-readable form, not an
/// implementation of the JSON-LD processing algorithms.
inline std::string serialize_json_flat(const Graph& g) {
    using namespace serializer_detail;
    using ojson = nlohmann::ordered_json;

    const PrefixMap prefixes = emittable_prefixes(g);
    auto display_iri = [&](const Iri& iri) {
        if (auto curie = vocab::compact(prefixes, iri)) return *curie;
        return iri.str();
    };
    auto display_subject = [&](const Subject& s) {
        if (const auto* iri = std::get_if<Iri>(&s)) return display_iri(*iri);
        return "_:" + std::get<BlankNode>(s).label();
    };

    // subject → predicate display → terms (kept in canonical object order)
    std::map<std::string, std::map<std::string, std::vector<Term>>> nodes;
    std::map<std::string, std::vector<std::string>> types;
    for (const Triple& t : g.triples()) {
        std::string id = display_subject(t.subject);
        nodes.try_emplace(id);
        if (t.predicate == rdf::type() && is_iri(t.object)) {
            types[id].push_back(display_iri(std::get<Iri>(t.object)));
            continue;
        }
        nodes[id][display_iri(t.predicate)].push_back(t.object);
    }

    ojson out = ojson::array();
    for (auto& [id, preds] : nodes) {
        ojson node;
        node["@id"] = id;
        auto ty = types.find(id);
        if (ty != types.end()) {
            std::sort(ty->second.begin(), ty->second.end());
            node["@type"] = ty->second;
        }
        for (auto& [pred, terms] : preds) {
            ojson values = ojson::array();
            std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
                return to_ntriples(a) < to_ntriples(b);
            });
            for (const Term& term : terms) {
                ojson v;
                if (const auto* iri = std::get_if<Iri>(&term)) {
                    v["@id"] = display_iri(*iri);
                } else if (const auto* blank = std::get_if<BlankNode>(&term)) {
                    v["@id"] = "_:" + blank->label();
                } else {
                    const Literal& lit = std::get<Literal>(term);
                    v["@value"] = lit.lexical();
                    if (lit.has_language())
                        v["@language"] = lit.language();
                    else if (lit.datatype() != xsd::string_type())
                        v["@datatype"] = display_iri(lit.datatype());
                }
                values.push_back(std::move(v));
            }
            node[pred] = std::move(values);
        }
        out.push_back(std::move(node));
    }
    return out.dump(2);
}

}  // namespace aicat
