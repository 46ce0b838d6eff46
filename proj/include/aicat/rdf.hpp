#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <unicode/normalizer2.h>
#include <unicode/unistr.h>

namespace aicat {

/// Base class for all errors raised by this library.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A term or triple violates a structural invariant (e.g. literal subject).
struct structural_error : error {
    using error::error;
};

/// An operation exceeded a documented capacity limit.
struct capacity_error : error {
    using error::error;
};

namespace unicode {

inline bool is_ascii(std::string_view s) {
    for (unsigned char c : s)
        if (c >= 0x80) return false;
    return true;
}

/// NFC-normalize a UTF-8 string. ASCII input is returned unchanged.
inline std::string nfc(std::string_view utf8) {
    if (is_ascii(utf8)) return std::string(utf8);
    UErrorCode ec = U_ZERO_ERROR;
    const icu::Normalizer2* norm = icu::Normalizer2::getNFCInstance(ec);
    if (U_FAILURE(ec) || norm == nullptr) return std::string(utf8);
    icu::UnicodeString in = icu::UnicodeString::fromUTF8(
        icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
    icu::UnicodeString out = norm->normalize(in, ec);
    if (U_FAILURE(ec)) return std::string(utf8);
    std::string result;
    out.toUTF8String(result);
    return result;
}

/// Validate UTF-8 encoding (rejects truncated sequences, bare continuation
/// bytes, overlong ASCII encodings and surrogate code points).
inline bool valid_utf8(std::string_view s) {
    std::size_t i = 0;
    while (i < s.size()) {
        unsigned char c = static_cast<unsigned char>(s[i]);
        std::size_t len;
        std::uint32_t cp;
        if (c < 0x80) {
            ++i;
            continue;
        } else if ((c & 0xE0) == 0xC0) {
            len = 2;
            cp = c & 0x1F;
        } else if ((c & 0xF0) == 0xE0) {
            len = 3;
            cp = c & 0x0F;
        } else if ((c & 0xF8) == 0xF0) {
            len = 4;
            cp = c & 0x07;
        } else {
            return false;
        }
        if (i + len > s.size()) return false;
        for (std::size_t k = 1; k < len; ++k) {
            unsigned char cc = static_cast<unsigned char>(s[i + k]);
            if ((cc & 0xC0) != 0x80) return false;
            cp = (cp << 6) | (cc & 0x3F);
        }
        if (len == 2 && cp < 0x80) return false;
        if (len == 3 && cp < 0x800) return false;
        if (len == 4 && cp < 0x10000) return false;
        if (cp > 0x10FFFF) return false;
        if (cp >= 0xD800 && cp <= 0xDFFF) return false;
        i += len;
    }
    return true;
}

inline void append_utf8(std::string& out, char32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

}  // namespace unicode

/// Absolute IRI. The value is NFC-normalized on construction and compared
/// byte-wise afterwards; no case or dot-segment normalization is applied.
class Iri {
public:
    explicit Iri(std::string value) : value_(unicode::nfc(value)) {
        if (value_.empty()) throw structural_error("IRI must not be empty");
        for (unsigned char c : value_) {
            if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c < 0x20 ||
                c == '<' || c == '>' || c == '"')
                throw structural_error("IRI contains forbidden character: " + value_);
        }
        auto colon = value_.find(':');
        if (colon == std::string::npos || colon == 0)
            throw structural_error("IRI lacks a scheme: " + value_);
        if (!std::isalpha(static_cast<unsigned char>(value_[0])))
            throw structural_error("IRI scheme must start with a letter: " + value_);
        for (std::size_t i = 1; i < colon; ++i) {
            char c = value_[i];
            if (!std::isalnum(static_cast<unsigned char>(c)) && c != '+' && c != '-' && c != '.')
                throw structural_error("IRI has an invalid scheme: " + value_);
        }
    }

    const std::string& str() const { return value_; }

    friend bool operator==(const Iri& a, const Iri& b) { return a.value_ == b.value_; }
    friend bool operator!=(const Iri& a, const Iri& b) { return !(a == b); }
    friend bool operator<(const Iri& a, const Iri& b) { return a.value_ < b.value_; }

private:
    std::string value_;
};

/// Blank node label, locally scoped to one graph. Labels are normalized to
/// [A-Za-z0-9_]+ on construction.
class BlankNode {
public:
    explicit BlankNode(std::string label) {
        for (char& c : label) {
            if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') c = '_';
        }
        if (label.empty()) label = "b";
        label_ = std::move(label);
    }

    const std::string& label() const { return label_; }

    friend bool operator==(const BlankNode& a, const BlankNode& b) { return a.label_ == b.label_; }
    friend bool operator!=(const BlankNode& a, const BlankNode& b) { return !(a == b); }
    friend bool operator<(const BlankNode& a, const BlankNode& b) { return a.label_ < b.label_; }

private:
    std::string label_;
};

namespace xsd {
inline const Iri& string_type() {
    static const Iri iri{"http://www.w3.org/2001/XMLSchema#string"};
    return iri;
}
inline const Iri& integer_type() {
    static const Iri iri{"http://www.w3.org/2001/XMLSchema#integer"};
    return iri;
}
inline const Iri& date_type() {
    static const Iri iri{"http://www.w3.org/2001/XMLSchema#date"};
    return iri;
}
}  // namespace xsd

namespace rdf {
inline const Iri& lang_string_type() {
    static const Iri iri{"http://www.w3.org/1999/02/22-rdf-syntax-ns#langString"};
    return iri;
}
inline const Iri& type() {
    static const Iri iri{"http://www.w3.org/1999/02/22-rdf-syntax-ns#type"};
    return iri;
}
}  // namespace rdf

/// RDF literal: lexical form plus datatype, with a BCP-47 language tag when
/// (and only when) the datatype is rdf:langString.
class Literal {
public:
    static Literal str(std::string lexical) {
        return Literal(std::move(lexical), xsd::string_type(), "");
    }

    static Literal lang(std::string lexical, std::string tag) {
        if (tag.empty()) throw structural_error("language tag must not be empty");
        return Literal(std::move(lexical), rdf::lang_string_type(), std::move(tag));
    }

    static Literal typed(std::string lexical, Iri datatype) {
        return Literal(std::move(lexical), std::move(datatype), "");
    }

    static Literal integer(long long value) {
        return Literal(std::to_string(value), xsd::integer_type(), "");
    }

    static Literal date(std::string yyyy_mm_dd) {
        return Literal(std::move(yyyy_mm_dd), xsd::date_type(), "");
    }

    const std::string& lexical() const { return lexical_; }
    const Iri& datatype() const { return datatype_; }
    /// Empty when the literal carries no language tag.
    const std::string& language() const { return language_; }
    bool has_language() const { return !language_.empty(); }

    friend bool operator==(const Literal& a, const Literal& b) {
        return a.lexical_ == b.lexical_ && a.datatype_ == b.datatype_ && a.language_ == b.language_;
    }
    friend bool operator!=(const Literal& a, const Literal& b) { return !(a == b); }

private:
    Literal(std::string lexical, Iri datatype, std::string language)
        : lexical_(std::move(lexical)), datatype_(std::move(datatype)), language_(std::move(language)) {
        if (datatype_ == rdf::lang_string_type()) {
            if (language_.empty())
                throw structural_error("rdf:langString literal requires a language tag");
        } else if (!language_.empty()) {
            throw structural_error("language tag is only allowed on rdf:langString literals");
        }
        if (datatype_ == xsd::date_type() && !date_shape_ok(lexical_))
            throw structural_error("xsd:date literal must match YYYY-MM-DD: " + lexical_);
    }

    static bool date_shape_ok(const std::string& s) {
        if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
        for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u})
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
        return true;
    }

    std::string lexical_;
    Iri datatype_;
    std::string language_;
};

using Term = std::variant<Iri, BlankNode, Literal>;
using Subject = std::variant<Iri, BlankNode>;

inline Term to_term(const Subject& s) {
    return std::visit([](const auto& v) -> Term { return v; }, s);
}

inline std::optional<Subject> as_subject(const Term& t) {
    if (const auto* iri = std::get_if<Iri>(&t)) return Subject{*iri};
    if (const auto* blank = std::get_if<BlankNode>(&t)) return Subject{*blank};
    return std::nullopt;
}

inline bool is_literal(const Term& t) { return std::holds_alternative<Literal>(t); }
inline bool is_iri(const Term& t) { return std::holds_alternative<Iri>(t); }
inline bool is_blank(const Term& t) { return std::holds_alternative<BlankNode>(t); }

namespace detail {

/// Escape a literal lexical form for N-Triples / Turtle output.
inline std::string escape_literal(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (unsigned char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (c < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04X", c);
                    out += buf;
                } else {
                    out.push_back(static_cast<char>(c));
                }
        }
    }
    return out;
}

}  // namespace detail

inline std::string to_ntriples(const Iri& iri) { return "<" + iri.str() + ">"; }
inline std::string to_ntriples(const BlankNode& b) { return "_:" + b.label(); }

inline std::string to_ntriples(const Literal& lit) {
    std::string out = "\"" + detail::escape_literal(lit.lexical()) + "\"";
    if (lit.has_language()) {
        out += "@" + lit.language();
    } else if (lit.datatype() != xsd::string_type()) {
        out += "^^" + to_ntriples(lit.datatype());
    }
    return out;
}

inline std::string to_ntriples(const Term& t) {
    return std::visit([](const auto& v) { return to_ntriples(v); }, t);
}

inline std::string to_ntriples(const Subject& s) {
    return std::visit([](const auto& v) { return to_ntriples(v); }, s);
}

/// One RDF statement. Subjects are IRIs or blank nodes, predicates IRIs only.
struct Triple {
    Subject subject;
    Iri predicate;
    Term object;

    Triple(Subject s, Iri p, Term o)
        : subject(std::move(s)), predicate(std::move(p)), object(std::move(o)) {}

    /// Checked construction from loosely-typed terms.
    static Triple make(const Term& s, Iri p, Term o) {
        auto subj = as_subject(s);
        if (!subj) throw structural_error("triple subject must not be a literal");
        return Triple(*subj, std::move(p), std::move(o));
    }

    std::string to_line() const {
        return to_ntriples(subject) + " " + to_ntriples(predicate) + " " + to_ntriples(object) + " .";
    }

    friend bool operator==(const Triple& a, const Triple& b) {
        return a.subject == b.subject && a.predicate == b.predicate && a.object == b.object;
    }
    friend bool operator!=(const Triple& a, const Triple& b) { return !(a == b); }

    // Canonical-text ordering (subject, predicate, object).
    friend bool operator<(const Triple& a, const Triple& b) {
        std::string as = to_ntriples(a.subject), bs = to_ntriples(b.subject);
        if (as != bs) return as < bs;
        if (a.predicate != b.predicate) return a.predicate < b.predicate;
        return to_ntriples(a.object) < to_ntriples(b.object);
    }
};

using PrefixMap = std::map<std::string, Iri>;

/// Immutable RDF graph with set semantics over its triples and a prefix map
/// carried along for serialization. Copies are O(1); mutating operations
/// return new values, so graphs can be shared freely across threads.
class Graph {
public:
    Graph() : triples_(empty_triples()), prefixes_(empty_prefixes()) {}

    static Graph empty() { return Graph(); }

    std::size_t size() const { return triples_->size(); }
    bool is_empty() const { return triples_->empty(); }

    /// All triples, in canonical (subject, predicate, object) text order.
    const std::vector<Triple>& triples() const { return *triples_; }
    const PrefixMap& prefixes() const { return *prefixes_; }

    bool contains(const Triple& t) const {
        return std::binary_search(triples_->begin(), triples_->end(), t);
    }

    bool has(const Subject& s, const Iri& p, const Term& o) const {
        return contains(Triple(s, p, o));
    }

    Graph insert(const Triple& t) const {
        if (contains(t)) return *this;
        auto next = std::make_shared<std::vector<Triple>>(*triples_);
        next->insert(std::upper_bound(next->begin(), next->end(), t), t);
        return Graph(std::move(next), prefixes_);
    }

    Graph with_prefix(const std::string& label, const Iri& ns) const {
        auto next = std::make_shared<PrefixMap>(*prefixes_);
        next->insert_or_assign(label, ns);
        return Graph(triples_, std::move(next));
    }

    Graph with_prefixes(const PrefixMap& map) const {
        auto next = std::make_shared<PrefixMap>(*prefixes_);
        for (const auto& [label, ns] : map) next->insert_or_assign(label, ns);
        return Graph(triples_, std::move(next));
    }

    /// Pattern match; unbound positions match anything. Results keep the
    /// graph's canonical order.
    std::vector<Triple> match(const std::optional<Subject>& s,
                              const std::optional<Iri>& p,
                              const std::optional<Term>& o) const {
        std::vector<Triple> out;
        for (const Triple& t : *triples_) {
            if (s && !(t.subject == *s)) continue;
            if (p && !(t.predicate == *p)) continue;
            if (o && !(t.object == *o)) continue;
            out.push_back(t);
        }
        return out;
    }

    /// Objects of (s, p, ?), in canonical order.
    std::vector<Term> objects(const Subject& s, const Iri& p) const {
        std::vector<Term> out;
        for (const Triple& t : match(s, p, std::nullopt)) out.push_back(t.object);
        return out;
    }

    /// Subjects carrying an rdf:type of the given class, deduplicated and
    /// in canonical order.
    std::vector<Subject> subjects_of_type(const Iri& type_iri) const {
        std::vector<Subject> out;
        for (const Triple& t : match(std::nullopt, rdf::type(), Term{type_iri}))
            out.push_back(t.subject);
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    std::vector<Iri> types_of(const Subject& s) const {
        std::vector<Iri> out;
        for (const Term& o : objects(s, rdf::type()))
            if (const auto* iri = std::get_if<Iri>(&o)) out.push_back(*iri);
        return out;
    }

    std::set<std::string> blank_labels() const {
        std::set<std::string> labels;
        for (const Triple& t : *triples_) {
            if (const auto* b = std::get_if<BlankNode>(&t.subject)) labels.insert(b->label());
            if (const auto* b = std::get_if<BlankNode>(&t.object)) labels.insert(b->label());
        }
        return labels;
    }

private:
    friend class GraphBuilder;

    Graph(std::shared_ptr<const std::vector<Triple>> t, std::shared_ptr<const PrefixMap> p)
        : triples_(std::move(t)), prefixes_(std::move(p)) {}

    static std::shared_ptr<const std::vector<Triple>> empty_triples() {
        static const auto v = std::make_shared<const std::vector<Triple>>();
        return v;
    }
    static std::shared_ptr<const PrefixMap> empty_prefixes() {
        static const auto m = std::make_shared<const PrefixMap>();
        return m;
    }

    std::shared_ptr<const std::vector<Triple>> triples_;
    std::shared_ptr<const PrefixMap> prefixes_;
};

/// Batch construction; cheaper than chained Graph::insert. One builder per
/// thread — the built Graph is what gets shared.
class GraphBuilder {
public:
    GraphBuilder() = default;

    explicit GraphBuilder(const Graph& base)
        : triples_(base.triples().begin(), base.triples().end()), prefixes_(base.prefixes()) {}

    GraphBuilder& add(Triple t) {
        triples_.push_back(std::move(t));
        return *this;
    }

    GraphBuilder& add(Subject s, Iri p, Term o) {
        return add(Triple(std::move(s), std::move(p), std::move(o)));
    }

    GraphBuilder& prefix(const std::string& label, const Iri& ns) {
        prefixes_.insert_or_assign(label, ns);
        return *this;
    }

    GraphBuilder& prefixes(const PrefixMap& map) {
        for (const auto& [label, ns] : map) prefixes_.insert_or_assign(label, ns);
        return *this;
    }

    Graph build() const {
        auto sorted = std::make_shared<std::vector<Triple>>(triples_);
        std::sort(sorted->begin(), sorted->end());
        sorted->erase(std::unique(sorted->begin(), sorted->end()), sorted->end());
        return Graph(std::move(sorted), std::make_shared<PrefixMap>(prefixes_));
    }

private:
    std::vector<Triple> triples_;
    PrefixMap prefixes_;
};

namespace detail {

inline Subject rename_subject(const Subject& s, const std::map<std::string, std::string>& renames) {
    if (const auto* b = std::get_if<BlankNode>(&s)) {
        auto it = renames.find(b->label());
        if (it != renames.end()) return Subject{BlankNode(it->second)};
    }
    return s;
}

inline Term rename_term(const Term& t, const std::map<std::string, std::string>& renames) {
    if (const auto* b = std::get_if<BlankNode>(&t)) {
        auto it = renames.find(b->label());
        if (it != renames.end()) return Term{BlankNode(it->second)};
    }
    return t;
}

}  // namespace detail

/// Union of two graphs. Blank nodes of `b` are renamed when their labels
/// collide with labels already used in `a`; prefix bindings of `a` win.
inline Graph merge(const Graph& a, const Graph& b) {
    const std::set<std::string> a_labels = a.blank_labels();
    std::set<std::string> used = a_labels;
    for (const std::string& l : b.blank_labels()) used.insert(l);

    std::map<std::string, std::string> renames;
    std::size_t counter = 0;
    for (const std::string& label : b.blank_labels()) {
        if (!a_labels.count(label)) continue;
        std::string fresh;
        do {
            fresh = "b" + std::to_string(counter++);
        } while (used.count(fresh));
        used.insert(fresh);
        renames.emplace(label, fresh);
    }

    GraphBuilder builder(a);
    for (const Triple& t : b.triples())
        builder.add(detail::rename_subject(t.subject, renames), t.predicate,
                    detail::rename_term(t.object, renames));
    for (const auto& [label, ns] : b.prefixes())
        if (!a.prefixes().count(label)) builder.prefix(label, ns);
    return builder.build();
}

namespace detail {

constexpr std::size_t kMaxBlankNodes = 32;

struct IsoContext {
    std::vector<std::string> a_blanks, b_blanks;
    // Triples containing at least one blank node, as template strings where
    // blank slots are '\x01'+label+'\x01'.
    std::set<std::string> a_shapes, b_shapes;
};

inline std::string blank_slot(const std::string& label) { return "\x01" + label + "\x01"; }

inline std::string shape_of(const Triple& t) {
    std::string s;
    if (const auto* b = std::get_if<BlankNode>(&t.subject))
        s += blank_slot(b->label());
    else
        s += to_ntriples(t.subject);
    s += " " + to_ntriples(t.predicate) + " ";
    if (const auto* b = std::get_if<BlankNode>(&t.object))
        s += blank_slot(b->label());
    else
        s += to_ntriples(t.object);
    return s;
}

/// Occurrence signature of a blank node: every triple it participates in,
/// with its own slot marked '*' and other blanks marked '?'. Used to prune
/// the bijection search.
inline std::map<std::string, std::vector<std::string>> blank_signatures(const Graph& g) {
    std::map<std::string, std::vector<std::string>> sig;
    for (const Triple& t : g.triples()) {
        const auto* sb = std::get_if<BlankNode>(&t.subject);
        const auto* ob = std::get_if<BlankNode>(&t.object);
        if (!sb && !ob) continue;
        auto part = [&](bool self_is_subject) {
            std::string s;
            if (sb)
                s += (self_is_subject ? "*" : "?");
            else
                s += to_ntriples(t.subject);
            s += "|" + to_ntriples(t.predicate) + "|";
            if (ob)
                s += (self_is_subject ? "?" : "*");
            else
                s += to_ntriples(t.object);
            return s;
        };
        if (sb) sig[sb->label()].push_back(part(true));
        if (ob && (!sb || ob->label() != sb->label())) sig[ob->label()].push_back(part(false));
        if (sb && ob && sb->label() == ob->label()) {
            // Self-loop: record from the subject side only, with both slots marked.
            sig[sb->label()].back() = "*|" + to_ntriples(t.predicate) + "|*";
        }
    }
    for (auto& [label, parts] : sig) std::sort(parts.begin(), parts.end());
    return sig;
}

inline bool iso_search(const std::vector<std::string>& a_order, std::size_t idx,
                       std::map<std::string, std::string>& mapping, std::set<std::string>& taken,
                       const std::map<std::string, std::vector<std::string>>& a_sig,
                       const std::map<std::string, std::vector<std::string>>& b_sig,
                       const IsoContext& ctx, std::size_t& steps) {
    if (++steps > 2'000'000)
        throw capacity_error("blank-node bijection search exceeded its step budget");
    if (idx == a_order.size()) {
        // Full mapping: check the renamed non-ground triple sets agree.
        std::set<std::string> mapped;
        for (const std::string& shape : ctx.a_shapes) {
            std::string m = shape;
            for (const auto& [from, to] : mapping) {
                const std::string slot = blank_slot(from), repl = blank_slot(to);
                std::size_t pos = 0;
                while ((pos = m.find(slot, pos)) != std::string::npos) {
                    m.replace(pos, slot.size(), repl);
                    pos += repl.size();
                }
            }
            mapped.insert(std::move(m));
        }
        return mapped == ctx.b_shapes;
    }
    const std::string& a_label = a_order[idx];
    const auto& a_parts = a_sig.at(a_label);
    for (const std::string& b_label : ctx.b_blanks) {
        if (taken.count(b_label)) continue;
        if (b_sig.at(b_label) != a_parts) continue;
        mapping[a_label] = b_label;
        taken.insert(b_label);
        if (iso_search(a_order, idx + 1, mapping, taken, a_sig, b_sig, ctx, steps)) return true;
        mapping.erase(a_label);
        taken.erase(b_label);
    }
    return false;
}

}  // namespace detail

/// RDF graph isomorphism: true iff some bijection over blank-node labels
/// makes the triple sets equal. Ground triples are compared exactly.
/// Exhaustive search with signature pruning; graphs are capped at 32 blank
/// nodes each.
inline bool isomorphic(const Graph& a, const Graph& b) {
    if (a.size() != b.size()) return false;

    std::set<std::string> a_ground, b_ground;
    detail::IsoContext ctx;
    for (const Triple& t : a.triples()) {
        if (std::holds_alternative<BlankNode>(t.subject) || is_blank(t.object))
            ctx.a_shapes.insert(detail::shape_of(t));
        else
            a_ground.insert(t.to_line());
    }
    for (const Triple& t : b.triples()) {
        if (std::holds_alternative<BlankNode>(t.subject) || is_blank(t.object))
            ctx.b_shapes.insert(detail::shape_of(t));
        else
            b_ground.insert(t.to_line());
    }
    if (a_ground != b_ground) return false;
    if (ctx.a_shapes.size() != ctx.b_shapes.size()) return false;

    const auto a_labels = a.blank_labels();
    const auto b_labels = b.blank_labels();
    if (a_labels.size() != b_labels.size()) return false;
    if (a_labels.empty()) return true;
    if (a_labels.size() > detail::kMaxBlankNodes || b_labels.size() > detail::kMaxBlankNodes)
        throw capacity_error("isomorphism check supports at most 32 blank nodes per graph");

    const auto a_sig = detail::blank_signatures(a);
    const auto b_sig = detail::blank_signatures(b);

    // Signature multisets must agree before any search.
    std::vector<std::vector<std::string>> a_sigs, b_sigs;
    for (const auto& [label, parts] : a_sig) a_sigs.push_back(parts);
    for (const auto& [label, parts] : b_sig) b_sigs.push_back(parts);
    std::sort(a_sigs.begin(), a_sigs.end());
    std::sort(b_sigs.begin(), b_sigs.end());
    if (a_sigs != b_sigs) return false;

    // Assign most-constrained labels first: rarer signatures up front.
    std::map<std::vector<std::string>, int> sig_freq;
    for (const auto& s : a_sigs) ++sig_freq[s];
    std::vector<std::string> order(a_labels.begin(), a_labels.end());
    std::sort(order.begin(), order.end(), [&](const std::string& x, const std::string& y) {
        int fx = sig_freq[a_sig.at(x)], fy = sig_freq[a_sig.at(y)];
        if (fx != fy) return fx < fy;
        return x < y;
    });

    ctx.a_blanks.assign(a_labels.begin(), a_labels.end());
    ctx.b_blanks.assign(b_labels.begin(), b_labels.end());

    std::map<std::string, std::string> mapping;
    std::set<std::string> taken;
    std::size_t steps = 0;
    return detail::iso_search(order, 0, mapping, taken, a_sig, b_sig, ctx, steps);
}

}  // namespace aicat
