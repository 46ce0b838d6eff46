#pragma once

#include <cctype>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "aicat/rdf.hpp"

namespace aicat {

enum class ParseErrorKind {
    UnterminatedIri,
    UnterminatedString,
    UnknownPrefix,
    BadEscape,
    UnexpectedToken,
    BadLanguageTag,
    BadNumber,
};

inline const char* to_string(ParseErrorKind k) {
    switch (k) {
        case ParseErrorKind::UnterminatedIri: return "UnterminatedIri";
        case ParseErrorKind::UnterminatedString: return "UnterminatedString";
        case ParseErrorKind::UnknownPrefix: return "UnknownPrefix";
        case ParseErrorKind::BadEscape: return "BadEscape";
        case ParseErrorKind::UnexpectedToken: return "UnexpectedToken";
        case ParseErrorKind::BadLanguageTag: return "BadLanguageTag";
        case ParseErrorKind::BadNumber: return "BadNumber";
    }
    return "?";
}

/// Parse failure with a 1-based source position. The first error aborts the
/// parse.
class ParseError : public error {
public:
    ParseError(ParseErrorKind kind, int line, int column, const std::string& detail)
        : error(std::string(to_string(kind)) + " at " + std::to_string(line) + ":" +
                std::to_string(column) + ": " + detail),
          kind_(kind),
          line_(line),
          column_(column),
          detail_(detail) {}

    ParseErrorKind kind() const { return kind_; }
    int line() const { return line_; }
    int column() const { return column_; }
    const std::string& detail() const { return detail_; }

private:
    ParseErrorKind kind_;
    int line_;
    int column_;
    std::string detail_;
};

struct SourceDocument {
    std::string text;
    std::optional<Iri> base;
};

namespace turtle_detail {

enum class Tok {
    Eof,
    IriRef,      // text = unescaped IRI body
    PName,       // text = prefix label, aux = local part
    BlankLabel,  // text = label
    String,      // text = unescaped contents
    LangTag,     // text = tag
    Integer,     // text = lexical form as written
    Dot,
    Semicolon,
    Comma,
    LBracket,
    RBracket,
    DoubleCaret,
    PrefixDirective,
    KeywordA,
};

struct Token {
    Tok type = Tok::Eof;
    std::string text;
    std::string aux;
    int line = 1;
    int col = 1;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    [[noreturn]] static void fail(ParseErrorKind kind, int line, int col, const std::string& msg) {
        throw ParseError(kind, line, col, msg);
    }

    Token next() {
        skip_trivia();
        Token tok;
        tok.line = line_;
        tok.col = col_;
        if (eof()) {
            tok.type = Tok::Eof;
            return tok;
        }
        char c = peek();
        if (c == '<') return lex_iriref(tok);
        if (c == '"') return lex_string(tok);
        if (c == '@') return lex_at(tok);
        if (c == '_') return lex_blank(tok);
        if (c == '.') { advance(); tok.type = Tok::Dot; return tok; }
        if (c == ';') { advance(); tok.type = Tok::Semicolon; return tok; }
        if (c == ',') { advance(); tok.type = Tok::Comma; return tok; }
        if (c == '[') { advance(); tok.type = Tok::LBracket; return tok; }
        if (c == ']') { advance(); tok.type = Tok::RBracket; return tok; }
        if (c == '^') {
            advance();
            if (!eof() && peek() == '^') {
                advance();
                tok.type = Tok::DoubleCaret;
                return tok;
            }
            fail(ParseErrorKind::UnexpectedToken, tok.line, tok.col, "lone '^' (expected '^^')");
        }
        if (c == '+' || c == '-' || std::isdigit(static_cast<unsigned char>(c)))
            return lex_number(tok);
        if (std::isalpha(static_cast<unsigned char>(c)) || c == ':') return lex_pname(tok);
        fail(ParseErrorKind::UnexpectedToken, tok.line, tok.col,
             std::string("unexpected character '") + c + "'");
    }

private:
    bool eof() const { return pos_ >= src_.size(); }
    char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
    }

    char advance() {
        char c = src_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
            // count code points, not continuation bytes
            ++col_;
        }
        return c;
    }

    void skip_trivia() {
        while (!eof()) {
            char c = peek();
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else if (c == '#') {
                while (!eof() && peek() != '\n') advance();
            } else {
                break;
            }
        }
    }

    std::uint32_t hex_escape(int count, int esc_line, int esc_col) {
        std::uint32_t cp = 0;
        for (int i = 0; i < count; ++i) {
            if (eof()) fail(ParseErrorKind::BadEscape, esc_line, esc_col, "truncated \\u escape");
            char h = advance();
            cp <<= 4;
            if (h >= '0' && h <= '9') cp |= static_cast<std::uint32_t>(h - '0');
            else if (h >= 'a' && h <= 'f') cp |= static_cast<std::uint32_t>(h - 'a' + 10);
            else if (h >= 'A' && h <= 'F') cp |= static_cast<std::uint32_t>(h - 'A' + 10);
            else fail(ParseErrorKind::BadEscape, esc_line, esc_col, "non-hex digit in \\u escape");
        }
        if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF))
            fail(ParseErrorKind::BadEscape, esc_line, esc_col, "escape is not a Unicode scalar value");
        return cp;
    }

    Token lex_iriref(Token tok) {
        advance();  // '<'
        std::string value;
        while (true) {
            if (eof() || peek() == '\n' || peek_is_space())
                fail(ParseErrorKind::UnterminatedIri, tok.line, tok.col, "IRI reference never closed");
            char c = advance();
            if (c == '>') break;
            if (c == '\\') {
                int el = line_, ec = col_ - 1;
                if (eof()) fail(ParseErrorKind::BadEscape, el, ec, "dangling backslash in IRI");
                char e = advance();
                if (e == 'u') unicode::append_utf8(value, hex_escape(4, el, ec));
                else if (e == 'U') unicode::append_utf8(value, hex_escape(8, el, ec));
                else fail(ParseErrorKind::BadEscape, el, ec, "only \\u and \\U escapes are allowed in IRIs");
            } else {
                value.push_back(c);
            }
        }
        tok.type = Tok::IriRef;
        tok.text = std::move(value);
        return tok;
    }

    bool peek_is_space() const {
        char c = peek();
        return c == ' ' || c == '\t' || c == '\r';
    }

    Token lex_string(Token tok) {
        advance();  // '"'
        std::string value;
        while (true) {
            if (eof() || peek() == '\n' || peek() == '\r')
                fail(ParseErrorKind::UnterminatedString, tok.line, tok.col, "string literal never closed");
            char c = advance();
            if (c == '"') break;
            if (c == '\\') {
                int el = line_, ec = col_ - 1;
                if (eof()) fail(ParseErrorKind::BadEscape, el, ec, "dangling backslash in string");
                char e = advance();
                switch (e) {
                    case 't': value.push_back('\t'); break;
                    case 'b': value.push_back('\b'); break;
                    case 'n': value.push_back('\n'); break;
                    case 'r': value.push_back('\r'); break;
                    case 'f': value.push_back('\f'); break;
                    case '"': value.push_back('"'); break;
                    case '\'': value.push_back('\''); break;
                    case '\\': value.push_back('\\'); break;
                    case 'u': unicode::append_utf8(value, hex_escape(4, el, ec)); break;
                    case 'U': unicode::append_utf8(value, hex_escape(8, el, ec)); break;
                    default:
                        fail(ParseErrorKind::BadEscape, el, ec,
                             std::string("unknown escape '\\") + e + "'");
                }
            } else {
                value.push_back(c);
            }
        }
        tok.type = Tok::String;
        tok.text = std::move(value);
        return tok;
    }

    Token lex_at(Token tok) {
        advance();  // '@'
        std::string word;
        while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '-'))
            word.push_back(advance());
        if (word == "prefix") {
            tok.type = Tok::PrefixDirective;
            return tok;
        }
        if (word == "base")
            fail(ParseErrorKind::UnexpectedToken, tok.line, tok.col,
                 "'@base' is not supported; supply a base IRI out of band");
        // language tag: [a-zA-Z]+ ('-' [a-zA-Z0-9]+)*
        if (word.empty())
            fail(ParseErrorKind::BadLanguageTag, tok.line, tok.col, "empty language tag");
        std::size_t i = 0;
        while (i < word.size() && std::isalpha(static_cast<unsigned char>(word[i]))) ++i;
        if (i == 0) fail(ParseErrorKind::BadLanguageTag, tok.line, tok.col, "tag must start with a letter");
        while (i < word.size()) {
            if (word[i] != '-' || i + 1 >= word.size())
                fail(ParseErrorKind::BadLanguageTag, tok.line, tok.col, "malformed language tag: " + word);
            ++i;
            std::size_t start = i;
            while (i < word.size() && std::isalnum(static_cast<unsigned char>(word[i]))) ++i;
            if (i == start)
                fail(ParseErrorKind::BadLanguageTag, tok.line, tok.col, "malformed language tag: " + word);
        }
        tok.type = Tok::LangTag;
        tok.text = std::move(word);
        return tok;
    }

    Token lex_blank(Token tok) {
        // '_' must begin '_:'
        if (peek(1) != ':')
            fail(ParseErrorKind::UnexpectedToken, tok.line, tok.col, "'_' must begin a '_:' blank node label");
        advance();
        advance();
        std::string label;
        while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_'))
            label.push_back(advance());
        if (label.empty())
            fail(ParseErrorKind::UnexpectedToken, tok.line, tok.col, "blank node label is empty");
        tok.type = Tok::BlankLabel;
        tok.text = std::move(label);
        return tok;
    }

    Token lex_number(Token tok) {
        std::string text;
        if (peek() == '+' || peek() == '-') text.push_back(advance());
        int digits = 0;
        while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) {
            text.push_back(advance());
            ++digits;
        }
        if (digits == 0)
            fail(ParseErrorKind::BadNumber, tok.line, tok.col, "sign without digits");
        // decimals and doubles are outside the supported subset
        if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))
            fail(ParseErrorKind::BadNumber, tok.line, tok.col,
                 "decimal literals are not supported (integer shorthand only)");
        if (peek() == 'e' || peek() == 'E')
            fail(ParseErrorKind::BadNumber, tok.line, tok.col,
                 "double literals are not supported (integer shorthand only)");
        tok.type = Tok::Integer;
        tok.text = std::move(text);
        return tok;
    }

    Token lex_pname(Token tok) {
        std::string prefix;
        if (peek() != ':') {
            while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' ||
                              peek() == '-'))
                prefix.push_back(advance());
        }
        if (eof() || peek() != ':') {
            if (prefix == "a") {
                tok.type = Tok::KeywordA;
                return tok;
            }
            fail(ParseErrorKind::UnexpectedToken, tok.line, tok.col,
                 "bare word '" + prefix + "' (expected a prefixed name)");
        }
        advance();  // ':'
        std::string local;
        while (!eof()) {
            char c = peek();
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.') {
                local.push_back(advance());
            } else {
                break;
            }
        }
        // trailing dots belong to the statement, not the local name
        while (!local.empty() && local.back() == '.') {
            local.pop_back();
            --pos_;
            --col_;
        }
        tok.type = Tok::PName;
        tok.text = std::move(prefix);
        tok.aux = std::move(local);
        return tok;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

class Parser {
public:
    Parser(const SourceDocument& doc) : doc_(doc), lexer_(doc.text) {
        check_utf8();
        collect_doc_labels();
        tok_ = lexer_.next();
    }

    Graph parse() {
        while (tok_.type != Tok::Eof) {
            if (tok_.type == Tok::PrefixDirective) {
                parse_prefix_directive();
            } else {
                parse_triples();
            }
        }
        return builder_.prefixes(prefixes_).build();
    }

private:
    void check_utf8() {
        if (unicode::valid_utf8(doc_.text)) return;
        // locate the offending byte for the error position
        int line = 1, col = 1;
        std::size_t i = 0;
        while (i < doc_.text.size() &&
               unicode::valid_utf8(std::string_view(doc_.text).substr(0, i + 1))) {
            if (doc_.text[i] == '\n') {
                ++line;
                col = 1;
            } else if ((static_cast<unsigned char>(doc_.text[i]) & 0xC0) != 0x80) {
                ++col;
            }
            ++i;
        }
        throw ParseError(ParseErrorKind::UnexpectedToken, line, col, "document is not valid UTF-8");
    }

    /// Pre-scan for '_:' labels so generated anonymous labels never collide.
    /// Over-collecting from strings or comments is harmless.
    void collect_doc_labels() {
        const std::string& t = doc_.text;
        for (std::size_t i = 0; i + 1 < t.size(); ++i) {
            if (t[i] != '_' || t[i + 1] != ':') continue;
            std::size_t j = i + 2;
            std::string label;
            while (j < t.size() && (std::isalnum(static_cast<unsigned char>(t[j])) || t[j] == '_'))
                label.push_back(t[j++]);
            if (!label.empty()) doc_labels_.insert(label);
        }
    }

    void bump() { tok_ = lexer_.next(); }

    [[noreturn]] void fail_here(ParseErrorKind kind, const std::string& msg) const {
        throw ParseError(kind, tok_.line, tok_.col, msg);
    }

    void expect(Tok type, const char* what) {
        if (tok_.type != type) fail_here(ParseErrorKind::UnexpectedToken, std::string("expected ") + what);
        bump();
    }

    void parse_prefix_directive() {
        bump();  // @prefix
        if (tok_.type != Tok::PName || !tok_.aux.empty())
            fail_here(ParseErrorKind::UnexpectedToken, "expected a prefix label ending in ':'");
        std::string label = tok_.text;
        Token name_tok = tok_;
        bump();
        if (tok_.type != Tok::IriRef)
            fail_here(ParseErrorKind::UnexpectedToken, "expected the namespace IRI of the prefix");
        Iri ns = resolve_iriref(tok_);
        bump();
        expect(Tok::Dot, "'.' after @prefix directive");
        prefixes_.insert_or_assign(label, ns);
    }

    Iri resolve_iriref(const Token& tok) const {
        const std::string& ref = tok.text;
        if (has_scheme(ref)) return make_iri(ref, tok);
        if (!doc_.base)
            throw ParseError(ParseErrorKind::UnexpectedToken, tok.line, tok.col,
                             "relative IRI <" + ref + "> requires a base");
        return make_iri(resolve_against(doc_.base->str(), ref), tok);
    }

    static bool has_scheme(const std::string& iri) {
        if (iri.empty() || !std::isalpha(static_cast<unsigned char>(iri[0]))) return false;
        for (std::size_t i = 1; i < iri.size(); ++i) {
            char c = iri[i];
            if (c == ':') return true;
            if (!std::isalnum(static_cast<unsigned char>(c)) && c != '+' && c != '-' && c != '.')
                return false;
        }
        return false;
    }

    /// RFC 3986 reference resolution without dot-segment normalization.
    static std::string resolve_against(const std::string& base, const std::string& ref) {
        if (ref.empty()) return base;
        if (ref.rfind("//", 0) == 0) {
            auto colon = base.find(':');
            return base.substr(0, colon + 1) + ref;
        }
        auto hash = base.find('#');
        std::string b = hash == std::string::npos ? base : base.substr(0, hash);
        if (ref[0] == '#') return b + ref;
        auto scheme_end = b.find(':');
        std::string authority_and_path = b.substr(scheme_end + 1);
        if (ref[0] == '/') {
            // keep scheme + authority
            if (authority_and_path.rfind("//", 0) == 0) {
                auto path_start = authority_and_path.find('/', 2);
                std::string authority = path_start == std::string::npos
                                            ? authority_and_path
                                            : authority_and_path.substr(0, path_start);
                return b.substr(0, scheme_end + 1) + authority + ref;
            }
            return b.substr(0, scheme_end + 1) + ref;
        }
        auto q = b.find('?');
        std::string trimmed = q == std::string::npos ? b : b.substr(0, q);
        auto last_slash = trimmed.rfind('/');
        if (last_slash == std::string::npos || last_slash <= scheme_end + 1)
            return trimmed + "/" + ref;
        return trimmed.substr(0, last_slash + 1) + ref;
    }

    static Iri make_iri(const std::string& text, const Token& tok) {
        try {
            return Iri(text);
        } catch (const structural_error& e) {
            throw ParseError(ParseErrorKind::UnexpectedToken, tok.line, tok.col, e.what());
        }
    }

    Iri resolve_pname(const Token& tok) const {
        auto it = prefixes_.find(tok.text);
        if (it == prefixes_.end())
            throw ParseError(ParseErrorKind::UnknownPrefix, tok.line, tok.col,
                             "prefix '" + tok.text + ":' is not declared");
        return make_iri(it->second.str() + tok.aux, tok);
    }

    BlankNode fresh_anon() {
        std::string label;
        do {
            label = "b" + std::to_string(anon_counter_++);
        } while (doc_labels_.count(label));
        return BlankNode(label);
    }

    void parse_triples() {
        Subject subject = parse_subject();
        // a bare blank-node property list may stand alone as a statement
        bool allow_empty = subject_was_bnpl_;
        if (!(allow_empty && tok_.type == Tok::Dot)) parse_predicate_object_list(subject);
        expect(Tok::Dot, "'.' at end of statement");
    }

    Subject parse_subject() {
        subject_was_bnpl_ = false;
        switch (tok_.type) {
            case Tok::IriRef: {
                Iri iri = resolve_iriref(tok_);
                bump();
                return Subject{iri};
            }
            case Tok::PName: {
                Iri iri = resolve_pname(tok_);
                bump();
                return Subject{iri};
            }
            case Tok::BlankLabel: {
                BlankNode b{tok_.text};
                bump();
                return Subject{b};
            }
            case Tok::LBracket: {
                subject_was_bnpl_ = true;
                return Subject{parse_bnpl()};
            }
            default:
                fail_here(ParseErrorKind::UnexpectedToken, "expected a subject (IRI or blank node)");
        }
    }

    Iri parse_verb() {
        if (tok_.type == Tok::KeywordA) {
            bump();
            return rdf::type();
        }
        if (tok_.type == Tok::IriRef) {
            Iri iri = resolve_iriref(tok_);
            bump();
            return iri;
        }
        if (tok_.type == Tok::PName) {
            Iri iri = resolve_pname(tok_);
            bump();
            return iri;
        }
        fail_here(ParseErrorKind::UnexpectedToken, "expected a predicate (IRI or 'a')");
    }

    void parse_predicate_object_list(const Subject& subject) {
        while (true) {
            Iri predicate = parse_verb();
            parse_object_list(subject, predicate);
            if (tok_.type != Tok::Semicolon) break;
            while (tok_.type == Tok::Semicolon) bump();
            if (tok_.type == Tok::Dot || tok_.type == Tok::RBracket) break;  // trailing ';'
        }
    }

    void parse_object_list(const Subject& subject, const Iri& predicate) {
        while (true) {
            Term object = parse_object();
            builder_.add(subject, predicate, object);
            if (tok_.type != Tok::Comma) break;
            bump();
        }
    }

    Term parse_object() {
        switch (tok_.type) {
            case Tok::IriRef: {
                Iri iri = resolve_iriref(tok_);
                bump();
                return Term{iri};
            }
            case Tok::PName: {
                Iri iri = resolve_pname(tok_);
                bump();
                return Term{iri};
            }
            case Tok::BlankLabel: {
                BlankNode b{tok_.text};
                bump();
                return Term{b};
            }
            case Tok::LBracket:
                return Term{parse_bnpl()};
            case Tok::Integer: {
                Literal lit = Literal::typed(tok_.text, xsd::integer_type());
                bump();
                return Term{lit};
            }
            case Tok::String:
                return Term{parse_literal()};
            default:
                fail_here(ParseErrorKind::UnexpectedToken, "expected an object (IRI, blank node, or literal)");
        }
    }

    Literal parse_literal() {
        Token str_tok = tok_;
        bump();
        if (tok_.type == Tok::LangTag) {
            Literal lit = Literal::lang(str_tok.text, tok_.text);
            bump();
            return lit;
        }
        if (tok_.type == Tok::DoubleCaret) {
            bump();
            Iri datatype = [&]() -> Iri {
                if (tok_.type == Tok::IriRef) return resolve_iriref(tok_);
                if (tok_.type == Tok::PName) return resolve_pname(tok_);
                fail_here(ParseErrorKind::UnexpectedToken, "expected a datatype IRI after '^^'");
            }();
            bump();
            try {
                return Literal::typed(str_tok.text, datatype);
            } catch (const structural_error& e) {
                throw ParseError(ParseErrorKind::UnexpectedToken, str_tok.line, str_tok.col, e.what());
            }
        }
        return Literal::str(str_tok.text);
    }

    BlankNode parse_bnpl() {
        bump();  // '['
        BlankNode node = fresh_anon();
        if (tok_.type != Tok::RBracket) parse_predicate_object_list(Subject{node});
        expect(Tok::RBracket, "']' closing a blank node property list");
        return node;
    }

    const SourceDocument& doc_;
    Lexer lexer_;
    Token tok_;
    PrefixMap prefixes_;
    GraphBuilder builder_;
    std::set<std::string> doc_labels_;
    std::size_t anon_counter_ = 0;
    bool subject_was_bnpl_ = false;
};

}  // namespace turtle_detail

/// Parse the Turtle subset used by this profile: @prefix directives,
/// prefixed names, IRI references with \u escapes, 'a', ';' and ',' lists,
/// comments, string literals with escapes, language tags, datatypes,
/// integer shorthand, and anonymous blank node property lists.
inline Graph parse_turtle(const SourceDocument& doc) {
    return turtle_detail::Parser(doc).parse();
}

inline Graph parse_turtle(std::string_view text) {
    SourceDocument doc;
    doc.text = std::string(text);
    return parse_turtle(doc);
}

}  // namespace aicat
