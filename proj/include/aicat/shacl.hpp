#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "aicat/rdf.hpp"
#include "aicat/serializer.hpp"
#include "aicat/vocab.hpp"

namespace aicat {

/// A shapes graph is malformed (e.g. a property shape without sh:path).
struct shape_error : error {
    using error::error;
};

enum class NodeKind { IriNode, LiteralNode, BlankOrIri };
enum class ConstraintKind { MinCount, MaxCount, ValueType, Datatype, NodeKind };
enum class Severity { Violation, Warning };

inline const char* to_string(ConstraintKind k) {
    switch (k) {
        case ConstraintKind::MinCount: return "MinCount";
        case ConstraintKind::MaxCount: return "MaxCount";
        case ConstraintKind::ValueType: return "ValueType";
        case ConstraintKind::Datatype: return "Datatype";
        case ConstraintKind::NodeKind: return "NodeKind";
    }
    return "?";
}

inline const char* to_string(Severity s) {
    return s == Severity::Violation ? "Violation" : "Warning";
}

namespace sh {
inline Iri term(const char* local) { return Iri(vocab::ns("sh").str() + local); }
inline const Iri& severity() { static const Iri i = term("severity"); return i; }
inline const Iri& violation() { static const Iri i = term("Violation"); return i; }
inline const Iri& warning() { static const Iri i = term("Warning"); return i; }
inline const Iri& iri_kind() { static const Iri i = term("IRI"); return i; }
inline const Iri& literal_kind() { static const Iri i = term("Literal"); return i; }
inline const Iri& blank_or_iri_kind() { static const Iri i = term("BlankNodeOrIRI"); return i; }
}  // namespace sh

/// One property constraint: a single forward predicate path plus the
/// supported facets. severity, when set, overrides the owning shape's.
struct PropertyConstraint {
    Iri path;
    std::optional<int> min_count;
    std::optional<int> max_count;
    std::optional<Iri> value_type;  // sh:class — requires an explicit rdf:type
    std::optional<Iri> datatype;
    std::optional<NodeKind> node_kind;
    std::optional<Severity> severity;

    bool has_facet() const {
        return min_count || max_count || value_type || datatype || node_kind;
    }

    friend bool operator==(const PropertyConstraint&, const PropertyConstraint&) = default;
};

struct NodeShapeDef {
    Subject iri;
    Iri target_type;  // sh:targetClass — only class-targeted shapes are supported
    std::vector<PropertyConstraint> properties;
    Severity severity = Severity::Violation;
};

struct ShapeSet {
    std::vector<NodeShapeDef> shapes;
    /// Unsupported-but-ignored vocabulary encountered while parsing.
    std::vector<std::string> diagnostics;
};

struct ValidationResult {
    Subject focus;
    Iri path;
    ConstraintKind constraint;
    Severity severity;
    std::string message;
    Subject shape;
};

struct ValidationReport {
    bool conforms = true;
    std::vector<ValidationResult> results;

    int violations() const {
        return static_cast<int>(std::count_if(results.begin(), results.end(), [](const auto& r) {
            return r.severity == Severity::Violation;
        }));
    }
    int warnings() const { return static_cast<int>(results.size()) - violations(); }
};

namespace shacl_detail {

inline std::optional<int> integer_facet(const Graph& g, const Subject& node, const Iri& pred,
                                        const Subject& shape) {
    for (const Term& o : g.objects(node, pred)) {
        const auto* lit = std::get_if<Literal>(&o);
        if (!lit)
            throw shape_error("shape " + to_ntriples(shape) + ": " + pred.str() +
                              " must be an integer literal");
        try {
            return std::stoi(lit->lexical());
        } catch (const std::exception&) {
            throw shape_error("shape " + to_ntriples(shape) + ": " + pred.str() +
                              " has a non-integer value '" + lit->lexical() + "'");
        }
    }
    return std::nullopt;
}

inline std::optional<Iri> iri_facet(const Graph& g, const Subject& node, const Iri& pred) {
    for (const Term& o : g.objects(node, pred))
        if (const auto* iri = std::get_if<Iri>(&o)) return *iri;
    return std::nullopt;
}

inline std::optional<Severity> severity_facet(const Graph& g, const Subject& node,
                                              std::vector<std::string>& diagnostics) {
    for (const Term& o : g.objects(node, sh::severity())) {
        if (const auto* iri = std::get_if<Iri>(&o)) {
            if (*iri == sh::violation()) return Severity::Violation;
            if (*iri == sh::warning()) return Severity::Warning;
        }
        diagnostics.push_back("ignored unsupported sh:severity value " + to_ntriples(o));
    }
    return std::nullopt;
}

inline const std::set<Iri>& known_property_shape_terms() {
    static const std::set<Iri> known = {
        rdf::type(),          vocab::sh_path(),     vocab::sh_minCount(), vocab::sh_maxCount(),
        vocab::sh_class(),    vocab::sh_datatype(), vocab::sh_nodeKind(), sh::severity(),
    };
    return known;
}

inline const std::set<Iri>& known_node_shape_terms() {
    static const std::set<Iri> known = {
        rdf::type(),
        vocab::sh_targetClass(),
        vocab::sh_property(),
        sh::severity(),
    };
    return known;
}

}  // namespace shacl_detail

/// Read every sh:NodeShape with an sh:targetClass out of a shapes graph.
/// Unsupported SHACL vocabulary is collected as diagnostics rather than
/// rejected; a property shape without sh:path is an error.
inline ShapeSet parse_shapes(const Graph& g) {
    using namespace shacl_detail;
    ShapeSet out;

    for (const Subject& shape_node : g.subjects_of_type(vocab::sh_NodeShape())) {
        auto target = iri_facet(g, shape_node, vocab::sh_targetClass());
        if (!target) {
            out.diagnostics.push_back("ignored shape " + to_ntriples(shape_node) +
                                      ": no sh:targetClass (only class-targeted shapes are supported)");
            continue;
        }

        NodeShapeDef shape{shape_node, *target, {}, Severity::Violation};
        if (auto sev = severity_facet(g, shape_node, out.diagnostics)) shape.severity = *sev;

        for (const Triple& t : g.match(shape_node, std::nullopt, std::nullopt)) {
            if (!known_node_shape_terms().count(t.predicate))
                out.diagnostics.push_back("ignored term " + t.predicate.str() + " on shape " +
                                          to_ntriples(shape_node));
        }

        for (const Term& prop : g.objects(shape_node, vocab::sh_property())) {
            auto prop_node = as_subject(prop);
            if (!prop_node)
                throw shape_error("shape " + to_ntriples(shape_node) +
                                  ": sh:property must point at a property shape node");

            auto path = iri_facet(g, *prop_node, vocab::sh_path());
            if (!path)
                throw shape_error("property shape " + to_ntriples(*prop_node) + " of shape " +
                                  to_ntriples(shape_node) + " lacks sh:path");

            PropertyConstraint constraint{*path};
            constraint.min_count = integer_facet(g, *prop_node, vocab::sh_minCount(), shape_node);
            constraint.max_count = integer_facet(g, *prop_node, vocab::sh_maxCount(), shape_node);
            if (constraint.min_count && constraint.max_count &&
                *constraint.min_count > *constraint.max_count)
                throw shape_error("shape " + to_ntriples(shape_node) +
                                  ": sh:minCount exceeds sh:maxCount on path " + path->str());
            constraint.value_type = iri_facet(g, *prop_node, vocab::sh_class());
            constraint.datatype = iri_facet(g, *prop_node, vocab::sh_datatype());
            if (auto kind = iri_facet(g, *prop_node, vocab::sh_nodeKind())) {
                if (*kind == sh::iri_kind()) constraint.node_kind = NodeKind::IriNode;
                else if (*kind == sh::literal_kind()) constraint.node_kind = NodeKind::LiteralNode;
                else if (*kind == sh::blank_or_iri_kind()) constraint.node_kind = NodeKind::BlankOrIri;
                else
                    out.diagnostics.push_back("ignored unsupported sh:nodeKind " + kind->str());
            }
            constraint.severity = severity_facet(g, *prop_node, out.diagnostics);

            for (const Triple& t : g.match(*prop_node, std::nullopt, std::nullopt)) {
                if (!known_property_shape_terms().count(t.predicate))
                    out.diagnostics.push_back("ignored term " + t.predicate.str() +
                                              " on property shape " + to_ntriples(*prop_node));
            }

            if (!constraint.has_facet()) {
                out.diagnostics.push_back("ignored property shape " + to_ntriples(*prop_node) +
                                          ": no supported constraint facet");
                continue;
            }
            shape.properties.push_back(std::move(constraint));
        }
        out.shapes.push_back(std::move(shape));
    }
    return out;
}

namespace shacl_detail {

inline bool node_kind_matches(const Term& value, NodeKind kind) {
    switch (kind) {
        case NodeKind::IriNode: return is_iri(value);
        case NodeKind::LiteralNode: return is_literal(value);
        case NodeKind::BlankOrIri: return !is_literal(value);
    }
    return false;
}

}  // namespace shacl_detail

/// Evaluate every shape over every instance of its target class. Results
/// are deterministically ordered by (shape, focus, path, constraint,
/// message); the report conforms iff no result carries Violation severity.
inline ValidationReport validate(const Graph& data, const ShapeSet& shapes) {
    using namespace shacl_detail;
    ValidationReport report;

    for (const NodeShapeDef& shape : shapes.shapes) {
        for (const Subject& focus : data.subjects_of_type(shape.target_type)) {
            for (const PropertyConstraint& constraint : shape.properties) {
                const Severity severity = constraint.severity.value_or(shape.severity);
                const std::vector<Term> values = data.objects(focus, constraint.path);
                auto emit = [&](ConstraintKind kind, std::string message) {
                    report.results.push_back(ValidationResult{focus, constraint.path, kind, severity,
                                                              std::move(message), shape.iri});
                };

                if (constraint.min_count && values.size() < static_cast<std::size_t>(*constraint.min_count))
                    emit(ConstraintKind::MinCount,
                         "expected at least " + std::to_string(*constraint.min_count) +
                             " value(s) of " + constraint.path.str() + ", found " +
                             std::to_string(values.size()));
                if (constraint.max_count && values.size() > static_cast<std::size_t>(*constraint.max_count))
                    emit(ConstraintKind::MaxCount,
                         "expected at most " + std::to_string(*constraint.max_count) +
                             " value(s) of " + constraint.path.str() + ", found " +
                             std::to_string(values.size()));

                for (const Term& value : values) {
                    if (constraint.value_type) {
                        auto value_subject = as_subject(value);
                        const bool typed =
                            value_subject &&
                            data.has(*value_subject, rdf::type(), Term{*constraint.value_type});
                        if (!typed)
                            emit(ConstraintKind::ValueType,
                                 "value " + to_ntriples(value) + " lacks rdf:type " +
                                     constraint.value_type->str());
                    }
                    if (constraint.datatype) {
                        const auto* lit = std::get_if<Literal>(&value);
                        if (!lit || lit->datatype() != *constraint.datatype)
                            emit(ConstraintKind::Datatype,
                                 "value " + to_ntriples(value) + " is not a literal of datatype " +
                                     constraint.datatype->str());
                    }
                    if (constraint.node_kind && !node_kind_matches(value, *constraint.node_kind))
                        emit(ConstraintKind::NodeKind,
                             "value " + to_ntriples(value) + " has the wrong node kind");
                }
            }
        }
    }

    std::sort(report.results.begin(), report.results.end(),
              [](const ValidationResult& a, const ValidationResult& b) {
                  auto key = [](const ValidationResult& r) {
                      return std::tuple(to_ntriples(r.shape), to_ntriples(r.focus), r.path.str(),
                                        static_cast<int>(r.constraint), r.message);
                  };
                  return key(a) < key(b);
              });
    report.conforms = std::none_of(report.results.begin(), report.results.end(),
                                   [](const auto& r) { return r.severity == Severity::Violation; });
    return report;
}

/// "conforms: true|false, N violations, M warnings"
inline std::string report_summary(const ValidationReport& report) {
    return std::string("conforms: ") + (report.conforms ? "true" : "false") + ", " +
           std::to_string(report.violations()) + " violations, " +
           std::to_string(report.warnings()) + " warnings";
}

/// Express the report as an RDF graph using the SHACL results vocabulary,
/// so it can travel through the same serializers as any other graph.
inline Graph report_to_graph(const ValidationReport& report) {
    GraphBuilder gb;
    gb.prefix("sh", vocab::ns("sh"));
    gb.prefix("xsd", vocab::ns("xsd"));

    Subject node{BlankNode("report")};
    gb.add(node, rdf::type(), Term{sh::term("ValidationReport")});
    gb.add(node, sh::term("conforms"),
           Term{Literal::typed(report.conforms ? "true" : "false",
                               Iri("http://www.w3.org/2001/XMLSchema#boolean"))});

    int counter = 0;
    for (const ValidationResult& r : report.results) {
        Subject result{BlankNode("r" + std::to_string(counter++))};
        gb.add(node, sh::term("result"), to_term(result));
        gb.add(result, rdf::type(), Term{sh::term("ValidationResult")});
        gb.add(result, sh::term("focusNode"), to_term(r.focus));
        gb.add(result, sh::term("resultPath"), Term{r.path});
        gb.add(result, sh::term("resultSeverity"),
               Term{r.severity == Severity::Violation ? sh::violation() : sh::warning()});
        gb.add(result, sh::term("resultMessage"), Term{Literal::str(r.message)});
        gb.add(result, sh::term("sourceShape"), to_term(r.shape));
        const char* component = nullptr;
        switch (r.constraint) {
            case ConstraintKind::MinCount: component = "MinCountConstraintComponent"; break;
            case ConstraintKind::MaxCount: component = "MaxCountConstraintComponent"; break;
            case ConstraintKind::ValueType: component = "ClassConstraintComponent"; break;
            case ConstraintKind::Datatype: component = "DatatypeConstraintComponent"; break;
            case ConstraintKind::NodeKind: component = "NodeKindConstraintComponent"; break;
        }
        gb.add(result, sh::term("sourceConstraintComponent"), Term{sh::term(component)});
    }
    return gb.build();
}

inline std::string report_to_json(const ValidationReport& report) {
    return serialize_json_flat(report_to_graph(report));
}

}  // namespace aicat
