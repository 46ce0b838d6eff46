#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <json.hpp>

#include "aicat/catalog.hpp"
#include "aicat/profile.hpp"
#include "aicat/serializer.hpp"
#include "aicat/shacl.hpp"
#include "aicat/turtle.hpp"

namespace aicat {

/// Persistent-store failures (unreadable layout, lock trouble, corrupt files).
struct store_error : error {
    using error::error;
};

/// The caller handed the store something unusable (not a stored record's
/// problem): an untyped system IRI, unparseable input, and the like.
struct input_error : error {
    using error::error;
};

struct RegistryRecord {
    std::string record_id;  // ULID, sortable by creation time
    Iri catalog_iri;
    Iri system_iri;
    RegistrationScenario scenario;
    bool includes_model_metadata = false;
    std::string submitted_at;  // ISO-8601 UTC
    std::string graph_file;    // canonical N-Triples, relative to the store root
    std::string turtle_file;   // Turtle with prefixes, relative to the store root
    bool data_provenance = false;
    ValidationReport report;
};

struct Rejection {
    enum class Kind { NotConforming, NationalLevel, UnmappedScenario };
    Kind kind;
    std::string message;
    std::optional<ValidationReport> report;
};

inline const char* to_string(Rejection::Kind k) {
    switch (k) {
        case Rejection::Kind::NotConforming: return "not-conforming";
        case Rejection::Kind::NationalLevel: return "national-level";
        case Rejection::Kind::UnmappedScenario: return "unmapped-scenario";
    }
    return "?";
}

using SubmissionOutcome = std::variant<RegistryRecord, Rejection>;

struct SearchQuery {
    std::optional<ResourceKind> kind;
    std::optional<Iri> country;
    std::optional<Iri> market_status;
    std::optional<std::string> text;  // case-insensitive substring over titles/descriptions
    View view = View::Public;
};

struct SearchHit {
    std::string record_id;
    Iri resource_iri;
    std::string title;
    ResourceKind kind;
};

struct RebuildReport {
    struct Quarantined {
        std::string record_id;
        std::string reason;
    };
    std::vector<Quarantined> quarantined;
};

namespace store_detail {

inline std::string iso_utc_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

/// ULID: 48-bit millisecond timestamp + 80 random bits, Crockford base32.
/// Monotonic within one generator so ids sort by submission order.
class UlidGenerator {
public:
    UlidGenerator() {
        std::random_device rd;
        rng_.seed(static_cast<std::uint64_t>(rd()) << 32 ^ rd() ^
                  static_cast<std::uint64_t>(std::chrono::steady_clock::now().time_since_epoch().count()));
    }

    std::string next() {
        const std::uint64_t ms = static_cast<std::uint64_t>(
            std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::system_clock::now().time_since_epoch())
                .count());
        if (ms <= last_ms_) {
            increment_random();
        } else {
            last_ms_ = ms;
            fill_random();
        }
        return encode();
    }

private:
    void fill_random() {
        for (std::size_t i = 0; i < random_.size(); i += 8) {
            std::uint64_t r = rng_();
            for (std::size_t k = 0; k < 8 && i + k < random_.size(); ++k)
                random_[i + k] = static_cast<std::uint8_t>(r >> (8 * k));
        }
    }

    void increment_random() {
        for (int i = static_cast<int>(random_.size()) - 1; i >= 0; --i) {
            if (++random_[i] != 0) return;
        }
        ++last_ms_;  // carry overflow: bump the timestamp to stay monotonic
    }

    std::string encode() const {
        static const char alphabet[] = "0123456789ABCDEFGHJKMNPQRSTVWXYZ";
        std::array<std::uint8_t, 16> bytes{};
        for (int i = 0; i < 6; ++i)
            bytes[i] = static_cast<std::uint8_t>(last_ms_ >> (8 * (5 - i)));
        std::copy(random_.begin(), random_.end(), bytes.begin() + 6);

        std::string out(26, '0');
        int bit = -2;  // 26*5 = 130 bits; the first character carries 3 data bits
        for (int i = 0; i < 26; ++i) {
            int value = 0;
            for (int k = 0; k < 5; ++k) {
                value <<= 1;
                int index = bit + k;
                if (index >= 0) {
                    int byte = index / 8;
                    int offset = 7 - index % 8;
                    value |= (bytes[static_cast<std::size_t>(byte)] >> offset) & 1;
                }
            }
            out[static_cast<std::size_t>(i)] = alphabet[value & 31];
            bit += 5;
        }
        return out;
    }

    std::mt19937_64 rng_;
    std::uint64_t last_ms_ = 0;
    std::array<std::uint8_t, 10> random_{};
};

/// Exclusive advisory lock on <root>/.lock held for a mutation.
class StoreLock {
public:
    explicit StoreLock(const std::filesystem::path& root) {
        fd_ = ::open((root / ".lock").c_str(), O_CREAT | O_RDWR, 0644);
        if (fd_ < 0) throw store_error("cannot open store lock file under " + root.string());
        if (::flock(fd_, LOCK_EX) != 0) {
            ::close(fd_);
            throw store_error("cannot acquire store write lock under " + root.string());
        }
    }
    ~StoreLock() {
        if (fd_ >= 0) ::close(fd_);  // closing releases the flock
    }
    StoreLock(const StoreLock&) = delete;
    StoreLock& operator=(const StoreLock&) = delete;

private:
    int fd_ = -1;
};

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw store_error("cannot write " + path.string());
    out << content;
    out.flush();
    if (!out) throw store_error("write failed for " + path.string());
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw store_error("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline Subject subject_from_text(const std::string& text) {
    if (text.rfind("_:", 0) == 0) return Subject{BlankNode(text.substr(2))};
    if (text.size() >= 2 && text.front() == '<' && text.back() == '>')
        return Subject{Iri(text.substr(1, text.size() - 2))};
    return Subject{Iri(text)};
}

inline nlohmann::ordered_json report_to_record_json(const ValidationReport& report) {
    nlohmann::ordered_json j;
    j["conforms"] = report.conforms;
    nlohmann::ordered_json results = nlohmann::ordered_json::array();
    for (const ValidationResult& r : report.results) {
        nlohmann::ordered_json e;
        e["focus"] = to_ntriples(r.focus);
        e["path"] = r.path.str();
        e["constraint"] = to_string(r.constraint);
        e["severity"] = to_string(r.severity);
        e["message"] = r.message;
        e["shape"] = to_ntriples(r.shape);
        results.push_back(std::move(e));
    }
    j["results"] = std::move(results);
    return j;
}

inline ValidationReport report_from_record_json(const nlohmann::json& j) {
    ValidationReport report;
    report.conforms = j.at("conforms").get<bool>();
    for (const auto& e : j.at("results")) {
        ConstraintKind kind = ConstraintKind::MinCount;
        const std::string kind_text = e.at("constraint");
        for (ConstraintKind k : {ConstraintKind::MinCount, ConstraintKind::MaxCount,
                                 ConstraintKind::ValueType, ConstraintKind::Datatype,
                                 ConstraintKind::NodeKind})
            if (kind_text == to_string(k)) kind = k;
        const std::string severity_text = e.at("severity");
        ValidationResult r{subject_from_text(e.at("focus")), Iri(e.at("path").get<std::string>()),
                           kind,
                           severity_text == "Warning" ? Severity::Warning : Severity::Violation,
                           e.at("message").get<std::string>(),
                           subject_from_text(e.at("shape"))};
        report.results.push_back(std::move(r));
    }
    return report;
}

inline nlohmann::ordered_json record_to_json(const RegistryRecord& r) {
    nlohmann::ordered_json j;
    j["recordId"] = r.record_id;
    j["catalogIri"] = r.catalog_iri.str();
    j["systemIri"] = r.system_iri.str();
    j["scenario"] = scenario_to_json(r.scenario);
    j["visibility"] = to_string(r.scenario.visibility);
    j["includesModelMetadata"] = r.includes_model_metadata;
    j["submittedAt"] = r.submitted_at;
    j["graphFile"] = r.graph_file;
    j["turtleFile"] = r.turtle_file;
    j["dataProvenance"] = r.data_provenance;
    j["report"] = report_to_record_json(r.report);
    return j;
}

inline RegistryRecord record_from_json(const nlohmann::json& j) {
    RegistryRecord r{j.at("recordId").get<std::string>(),
                     Iri(j.at("catalogIri").get<std::string>()),
                     Iri(j.at("systemIri").get<std::string>()),
                     scenario_from_json(j.at("scenario")),
                     j.at("includesModelMetadata").get<bool>(),
                     j.at("submittedAt").get<std::string>(),
                     j.at("graphFile").get<std::string>(),
                     j.at("turtleFile").get<std::string>(),
                     j.at("dataProvenance").get<bool>(),
                     report_from_record_json(j.at("report"))};
    return r;
}

inline std::string lowercase(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

}  // namespace store_detail

/// File-backed catalogue registry. One directory per record (metadata,
/// canonical N-Triples, Turtle), plus an index file. Readers work off an
/// immutable snapshot; writers serialize through an exclusive lock file and
/// publish files with write-temp-then-rename.
class CatalogStore {
public:
    static CatalogStore open(const std::filesystem::path& root) {
        namespace fs = std::filesystem;
        fs::create_directories(root / "records");
        fs::create_directories(root / "tmp");
        CatalogStore store(root);
        auto state = std::make_shared<State>();
        const fs::path index_path = root / "index.json";
        if (fs::exists(index_path)) {
            nlohmann::json index;
            try {
                index = nlohmann::json::parse(store_detail::read_file(index_path));
            } catch (const nlohmann::json::exception& e) {
                throw store_error("corrupt index file " + index_path.string() + ": " + e.what());
            }
            for (const auto& entry : index.at("records")) {
                RegistryRecord record = store_detail::record_from_json(entry);
                Graph graph = store.load_graph(record);
                index_resources(*state, record, graph);
                state->records.emplace(record.record_id, std::move(record));
            }
        }
        store.inner_->state = std::move(state);
        return store;
    }

    /// Classify, collect requirements, validate, and persist on success.
    /// Policy rejections (national-level, unmapped, non-conforming) come
    /// back as values; broken inputs throw input_error.
    SubmissionOutcome submit_registration(const Graph& catalog_graph, const Iri& system_iri,
                                          AnnexIIIPoint point, RiskStatus risk, RegistrantRole role,
                                          bool includes_model_metadata) {
        if (!catalog_graph.has(Subject{system_iri}, rdf::type(), Term{vocab::airo_AISystem()}))
            throw input_error("system IRI " + system_iri.str() +
                              " is not typed airo:AISystem in the submitted graph");

        auto scenario = classify_scenario(point, risk, role);
        if (!scenario)
            return Rejection{Rejection::Kind::UnmappedScenario,
                             "no registration route is defined for this combination of Annex III "
                             "point, risk status, and registrant role",
                             std::nullopt};
        if (scenario->clause == Clause::A49_5)
            return Rejection{Rejection::Kind::NationalLevel,
                             "Annex III point 2 high-risk systems register at national level; the "
                             "EU database holds no record",
                             std::nullopt};

        FieldRequirementSet requirements = required_fields(*scenario, includes_model_metadata);
        ValidationReport report = validate(catalog_graph, shapes_for(requirements));
        if (!report.conforms)
            return Rejection{Rejection::Kind::NotConforming,
                             "the submitted catalogue does not satisfy the scenario's required fields",
                             report};

        RegistryRecord record{"",
                              catalog_node_of(catalog_graph, system_iri),
                              system_iri,
                              *scenario,
                              includes_model_metadata,
                              store_detail::iso_utc_now(),
                              "",
                              "",
                              data_provenance_satisfied(catalog_graph, system_iri),
                              std::move(report)};

        const std::string ntriples = serialize_ntriples_canonical(catalog_graph);
        const std::string turtle = serialize_turtle(catalog_graph);

        std::lock_guard<std::mutex> guard(inner_->write_mutex);
        store_detail::StoreLock lock(inner_->root);

        do {
            record.record_id = inner_->ulid.next();
        } while (std::filesystem::exists(inner_->root / "records" / record.record_id));
        record.graph_file = "records/" + record.record_id + "/graph.nt";
        record.turtle_file = "records/" + record.record_id + "/graph.ttl";

        persist(record, ntriples, turtle);

        auto next = std::make_shared<State>(*snapshot());
        Graph graph = load_graph(record);
        index_resources(*next, record, graph);
        next->records.emplace(record.record_id, record);
        publish_index(*next);
        set_state(std::move(next));
        return record;
    }

    std::vector<RegistryRecord> list(View view) const {
        std::vector<RegistryRecord> out;
        for (const auto& [id, record] : *snapshot_records())
            if (visible_in(record.scenario.visibility, view)) out.push_back(record);
        return out;  // map order == id order
    }

    std::optional<RegistryRecord> find(const std::string& record_id) const {
        const auto records = snapshot_records();
        auto it = records->find(record_id);
        if (it == records->end()) return std::nullopt;
        return it->second;
    }

    enum class AccessStatus { Ok, NotFound, Forbidden };
    struct RecordAccess {
        AccessStatus status;
        std::optional<RegistryRecord> record;
        Graph graph;
    };

    RecordAccess get_record(const std::string& record_id, View view) const {
        auto record = find(record_id);
        if (!record) return {AccessStatus::NotFound, std::nullopt, Graph()};
        if (!visible_in(record->scenario.visibility, view))
            return {AccessStatus::Forbidden, std::nullopt, Graph()};
        return {AccessStatus::Ok, record, load_graph(*record)};
    }

    std::vector<SearchHit> search(const SearchQuery& query) const {
        std::vector<SearchHit> hits;
        for (const RegistryRecord& record : list(query.view)) {
            const Graph graph = load_graph(record);
            std::set<Iri> seen;
            for (ResourceKind kind :
                 {ResourceKind::System, ResourceKind::Model, ResourceKind::Dataset}) {
                if (query.kind && *query.kind != kind) continue;
                for (const Iri& resource : resources_of(graph, kind)) {
                    if (!seen.insert(resource).second) continue;
                    if (!matches(graph, resource, query)) continue;
                    hits.push_back(SearchHit{record.record_id, resource,
                                             title_of(graph, resource), kind});
                }
            }
        }
        std::sort(hits.begin(), hits.end(), [](const SearchHit& a, const SearchHit& b) {
            if (a.record_id != b.record_id) return a.record_id < b.record_id;
            return a.resource_iri < b.resource_iri;
        });
        return hits;
    }

    /// Reconstruct a store purely from the record directories, ignoring the
    /// existing index file. Unreadable or non-conforming records are moved
    /// to <root>/quarantine and reported.
    static std::pair<CatalogStore, RebuildReport> rebuild_index(const std::filesystem::path& root) {
        namespace fs = std::filesystem;
        fs::create_directories(root / "records");
        fs::create_directories(root / "tmp");

        CatalogStore store(root);
        RebuildReport rebuild;
        auto state = std::make_shared<State>();

        std::lock_guard<std::mutex> guard(store.inner_->write_mutex);
        store_detail::StoreLock lock(root);

        std::vector<fs::path> dirs;
        for (const auto& entry : fs::directory_iterator(root / "records"))
            if (entry.is_directory()) dirs.push_back(entry.path());
        std::sort(dirs.begin(), dirs.end());

        for (const fs::path& dir : dirs) {
            const std::string id = dir.filename().string();
            try {
                RegistryRecord record = store_detail::record_from_json(
                    nlohmann::json::parse(store_detail::read_file(dir / "record.json")));
                if (record.record_id != id)
                    throw store_error("record id mismatch: directory " + id + " holds " +
                                      record.record_id);
                Graph graph = parse_turtle(store_detail::read_file(root / record.graph_file));
                if (!record.report.conforms)
                    throw store_error("stored record does not conform to its own report");
                index_resources(*state, record, graph);
                state->records.emplace(record.record_id, std::move(record));
            } catch (const std::exception& e) {
                fs::create_directories(root / "quarantine");
                fs::rename(dir, root / "quarantine" / id);
                rebuild.quarantined.push_back({id, e.what()});
            }
        }

        store.inner_->state = state;
        store.publish_index(*state);
        return {std::move(store), std::move(rebuild)};
    }

    /// Canonical JSON form of the index; equality of two stores' index_json
    /// is the store-equivalence oracle used in tests.
    nlohmann::ordered_json index_json() const {
        nlohmann::ordered_json j;
        nlohmann::ordered_json records = nlohmann::ordered_json::array();
        for (const auto& [id, record] : *snapshot_records())
            records.push_back(store_detail::record_to_json(record));
        j["records"] = std::move(records);
        return j;
    }

    Graph load_graph(const RegistryRecord& record) const {
        try {
            return parse_turtle(store_detail::read_file(inner_->root / record.turtle_file));
        } catch (const std::exception&) {
            // fall back to the canonical file when the turtle copy is damaged
            return parse_turtle(store_detail::read_file(inner_->root / record.graph_file));
        }
    }

    std::size_t size() const { return snapshot_records()->size(); }
    const std::filesystem::path& root() const { return inner_->root; }

    /// Test hook: runs after the replacement index file has been written to
    /// the temp area and before it is renamed over index.json.
    void set_before_index_rename_hook(std::function<void()> hook) {
        inner_->before_index_rename = std::move(hook);
    }

    /// Resource IRIs known to the index, with the records containing them.
    std::map<std::string, std::vector<std::string>> resource_index() const {
        return snapshot()->resources;
    }

private:
    struct State {
        std::map<std::string, RegistryRecord> records;
        std::map<std::string, std::vector<std::string>> resources;
    };

    struct Inner {
        explicit Inner(std::filesystem::path r) : root(std::move(r)), state(std::make_shared<State>()) {}
        std::filesystem::path root;
        std::mutex write_mutex;
        mutable std::mutex state_mutex;
        std::shared_ptr<const State> state;
        std::function<void()> before_index_rename;
        store_detail::UlidGenerator ulid;
    };

    explicit CatalogStore(const std::filesystem::path& root)
        : inner_(std::make_shared<Inner>(root)) {}

    std::shared_ptr<const State> snapshot() const {
        std::lock_guard<std::mutex> guard(inner_->state_mutex);
        return inner_->state;
    }

    std::shared_ptr<const std::map<std::string, RegistryRecord>> snapshot_records() const {
        auto state = snapshot();
        return {state, &state->records};
    }

    void set_state(std::shared_ptr<const State> next) {
        std::lock_guard<std::mutex> guard(inner_->state_mutex);
        inner_->state = std::move(next);
    }

    static void index_resources(State& state, const RegistryRecord& record, const Graph& graph) {
        std::set<Iri> resources;
        for (ResourceKind kind : {ResourceKind::System, ResourceKind::Model, ResourceKind::Dataset})
            for (const Iri& r : resources_of(graph, kind)) resources.insert(r);
        resources.insert(record.system_iri);
        for (const Iri& r : resources) {
            auto& ids = state.resources[r.str()];
            if (std::find(ids.begin(), ids.end(), record.record_id) == ids.end())
                ids.push_back(record.record_id);
        }
    }

    static std::vector<Iri> resources_of(const Graph& graph, ResourceKind kind) {
        std::set<Iri> out;
        for (const Iri& iri : list_resources(graph, kind)) out.insert(iri);
        const Iri& type_iri = kind == ResourceKind::System ? vocab::airo_AISystem()
                              : kind == ResourceKind::Model ? vocab::airo_AIModel()
                                                            : vocab::airo_Data();
        for (const Subject& s : graph.subjects_of_type(type_iri))
            if (const auto* iri = std::get_if<Iri>(&s)) out.insert(*iri);
        return {out.begin(), out.end()};
    }

    static std::string title_of(const Graph& graph, const Iri& resource) {
        for (const Term& o : graph.objects(Subject{resource}, vocab::dct_title()))
            if (const auto* lit = std::get_if<Literal>(&o)) return lit->lexical();
        return "";
    }

    static bool matches(const Graph& graph, const Iri& resource, const SearchQuery& query) {
        Subject node{resource};
        if (query.country && !graph.has(node, vocab::dpv_hasCountry(), Term{*query.country}))
            return false;
        if (query.market_status &&
            !graph.has(node, vocab::tech_hasMarketAvailabilityStatus(), Term{*query.market_status}))
            return false;
        if (query.text) {
            const std::string needle = store_detail::lowercase(*query.text);
            bool found = false;
            for (const Iri& pred : {vocab::dct_title(), vocab::dct_description()})
                for (const Term& o : graph.objects(node, pred))
                    if (const auto* lit = std::get_if<Literal>(&o))
                        if (store_detail::lowercase(lit->lexical()).find(needle) != std::string::npos)
                            found = true;
            if (!found) return false;
        }
        return true;
    }

    static Iri catalog_node_of(const Graph& graph, const Iri& fallback) {
        for (const Subject& s : graph.subjects_of_type(vocab::aicat_Catalog()))
            if (const auto* iri = std::get_if<Iri>(&s)) return *iri;
        return fallback;
    }

    void persist(const RegistryRecord& record, const std::string& ntriples,
                 const std::string& turtle) {
        namespace fs = std::filesystem;
        const fs::path staging = inner_->root / "tmp" / record.record_id;
        fs::create_directories(staging);
        store_detail::write_file(staging / "graph.nt", ntriples);
        store_detail::write_file(staging / "graph.ttl", turtle);
        store_detail::write_file(staging / "record.json",
                                 store_detail::record_to_json(record).dump(2) + "\n");
        fs::rename(staging, inner_->root / "records" / record.record_id);
    }

    void publish_index(const State& state) {
        namespace fs = std::filesystem;
        nlohmann::ordered_json j;
        nlohmann::ordered_json records = nlohmann::ordered_json::array();
        for (const auto& [id, record] : state.records)
            records.push_back(store_detail::record_to_json(record));
        j["records"] = std::move(records);

        const fs::path temp = inner_->root / "tmp" / ("index." + std::to_string(::getpid()) + ".json");
        store_detail::write_file(temp, j.dump(2) + "\n");
        if (inner_->before_index_rename) inner_->before_index_rename();
        fs::rename(temp, inner_->root / "index.json");
    }

    std::shared_ptr<Inner> inner_;
};

}  // namespace aicat
