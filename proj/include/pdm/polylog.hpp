#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

namespace pdm {

inline constexpr std::string_view kRawLabel = "__raw_data";
inline constexpr std::string_view kLabelKey = "__label";
inline constexpr std::string_view kSpanKey = "__span";
inline constexpr int kSchemaVersion = 1;

// Key list shared by every payload of the same shape. Payloads of DT
// constituents all point at one schema instance, raw-data payloads at another.
struct PayloadSchema {
    std::vector<std::string> keys;
    std::unordered_map<std::string, int> index;

    explicit PayloadSchema(std::vector<std::string> k);
    int find(std::string_view key) const;  // -1 if absent
};
using SchemaPtr = std::shared_ptr<const PayloadSchema>;

SchemaPtr make_schema(std::vector<std::string> keys);

struct Payload {
    SchemaPtr schema;
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
    std::optional<double> get(std::string_view key) const;
    std::map<std::string, double> to_map() const;
    bool operator==(const Payload& o) const;
};

Payload make_payload(const std::map<std::string, double>& m);

struct Constituent {
    std::string label;
    int start = 1;  // timestamp within its trace
    int span = 1;
    Payload payload;

    int end() const { return start + span - 1; }
    bool is_raw() const { return label == kRawLabel; }
    bool operator==(const Constituent& o) const {
        return label == o.label && start == o.start && span == o.span && payload == o.payload;
    }
};

using KappaValue = std::variant<double, std::string>;

// Payload plus __label and __span.
std::map<std::string, KappaValue> kappa(const Constituent& c);

struct PolyadicEvent {
    std::vector<Constituent> constituents;
    int class_label = 0;
};

struct PolyadicTrace {
    std::string id;
    std::vector<PolyadicEvent> events;  // events[j-1] starts at j
};

struct Taxonomy {
    std::string root;
    std::vector<std::string> leaves;  // sorted
    bool operator==(const Taxonomy&) const = default;
};

struct PolyadicLog {
    std::vector<Taxonomy> taxonomies;  // sorted by root
    std::vector<PolyadicTrace> traces;
    std::vector<std::string> class_names;  // optional; index = class id

    // Root of `label`, or empty for raw data and unknown labels.
    std::string root_of(std::string_view label) const;
};

// "IncreaseRapidly(dim_3^i)" -> "dim_3^i"; empty if the label has no root.
std::string label_root(std::string_view label);

// Orders constituents of every event by (label, span).
void canonicalize(PolyadicTrace& t);

// Drops exact duplicates and constituents strictly contained in a
// same-label constituent of the same trace. Raw data is never dropped.
PolyadicTrace prune_redundant(const PolyadicTrace& trace);

std::vector<Taxonomy> build_taxonomies(const PolyadicLog& log);

// One log per class; each maximal same-class run of a trace becomes a
// trace of its own, renumbered from timestamp 1.
std::map<int, PolyadicLog> segment_by_class(const PolyadicLog& log);

std::string serialize(const PolyadicLog& log);
PolyadicLog deserialize(std::string_view text);

void write_log(const PolyadicLog& log, const std::string& path);
PolyadicLog read_log(const std::string& path);

}  // namespace pdm
