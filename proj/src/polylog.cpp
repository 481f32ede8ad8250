#include "pdm/polylog.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "pdm/common.hpp"

namespace pdm {

using nlohmann::json;

PayloadSchema::PayloadSchema(std::vector<std::string> k) : keys(std::move(k)) {
    for (std::size_t i = 0; i < keys.size(); ++i) {
        if (keys[i] == kLabelKey || keys[i] == kSpanKey)
            throw std::invalid_argument(fmt::format("payload key '{}' is reserved", keys[i]));
        if (!index.emplace(keys[i], static_cast<int>(i)).second)
            throw std::invalid_argument(fmt::format("duplicate payload key '{}'", keys[i]));
    }
}

int PayloadSchema::find(std::string_view key) const {
    auto it = index.find(std::string(key));
    return it == index.end() ? -1 : it->second;
}

SchemaPtr make_schema(std::vector<std::string> keys) { return std::make_shared<const PayloadSchema>(std::move(keys)); }

std::optional<double> Payload::get(std::string_view key) const {
    if (!schema) return std::nullopt;
    int i = schema->find(key);
    if (i < 0) return std::nullopt;
    return values[i];
}

std::map<std::string, double> Payload::to_map() const {
    std::map<std::string, double> m;
    if (!schema) return m;
    for (std::size_t i = 0; i < values.size(); ++i) m.emplace(schema->keys[i], values[i]);
    return m;
}

bool Payload::operator==(const Payload& o) const {
    if (schema == o.schema) return values == o.values;
    return to_map() == o.to_map();
}

Payload make_payload(const std::map<std::string, double>& m) {
    std::vector<std::string> keys;
    std::vector<double> vals;
    for (const auto& [k, v] : m) {
        keys.push_back(k);
        vals.push_back(v);
    }
    return Payload{make_schema(std::move(keys)), std::move(vals)};
}

std::map<std::string, KappaValue> kappa(const Constituent& c) {
    std::map<std::string, KappaValue> out;
    for (const auto& [k, v] : c.payload.to_map()) {
        if (k == kLabelKey || k == kSpanKey) throw std::invalid_argument(fmt::format("payload key '{}' is reserved", k));
        out.emplace(k, v);
    }
    out.emplace(std::string(kLabelKey), c.label);
    out.emplace(std::string(kSpanKey), static_cast<double>(c.span));
    return out;
}

std::string label_root(std::string_view label) {
    auto open = label.rfind('(');
    if (open == std::string_view::npos || label.back() != ')') return {};
    return std::string(label.substr(open + 1, label.size() - open - 2));
}

std::string PolyadicLog::root_of(std::string_view label) const {
    if (label == kRawLabel) return {};
    for (const auto& tx : taxonomies)
        if (std::binary_search(tx.leaves.begin(), tx.leaves.end(), label)) return tx.root;
    return {};
}

void canonicalize(PolyadicTrace& t) {
    for (auto& ev : t.events)
        std::stable_sort(ev.constituents.begin(), ev.constituents.end(), [](const Constituent& a, const Constituent& b) {
            bool ra = a.is_raw(), rb = b.is_raw();
            if (ra != rb) return ra;
            if (a.label != b.label) return a.label < b.label;
            return a.span < b.span;
        });
}

PolyadicTrace prune_redundant(const PolyadicTrace& trace) {
    struct Ref {
        int start, end;
        std::size_t ev, pos;
    };
    std::map<std::string, std::vector<Ref>> by_label;
    for (std::size_t j = 0; j < trace.events.size(); ++j) {
        const auto& cs = trace.events[j].constituents;
        for (std::size_t p = 0; p < cs.size(); ++p)
            if (!cs[p].is_raw()) by_label[cs[p].label].push_back({cs[p].start, cs[p].end(), j, p});
    }
    std::vector<std::vector<char>> keep(trace.events.size());
    for (std::size_t j = 0; j < trace.events.size(); ++j) keep[j].assign(trace.events[j].constituents.size(), 1);

    for (auto& [label, refs] : by_label) {
        // start ascending, end descending: anything earlier with end >= ours
        // strictly contains us once exact duplicates are gone
        std::stable_sort(refs.begin(), refs.end(), [](const Ref& a, const Ref& b) {
            return a.start != b.start ? a.start < b.start : a.end > b.end;
        });
        int max_end = 0;
        bool any = false;
        for (std::size_t k = 0; k < refs.size(); ++k) {
            const Ref& r = refs[k];
            bool dup = k > 0 && refs[k - 1].start == r.start && refs[k - 1].end == r.end;
            if (dup || (any && max_end >= r.end)) {
                keep[r.ev][r.pos] = 0;
                continue;
            }
            max_end = any ? std::max(max_end, r.end) : r.end;
            any = true;
        }
    }
    PolyadicTrace out;
    out.id = trace.id;
    out.events.reserve(trace.events.size());
    for (std::size_t j = 0; j < trace.events.size(); ++j) {
        PolyadicEvent ev;
        ev.class_label = trace.events[j].class_label;
        for (std::size_t p = 0; p < trace.events[j].constituents.size(); ++p)
            if (keep[j][p]) ev.constituents.push_back(trace.events[j].constituents[p]);
        out.events.push_back(std::move(ev));
    }
    return out;
}

std::vector<Taxonomy> build_taxonomies(const PolyadicLog& log) {
    std::map<std::string, std::set<std::string>> leaves;
    for (const auto& t : log.traces)
        for (const auto& ev : t.events)
            for (const auto& c : ev.constituents) {
                if (c.is_raw()) continue;
                auto root = label_root(c.label);
                if (root.empty()) throw ValidationError(fmt::format("label '{}' names no dimension root", c.label));
                leaves[root].insert(c.label);
            }
    std::vector<Taxonomy> out;
    for (auto& [root, ls] : leaves) out.push_back({root, {ls.begin(), ls.end()}});
    return out;
}

std::map<int, PolyadicLog> segment_by_class(const PolyadicLog& log) {
    std::map<int, PolyadicLog> out;
    for (const auto& t : log.traces) {
        const int n = static_cast<int>(t.events.size());
        int b = 0;
        while (b < n) {
            int e = b;
            const int y = t.events[b].class_label;
            while (e + 1 < n && t.events[e + 1].class_label == y) ++e;
            PolyadicTrace seg;
            seg.id = fmt::format("{}@{}", t.id, b + 1);
            for (int j = b; j <= e; ++j) {
                PolyadicEvent ev = t.events[j];
                for (auto& c : ev.constituents) c.start -= b;
                seg.events.push_back(std::move(ev));
            }
            auto& dst = out[y];
            if (dst.taxonomies.empty()) dst.taxonomies = log.taxonomies;
            dst.traces.push_back(std::move(seg));
            b = e + 1;
        }
    }
    return out;
}

namespace {

void check_labels(const PolyadicLog& log) {
    std::map<std::string, int> owners;
    for (const auto& tx : log.taxonomies)
        for (const auto& l : tx.leaves) ++owners[l];
    for (const auto& t : log.traces)
        for (const auto& ev : t.events)
            for (const auto& c : ev.constituents) {
                if (c.is_raw()) continue;
                auto it = owners.find(c.label);
                if (it == owners.end() || it->second != 1)
                    throw ValidationError(
                        fmt::format("trace {}: label '{}' must belong to exactly one taxonomy", t.id, c.label));
            }
}

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
    throw ParseError(fmt::format("log schema violation at {}: {}", path, what));
}

const json& need(const json& j, const char* key, const std::string& path) {
    if (!j.is_object()) schema_error(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) schema_error(path, fmt::format("missing '{}'", key));
    return *it;
}

}  // namespace

std::string serialize(const PolyadicLog& log) {
    check_labels(log);
    json j;
    j["schema_version"] = kSchemaVersion;
    j["taxonomies"] = json::array();
    for (const auto& tx : log.taxonomies) j["taxonomies"].push_back({{"root", tx.root}, {"leaves", tx.leaves}});
    if (!log.class_names.empty()) j["class_names"] = log.class_names;
    j["traces"] = json::array();
    for (const auto& raw : log.traces) {
        auto t = prune_redundant(raw);
        json jt;
        jt["id"] = t.id;
        jt["events"] = json::array();
        for (const auto& ev : t.events) {
            json je;
            je["class"] = ev.class_label;
            je["constituents"] = json::array();
            for (const auto& c : ev.constituents) {
                json p = json::object();
                if (c.payload.schema)
                    for (std::size_t i = 0; i < c.payload.values.size(); ++i)
                        p[c.payload.schema->keys[i]] = c.payload.values[i];
                je["constituents"].push_back({{"label", c.label}, {"span", c.span}, {"payload", std::move(p)}});
            }
            jt["events"].push_back(std::move(je));
        }
        j["traces"].push_back(std::move(jt));
    }
    return j.dump();
}

PolyadicLog deserialize(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(fmt::format("log is not valid JSON: {}", e.what()));
    }
    const auto& ver = need(j, "schema_version", "$");
    if (!ver.is_number_integer() || ver.get<int>() != kSchemaVersion)
        schema_error("$.schema_version", fmt::format("unsupported version (expected {})", kSchemaVersion));

    PolyadicLog log;
    const auto& txs = need(j, "taxonomies", "$");
    if (!txs.is_array()) schema_error("$.taxonomies", "expected an array");
    for (std::size_t i = 0; i < txs.size(); ++i) {
        auto path = fmt::format("$.taxonomies[{}]", i);
        Taxonomy tx;
        const auto& root = need(txs[i], "root", path);
        const auto& leaves = need(txs[i], "leaves", path);
        if (!root.is_string()) schema_error(path + ".root", "expected a string");
        if (!leaves.is_array()) schema_error(path + ".leaves", "expected an array");
        tx.root = root.get<std::string>();
        for (std::size_t k = 0; k < leaves.size(); ++k) {
            if (!leaves[k].is_string()) schema_error(fmt::format("{}.leaves[{}]", path, k), "expected a string");
            tx.leaves.push_back(leaves[k].get<std::string>());
        }
        std::sort(tx.leaves.begin(), tx.leaves.end());
        log.taxonomies.push_back(std::move(tx));
    }

    if (j.contains("class_names")) {
        const auto& names = j["class_names"];
        if (!names.is_array()) schema_error("$.class_names", "expected an array");
        for (std::size_t i = 0; i < names.size(); ++i) {
            if (!names[i].is_string()) schema_error(fmt::format("$.class_names[{}]", i), "expected a string");
            log.class_names.push_back(names[i].get<std::string>());
        }
    }

    // payloads with the same key list share one schema
    std::map<std::vector<std::string>, SchemaPtr> schemas;
    const auto& trs = need(j, "traces", "$");
    if (!trs.is_array()) schema_error("$.traces", "expected an array");
    for (std::size_t ti = 0; ti < trs.size(); ++ti) {
        auto tpath = fmt::format("$.traces[{}]", ti);
        PolyadicTrace t;
        const auto& id = need(trs[ti], "id", tpath);
        if (!id.is_string()) schema_error(tpath + ".id", "expected a string");
        t.id = id.get<std::string>();
        const auto& evs = need(trs[ti], "events", tpath);
        if (!evs.is_array()) schema_error(tpath + ".events", "expected an array");
        for (std::size_t ei = 0; ei < evs.size(); ++ei) {
            auto epath = fmt::format("{}.events[{}]", tpath, ei);
            PolyadicEvent ev;
            const auto& cls = need(evs[ei], "class", epath);
            if (!cls.is_number_integer()) schema_error(epath + ".class", "expected an integer");
            ev.class_label = cls.get<int>();
            const auto& cs = need(evs[ei], "constituents", epath);
            if (!cs.is_array() || cs.empty()) schema_error(epath + ".constituents", "expected a non-empty array");
            for (std::size_t ci = 0; ci < cs.size(); ++ci) {
                auto cpath = fmt::format("{}.constituents[{}]", epath, ci);
                Constituent c;
                const auto& label = need(cs[ci], "label", cpath);
                const auto& span = need(cs[ci], "span", cpath);
                const auto& payload = need(cs[ci], "payload", cpath);
                if (!label.is_string()) schema_error(cpath + ".label", "expected a string");
                if (!span.is_number_integer() || span.get<int>() < 1)
                    schema_error(cpath + ".span", "expected a positive integer");
                if (!payload.is_object()) schema_error(cpath + ".payload", "expected an object");
                c.label = label.get<std::string>();
                c.start = static_cast<int>(ei) + 1;
                c.span = span.get<int>();
                std::vector<std::string> keys;
                for (auto it = payload.begin(); it != payload.end(); ++it) {
                    if (!it.value().is_number())
                        schema_error(fmt::format("{}.payload.{}", cpath, it.key()), "expected a number");
                    if (it.key() == kLabelKey || it.key() == kSpanKey)
                        schema_error(fmt::format("{}.payload.{}", cpath, it.key()), "reserved key");
                    keys.push_back(it.key());
                    c.payload.values.push_back(it.value().get<double>());
                }
                auto& sp = schemas[keys];
                if (!sp) sp = make_schema(keys);
                c.payload.schema = sp;
                ev.constituents.push_back(std::move(c));
            }
            t.events.push_back(std::move(ev));
        }
        log.traces.push_back(std::move(t));
    }
    check_labels(log);
    return log;
}

void write_log(const PolyadicLog& log, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ValidationError(fmt::format("cannot write {}", path));
    f << serialize(log);
}

PolyadicLog read_log(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ValidationError(fmt::format("cannot read {}", path));
    std::stringstream ss;
    ss << f.rdbuf();
    return deserialize(ss.str());
}

}  // namespace pdm
