#include "pdm/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "pdm/common.hpp"
#include "pdm/dtminer.hpp"

namespace pdm {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

template <class F>
auto phase(const char* name, PhaseTimings* timings, F&& f) {
    auto t0 = Clock::now();
    try {
        if constexpr (std::is_void_v<decltype(f())>) {
            f();
            if (timings) (*timings)[name] += since(t0);
        } else {
            auto r = f();
            if (timings) (*timings)[name] += since(t0);
            return r;
        }
    } catch (const ValidationError&) {
        throw;
    } catch (const std::exception& e) {
        throw PhaseError(name, e.what());
    }
}

}  // namespace

PhaseError::PhaseError(const std::string& p, const std::string& what)
    : std::runtime_error(fmt::format("[{}] {}", p, what)), phase(p) {}

void PipelineConfig::validate() const {
    if (!(epsilon >= 0.0)) throw ValidationError("epsilon must be non-negative");
    if (!(theta >= 0.0 && theta <= 1.0)) throw ValidationError("theta must lie in [0,1]");
    if (max_depth < 0) throw ValidationError("max depth must be non-negative");
    if (!(train_fraction > 0.0 && train_fraction < 1.0)) throw ValidationError("split must lie in (0,1)");
    if (jobs < 1) throw ValidationError("jobs must be at least 1");
}

MinerOptions PipelineConfig::miner() const {
    MinerOptions o;
    o.theta = theta;
    o.max_depth = max_depth;
    o.seed = seed;
    o.jobs = jobs;
    return o;
}

std::string Model::class_name(int cls) const {
    if (cls >= 0 && cls < static_cast<int>(class_names.size())) return class_names[cls];
    return std::to_string(cls);
}

int Model::predict(const PolyadicTrace& segment) const {
    TraceView tv(segment);
    std::vector<double> row(clauses.size());
    for (std::size_t i = 0; i < clauses.size(); ++i) row[i] = static_cast<int>(evaluate(clauses[i], tv));
    return cart::predict_one(tree, row);
}

nlohmann::json to_json(const Model& m) {
    nlohmann::json j;
    j["format"] = "pdm-model";
    j["schema_version"] = kSchemaVersion;
    j["config"] = {{"epsilon", m.config.epsilon},
                   {"theta", m.config.theta},
                   {"max_depth", m.config.max_depth},
                   {"train_fraction", m.config.train_fraction},
                   {"seed", m.config.seed}};
    j["class_names"] = m.class_names;
    j["taxonomies"] = nlohmann::json::array();
    for (const auto& t : m.taxonomies) j["taxonomies"].push_back({{"root", t.root}, {"leaves", t.leaves}});
    j["clauses"] = nlohmann::json::array();
    for (const auto& c : m.clauses) j["clauses"].push_back(to_json(c));
    j["tree"] = cart::to_json(m.tree);
    j["stats"] = {{"mined_clauses", m.mined_clauses}, {"train_segments", m.train_segments}};
    return j;
}

Model model_from_json(const nlohmann::json& j) {
    try {
        if (j.value("format", "") != "pdm-model") throw ParseError("not a model bundle");
        Model m;
        const auto& c = j.at("config");
        m.config.epsilon = c.at("epsilon").get<double>();
        m.config.theta = c.at("theta").get<double>();
        m.config.max_depth = c.at("max_depth").get<int>();
        m.config.train_fraction = c.at("train_fraction").get<double>();
        m.config.seed = c.at("seed").get<std::uint64_t>();
        m.class_names = j.at("class_names").get<std::vector<std::string>>();
        for (const auto& t : j.at("taxonomies"))
            m.taxonomies.push_back({t.at("root").get<std::string>(), t.at("leaves").get<std::vector<std::string>>()});
        for (const auto& cj : j.at("clauses")) m.clauses.push_back(clause_from_json(cj));
        m.tree = cart::tree_from_json(j.at("tree"));
        m.mined_clauses = j.at("stats").at("mined_clauses").get<std::size_t>();
        m.train_segments = j.at("stats").at("train_segments").get<std::size_t>();
        if (m.tree.keys.size() != m.clauses.size()) throw ParseError("tree and clause list disagree");
        for (std::size_t i = 0; i < m.clauses.size(); ++i) {
            validate_clause(m.clauses[i], m.taxonomies);
            if (m.clauses[i].to_string() != m.tree.keys[i])
                throw ParseError(fmt::format("tree feature '{}' has no clause", m.tree.keys[i]));
        }
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(fmt::format("bad model bundle: {}", e.what()));
    }
}

std::string dump_model(const Model& m) { return to_json(m).dump(2) + "\n"; }

Model load_model(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ValidationError(fmt::format("cannot read model {}", path));
    std::stringstream ss;
    ss << f.rdbuf();
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(ss.str());
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(fmt::format("model is not valid JSON: {}", e.what()));
    }
    return model_from_json(j);
}

std::pair<std::map<int, PolyadicLog>, std::map<int, PolyadicLog>> split_segments(
    const std::map<int, PolyadicLog>& logs, double fraction, std::uint64_t seed) {
    std::map<int, PolyadicLog> train, test;
    std::mt19937_64 rng(seed);
    for (const auto& [cls, log] : logs) {
        std::vector<std::size_t> idx(log.traces.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::shuffle(idx.begin(), idx.end(), rng);
        auto k = static_cast<std::size_t>(std::llround(fraction * idx.size()));
        k = std::clamp<std::size_t>(k, idx.empty() ? 0 : 1, idx.size());
        std::vector<std::size_t> tr(idx.begin(), idx.begin() + k), te(idx.begin() + k, idx.end());
        std::sort(tr.begin(), tr.end());
        std::sort(te.begin(), te.end());
        auto fill = [&](PolyadicLog& dst, const std::vector<std::size_t>& which) {
            dst.taxonomies = log.taxonomies;
            dst.class_names = log.class_names;
            for (auto i : which) dst.traces.push_back(log.traces[i]);
        };
        if (!tr.empty()) fill(train[cls], tr);
        if (!te.empty()) fill(test[cls], te);
    }
    return {train, test};
}

PolyadicLog discretize(const Dataset& data, const PipelineConfig& cfg, PhaseTimings* timings) {
    cfg.validate();
    if (data.series.empty()) throw ValidationError("dataset has no series");
    std::vector<SeriesIndices> idx(data.series.size());
    phase("load_index", timings, [&] {
        parallel_for(data.series.size(), cfg.jobs,
                     [&](std::size_t i) { idx[i] = build_indices(data.series[i], cfg.epsilon); });
    });
    PolyadicLog log;
    phase("dt_mine", timings, [&] {
        log.traces.resize(data.series.size());
        DtMineOptions opt{cfg.epsilon, 1};
        parallel_for(data.series.size(), cfg.jobs,
                     [&](std::size_t i) { log.traces[i] = dt_mine(data.series[i], idx[i], opt); });
        log.taxonomies = build_taxonomies(log);
    });
    log.class_names = data.class_names;
    return log;
}

namespace {

std::vector<int> train_predictions(const MinedSpecification& spec) {
    return cart::predict(spec.tree, cart::to_table(spec.frame.table()));
}

}  // namespace

TrainResult train_from_log(const std::string& log_json, const PipelineConfig& cfg, PhaseTimings timings) {
    cfg.validate();
    TrainResult r;
    auto log = phase("serialize", &timings, [&] { return deserialize(log_json); });
    auto segs = phase("segment", &timings, [&] { return segment_by_class(log); });
    auto [train, test] = split_segments(segs, cfg.train_fraction, cfg.seed);
    if (train.empty()) throw ValidationError("no training segments");
    r.spec = phase("mine_embed", &timings, [&] { return build_embedding(train, cfg.miner()); });
    phase("learn", &timings, [&] { r.spec.tree = cart::fit(r.spec.frame.table(), cfg.max_depth); });

    Model& m = r.model;
    m.config = cfg;
    m.class_names = log.class_names;
    m.taxonomies = log.taxonomies;
    std::map<std::string, const Clause*> by_text;
    for (const auto& c : r.spec.frame.columns) by_text.emplace(c.to_string(), &c);
    for (const auto& k : r.spec.tree.keys) m.clauses.push_back(*by_text.at(k));
    m.tree = r.spec.tree;
    m.mined_clauses = r.spec.frame.columns.size();
    m.train_segments = r.spec.frame.rows.size();

    r.train_metrics = compute_metrics(r.spec.frame.classes(), train_predictions(r.spec));
    r.timings = std::move(timings);
    return r;
}

TrainResult train(const Dataset& data, const PipelineConfig& cfg) {
    PhaseTimings timings;
    auto log = discretize(data, cfg, &timings);
    auto text = phase("serialize", &timings, [&] { return serialize(log); });
    return train_from_log(text, cfg, std::move(timings));
}

EvalResult evaluate_model(const Model& m, const PolyadicLog& log, const PipelineConfig& cfg) {
    cfg.validate();
    EvalResult r;
    auto segs = segment_by_class(log);
    auto [train, test] = split_segments(segs, cfg.train_fraction, cfg.seed);
    // Map the log's class ids onto the model's by name when both carry names.
    std::map<int, int> remap;
    std::set<std::string> unseen;
    for (const auto& [cls, l] : test) {
        int to = cls;
        if (!log.class_names.empty() && !m.class_names.empty()) {
            const auto& name = cls < static_cast<int>(log.class_names.size()) ? log.class_names[cls] : "";
            auto it = std::find(m.class_names.begin(), m.class_names.end(), name);
            if (it != m.class_names.end()) {
                to = static_cast<int>(it - m.class_names.begin());
            } else {
                to = static_cast<int>(m.class_names.size() + unseen.size());
                unseen.insert(name);
            }
        } else if (!std::binary_search(m.tree.classes.begin(), m.tree.classes.end(), cls)) {
            unseen.insert(std::to_string(cls));
        }
        remap[cls] = to;
    }
    std::vector<const PolyadicTrace*> todo;
    for (const auto& [cls, l] : test)
        for (const auto& t : l.traces) {
            todo.push_back(&t);
            r.truth.push_back(remap[cls]);
        }
    r.predicted.resize(todo.size());
    parallel_for(todo.size(), cfg.jobs, [&](std::size_t i) { r.predicted[i] = m.predict(*todo[i]); });
    r.unseen_classes.assign(unseen.begin(), unseen.end());
    r.test_segments = todo.size();
    r.metrics = compute_metrics(r.truth, r.predicted);
    return r;
}

EvalResult evaluate_model(const Model& m, const Dataset& data, const PipelineConfig& cfg) {
    PipelineConfig c = cfg;
    c.epsilon = m.config.epsilon;
    auto log = deserialize(serialize(discretize(data, c)));
    return evaluate_model(m, log, cfg);
}

namespace {

std::string render_cells(const std::set<int>& allowed) {
    static const std::map<int, const char*> names{{-1, "violated"}, {0, "vacuous"}, {1, "satisfied"}};
    if (allowed.size() == 1) return fmt::format("= {}", names.at(*allowed.begin()));
    std::vector<std::string> out;
    for (int v : {-1, 0, 1})
        if (!allowed.count(v)) out.push_back(fmt::format("≠ {}", names.at(v)));
    return out.size() == 1 ? out[0] : "";
}

}  // namespace

std::string explain(const Model& m) {
    std::string out;
    if (m.clauses.empty())
        out += "notice: the model reads no clause; every segment gets the majority class\n";
    auto paths = cart::paths(m.tree);
    for (int cls : m.tree.classes) {
        out += fmt::format("class {} ({}):\n", m.class_name(cls), cls);
        bool any = false;
        for (const auto& p : paths) {
            if (p.predicted_class != cls) continue;
            // Intersect the cell ranges each clause may take along the path.
            std::map<std::string, std::set<int>> allowed;
            std::vector<std::string> order;
            for (const auto& a : p.predicate) {
                auto [it, fresh] = allowed.emplace(a.key, std::set<int>{-1, 0, 1});
                if (fresh) order.push_back(a.key);
                std::set<int> keep;
                for (int v : it->second)
                    if (a.op == Op::Le ? v <= a.value : v > a.value) keep.insert(v);
                it->second = keep;
            }
            std::vector<std::string> parts;
            for (const auto& k : order) parts.push_back(fmt::format("{} {}", k, render_cells(allowed[k])));
            int n = 0, total = 0;
            for (std::size_t c = 0; c < p.counts.size(); ++c) {
                total += p.counts[c];
                if (m.tree.classes[c] == cls) n = p.counts[c];
            }
            std::string body = parts.empty() ? "always" : fmt::format("{}", fmt::join(parts, " ∧ "));
            out += fmt::format("  {} {}   [{}/{} training segments]\n", any ? "∨" : " ", body, n, total);
            any = true;
        }
        if (!any) out += "    never predicted\n";
    }
    return out;
}

nlohmann::json spec_json(const TrainResult& r) {
    nlohmann::json j;
    j["model"] = to_json(r.model);
    j["clauses"] = nlohmann::json::array();
    for (const auto& c : r.spec.frame.columns) j["clauses"].push_back(c.to_string());
    j["candidate_columns"] = r.spec.candidate_columns;
    j["warnings"] = r.spec.warnings;
    return j;
}

}  // namespace pdm
