#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "pdm/common.hpp"
#include "pdm/pipeline.hpp"

using namespace pdm;

namespace {

// Class 0 series rise, class 1 series fall; n of each, small seeded noise.
Dataset toy(int n, int len = 10, unsigned seed = 1) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> noise(-0.05, 0.05);
    Dataset d;
    d.class_names = {"up", "down"};
    for (int i = 0; i < 2 * n; ++i) {
        MultivariateSeries s;
        s.id = "s" + std::to_string(i);
        s.dim_names = {"x"};
        int cls = i % 2;
        for (int t = 0; t < len; ++t) {
            double v = cls == 0 ? t : len - t;
            s.values.push_back({v + noise(rng)});
            s.classes.push_back(cls);
        }
        d.series.push_back(std::move(s));
    }
    return d;
}

}  // namespace

TEST_CASE("separable toy dataset") {
    PipelineConfig cfg;
    cfg.seed = 3;
    auto r = train(toy(6), cfg);
    CHECK(r.train_metrics.accuracy == 1.0);
    CHECK(r.model.train_segments == 8);
    CHECK_FALSE(r.model.clauses.empty());
    CHECK(r.model.class_names == std::vector<std::string>{"up", "down"});
    auto e = evaluate_model(r.model, toy(6), cfg);
    CHECK(e.test_segments == 4);
    CHECK(e.metrics.accuracy == 1.0);
    CHECK(e.unseen_classes.empty());
    for (const auto& key : {"load_index", "dt_mine", "serialize", "segment", "mine_embed", "learn"})
        CHECK(r.timings.count(key) == 1);
}

TEST_CASE("model predictions replay the training frame") {
    PipelineConfig cfg;
    auto data = toy(5, 12, 4);
    auto r = train(data, cfg);
    auto log = deserialize(serialize(discretize(data, cfg)));
    auto [tr, te] = split_segments(segment_by_class(log), cfg.train_fraction, cfg.seed);
    auto frame_pred = cart::predict(r.spec.tree, cart::to_table(r.spec.frame.table()));
    std::size_t row = 0;
    for (const auto& [cls, l] : tr)
        for (const auto& t : l.traces) CHECK(r.model.predict(t) == frame_pred.at(row++));
    CHECK(row == frame_pred.size());
    auto text = explain(r.model);
    CHECK(text.find("class up (0):") != std::string::npos);
    CHECK(text.find("class down (1):") != std::string::npos);
    CHECK(text.find("notice:") == std::string::npos);
}

TEST_CASE("a model without clauses says so") {
    Dataset d = toy(3);
    for (auto& s : d.series) s.values = d.series[0].values;  // indistinguishable classes
    auto r = train(d, {});
    CHECK(r.model.clauses.empty());
    CHECK(explain(r.model).find("notice:") == 0);
}

TEST_CASE("same seed, same bundle; dump and load round trip") {
    PipelineConfig cfg;
    cfg.seed = 11;
    auto a = dump_model(train(toy(6), cfg).model);
    auto b = dump_model(train(toy(6), cfg).model);
    cfg.jobs = 3;
    auto c = dump_model(train(toy(6), cfg).model);
    CHECK(a == b);
    CHECK(a == c);
    auto path = (std::filesystem::temp_directory_path() / "pdm_model.json").string();
    std::ofstream(path) << a;
    CHECK(dump_model(load_model(path)) == a);
    CHECK_THROWS_AS(model_from_json(nlohmann::json::parse(R"({"format":"other"})")), ParseError);
}

TEST_CASE("discretize then train_from_log equals train") {
    PipelineConfig cfg;
    cfg.seed = 5;
    auto data = toy(6, 10, 9);
    auto direct = train(data, cfg);
    auto via = train_from_log(serialize(discretize(data, cfg)), cfg);
    CHECK(dump_model(direct.model) == dump_model(via.model));
}

TEST_CASE("split_segments is stratified") {
    std::map<int, PolyadicLog> logs;
    for (int cls = 0; cls < 3; ++cls)
        for (int i = 0; i < 3 + 4 * cls; ++i) {
            PolyadicTrace t;
            t.id = std::to_string(cls) + "_" + std::to_string(i);
            logs[cls].traces.push_back(t);
        }
    for (std::uint64_t seed : {0, 1, 2}) {
        auto [tr, te] = split_segments(logs, 0.7, seed);
        CHECK(tr.at(0).traces.size() == 2);  // round(2.1)
        CHECK(tr.at(1).traces.size() == 5);  // round(4.9)
        CHECK(tr.at(2).traces.size() == 8);  // round(7.7)
        for (int cls = 0; cls < 3; ++cls) {
            std::set<std::string> ids;
            for (const auto& t : tr.at(cls).traces) ids.insert(t.id);
            for (const auto& t : te.at(cls).traces) CHECK(ids.insert(t.id).second);
            CHECK(ids.size() == logs[cls].traces.size());
        }
    }
    std::map<int, PolyadicLog> one;
    one[0].traces.resize(1);
    auto [tr1, te1] = split_segments(one, 0.1, 0);
    CHECK(tr1.at(0).traces.size() == 1);
    CHECK(te1.empty());
}

TEST_CASE("configuration and input errors") {
    CHECK_THROWS_AS(train(Dataset{}, {}), ValidationError);
    PipelineConfig bad;
    bad.theta = 2;
    CHECK_THROWS_AS(bad.validate(), ValidationError);
    bad = {};
    bad.train_fraction = 1.0;
    CHECK_THROWS_AS(bad.validate(), ValidationError);
    bad = {};
    bad.jobs = 0;
    CHECK_THROWS_AS(bad.validate(), ValidationError);
    bad = {};
    bad.epsilon = -1;
    CHECK_THROWS_AS(train(toy(2), bad), ValidationError);
    CHECK_THROWS_AS(train_from_log("{", {}), ParseError);
}

TEST_CASE("bundled datasets load") {
    auto d = load_dataset(std::string(PDM_DATA_DIR) + "/italy_power_demand.csv", InputFormat::LongCsv);
    CHECK(d.series.size() == 1096);
    CHECK(d.series[0].length() == 24);
    CHECK(d.class_names.size() == 2);
}
