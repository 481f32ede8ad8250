#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "pdm/common.hpp"
#include "pdm/dtminer.hpp"
#include "pdm/polylog.hpp"

using namespace pdm;

namespace {

const std::string IR1 = "IncreaseRapidly(dim_1^i)";
const std::string DR1 = "DecreaseRapidly(dim_1^i)";
const std::string IR2 = "IncreaseRapidly(dim_2^i)";

Constituent con(const std::string& label, int start, int span, std::map<std::string, double> p = {}) {
    return {label, start, span, make_payload(p)};
}

// Trace of `n` events; `cs` are placed by their start.
PolyadicTrace trace(int n, std::vector<Constituent> cs, std::vector<int> cls = {}) {
    PolyadicTrace t;
    t.id = "t";
    t.events.resize(n);
    for (int j = 0; j < n; ++j) {
        t.events[j].constituents.push_back(con(std::string(kRawLabel), j + 1, 1, {{"dim_1", j * 1.5}}));
        if (!cls.empty()) t.events[j].class_label = cls[j];
    }
    for (auto& c : cs) t.events[c.start - 1].constituents.push_back(std::move(c));
    canonicalize(t);
    return t;
}

std::vector<std::pair<std::string, Interval>> dt_spans(const PolyadicTrace& t) {
    std::vector<std::pair<std::string, Interval>> out;
    for (const auto& ev : t.events)
        for (const auto& c : ev.constituents)
            if (!c.is_raw()) out.push_back({c.label, {c.start, c.end()}});
    std::sort(out.begin(), out.end());
    return out;
}

MultivariateSeries random_series(std::mt19937& rng, int n) {
    MultivariateSeries s;
    s.id = "r" + std::to_string(rng() % 1000);
    s.dim_names = {"x", "y"};
    int c = 0;
    for (int t = 0; t < n; ++t) {
        s.values.push_back({static_cast<double>(rng() % 4), static_cast<double>(rng() % 3) * 0.5});
        if (rng() % 6 == 0) c = 1 - c;
        s.classes.push_back(c);
    }
    return s;
}

}  // namespace

TEST_CASE("kappa") {
    auto k = kappa(con("A(dim_1^i)", 1, 3, {{"v", 1}}));
    CHECK(k.size() == 3);
    CHECK(std::get<double>(k.at("v")) == 1);
    CHECK(std::get<std::string>(k.at("__label")) == "A(dim_1^i)");
    CHECK(std::get<double>(k.at("__span")) == 3);
    auto e = kappa(con("A(dim_1^i)", 1, 1));
    CHECK(e.size() == 2);
    CHECK_THROWS(con("A(dim_1^i)", 1, 1, {{"__label", 0}}));
}

TEST_CASE("prune_redundant") {
    auto nested = prune_redundant(trace(7, {con(IR1, 2, 4), con(IR1, 3, 2)}));
    CHECK(dt_spans(nested) == std::vector<std::pair<std::string, Interval>>{{IR1, {2, 5}}});

    auto overlap = prune_redundant(trace(7, {con(IR1, 2, 4), con(IR1, 4, 4)}));
    CHECK(dt_spans(overlap).size() == 2);

    auto other_label = prune_redundant(trace(7, {con(IR1, 2, 4), con(DR1, 3, 2)}));
    CHECK(dt_spans(other_label).size() == 2);

    auto dup = prune_redundant(trace(4, {con(IR1, 2, 2), con(IR1, 2, 2)}));
    CHECK(dt_spans(dup).size() == 1);

    // same start, shorter one is contained
    auto same_start = prune_redundant(trace(6, {con(IR1, 2, 3), con(IR1, 2, 1)}));
    CHECK(dt_spans(same_start) == std::vector<std::pair<std::string, Interval>>{{IR1, {2, 4}}});

    // raw data is never dropped
    for (const auto& ev : nested.events) CHECK(ev.constituents.front().is_raw());
}

TEST_CASE("prune_redundant is idempotent and keeps only non-contained siblings") {
    std::mt19937 rng(2);
    for (int rep = 0; rep < 400; ++rep) {
        int n = 2 + static_cast<int>(rng() % 8);
        std::vector<Constituent> cs;
        for (int k = 0; k < 6; ++k) {
            int s = 1 + static_cast<int>(rng() % n);
            cs.push_back(con(rng() % 2 ? IR1 : DR1, s, 1 + static_cast<int>(rng() % (n - s + 1))));
        }
        auto t = trace(n, cs);
        auto once = prune_redundant(t);
        auto twice = prune_redundant(once);
        CHECK(dt_spans(once) == dt_spans(twice));
        // oracle: keep (label, iv) unless another same-label interval strictly contains it
        std::set<std::pair<std::string, Interval>> want;
        for (const auto& [l, iv] : dt_spans(t)) {
            bool contained = false;
            for (const auto& [l2, iv2] : dt_spans(t))
                if (l2 == l && iv2 != iv && iv2.b <= iv.b && iv.e <= iv2.e) contained = true;
            if (!contained) want.insert({l, iv});
        }
        auto got = dt_spans(once);
        CHECK(std::set<std::pair<std::string, Interval>>(got.begin(), got.end()) == want);
        CHECK(got.size() == want.size());
    }
}

TEST_CASE("build_taxonomies") {
    PolyadicLog one;
    one.traces.push_back(trace(3, {con(IR1, 1, 1), con(DR1, 2, 1)}));
    auto tx = build_taxonomies(one);
    REQUIRE(tx.size() == 1);
    CHECK(tx[0].root == "dim_1^i");
    CHECK(tx[0].leaves == std::vector<std::string>{DR1, IR1});

    PolyadicLog two;
    two.traces.push_back(trace(3, {con(IR1, 1, 1), con(IR2, 2, 1)}));
    CHECK(build_taxonomies(two).size() == 2);

    CHECK(build_taxonomies(PolyadicLog{}).empty());
    CHECK(label_root(IR2) == "dim_2^i");
    CHECK(label_root(kRawLabel).empty());
}

TEST_CASE("segment_by_class") {
    PolyadicLog log;
    log.traces.push_back(trace(3, {con(IR1, 1, 2), con(DR1, 3, 1)}, {0, 0, 1}));
    log.taxonomies = build_taxonomies(log);
    auto seg = segment_by_class(log);
    REQUIRE(seg.size() == 2);
    CHECK(seg.at(0).traces.size() == 1);
    CHECK(seg.at(0).traces[0].events.size() == 2);
    CHECK(seg.at(1).traces[0].events.size() == 1);
    // renumbered from 1, raw payload kept
    const auto& c = seg.at(1).traces[0].events[0].constituents;
    CHECK(c.front().is_raw());
    CHECK(c.front().start == 1);
    CHECK(c.front().payload.get("dim_1") == 3.0);
    CHECK(c.back().label == DR1);
    CHECK(c.back().start == 1);
    CHECK(seg.at(1).taxonomies == log.taxonomies);

    PolyadicLog alt;
    alt.traces.push_back(trace(3, {}, {0, 1, 0}));
    auto sa = segment_by_class(alt);
    CHECK(sa.at(0).traces.size() == 2);
    CHECK(sa.at(0).traces[0].id != sa.at(0).traces[1].id);

    PolyadicLog single;
    single.traces.push_back(trace(4, {con(IR1, 2, 2)}, {3, 3, 3, 3}));
    auto ss = segment_by_class(single);
    REQUIRE(ss.size() == 1);
    CHECK(ss.at(3).traces[0].events.size() == 4);
    CHECK(dt_spans(ss.at(3).traces[0]) == dt_spans(single.traces[0]));
}

TEST_CASE("segment_by_class preserves events and constituents") {
    std::mt19937 rng(8);
    for (int rep = 0; rep < 20; ++rep) {
        auto T = random_series(rng, 5 + static_cast<int>(rng() % 20));
        auto log = mine_log({T});
        auto seg = segment_by_class(log);
        std::size_t events = 0, cons = 0, want_cons = 0;
        for (const auto& ev : log.traces[0].events) want_cons += ev.constituents.size();
        for (const auto& [cls, l] : seg)
            for (const auto& t : l.traces) {
                events += t.events.size();
                for (const auto& ev : t.events) {
                    cons += ev.constituents.size();
                    CHECK(ev.class_label == cls);
                }
            }
        CHECK(events == log.traces[0].events.size());
        CHECK(cons == want_cons);
    }
}

TEST_CASE("serialize round trip") {
    std::mt19937 rng(4);
    std::vector<MultivariateSeries> ss;
    for (int i = 0; i < 4; ++i) ss.push_back(random_series(rng, 12));
    auto log = mine_log(ss);
    log.class_names = {"low", "high"};
    auto text = serialize(log);
    auto back = deserialize(text);
    CHECK(back.taxonomies == log.taxonomies);
    CHECK(back.class_names == log.class_names);
    REQUIRE(back.traces.size() == log.traces.size());
    for (std::size_t i = 0; i < log.traces.size(); ++i) {
        auto pruned = prune_redundant(log.traces[i]);
        REQUIRE(back.traces[i].events.size() == pruned.events.size());
        for (std::size_t j = 0; j < pruned.events.size(); ++j) {
            CHECK(back.traces[i].events[j].class_label == pruned.events[j].class_label);
            CHECK(back.traces[i].events[j].constituents == pruned.events[j].constituents);
        }
    }
    CHECK(serialize(back) == text);
}

TEST_CASE("deserialize schema errors") {
    CHECK_THROWS_AS(deserialize("not json"), ParseError);
    CHECK_THROWS_AS(deserialize(R"({"schema_version":1,"traces":[]})"), ParseError);
    try {
        deserialize(R"({"schema_version":1,"taxonomies":[],"traces":[{"id":"a","events":[{"class":0}]}]})");
        FAIL("expected a schema error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("$.traces[0].events[0]") != std::string::npos);
    }
    const std::string unknown_label =
        R"x({"schema_version":1,"taxonomies":[],"traces":[{"id":"a","events":[)x"
        R"x({"class":0,"constituents":[{"label":"IncreaseRapidly(dim_1^i)","span":1,"payload":{}}]}]}]})x";
    CHECK_THROWS_AS(deserialize(unknown_label), ValidationError);

    PolyadicLog bad;
    bad.traces.push_back(trace(2, {con(IR1, 1, 1)}));
    CHECK_THROWS_AS(serialize(bad), ValidationError);
}
