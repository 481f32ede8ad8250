#include <doctest.h>

#include <random>

#include "grid.hpp"
#include "pdm/common.hpp"
#include "pdm/miner.hpp"

using namespace pdm;
using grid::A;
using grid::B;
using grid::C;

namespace {

PolyadicLog log_of(std::vector<PolyadicTrace> ts) {
    PolyadicLog l;
    l.taxonomies = grid::taxonomies();
    for (std::size_t i = 0; i < ts.size(); ++i) ts[i].id = "t" + std::to_string(i);
    l.traces = std::move(ts);
    return l;
}

PolyadicLog random_log(std::mt19937& rng, int traces, int max_len) {
    auto opts = grid::event_options();
    std::vector<PolyadicTrace> ts;
    for (int i = 0; i < traces; ++i) {
        std::vector<grid::Event> evs(1 + rng() % max_len);
        for (auto& e : evs) e = opts[rng() % opts.size()];
        ts.push_back(grid::make_trace(evs));
    }
    return log_of(ts);
}

bool trace_has(const PolyadicTrace& t, const std::string& label) {
    for (const auto& ev : t.events)
        for (const auto& c : ev.constituents)
            if (label_matches(label, c.label)) return true;
    return false;
}

// n traces of [{A v}, {B}] per class, A's payload chosen per class.
std::map<int, PolyadicLog> two_logs(int v0, int v1, int n = 10) {
    std::map<int, PolyadicLog> logs;
    for (auto [cls, v] : {std::pair{0, v0}, std::pair{1, v1}}) {
        std::vector<PolyadicTrace> ts;
        for (int i = 0; i < n; ++i) ts.push_back(grid::make_trace({{{0, 1, v}}, {{1, 1, 0}}}));
        logs[cls] = log_of(ts);
    }
    return logs;
}

const Column* find_column(const std::vector<Column>& cols, const Clause& c) {
    for (const auto& col : cols)
        if (col.clause == c) return &col;
    return nullptr;
}

std::vector<signed char> cells(std::initializer_list<int> v) { return {v.begin(), v.end()}; }

std::vector<signed char> repeat(int a, int na, int b, int nb) {
    std::vector<signed char> out(na, static_cast<signed char>(a));
    out.insert(out.end(), nb, static_cast<signed char>(b));
    return out;
}

}  // namespace

TEST_CASE("alphabet holds roots and leaves") {
    CHECK(alphabet(grid::taxonomies()) == std::vector<std::string>{B, A, C, "dim_1^i", "dim_2^i"});
}

TEST_CASE("frequent itemsets match a brute-force count") {
    std::mt19937 rng(3);
    auto sigma = alphabet(grid::taxonomies());
    for (int rep = 0; rep < 60; ++rep) {
        auto log = random_log(rng, 1 + rng() % 8, 4);
        double theta = (rng() % 5) * 0.25;
        auto got = frequent_itemsets(log, theta, sigma);
        std::map<Itemset, double> want;
        for (std::size_t i = 0; i < sigma.size(); ++i)
            for (std::size_t j = i; j < sigma.size(); ++j) {
                int n = 0;
                for (const auto& t : log.traces) n += trace_has(t, sigma[i]) && trace_has(t, sigma[j]);
                double s = static_cast<double>(n) / log.traces.size();
                Itemset key = i == j ? Itemset{sigma[i]} : Itemset{sigma[i], sigma[j]};
                std::sort(key.begin(), key.end());
                if (n > 0 && s >= theta) want[key] = s;
            }
        CHECK(got == want);
    }
    auto log = random_log(rng, 5, 3);
    for (const auto& [set, s] : frequent_itemsets(log, 1.0, sigma)) CHECK(s == 1.0);
    CHECK_THROWS_AS(frequent_itemsets(log, 1.5, sigma), ValidationError);
    CHECK_THROWS_AS(frequent_itemsets(log, -0.1, sigma), ValidationError);
}

TEST_CASE("unary candidates are the clauses every trace satisfies") {
    std::mt19937 rng(6);
    auto sigma = alphabet(grid::taxonomies());
    for (int rep = 0; rep < 80; ++rep) {
        auto log = random_log(rng, 1 + rng() % 4, 4);
        auto cand = generate_unary_clauses(frequent_itemsets(log, 0.0, sigma), log, sigma);
        std::set<Clause> want;
        for (const auto& a : sigma) {
            bool seen = false;
            for (const auto& t : log.traces) seen = seen || trace_has(t, a);
            if (!seen) {
                want.insert(unary(Template::Absence, a));
                continue;
            }
            for (auto tmpl : {Template::Init, Template::End, Template::Exists}) {
                bool all = true;
                for (const auto& t : log.traces) all = all && oracle_evaluate(unary(tmpl, a), t) == Outcome::Satisfied;
                if (all) want.insert(unary(tmpl, a));
            }
        }
        CHECK(std::set<Clause>(cand.clauses.begin(), cand.clauses.end()) == want);
        for (const auto& [x, y] : cand.freq_pairs) CHECK(cand.freq_pairs.count({y, x}) == 1);
    }
}

TEST_CASE("fill_in_dataframe") {
    CHECK(fill_in_dataframe({}) == 0);
    CHECK(fill_in_dataframe({Mark::Vac}) == 0);
    CHECK(fill_in_dataframe({Mark::Sat, Mark::Viol}) == -1);
    CHECK(fill_in_dataframe({Mark::Viol}) == -1);
    CHECK(fill_in_dataframe({Mark::Sat, Mark::Vac}) == 1);
    CHECK(fill_in_dataframe({Mark::Sat}) == 1);
    CHECK(outcome_cell(Outcome::Violated) == -1);
}

TEST_CASE("refine_attempt aborts at or below one half held-out accuracy") {
    // every payload identical: a single leaf, exactly half the test rows right
    auto logs = two_logs(0, 0);
    MiningInput in(logs);
    std::vector<const Constituent*> rows;
    std::vector<int> classes;
    for (const auto& [cls, log] : logs)
        for (const auto& t : log.traces) {
            rows.push_back(&t.events[0].constituents[1]);
            classes.push_back(cls);
        }
    auto r = refine_attempt(rows, classes, Template::Init, in, {});
    CHECK_FALSE(r.accepted);
    CHECK(r.accuracy == 0.5);
    CHECK(r.columns.empty());

    auto sep = two_logs(0, 1);
    MiningInput in2(sep);
    rows.clear();
    for (const auto& [cls, log] : sep)
        for (const auto& t : log.traces) rows.push_back(&t.events[0].constituents[1]);
    auto ok = refine_attempt(rows, classes, Template::Exists, in2, {});
    CHECK(ok.accepted);
    CHECK(ok.accuracy == 1.0);
    // paths v <= 0.5, v > 0.5, then the two class formulas; All and some each
    REQUIRE(ok.columns.size() == 8);
    auto low = unary(Template::Exists, std::string(kWildcard), grid::v_le(0.5));
    auto* col = find_column(ok.columns, low);
    REQUIRE(col != nullptr);
    // the wildcard also sees B at the second event, which has v = 0
    CHECK(col->cells == repeat(1, 10, 1, 10));
    // All quantifies per event: class 0 has no event whose DT constituents all exceed 0.5
    auto all_high = unary(Template::Exists, std::string(kWildcard), grid::v_gt(0.5), true);
    REQUIRE(find_column(ok.columns, all_high) != nullptr);
    CHECK(find_column(ok.columns, all_high)->cells == repeat(-1, 10, 1, 10));
}

TEST_CASE("unary refinement gates") {
    auto sigma_of = [](const std::map<int, PolyadicLog>& logs, const MiningInput& in) {
        std::map<int, UnaryCandidates> per;
        for (const auto& [cls, log] : logs)
            per[cls] = generate_unary_clauses(frequent_itemsets(log, 0.0, in.sigma()), log, in.sigma());
        return per;
    };
    auto sep = two_logs(0, 1);
    MiningInput in(sep);
    auto u = unary_refine(sigma_of(sep, in), in, {});
    CHECK(u.refined_templates.at(Template::Init));
    CHECK_FALSE(u.refined.empty());
    for (const auto& c : u.dataless) CHECK((c.tmpl == Template::Absence || c.tmpl == Template::End));
    CHECK(std::count(u.dataless.begin(), u.dataless.end(), unary(Template::Init, A)) == 0);
    CHECK(std::count(u.dataless.begin(), u.dataless.end(), unary(Template::Absence, C)) == 1);

    // B carries v = 0 in both classes, so the End payloads cannot separate
    CHECK_FALSE(u.refined_templates.at(Template::End));
    CHECK(std::count(u.dataless.begin(), u.dataless.end(), unary(Template::End, B)) == 1);

    auto same = two_logs(0, 0);
    MiningInput in2(same);
    auto v = unary_refine(sigma_of(same, in2), in2, {});
    CHECK_FALSE(v.refined_templates.at(Template::Init));
    CHECK(v.refined.empty());
    CHECK(std::count(v.dataless.begin(), v.dataless.end(), unary(Template::Init, A)) == 1);
    CHECK(std::count(v.dataless.begin(), v.dataless.end(), unary(Template::Exists, A)) == 1);

    // Init(C) in only one log: no attempt for it even with other templates around
    std::map<int, PolyadicLog> lone;
    lone[0] = log_of({grid::make_trace({{{2, 1, 0}}})});
    lone[1] = log_of({grid::make_trace({{{0, 1, 0}}})});
    MiningInput in3(lone);
    auto w = unary_refine(sigma_of(lone, in3), in3, {});
    CHECK_FALSE(w.refined_templates.at(Template::Init));
    CHECK(std::count(w.dataless.begin(), w.dataless.end(), unary(Template::Init, C)) == 1);
}

TEST_CASE("binary refinement by activations zeroes the other class") {
    auto logs = two_logs(0, 1);
    MiningInput in(logs);
    MinerOptions opt;
    ActivationTreeCache trees(in, opt);
    auto r = binary_refine(A, B, in, trees, opt);
    auto low = binary(Template::Response, A, B, true, grid::v_le(0.5));
    auto high = binary(Template::Response, A, B, true, grid::v_gt(0.5));
    REQUIRE(find_column(r.refined, low) != nullptr);
    REQUIRE(find_column(r.refined, high) != nullptr);
    CHECK(find_column(r.refined, low)->cells == repeat(1, 10, 0, 10));
    CHECK(find_column(r.refined, high)->cells == repeat(0, 10, 1, 10));
    auto cr = binary(Template::ChainResponse, A, B, true, grid::v_gt(0.5));
    REQUIRE(find_column(r.refined, cr) != nullptr);
    CHECK(find_column(r.refined, cr)->cells == repeat(0, 10, 1, 10));
    // ChainPrecedence(A, B) never fires: A only ever sits at the first event
    CHECK(std::count(r.dataless.begin(), r.dataless.end(), binary(Template::ChainPrecedence, A, B, true)) == 1);
    // refined cells agree with evaluating the refined clause
    for (const auto& col : r.refined) {
        auto text = col.clause.to_string();
        CAPTURE(text);
        CHECK(col.cells == in.evaluate(col.clause, opt.eval));
    }
}

TEST_CASE("binary refinement backtracks to dataless clauses") {
    auto logs = two_logs(0, 0);
    MiningInput in(logs);
    MinerOptions opt;
    ActivationTreeCache trees(in, opt);
    auto r = binary_refine(A, B, in, trees, opt);
    CHECK(r.refined.empty());
    std::set<Clause> got(r.dataless.begin(), r.dataless.end());
    std::set<Clause> want;
    for (auto [x, y] : {std::pair{A, B}, std::pair{B, A}})
        for (auto t : {Template::ChainResponse, Template::ChainPrecedence, Template::Precedence, Template::Response})
            want.insert(binary(t, x, y, true));
    CHECK(got == want);
}

TEST_CASE("frame cells agree with evaluate and refinement never activates a vacuous cell") {
    std::mt19937 rng(19);
    for (int rep = 0; rep < 12; ++rep) {
        std::map<int, PolyadicLog> logs;
        for (int cls = 0; cls < 2 + rep % 2; ++cls) logs[cls] = random_log(rng, 6, 4);
        MinerOptions opt;
        opt.seed = rep;
        auto spec = build_embedding(logs, opt);
        MiningInput in(logs);
        REQUIRE(spec.frame.rows.size() == in.row_count());
        for (std::size_t k = 0; k < spec.frame.columns.size(); ++k) {
            const auto& c = spec.frame.columns[k];
            auto text = c.to_string();
            CAPTURE(text);
            CHECK(spec.frame.cells[k] == in.evaluate(c, opt.eval));
            if (is_unary(c.tmpl)) continue;
            auto plain = in.evaluate(binary(c.tmpl, c.a, c.b, c.poly), opt.eval);
            for (std::size_t r = 0; r < plain.size(); ++r)
                if (plain[r] == 0) CHECK(spec.frame.cells[k][r] == 0);
        }
    }
}

TEST_CASE("embedding is deterministic across worker counts") {
    std::mt19937 rng(27);
    for (int rep = 0; rep < 4; ++rep) {
        std::map<int, PolyadicLog> logs;
        for (int cls = 0; cls < 3; ++cls) logs[cls] = random_log(rng, 8, 5);
        MinerOptions one, three;
        three.jobs = 3;
        auto a = mine_specification(logs, one), b = mine_specification(logs, three);
        CHECK(a.frame.to_csv() == b.frame.to_csv());
        CHECK(cart::to_json(a.tree) == cart::to_json(b.tree));
    }
}

TEST_CASE("two single-trace logs told apart by Exists") {
    std::map<int, PolyadicLog> logs;
    logs[0] = log_of({grid::make_trace({{{0, 1, 0}}, {}})});
    logs[1] = log_of({grid::make_trace({{}, {}})});
    auto spec = mine_specification(logs, {});
    CHECK(cart::accuracy(spec.tree, cart::to_table(spec.frame.table())) == 1.0);
    CHECK(spec.tree.leaves() == 2);
    REQUIRE(spec.tree.keys.size() == 1);
}

TEST_CASE("a single log yields dataless clauses only") {
    std::mt19937 rng(2);
    std::map<int, PolyadicLog> logs;
    logs[0] = random_log(rng, 6, 4);
    auto spec = mine_specification(logs, {});
    CHECK_FALSE(spec.frame.columns.empty());
    for (const auto& c : spec.frame.columns) {
        CHECK(c.p.is_true());
        CHECK(c.q.is_true());
        CHECK(c.a != std::string(kWildcard));
    }
    CHECK(spec.tree.leaves() == 1);
}

TEST_CASE("theta of one leaves a near-empty clause set") {
    std::map<int, PolyadicLog> logs;
    logs[0] = log_of({grid::make_trace({{{0, 1, 0}}}), grid::make_trace({{{2, 1, 0}}})});
    logs[1] = log_of({grid::make_trace({{{1, 1, 0}}}), grid::make_trace({{}})});
    MinerOptions opt;
    opt.theta = 1.0;
    auto spec = mine_specification(logs, opt);
    // only Absence clauses over never-seen labels survive, all constant
    for (const auto& c : spec.frame.columns) CHECK(c.tmpl == Template::Absence);
}
