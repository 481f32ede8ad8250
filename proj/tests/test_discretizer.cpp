#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "pdm/discretizer.hpp"

using namespace pdm;

namespace {

MultivariateSeries uni(std::vector<double> xs, std::vector<int> cls = {}) {
    MultivariateSeries s;
    s.id = "u";
    s.dim_names = {"x"};
    for (double x : xs) s.values.push_back({x});
    s.classes = cls.empty() ? std::vector<int>(xs.size(), 0) : cls;
    return s;
}

bool linear_contains(const SatisfactionIndex& idx, int t) {
    for (const auto& iv : idx.intervals)
        if (iv.b <= t && t <= iv.e) return true;
    return false;
}

// Pointwise oracle for the index: group the predicate sequence by hand.
std::pair<std::vector<Interval>, std::vector<Interval>> oracle_groups(std::span<const double> tau, Kind k,
                                                                       double eps) {
    std::vector<Interval> on, off;
    int n = domain_end(k, static_cast<int>(tau.size()));
    int t = 1;
    while (t <= n) {
        bool v = variation_predicate(tau, k, t, eps);
        int e = t;
        while (e + 1 <= n && variation_predicate(tau, k, e + 1, eps) == v) ++e;
        (v ? on : off).push_back({t, e});
        t = e + 1;
    }
    return {on, off};
}

}  // namespace

TEST_CASE("variation values and predicates") {
    std::vector<double> a{1, 3};
    CHECK(variation_value(a, Kind::I, 1, 1e-4) == 2);
    CHECK(variation_predicate(a, Kind::I, 1, 1e-4));
    std::vector<double> b{-0.5};
    CHECK(variation_value(b, Kind::A, 1, 1e-4) == 0.5);
    std::vector<double> c{5e-5};
    CHECK(variation_predicate(c, Kind::A, 1, 1e-4));
    std::vector<double> d{1.0, 1.00005};
    CHECK(variation_predicate(d, Kind::S, 1, 1e-4));
    CHECK(variation_value(d, Kind::V, 1, 1e-4) == 0.0);
    std::vector<double> e{2.0, 3.0};
    CHECK(variation_value(e, Kind::V, 1, 1e-4) == doctest::Approx(0.5));
    CHECK(variation_value(e, Kind::S, 1, 1e-4) == 1.0);
    std::vector<double> z{0.0, 3.0};
    CHECK(std::isinf(variation_value(z, Kind::V, 1, 1e-4)));
    // v is transcribed as stationarity
    for (double x : {0.0, 1e-5, 0.3, -2.0}) {
        std::vector<double> w{1.0, 1.0 + x};
        CHECK(variation_predicate(w, Kind::V, 1, 1e-4) == variation_predicate(w, Kind::S, 1, 1e-4));
    }
}

TEST_CASE("predicate domains") {
    std::vector<double> x{1, 2, 3};
    CHECK_THROWS_AS(variation_value(x, Kind::I, 3, 1e-4), std::out_of_range);
    CHECK_THROWS_AS(variation_value(x, Kind::S, 0, 1e-4), std::out_of_range);
    CHECK_NOTHROW(variation_value(x, Kind::A, 3, 1e-4));
    CHECK(domain_end(Kind::A, 5) == 5);
    CHECK(domain_end(Kind::V, 5) == 4);
}

TEST_CASE("build_indices examples") {
    auto idx = build_indices(uni({1, 2, 1}), 1e-4);
    REQUIRE(idx.segments.size() == 1);
    const auto& pi = idx.segments[0].at(1, Kind::I);
    CHECK(pi.on.intervals == std::vector<Interval>{{1, 1}});
    CHECK(pi.off.intervals == std::vector<Interval>{{2, 2}});

    auto flat = build_indices(uni({4, 4, 4, 4}), 1e-4);
    const auto& ps = flat.segments[0].at(1, Kind::S);
    CHECK(ps.on.intervals == std::vector<Interval>{{1, 3}});
    CHECK(ps.off.intervals.empty());

    auto two = build_indices(uni({1, 2, 3, 2, 1, 0}, {0, 0, 0, 1, 1, 1}), 1e-4);
    REQUIRE(two.segments.size() == 2);
    for (const auto& seg : two.segments)
        for (Kind k : kAllKinds)
            for (bool nu : {true, false})
                for (const auto& iv : seg.at(1, k).get(nu).intervals) {
                    CHECK(iv.b >= 1);
                    CHECK(iv.e <= domain_end(k, seg.segment.interval.length()));
                }
    CHECK(two.segments[1].at(1, Kind::I).off.intervals == std::vector<Interval>{{1, 2}});
    CHECK(two.segments[1].at(1, Kind::I).on.source.segment == Interval{4, 6});
}

TEST_CASE("indices equal the pointwise grouping on every short segment") {
    std::mt19937 rng(5);
    const std::vector<double> pool{0.0, 1.0, 2.0, -1.0, 5e-5};
    for (int rep = 0; rep < 3000; ++rep) {
        int n = 1 + static_cast<int>(rng() % 12);
        std::vector<double> xs(n);
        for (auto& x : xs) x = pool[rng() % pool.size()];
        auto idx = build_indices(uni(xs), 1e-4);
        for (Kind k : kAllKinds) {
            auto [on, off] = oracle_groups(xs, k, 1e-4);
            const auto& pp = idx.segments[0].at(1, k);
            CHECK(pp.on.intervals == on);
            CHECK(pp.off.intervals == off);
            // the two polarities partition the domain
            for (int t = 1; t <= domain_end(k, n); ++t)
                CHECK(index_contains(pp.on, t) != index_contains(pp.off, t));
        }
    }
}

TEST_CASE("index_contains agrees with a linear scan") {
    SatisfactionIndex fixed;
    fixed.intervals = {{1, 3}, {7, 9}};
    CHECK(index_contains(fixed, 2));
    CHECK_FALSE(index_contains(fixed, 5));
    CHECK_FALSE(index_contains(fixed, 0));
    CHECK_FALSE(index_contains(fixed, 10));

    std::mt19937 rng(9);
    for (int rep = 0; rep < 10000; ++rep) {
        SatisfactionIndex idx;
        int t = 1 + static_cast<int>(rng() % 3);
        int count = static_cast<int>(rng() % 6);
        for (int i = 0; i < count; ++i) {
            int len = 1 + static_cast<int>(rng() % 4);
            idx.intervals.push_back({t, t + len - 1});
            t += len + 1 + static_cast<int>(rng() % 3);
        }
        int q = static_cast<int>(rng() % (t + 2)) - 1;
        CHECK(index_contains(idx, q) == linear_contains(idx, q));
    }
}
