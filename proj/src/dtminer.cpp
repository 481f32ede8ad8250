#include "pdm/dtminer.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <tuple>

#include <fmt/format.h>

#include "pdm/catch22.hpp"
#include "pdm/common.hpp"

namespace pdm {

std::string dt_label(DtPattern p, bool nu, Kind kind, int dim) {
    const char* name = "";
    switch (p) {
        case DtPattern::S: name = nu ? "IncreaseRapidly" : "DecreaseRapidly"; break;
        case DtPattern::HV43: name = nu ? "HighVolatility3" : "HighVolatility4"; break;
        case DtPattern::OneH: name = nu ? "IncreaseSlowly1" : "DecreaseSlowly4"; break;
        case DtPattern::TwoH: name = nu ? "IncreaseSlowly2" : "DecreaseSlowly3"; break;
        case DtPattern::E1: name = nu ? "IncreaseSlowly3" : "DecreaseSlowly2"; break;
        case DtPattern::E2: name = nu ? "IncreaseSlowly4" : "DecreaseSlowly1"; break;
    }
    return fmt::format("{}(dim_{}^{})", name, dim, kind_char(kind));
}

const std::vector<std::string>& feature_keys() {
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> k(catch22::kNames.begin(), catch22::kNames.end());
        for (const char* extra : {"val_min", "val_max", "val_first", "val_last"}) k.emplace_back(extra);
        return k;
    }();
    return keys;
}

std::array<double, kFeatureCount> feature_values(std::span<const double> segment) {
    if (segment.empty()) throw std::invalid_argument("feature_payload needs a non-empty segment");
    std::array<double, kFeatureCount> out{};
    auto c = catch22::compute(segment);
    std::copy(c.begin(), c.end(), out.begin());
    auto [lo, hi] = std::minmax_element(segment.begin(), segment.end());
    out[24] = *lo;
    out[25] = *hi;
    out[26] = segment.front();
    out[27] = segment.back();
    return out;
}

std::map<std::string, double> feature_payload(std::span<const double> segment) {
    auto v = feature_values(segment);
    std::map<std::string, double> m;
    for (std::size_t i = 0; i < kFeatureCount; ++i) m.emplace(feature_keys()[i], v[i]);
    return m;
}

Interval local_range(const DtSkeleton& s) {
    int extra = s.kind == Kind::A ? 0 : 1;
    return {s.start, s.end() + extra};
}

std::vector<DtSkeleton> dt_mine_step(const SegmentIndices& idx, int dim, Kind kind, bool nu, Interval iv) {
    const auto& same = idx.at(dim, kind).get(nu);
    const auto& other = idx.at(dim, kind).get(!nu);
    const int b = iv.b, e = iv.e, n = iv.length();
    std::vector<DtSkeleton> out;
    auto yield = [&](DtPattern p, int start, int span) { out.push_back({p, nu, kind, dim, start, span}); };

    yield(DtPattern::S, b, n);
    // Every guard needs beta = b or beta = e, so only those beta are visited.
    // beta = e is in range only for s = 1.
    const bool after_other = index_contains(other, e + 1);
    for (int s = 1; s <= n; ++s) {
        const int beta = b;
        const bool xi = after_other && beta == e;
        if (index_contains(other, b - 1)) {
            yield(DtPattern::OneH, beta - 1, s + 1);
            if (xi) yield(DtPattern::HV43, beta - 1, s + 2);
            if (index_contains(same, beta - 2)) yield(DtPattern::TwoH, beta - 2, s + 2);
        }
    }
    if (after_other) {
        // beta = e, s = 1; [e+1, e+2] in the opposite index together with
        // e+2 in the same index cannot both hold, so E1 asks for the
        // alternation e+1 opposite, e+2 same.
        if (index_contains(same, e + 2))
            yield(DtPattern::E1, e, 3);
        else
            yield(DtPattern::E2, e, 2);
    }
    return out;
}

namespace {

auto skeleton_key(const DtSkeleton& s) {
    return std::make_tuple(s.dim, static_cast<int>(s.kind), s.nu, static_cast<int>(s.pattern));
}

}  // namespace

std::vector<DtSkeleton> dt_mine_skeletons(const SegmentIndices& idx, int dims) {
    std::vector<DtSkeleton> all;
    for (int dim = 1; dim <= dims; ++dim)
        for (Kind k : kAllKinds)
            for (bool nu : {true, false})
                for (const auto& iv : idx.at(dim, k).get(nu).intervals) {
                    auto part = dt_mine_step(idx, dim, k, nu, iv);
                    all.insert(all.end(), part.begin(), part.end());
                }
    // group by label, then start ascending and end descending
    std::sort(all.begin(), all.end(), [](const DtSkeleton& a, const DtSkeleton& b) {
        auto ka = skeleton_key(a), kb = skeleton_key(b);
        if (ka != kb) return ka < kb;
        if (a.start != b.start) return a.start < b.start;
        return a.end() > b.end();
    });
    std::vector<DtSkeleton> kept;
    std::size_t g = 0;
    while (g < all.size()) {
        std::size_t h = g;
        while (h < all.size() && skeleton_key(all[h]) == skeleton_key(all[g])) ++h;
        int max_end = 0;
        bool any = false;
        for (std::size_t k = g; k < h; ++k) {
            const auto& s = all[k];
            bool dup = k > g && all[k - 1].start == s.start && all[k - 1].end() == s.end();
            if (dup || (any && max_end >= s.end())) continue;
            max_end = any ? std::max(max_end, s.end()) : s.end();
            any = true;
            kept.push_back(s);
        }
        g = h;
    }
    return kept;
}

namespace {

SchemaPtr dt_schema() {
    static const SchemaPtr schema = [] {
        std::vector<std::string> keys;
        for (const auto& k : feature_keys()) keys.push_back("seg_" + k);
        for (const auto& k : feature_keys()) keys.push_back("loc_" + k);
        return make_schema(std::move(keys));
    }();
    return schema;
}

SchemaPtr raw_schema(int dims) {
    static std::mutex mu;
    static std::map<int, SchemaPtr> cache;
    std::lock_guard<std::mutex> g(mu);
    auto& sp = cache[dims];
    if (!sp) {
        std::vector<std::string> keys;
        for (int i = 1; i <= dims; ++i) keys.push_back(fmt::format("dim_{}", i));
        sp = make_schema(std::move(keys));
    }
    return sp;
}

}  // namespace

PolyadicTrace dt_mine(const MultivariateSeries& T, const SeriesIndices& indices, const DtMineOptions& opt) {
    const int dims = T.data_dims();
    PolyadicTrace trace;
    trace.id = T.id;
    trace.events.resize(T.length());
    const auto rs = raw_schema(dims);
    for (int t = 1; t <= T.length(); ++t) {
        auto& ev = trace.events[t - 1];
        ev.class_label = T.class_at(t);
        Constituent raw{std::string(kRawLabel), t, 1, {rs, T.values[t - 1]}};
        ev.constituents.push_back(std::move(raw));
    }

    struct Task {
        const SegmentIndices* seg;
        DtSkeleton sk;
    };
    std::vector<Task> tasks;
    // seg_ features, once per (segment, dim)
    std::vector<std::vector<std::array<double, kFeatureCount>>> seg_feats(indices.segments.size());
    std::vector<std::vector<std::vector<double>>> columns(indices.segments.size());
    for (std::size_t si = 0; si < indices.segments.size(); ++si) {
        const auto& seg = indices.segments[si];
        const Interval w = seg.segment.interval;
        for (int dim = 1; dim <= dims; ++dim) {
            std::vector<double> col;
            col.reserve(w.length());
            for (int t = w.b; t <= w.e; ++t) col.push_back(T.at(t, dim));
            seg_feats[si].push_back(feature_values(col));
            columns[si].push_back(std::move(col));
        }
        for (const auto& sk : dt_mine_skeletons(seg, dims)) tasks.push_back({&seg, sk});
    }

    std::vector<std::vector<double>> payloads(tasks.size());
    parallel_for(tasks.size(), opt.jobs, [&](std::size_t i) {
        const auto& task = tasks[i];
        const std::size_t si = static_cast<std::size_t>(task.seg - indices.segments.data());
        const auto& col = columns[si][task.sk.dim - 1];
        const Interval loc = local_range(task.sk);
        auto lf = feature_values(std::span<const double>(col).subspan(loc.b - 1, loc.length()));
        const auto& sf = seg_feats[si][task.sk.dim - 1];
        std::vector<double> v(sf.begin(), sf.end());
        v.insert(v.end(), lf.begin(), lf.end());
        payloads[i] = std::move(v);
    });

    const auto ds = dt_schema();
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        const auto& sk = tasks[i].sk;
        const int offset = tasks[i].seg->segment.interval.b - 1;
        Constituent c{dt_label(sk.pattern, sk.nu, sk.kind, sk.dim), offset + sk.start, sk.span,
                      {ds, std::move(payloads[i])}};
        trace.events[c.start - 1].constituents.push_back(std::move(c));
    }
    canonicalize(trace);
    return trace;
}

PolyadicLog mine_log(const std::vector<MultivariateSeries>& series, const DtMineOptions& opt) {
    PolyadicLog log;
    log.traces.resize(series.size());
    DtMineOptions inner = opt;
    inner.jobs = 1;
    parallel_for(series.size(), opt.jobs, [&](std::size_t i) {
        auto idx = build_indices(series[i], opt.epsilon);
        log.traces[i] = dt_mine(series[i], idx, inner);
    });
    log.taxonomies = build_taxonomies(log);
    return log;
}

}  // namespace pdm
