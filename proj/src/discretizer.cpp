#include "pdm/discretizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

namespace pdm {

char kind_char(Kind k) {
    switch (k) {
        case Kind::I: return 'i';
        case Kind::A: return 'a';
        case Kind::S: return 's';
        case Kind::V: return 'v';
    }
    return '?';
}

Kind kind_from_char(char c) {
    switch (c) {
        case 'i': return Kind::I;
        case 'a': return Kind::A;
        case 's': return Kind::S;
        case 'v': return Kind::V;
    }
    throw std::invalid_argument(fmt::format("unknown variation kind '{}'", c));
}

namespace {

void check_domain(std::span<const double> tau, Kind kind, int t) {
    int n = static_cast<int>(tau.size());
    if (t < 1 || t > domain_end(kind, n))
        throw std::out_of_range(fmt::format("t={} outside the domain of kind {} (length {})", t, kind_char(kind), n));
}

inline double inc(std::span<const double> tau, int t) { return tau[t] - tau[t - 1]; }

}  // namespace

double variation_value(std::span<const double> tau, Kind kind, int t, double eps) {
    check_domain(tau, kind, t);
    switch (kind) {
        case Kind::I: return inc(tau, t);
        case Kind::A: return std::fabs(tau[t - 1]);
        case Kind::S: return std::fabs(inc(tau, t));
        case Kind::V:
            if (std::fabs(inc(tau, t)) <= eps) return 0.0;
            if (std::fabs(tau[t - 1]) <= eps) return std::numeric_limits<double>::infinity();
            return inc(tau, t) / tau[t - 1];
    }
    return 0.0;
}

bool variation_predicate(std::span<const double> tau, Kind kind, int t, double eps) {
    check_domain(tau, kind, t);
    switch (kind) {
        case Kind::I: return inc(tau, t) > 0;
        case Kind::A: return std::fabs(tau[t - 1]) <= eps;
        case Kind::S:
        case Kind::V: return std::fabs(inc(tau, t)) <= eps;
    }
    return false;
}

double variation_value(const MultivariateSeries& T, int dim, Kind kind, int t, double eps) {
    auto col = T.column(dim);
    return variation_value(col, kind, t, eps);
}

bool variation_predicate(const MultivariateSeries& T, int dim, Kind kind, int t, double eps) {
    auto col = T.column(dim);
    return variation_predicate(col, kind, t, eps);
}

bool index_contains(const SatisfactionIndex& idx, int t) {
    const auto& iv = idx.intervals;
    // first interval starting after t; the candidate is the one before it
    auto it = std::upper_bound(iv.begin(), iv.end(), t, [](int x, const Interval& v) { return x < v.b; });
    if (it == iv.begin()) return false;
    return t <= std::prev(it)->e;
}

SeriesIndices build_indices(const MultivariateSeries& T, double eps) {
    SeriesIndices out;
    std::vector<double> col;
    for (const auto& seg : class_segments(T)) {
        SegmentIndices si;
        si.segment = seg;
        int n = seg.interval.length();
        si.by_dim.resize(T.data_dims());
        for (int dim = 1; dim <= T.data_dims(); ++dim) {
            for (Kind k : kAllKinds) {
                auto& pp = si.by_dim[dim - 1][static_cast<int>(k)];
                pp.on.source = {T.id, seg.interval, dim, k, true};
                pp.off.source = {T.id, seg.interval, dim, k, false};
            }
            // one pass over the segment, all four kinds at once
            bool open[4] = {false, false, false, false};
            bool cur[4] = {false, false, false, false};
            int start[4] = {1, 1, 1, 1};
            auto close = [&](int ki, int e) {
                auto& pp = si.by_dim[dim - 1][ki];
                (cur[ki] ? pp.on : pp.off).intervals.push_back({start[ki], e});
            };
            int base = seg.interval.b - 1;
            col.resize(n);
            for (int t = 0; t < n; ++t) col[t] = T.values[base + t][dim - 1];
            for (int t = 1; t <= n; ++t) {
                double x = col[t - 1];
                bool has_next = t < n;
                double d = has_next ? col[t] - x : 0.0;
                bool p[4];
                p[0] = d > 0;
                p[1] = std::fabs(x) <= eps;
                p[2] = std::fabs(d) <= eps;
                p[3] = p[2];
                for (int ki = 0; ki < 4; ++ki) {
                    if (!has_next && ki != static_cast<int>(Kind::A)) continue;
                    if (!open[ki]) {
                        open[ki] = true;
                        cur[ki] = p[ki];
                        start[ki] = t;
                    } else if (p[ki] != cur[ki]) {
                        close(ki, t - 1);
                        cur[ki] = p[ki];
                        start[ki] = t;
                    }
                }
            }
            for (int ki = 0; ki < 4; ++ki)
                if (open[ki]) close(ki, domain_end(static_cast<Kind>(ki), n));
        }
        out.segments.push_back(std::move(si));
    }
    return out;
}

}  // namespace pdm
