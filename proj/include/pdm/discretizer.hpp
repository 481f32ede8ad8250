#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "pdm/timeseries.hpp"

namespace pdm {

enum class Kind { I = 0, A = 1, S = 2, V = 3 };
inline constexpr std::array<Kind, 4> kAllKinds{Kind::I, Kind::A, Kind::S, Kind::V};
char kind_char(Kind k);
Kind kind_from_char(char c);

inline constexpr double kDefaultEpsilon = 1e-4;

// Last timestamp of the predicate domain for a segment of length n.
inline int domain_end(Kind k, int n) { return k == Kind::A ? n : n - 1; }

// `tau` is one dimension of a class segment; t is 1-based within it.
double variation_value(std::span<const double> tau, Kind kind, int t, double eps);
bool variation_predicate(std::span<const double> tau, Kind kind, int t, double eps);

double variation_value(const MultivariateSeries& T, int dim, Kind kind, int t, double eps);
bool variation_predicate(const MultivariateSeries& T, int dim, Kind kind, int t, double eps);

struct IndexSource {
    std::string series_id;
    Interval segment;  // absolute position of the segment in the series
    int dim = 1;
    Kind kind = Kind::I;
    bool polarity = true;
};

// Intervals are segment-relative (1 = first timestamp of the segment).
struct SatisfactionIndex {
    IndexSource source;
    std::vector<Interval> intervals;
};

bool index_contains(const SatisfactionIndex& idx, int t);

struct PolarityPair {
    SatisfactionIndex on;   // predicate true
    SatisfactionIndex off;  // predicate false
    const SatisfactionIndex& get(bool nu) const { return nu ? on : off; }
};

struct SegmentIndices {
    ClassSegment segment;
    // by_dim[dim-1][kind]
    std::vector<std::array<PolarityPair, 4>> by_dim;
    const PolarityPair& at(int dim, Kind k) const { return by_dim[dim - 1][static_cast<int>(k)]; }
};

struct SeriesIndices {
    std::vector<SegmentIndices> segments;
};

SeriesIndices build_indices(const MultivariateSeries& T, double eps);

}  // namespace pdm
