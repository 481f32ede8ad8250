#pragma once

#include <array>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "pdm/discretizer.hpp"
#include "pdm/polylog.hpp"
#include "pdm/timeseries.hpp"

namespace pdm {

enum class DtPattern { S, HV43, OneH, TwoH, E1, E2 };

std::string dt_label(DtPattern p, bool nu, Kind kind, int dim);

// catch24 names followed by val_min, val_max, val_first, val_last.
inline constexpr std::size_t kFeatureCount = 28;
const std::vector<std::string>& feature_keys();
std::array<double, kFeatureCount> feature_values(std::span<const double> segment);
std::map<std::string, double> feature_payload(std::span<const double> segment);

// A mined constituent before its payload is attached. Positions are
// relative to the class segment.
struct DtSkeleton {
    DtPattern pattern = DtPattern::S;
    bool nu = true;
    Kind kind = Kind::I;
    int dim = 1;
    int start = 1;
    int span = 1;

    int end() const { return start + span - 1; }
    bool operator==(const DtSkeleton&) const = default;
};

// Raw values a constituent describes: predicates of kinds i, s and v relate
// t to t+1, so their constituents reach one value further.
Interval local_range(const DtSkeleton& s);

// DTMineStep over one interval of the (dim, kind, nu) index.
std::vector<DtSkeleton> dt_mine_step(const SegmentIndices& idx, int dim, Kind kind, bool nu, Interval iv);

// All skeletons of one class segment, after duplicate and containment pruning.
std::vector<DtSkeleton> dt_mine_skeletons(const SegmentIndices& idx, int dims);

struct DtMineOptions {
    double epsilon = kDefaultEpsilon;
    int jobs = 1;
};

PolyadicTrace dt_mine(const MultivariateSeries& T, const SeriesIndices& indices, const DtMineOptions& opt = {});

// Discretises and mines every series, then attaches taxonomies.
PolyadicLog mine_log(const std::vector<MultivariateSeries>& series, const DtMineOptions& opt = {});

}  // namespace pdm
