#pragma once

#include <string>
#include <vector>

namespace pdm {

struct Interval {
    int b = 1;  // 1-based, inclusive
    int e = 1;  // inclusive
    int length() const { return e - b + 1; }
    bool contains(int t) const { return b <= t && t <= e; }
    bool operator==(const Interval&) const = default;
    auto operator<=>(const Interval&) const = default;
};

// values[t-1][k] is data dimension k+1 at time t; the class dimension is
// kept apart in `classes` (already remapped to dense integers).
struct MultivariateSeries {
    std::string id;
    std::vector<std::string> dim_names;
    std::vector<std::vector<double>> values;
    std::vector<int> classes;

    int length() const { return static_cast<int>(values.size()); }
    int data_dims() const { return static_cast<int>(dim_names.size()); }
    double at(int t, int dim) const { return values[t - 1][dim - 1]; }
    int class_at(int t) const { return classes[t - 1]; }
    std::vector<double> column(int dim) const;
};

struct ClassSegment {
    Interval interval;
    int class_label = 0;
    std::string source_id;
    bool operator==(const ClassSegment&) const = default;
};

enum class InputFormat { LongCsv, JsonDir };

InputFormat parse_format(const std::string& name);

struct Dataset {
    std::vector<MultivariateSeries> series;
    std::vector<std::string> class_names;  // dense id -> original label
};

Dataset load_dataset(const std::string& path, InputFormat fmt);
Dataset load_long_csv(const std::string& path);
Dataset load_json_dir(const std::string& path);

MultivariateSeries project(const MultivariateSeries& T, Interval iv);

// Partition of `domain` into maximal runs on which F is constant.
template <class F>
std::vector<Interval> maximal_intervals(F&& f, Interval domain) {
    std::vector<Interval> out;
    int b = domain.b;
    auto cur = f(b);
    for (int t = domain.b + 1; t <= domain.e; ++t) {
        auto v = f(t);
        if (!(v == cur)) {
            out.push_back({b, t - 1});
            b = t;
            cur = v;
        }
    }
    out.push_back({b, domain.e});
    return out;
}

std::vector<ClassSegment> class_segments(const MultivariateSeries& T);

}  // namespace pdm
