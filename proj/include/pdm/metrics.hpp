#pragma once

#include <vector>

#include <json.hpp>

namespace pdm {

struct ClassScores {
    int cls = 0;
    double precision = 0.0, recall = 0.0, f1 = 0.0;
    int support = 0;
};

struct Metrics {
    std::vector<int> classes;  // sorted union of true and predicted classes
    std::vector<std::vector<int>> confusion;  // [true][predicted]
    std::vector<ClassScores> per_class;
    double accuracy = 0.0;
    // Macro averages with more than two classes; with two, the scores of
    // the larger class id.
    double precision = 0.0, recall = 0.0, f1 = 0.0;
    bool macro = false;
    double macro_f1 = 0.0;
};

// Undefined ratios (no predictions or no support) count as 0.
Metrics compute_metrics(const std::vector<int>& truth, const std::vector<int>& predicted);

nlohmann::json to_json(const Metrics& m);

}  // namespace pdm
