#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "pdm/cart.hpp"
#include "pdm/declare.hpp"
#include "pdm/discretizer.hpp"
#include "pdm/metrics.hpp"
#include "pdm/miner.hpp"
#include "pdm/polylog.hpp"
#include "pdm/timeseries.hpp"

namespace pdm {

struct PipelineConfig {
    double epsilon = kDefaultEpsilon;
    double theta = 0.0;
    int max_depth = cart::kDefaultMaxDepth;
    double train_fraction = 0.7;
    std::uint64_t seed = 0;
    int jobs = 1;

    void validate() const;
    MinerOptions miner() const;
};

// Phase name -> wall-clock seconds. Keys: load_index, dt_mine, serialize,
// segment, mine_embed, learn.
using PhaseTimings = std::map<std::string, double>;

// Everything needed to classify and explain: the clauses the tree reads,
// the tree, and the class names.
struct Model {
    PipelineConfig config;
    std::vector<std::string> class_names;
    std::vector<Taxonomy> taxonomies;
    std::vector<Clause> clauses;  // keyed by text in the tree
    cart::Tree tree;
    std::size_t mined_clauses = 0;
    std::size_t train_segments = 0;

    std::string class_name(int cls) const;
    int predict(const PolyadicTrace& segment) const;
};

nlohmann::json to_json(const Model& m);
Model model_from_json(const nlohmann::json& j);
std::string dump_model(const Model& m);
Model load_model(const std::string& path);

// Stratified split of class segments: per class, a seeded shuffle assigns
// round(fraction * n) segments to training (at least one).
std::pair<std::map<int, PolyadicLog>, std::map<int, PolyadicLog>> split_segments(
    const std::map<int, PolyadicLog>& logs, double fraction, std::uint64_t seed);

struct PhaseError : std::runtime_error {
    PhaseError(const std::string& phase, const std::string& what);
    std::string phase;
};

// Discretisation and DT mining of a whole dataset.
PolyadicLog discretize(const Dataset& data, const PipelineConfig& cfg, PhaseTimings* timings = nullptr);

struct TrainResult {
    Model model;
    MinedSpecification spec;
    Metrics train_metrics;
    PhaseTimings timings;
};

// Trains on a serialized polyadic log (the output of discretize).
TrainResult train_from_log(const std::string& log_json, const PipelineConfig& cfg, PhaseTimings timings = {});
TrainResult train(const Dataset& data, const PipelineConfig& cfg);

struct EvalResult {
    Metrics metrics;
    std::vector<int> truth, predicted;
    std::vector<std::string> unseen_classes;
    std::size_t test_segments = 0;
};

EvalResult evaluate_model(const Model& m, const PolyadicLog& log, const PipelineConfig& cfg);
EvalResult evaluate_model(const Model& m, const Dataset& data, const PipelineConfig& cfg);

// Per class, the disjunction of tree paths over clause cells.
std::string explain(const Model& m);

nlohmann::json spec_json(const TrainResult& r);

}  // namespace pdm
