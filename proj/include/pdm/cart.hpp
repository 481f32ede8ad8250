#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "pdm/predicate.hpp"

namespace pdm::cart {

inline constexpr int kDefaultMaxDepth = 5;

// Column-major training table. Numeric features are named by `keys`; an
// optional categorical "__label" column lives in `labels`.
struct Table {
    std::vector<std::string> keys;
    std::vector<std::vector<double>> cols;
    std::vector<std::string> labels;  // empty or one per row
    std::vector<int> y;

    std::size_t rows() const { return y.size(); }
    bool has_labels() const { return !labels.empty(); }
    void add_column(std::string key, std::vector<double> values);
};

struct Node {
    int feature = -1;  // index into Tree::keys; -1 for leaves, -2 for __label
    double threshold = 0.0;
    std::string category;
    int left = -1, right = -1;
    int cls = 0;
    std::vector<int> counts;  // aligned with Tree::classes

    bool leaf() const { return feature == -1; }
};

struct Tree {
    std::vector<std::string> keys;  // only keys referenced by a split
    std::vector<int> classes;       // sorted distinct training classes
    std::vector<Node> nodes;        // nodes[0] is the root
    int max_depth = kDefaultMaxDepth;

    int depth() const;
    int leaves() const;
};

struct DecisionPath {
    Conjunction predicate;
    int predicted_class = 0;
    std::vector<int> counts;
};

// Column-major table of cells in {-1, 0, +1}, as produced by the embedding.
struct TernaryTable {
    std::vector<std::string> keys;
    std::vector<std::vector<signed char>> cols;
    std::vector<int> y;

    std::size_t rows() const { return y.size(); }
};

// Greedy Gini splits. Ties go to the lowest impurity, then the smallest key,
// then the smallest threshold. Zero-gain splits are allowed on impure nodes.
Tree fit(const Table& data, int max_depth = kDefaultMaxDepth);
// Same splitting rules as fit(), specialised to ternary cells.
Tree fit(const TernaryTable& data, int max_depth = kDefaultMaxDepth);
Table to_table(const TernaryTable& data);

double purity(const Tree& t);
std::vector<DecisionPath> paths(const Tree& t);
// Disjunction of the paths that predict `cls`; FALSE if none does.
DataPredicate class_formula(const Tree& t, int cls);

// Feature lookup by name; unknown keys read as 0.
std::vector<int> predict(const Tree& t, const Table& data);
int predict_one(const Tree& t, const std::vector<double>& values, const std::string& label = {});
double accuracy(const Tree& t, const Table& data);
// Ordinal of the reached leaf, in the order paths() lists them.
std::vector<int> leaf_ordinals(const Tree& t, const Table& data);

nlohmann::json to_json(const Tree& t);
Tree tree_from_json(const nlohmann::json& j);

}  // namespace pdm::cart
